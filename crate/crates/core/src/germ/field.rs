use crate::error::{Error, Result};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use std::fmt;
use std::str::FromStr;

/// Largest accepted prime; products of two residues fit in `u128`.
const MAX_PRIME: u64 = 1 << 62;

/// The exact field a configuration is realized over.
///
/// Elements are carried as rationals; over a prime field they are kept
/// reduced to integers in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rationals,
    Prime(u64),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if p.is_multiple_of(q) {
            return p == q;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let (mut d, mut r) = (p - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x);
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::Parse(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Canonical representative of `x` in this field.
    ///
    /// Panics over a prime field when the denominator is divisible by `p`.
    pub fn reduce(&self, x: &Rat) -> Rat {
        match self {
            Field::Rationals => x.clone(),
            Field::Prime(p) => {
                let p = Int::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p).expect("denominator invertible mod p");
                Rat::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    /// Whether `x` can be mapped into the field.
    pub fn admits(&self, x: &Rat) -> bool {
        match self {
            Field::Rationals => true,
            Field::Prime(p) => !x.denom().is_multiple_of(&Int::from(*p)),
        }
    }

    /// Number of non-zero elements available for generic choices, capped.
    pub fn nonzero_supply(&self, cap: u64) -> u64 {
        match self {
            Field::Rationals => cap,
            Field::Prime(p) => (p - 1).min(cap),
        }
    }

    pub fn inverse(&self, x: &Rat) -> Rat {
        self.reduce(&x.recip())
    }
}

fn mod_inverse(a: &Int, p: &Int) -> Option<Int> {
    let e = a.extended_gcd(p);
    e.gcd.is_one().then(|| e.x.mod_floor(p))
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("rationals"),
            Field::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "rationals" || s == "Q" {
            return Ok(Field::Rationals);
        }
        let Some(rest) = s.strip_prefix("prime:") else {
            return Err(Error::Parse(format!("unknown field '{s}' (expected rationals or prime:p)")));
        };
        let p: u64 = rest.trim().parse().map_err(|_| Error::Parse(format!("invalid prime '{rest}'")))?;
        Field::prime(p)
    }
}

/// Residue of a rational modulo `p` as `u64`, if the denominator allows it.
pub(crate) fn residue(x: &Rat, p: u64) -> Option<u64> {
    let pi = Int::from(p);
    let den = x.denom().mod_floor(&pi);
    let inv = mod_inverse(&den, &pi)?;
    let v = (x.numer().mod_floor(&pi) * inv).mod_floor(&pi);
    debug_assert!(!v.is_negative());
    v.to_u64()
}
