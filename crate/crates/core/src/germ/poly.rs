use super::field::Field;
use crate::error::{Error, Result};
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in two variables with exact coefficients.
///
/// Keys are exponent pairs `(i, j)` of the first and second variable. The
/// variable names only matter for parsing and printing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Poly2 { terms }
    }

    /// The first variable.
    pub fn var0() -> Self {
        Poly2::monomial(Rat::one(), 1, 0)
    }

    /// The second variable.
    pub fn var1() -> Self {
        Poly2::monomial(Rat::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(iter: I) -> Self {
        let mut p = Poly2::zero();
        for (k, c) in iter {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, key: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Multiplicity at the origin (lowest total degree); `None` for zero.
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// Lowest exponent of the first variable; `None` for zero.
    pub fn ord0(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// Lowest exponent of the second variable; `None` for zero.
    pub fn ord1(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn add(&self, other: &Poly2) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &Poly2) -> Self {
        self.mul_trunc(other, None)
    }

    /// Product dropping every term whose first exponent reaches `bound`.
    pub fn mul_trunc(&self, other: &Poly2, bound: Option<u32>) -> Self {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                if bound.is_some_and(|b| i1 + i2 >= b) {
                    continue;
                }
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_trunc(e, None)
    }

    pub fn pow_trunc(&self, mut e: u32, bound: Option<u32>) -> Self {
        let mut acc = Poly2::one().truncate(bound);
        let mut base = self.truncate(bound);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_trunc(&base, bound);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_trunc(&base, bound);
            }
        }
        acc
    }

    /// Drops terms whose first exponent reaches `bound`.
    pub fn truncate(&self, bound: Option<u32>) -> Self {
        match bound {
            None => self.clone(),
            Some(b) => {
                Poly2 { terms: self.terms.iter().filter(|((i, _), _)| *i < b).map(|(k, c)| (*k, c.clone())).collect() }
            }
        }
    }

    /// Applies `f` to every exponent pair, collecting like terms.
    pub fn map_exponents(&self, f: impl Fn(u32, u32) -> (u32, u32)) -> Self {
        Poly2::from_terms(self.terms.iter().map(|(&(i, j), c)| (f(i, j), c.clone())))
    }

    /// Divides by `first^k`; every term must allow it.
    pub fn div_var0(&self, k: u32) -> Self {
        self.map_exponents(|i, j| (i.checked_sub(k).expect("divisible"), j))
    }

    /// Coefficients brought into the field (terms vanishing mod p disappear).
    pub fn reduce(&self, field: &Field) -> Self {
        match field {
            Field::Rationals => self.clone(),
            _ => Poly2::from_terms(self.terms.iter().map(|(k, c)| (*k, field.reduce(c)))),
        }
    }

    /// Whether every coefficient makes sense in `field`.
    pub fn admitted_by(&self, field: &Field) -> bool {
        self.terms.values().all(|c| field.admits(c))
    }

    /// `P(first, second)` with the variables replaced by polynomials.
    pub fn compose(&self, first: &Poly2, second: &Poly2, bound: Option<u32>) -> Self {
        let mut out = Poly2::zero();
        let mut pow0: BTreeMap<u32, Poly2> = BTreeMap::new();
        let mut pow1: BTreeMap<u32, Poly2> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let a = pow0.entry(i).or_insert_with(|| first.pow_trunc(i, bound)).clone();
            let b = pow1.entry(j).or_insert_with(|| second.pow_trunc(j, bound)).clone();
            out = out.add(&a.mul_trunc(&b, bound).scale(c));
        }
        out
    }

    /// Display with the given variable names.
    pub fn display_with(&self, names: (&str, &str)) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        let mut out = String::new();
        for (n, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || *key == (0, 0) {
                factors.push(abs.to_string());
            }
            for (e, name) in [(key.0, names.0), (key.1, names.1)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses a sum of terms in the variables `names`.
    ///
    /// ```text
    /// poly   := sign? term (sign term)*
    /// term   := factor ('*'? factor)*
    /// factor := integer ('/' integer)? | name ('^' integer)?
    /// ```
    pub fn parse(input: &str, names: (char, char)) -> Result<Self> {
        Parser { chars: input.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, names }.poly()
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    names: (char, char),
}

/// Exponents above this are rejected by the parser.
pub const MAX_PARSED_EXPONENT: u32 = 10_000;

impl Parser {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Poly2> {
        if self.chars.is_empty() {
            return self.err("empty polynomial");
        }
        let mut out = Poly2::zero();
        let mut first = true;
        while self.pos < self.chars.len() {
            let mut sign = Rat::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if first => {}
                _ => return self.err("expected '+' or '-'"),
            }
            first = false;
            let (c, i, j) = self.term()?;
            out.add_term((i, j), c * sign);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Rat, u32, u32)> {
        let mut c = Rat::one();
        let (mut i, mut j) = (0u32, 0u32);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() => c *= self.number()?,
                Some(ch) if ch == self.names.0 || ch == self.names.1 => {
                    self.pos += 1;
                    let e = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    let slot = if ch == self.names.0 { &mut i } else { &mut j };
                    *slot = slot
                        .checked_add(e)
                        .filter(|&v| v <= MAX_PARSED_EXPONENT)
                        .ok_or_else(|| Error::Parse(format!("exponent too large at offset {}", self.pos)))?;
                }
                _ if factors == 0 => return self.err("expected a coefficient or variable"),
                _ => return self.err("unexpected character"),
            }
            factors += 1;
            match self.peek() {
                None | Some('+') | Some('-') => return Ok((c, i, j)),
                Some('*') => {
                    self.pos += 1;
                    if self.peek().is_none() {
                        return self.err("dangling '*'");
                    }
                }
                _ => {}
            }
        }
    }

    fn digits(&mut self) -> Result<Int> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("bad integer '{s}'")))
    }

    fn number(&mut self) -> Result<Rat> {
        let num = self.digits()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.digits()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from_integer(num))
    }

    fn exponent(&mut self) -> Result<u32> {
        let e = self.digits()?;
        u32::try_from(e)
            .ok()
            .filter(|&v| v <= MAX_PARSED_EXPONENT)
            .ok_or_else(|| Error::Parse(format!("exponent too large at offset {}", self.pos)))
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(("x", "y")))
    }
}
