//! Exact kernels of coefficient matrices.

use super::field::{is_prime, residue, Field};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Mersenne prime used to screen rational systems for a trivial kernel.
pub(crate) const SCREEN_PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Rank of the matrix reduced modulo `p`, or `None` if some entry has a
/// denominator divisible by `p`.
pub fn rank_mod_p(rows: &[Vec<Rat>], ncols: usize, p: u64) -> Option<usize> {
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::with_capacity(ncols);
        for x in row {
            r.push(residue(x, p)?);
        }
        m.push(r);
    }
    Some(rank_residues(m, ncols, p))
}

/// Reduced row echelon form modulo `p` and the pivot columns.
fn echelon(mut m: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let rank = pivots.len();
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = powmod(m[rank][col], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        pivots.push(col);
    }
    (m, pivots)
}

/// Rank of a matrix already reduced modulo `p`.
pub(crate) fn rank_residues(m: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    echelon(m, ncols, p).1.len()
}

/// A kernel basis modulo `p`, one vector per non-pivot column, with those
/// columns.
pub(crate) fn kernel_residues(m: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let (m, pivots) = echelon(m, ncols, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][fc]) % p;
            }
            v
        })
        .collect();
    (free, basis)
}

/// `SCREEN_PRIME` followed by the next primes below it.
pub(crate) fn screen_primes(count: usize) -> Vec<u64> {
    let mut out = vec![SCREEN_PRIME];
    let mut n = SCREEN_PRIME - 2;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// The `x' = x mod m` with `x' = a mod modulus` and `x' = b mod p`.
pub(crate) fn crt(a: &Int, modulus: &Int, b: u64, p: u64) -> Int {
    let pi = Int::from(p);
    let inv = modulus.mod_floor(&pi).extended_gcd(&pi).x.mod_floor(&pi);
    let k = ((Int::from(b) - a).mod_floor(&pi) * inv).mod_floor(&pi);
    a + modulus * k
}

/// The fraction `n / d` with `|n|, d <= sqrt(m / 2)` congruent to `x`
/// modulo `m`, if there is one.
pub(crate) fn rational_reconstruction(x: &Int, m: &Int) -> Option<Rat> {
    let bound = (m / Int::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// A basis of `{x : rows · x = 0}` over `field`.
pub fn kernel(rows: &[Vec<Rat>], ncols: usize, field: &Field) -> Vec<Vec<Rat>> {
    if let Field::Rationals = field {
        if rank_mod_p(rows, ncols, SCREEN_PRIME) == Some(ncols) {
            // full column rank modulo a prime forces it over the rationals
            return Vec::new();
        }
    }
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|x| field.reduce(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, piv);
        let inv = field.inverse(&m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = field.reduce(&(&*x * &inv));
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = field.reduce(&(&*x - &f * y));
                    }
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rat::zero(); ncols];
            v[fc] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.reduce(&-m[r][fc].clone());
            }
            v
        })
        .collect()
}
