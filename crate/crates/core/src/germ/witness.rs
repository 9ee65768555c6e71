use super::field::{residue, Field};
use super::linalg::{crt, kernel, kernel_residues, rational_reconstruction, screen_primes};
use super::poly::Poly2;
use super::realize::{RealizedConfiguration, Step};
use super::{from_local, poly_valuation};
use crate::error::Result;
use crate::picard::d_family;
use crate::{Int, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Primes tried before falling back to exact elimination.
const LIFT_PRIMES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessMode {
    /// Some `f` with `ν(f) > 0`.
    Positive,
    /// Some non-constant `f` with `ν(f) = 0`.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found { f: Poly2, value: Int },
    NotFound { budget: u32 },
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&Poly2> {
        match self {
            WitnessOutcome::Found { f, .. } => Some(f),
            WitnessOutcome::NotFound { .. } => None,
        }
    }
}

fn accepts(mode: WitnessMode, value: &Int) -> bool {
    match mode {
        WitnessMode::Positive => value.is_positive(),
        WitnessMode::Zero => value.is_zero(),
    }
}

/// Searches polynomials of degree `1..=budget` (default `2 d_m`) for a
/// witness, re-verifying every candidate with [`poly_valuation`].
///
/// Degree by degree, `ν(f) >= 0` (resp. `> 0`) becomes the linear condition
/// that `h_f(U, V)` vanish to order `deg(f) d_m` (resp. one more) along `E_m`,
/// solved exactly. In positive mode every non-constant solution is a witness,
/// so an empty search rules out all polynomials of degree at most `budget`.
pub fn witness_search(real: &RealizedConfiguration, mode: WitnessMode, budget: Option<u32>) -> Result<WitnessOutcome> {
    let family = d_family(real.config());
    let d_m = family.d_m().to_u32().unwrap_or(u32::MAX);
    let budget = budget.unwrap_or_else(|| d_m.saturating_mul(2)).max(1);
    let field = real.field();
    let check = |f: Poly2| -> Result<Option<WitnessOutcome>> {
        if f.is_constant() {
            return Ok(None);
        }
        let value = poly_valuation(real, &f)?;
        Ok(accepts(mode, &value).then_some(WitnessOutcome::Found { f, value }))
    };

    let nu_u = real.germ_valuation(&Poly2::var0())?;
    for deg in 1..=budget {
        let Some(base) = deg.checked_mul(d_m) else { break };
        let threshold = match mode {
            WitnessMode::Positive => base.saturating_add(1),
            WitnessMode::Zero => base,
        };
        let mut columns: Vec<(u32, u32)> = Vec::new();
        for total in 0..=deg {
            for a in 0..=total {
                let b = total - a;
                if mode == WitnessMode::Zero && (a, b) == (0, deg) {
                    // v^deg is the constant polynomial
                    continue;
                }
                let value = &nu_u * Int::from(a) + Int::from(b) * Int::from(d_m);
                if value >= Int::from(threshold) {
                    if let Some(found) = check(from_local(&Poly2::monomial(Rat::from_integer(1.into()), a, b), deg))? {
                        return Ok(found);
                    }
                } else {
                    columns.push((a, b));
                }
            }
        }
        if columns.is_empty() {
            continue;
        }
        let mut settled = false;
        match lift_kernel(real, &columns, threshold) {
            Lift::Trivial => continue,
            Lift::Candidates(basis) => {
                let mut genuine = 0;
                for lifted in &basis {
                    let h = Poly2::from_terms(columns.iter().zip(lifted).map(|(&(a, b), c)| ((a, b), c.clone())));
                    if h.is_zero() || real.germ_valuation(&h)? < Int::from(threshold) {
                        break;
                    }
                    if let Some(found) = check(from_local(&h, deg))? {
                        return Ok(found);
                    }
                    genuine += 1;
                }
                // a genuine basis of the larger kernel spans the true one
                settled = genuine == basis.len();
            }
            Lift::Unknown => {}
        }
        if settled {
            continue;
        }
        for count in [2usize, 4, 8] {
            let rows = specialized_rows(real, &columns, threshold, count);
            let mut genuine = true;
            for vector in kernel(&rows, columns.len(), &field) {
                let h = Poly2::from_terms(columns.iter().zip(vector).map(|(&(a, b), c)| ((a, b), c)));
                if real.germ_valuation(&h)? < Int::from(threshold) {
                    // the curvettes b' = beta missed a condition
                    genuine = false;
                    continue;
                }
                if let Some(found) = check(from_local(&h, deg))? {
                    return Ok(found);
                }
            }
            if genuine {
                settled = true;
                break;
            }
        }
        if settled {
            continue;
        }
        let bound = Some(threshold);
        let (u, v) = real.pullback(bound);
        let max_a = columns.iter().map(|c| c.0).max().unwrap_or(0);
        let max_b = columns.iter().map(|c| c.1).max().unwrap_or(0);
        let mut upow = vec![Poly2::one()];
        for _ in 0..max_a {
            let next = upow.last().expect("non-empty").mul_trunc(&u, bound).reduce(&field);
            upow.push(next);
        }
        let mut vpow = vec![Poly2::one()];
        for _ in 0..max_b {
            let next = vpow.last().expect("non-empty").mul_trunc(&v, bound).reduce(&field);
            vpow.push(next);
        }
        let mut row_index: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        let mut entries: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(columns.len());
        for &(a, b) in &columns {
            let image = upow[a as usize].mul_trunc(&vpow[b as usize], bound).reduce(&field);
            let mut col = Vec::with_capacity(image.len());
            for (key, c) in image.terms() {
                let next = row_index.len();
                let r = *row_index.entry(*key).or_insert(next);
                col.push((r, c.clone()));
            }
            entries.push(col);
        }
        let mut rows = vec![vec![Rat::zero(); columns.len()]; row_index.len()];
        for (j, col) in entries.into_iter().enumerate() {
            for (r, c) in col {
                rows[r][j] = c;
            }
        }
        for vector in kernel(&rows, columns.len(), &field) {
            let h = Poly2::from_terms(columns.iter().zip(vector).map(|(&(a, b), c)| ((a, b), c)));
            if let Some(found) = check(from_local(&h, deg))? {
                return Ok(found);
            }
        }
    }
    Ok(WitnessOutcome::NotFound { budget })
}

/// Truncated univariate series modulo `p`.
fn series_mul(x: &[u64], y: &[u64], len: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
        for (j, &b) in y.iter().enumerate().take(len - i) {
            if b != 0 {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
    }
    out
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `(U, V)(a', beta)` modulo `(p, a'^len)`, or `None` if a chart parameter
/// is not `p`-integral.
fn specialized_pullback(steps: &[Step], beta: u64, len: usize, p: u64) -> Option<(Vec<u64>, Vec<u64>)> {
    let mut a = vec![0u64; len];
    if len > 1 {
        a[1] = 1;
    }
    let b = a.iter().map(|x| mulmod(*x, beta, p)).collect();
    let mut pair: (Vec<u64>, Vec<u64>) = (a, b);
    for step in steps.iter().rev() {
        pair = match step {
            Step::Affine(c) => {
                let mut shifted = pair.1;
                if len > 0 {
                    shifted[0] = (shifted[0] + residue(c, p)?) % p;
                }
                let b = series_mul(&pair.0, &shifted, len, p);
                (pair.0, b)
            }
            Step::Swap => (series_mul(&pair.0, &pair.1, len, p), pair.0),
        };
    }
    Some(pair)
}

fn exact_series_mul(x: &[Rat], y: &[Rat], len: usize, field: &Field) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in y.iter().enumerate().take(len - i) {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    out.iter().map(|c| field.reduce(c)).collect()
}

/// Rows of the conditions `ord_{a'} h(U, V)(a', beta) >= threshold` on the
/// coefficients of `h` over `columns`, for `count` values of `beta`.
fn specialized_rows(
    real: &RealizedConfiguration,
    columns: &[(u32, u32)],
    threshold: u32,
    count: usize,
) -> Vec<Vec<Rat>> {
    let field = real.field();
    let len = threshold as usize;
    let max_a = columns.iter().map(|c| c.0).max().unwrap_or(0) as usize;
    let max_b = columns.iter().map(|c| c.1).max().unwrap_or(0) as usize;
    let mut betas: Vec<Rat> = Vec::new();
    let mut k = 3i64;
    while betas.len() < count && (k as u64) < 3 + 4 * count as u64 + field.nonzero_supply(64) {
        let beta = field.reduce(&Rat::from_integer(k.into()));
        if !beta.is_zero() && !betas.contains(&beta) {
            betas.push(beta);
        }
        k += 1;
    }
    let mut rows = Vec::new();
    for beta in &betas {
        let mut a = vec![Rat::zero(); len];
        if len > 1 {
            a[1] = Rat::one();
        }
        let b: Vec<Rat> = a.iter().map(|x| x * beta).collect();
        let mut pair = (a, b);
        for step in real.steps().iter().rev() {
            pair = match step {
                Step::Affine(c) => {
                    let mut shifted = pair.1;
                    if len > 0 {
                        shifted[0] = field.reduce(&(&shifted[0] + c));
                    }
                    let b = exact_series_mul(&pair.0, &shifted, len, &field);
                    (pair.0, b)
                }
                Step::Swap => (exact_series_mul(&pair.0, &pair.1, len, &field), pair.0),
            };
        }
        let mut one = vec![Rat::zero(); len];
        if len > 0 {
            one[0] = Rat::one();
        }
        let mut upow = vec![one.clone()];
        for k in 0..max_a {
            upow.push(exact_series_mul(&upow[k], &pair.0, len, &field));
        }
        let mut vpow = vec![one];
        for k in 0..max_b {
            vpow.push(exact_series_mul(&vpow[k], &pair.1, len, &field));
        }
        let images: Vec<Vec<Rat>> =
            columns.iter().map(|&(a, b)| exact_series_mul(&upow[a as usize], &vpow[b as usize], len, &field)).collect();
        for r in 0..len {
            rows.push(images.iter().map(|col| col[r].clone()).collect());
        }
    }
    rows
}

/// Kernel of the conditions `ord_{a'} h(U, V) >= threshold` on `columns`,
/// specialized to the curvettes `b' = beta` and reduced modulo `p`, as free
/// columns and basis. `None` if a chart parameter is not `p`-integral.
///
/// An empty kernel is exact: a non-zero solution would survive the
/// specialization.
fn screen(
    real: &RealizedConfiguration,
    columns: &[(u32, u32)],
    threshold: u32,
    p: u64,
) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
    let len = threshold as usize;
    let max_a = columns.iter().map(|c| c.0).max().unwrap_or(0) as usize;
    let max_b = columns.iter().map(|c| c.1).max().unwrap_or(0) as usize;
    let mut residues: Vec<Vec<u64>> = vec![Vec::new(); columns.len()];
    for beta in [3u64, 7] {
        let (us, vs) = specialized_pullback(real.steps(), beta % p, len, p)?;
        let mut one = vec![0u64; len];
        if len > 0 {
            one[0] = 1;
        }
        let mut upow = vec![one.clone()];
        for k in 0..max_a {
            upow.push(series_mul(&upow[k], &us, len, p));
        }
        let mut vpow = vec![one];
        for k in 0..max_b {
            vpow.push(series_mul(&vpow[k], &vs, len, p));
        }
        for (col, &(a, b)) in residues.iter_mut().zip(columns) {
            col.extend(series_mul(&upow[a as usize], &vpow[b as usize], len, p));
        }
    }
    let nrows = residues.first().map_or(0, Vec::len);
    let rows: Vec<Vec<u64>> = (0..nrows).map(|r| residues.iter().map(|col| col[r]).collect()).collect();
    Some(kernel_residues(rows, columns.len(), p))
}

enum Lift {
    /// No non-zero solution at all.
    Trivial,
    /// A lifted basis of the specialized kernel, still to be verified.
    Candidates(Vec<Vec<Rat>>),
    Unknown,
}

/// Lifts the specialized kernel over several primes by Chinese remaindering
/// and rational reconstruction, stopping once the lift is stable.
fn lift_kernel(real: &RealizedConfiguration, columns: &[(u32, u32)], threshold: u32) -> Lift {
    if let Field::Prime(p) = real.field() {
        return match screen(real, columns, threshold, p) {
            None => Lift::Unknown,
            Some((_, basis)) if basis.is_empty() => Lift::Trivial,
            Some((_, basis)) => Lift::Candidates(
                basis.into_iter().map(|v| v.into_iter().map(|x| Rat::from_integer(x.into())).collect()).collect(),
            ),
        };
    }
    let mut shape: Option<Vec<usize>> = None;
    let mut acc: Vec<Vec<Int>> = Vec::new();
    let mut modulus = Int::one();
    let mut previous: Option<Vec<Vec<Rat>>> = None;
    for p in screen_primes(LIFT_PRIMES) {
        let Some((free, basis)) = screen(real, columns, threshold, p) else { continue };
        if basis.is_empty() {
            return Lift::Trivial;
        }
        match &shape {
            None => {
                acc = basis.iter().map(|v| v.iter().map(|&x| Int::from(x)).collect()).collect();
                shape = Some(free);
            }
            // a prime where the rank drops is discarded
            Some(s) if *s != free => continue,
            Some(_) => {
                for (a, v) in acc.iter_mut().zip(&basis) {
                    for (x, &r) in a.iter_mut().zip(v) {
                        *x = crt(x, &modulus, r, p);
                    }
                }
            }
        }
        modulus *= p;
        let lifted: Option<Vec<Vec<Rat>>> =
            acc.iter().map(|v| v.iter().map(|x| rational_reconstruction(x, &modulus)).collect()).collect();
        if let Some(found) = lifted.as_ref().filter(|_| lifted == previous) {
            return Lift::Candidates(found.clone());
        }
        previous = lifted;
    }
    Lift::Unknown
}
