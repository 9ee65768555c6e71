//! The Picard lattice of the blown-up surface and the divisors `D_i`.
//!
//! Classes are written in the total-transform basis `E_0*, E_1*, ..., E_m*`
//! where `E_0*` is the pullback of a general line. The form is diagonal with
//! `E_0*² = 1` and `E_i*² = -1`.

use crate::error::{Error, Result};
use crate::valuation::{contact_invariants, Configuration};
use crate::{Int, Rat};
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::ops::{Add, Mul, Neg, Sub};

/// A class `c_0 E_0* + Σ c_i E_i*` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub coeffs: Vec<Rat>,
}

impl DivisorClass {
    pub fn zero(m: usize) -> Self {
        DivisorClass { coeffs: vec![Rat::zero(); m + 1] }
    }

    /// `E_i*`; `i = 0` gives the line class.
    pub fn basis(m: usize, i: usize) -> Self {
        let mut d = Self::zero(m);
        d.coeffs[i] = Rat::one();
        d
    }

    pub fn from_ints(coeffs: &[Int]) -> Self {
        DivisorClass { coeffs: coeffs.iter().cloned().map(Rat::from_integer).collect() }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        DivisorClass { coeffs: coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect() }
    }

    /// `d E_0* - Σ r_i E_i*`.
    pub fn from_degree_and_multiplicities(d: &Int, r: &[Int]) -> Self {
        let mut coeffs = vec![Rat::from_integer(d.clone())];
        coeffs.extend(r.iter().map(|x| Rat::from_integer(-x)));
        DivisorClass { coeffs }
    }

    /// Number of exceptional coordinates.
    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn scale(&self, k: &Rat) -> Self {
        DivisorClass { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn self_intersection(&self) -> Rat {
        intersect(self, self).expect("same size")
    }

    /// Integer coefficients, if all are integral.
    pub fn to_ints(&self) -> Option<Vec<Int>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "class sizes differ");
        DivisorClass { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&DivisorClass> for &Rat {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

/// The intersection pairing.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<Rat> {
    if a.coeffs.len() != b.coeffs.len() {
        return Err(Error::DimensionMismatch { left: a.coeffs.len(), right: b.coeffs.len() });
    }
    let mut acc = &a.coeffs[0] * &b.coeffs[0];
    for (x, y) in a.coeffs.iter().zip(&b.coeffs).skip(1) {
        acc -= x * y;
    }
    Ok(acc)
}

fn int_pairing(a: &DivisorClass, b: &DivisorClass) -> Int {
    let v = intersect(a, b).expect("same size");
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Change between strict and total transform bases, indices `0..=m`.
///
/// Column `i` of `strict_in_total` holds the total-basis coordinates of `E_i`;
/// column `i` of `total_in_strict` holds the strict-basis coordinates of
/// `E_i*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub strict_in_total: Vec<Vec<Int>>,
    pub total_in_strict: Vec<Vec<Int>>,
}

/// `E_i = E_i* - Σ_{p_j -> p_i} E_j*` and its inverse.
#[allow(clippy::needless_range_loop)]
pub fn strict_basis_change(config: &Configuration) -> BasisChange {
    let m = config.m();
    let mut strict = vec![vec![Int::zero(); m + 1]; m + 1];
    for (i, row) in strict.iter_mut().enumerate() {
        row[i] = Int::one();
    }
    for i in 1..=m {
        for j in config.proximate_points(i) {
            strict[j][i] = -Int::one();
        }
    }
    // Unit lower-triangular: invert by forward substitution, column by column.
    let mut inv = vec![vec![Int::zero(); m + 1]; m + 1];
    for col in 0..=m {
        for row in col..=m {
            let mut v = if row == col { Int::one() } else { Int::zero() };
            for k in col..row {
                v -= &strict[row][k] * &inv[k][col];
            }
            inv[row][col] = v;
        }
    }
    BasisChange { strict_in_total: strict, total_in_strict: inv }
}

/// `E_i` (strict transform) in the total basis; `E_0` is the general line.
pub fn strict_class(config: &Configuration, i: usize) -> DivisorClass {
    let m = config.m();
    let mut d = DivisorClass::basis(m, i);
    if i >= 1 {
        for j in config.proximate_points(i) {
            d.coeffs[j] = -Rat::one();
        }
    }
    d
}

/// Strict transform of the line at infinity: `E_0* - Σ_{j <= s} E_j*`.
pub fn line_class(config: &Configuration) -> DivisorClass {
    let mut d = DivisorClass::basis(config.m(), 0);
    for j in 1..=config.s() {
        d.coeffs[j] = -Rat::one();
    }
    d
}

/// `K_X = -3 E_0* + Σ E_i*`.
pub fn canonical_class(m: usize) -> DivisorClass {
    let mut d = DivisorClass::basis(m, 0).scale(&Rat::from_integer((-3).into()));
    for c in d.coeffs.iter_mut().skip(1) {
        *c = Rat::one();
    }
    d
}

/// The divisors `D_0, ..., D_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DFamily {
    /// `d_1, ..., d_m` (entry `i - 1` is `d_i`).
    pub d: Vec<Int>,
    /// `D_0, ..., D_m`.
    pub divisors: Vec<DivisorClass>,
    /// `D_1², ..., D_m²` (entry `i - 1` is `D_i²`).
    pub self_int: Vec<Int>,
}

impl DFamily {
    pub fn m(&self) -> usize {
        self.d.len()
    }

    /// `D_i²` for `0 <= i <= m`.
    pub fn self_intersection(&self, i: usize) -> Int {
        if i == 0 {
            Int::one()
        } else {
            self.self_int[i - 1].clone()
        }
    }

    pub fn d_m(&self) -> &Int {
        self.d.last().expect("m >= 1")
    }
}

/// `D_i = d_i E_0* - Σ_j mult_{p_j}(φ_i) E_j*` with `d_i` from Noether's
/// formula, and `D_0 = E_0*`.
pub fn d_family(config: &Configuration) -> DFamily {
    let m = config.m();
    let mut d = Vec::with_capacity(m);
    let mut divisors = vec![DivisorClass::basis(m, 0)];
    let mut self_int = Vec::with_capacity(m);
    for i in 1..=m {
        let mut mults = config.multiplicity_vector(i).expect("i in range");
        let di: Int = mults.iter().take(config.s().min(i)).sum();
        mults.resize(m, Int::zero());
        let sq: Int = &di * &di - mults.iter().map(|x| x * x).sum::<Int>();
        divisors.push(DivisorClass::from_degree_and_multiplicities(&di, &mults));
        d.push(di);
        self_int.push(sq);
    }
    DFamily { d, divisors, self_int }
}

/// Whether `D = d E_0* - Σ r_i E_i*` (with `d > 0`, `r_i >= 0`) pairs
/// non-negatively with all of `Q(X)`, i.e. whether `d² >= Σ r_i²`.
pub fn lemma1_nonneg(divisor: &DivisorClass) -> Result<bool> {
    if !divisor.coeffs[0].is_positive() {
        return Err(Error::NonPositiveDegree);
    }
    if let Some(i) = divisor.coeffs.iter().skip(1).position(|c| c.is_positive()) {
        return Err(Error::NegativeMultiplicity { index: i + 1 });
    }
    Ok(!divisor.self_intersection().is_negative())
}

fn random_rat<R: Rng>(rng: &mut R, span: i64) -> Rat {
    Rat::new(rng.gen_range(-span..=span).into(), rng.gen_range(1..=span).into())
}

/// Seeded samples `x = E_0* - Σ x_i E_i*` with `Σ x_i² <= 1`, so that
/// `x² >= 0` and `x · E_0* = 1 >= 0`.
///
/// Half the samples lie on the boundary `x² = 0` (rational points of the unit
/// sphere by inverse stereographic projection), the rest are scaled into the
/// interior.
#[allow(non_snake_case)]
pub fn sample_Q(m: usize, count: usize, seed: u64) -> Vec<DivisorClass> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mut x = vec![Rat::zero(); m];
        if k % 2 == 0 && m >= 1 {
            let u: Vec<Rat> = (0..m - 1).map(|_| random_rat(&mut rng, 50)).collect();
            let norm: Rat = u.iter().map(|c| c * c).sum();
            let den = &norm + Rat::one();
            for (xi, ui) in x.iter_mut().zip(&u) {
                *xi = (Rat::from_integer(2.into()) * ui) / &den;
            }
            x[m - 1] = (&norm - Rat::one()) / &den;
        } else {
            let w: Vec<i64> = (0..m).map(|_| rng.gen_range(-1000..=1000)).collect();
            let sq: u64 = w.iter().map(|c| (c * c) as u64).sum();
            // ceil of the square root keeps Σ x_i² <= 1
            let mut root = sq.sqrt();
            if root * root < sq {
                root += 1;
            }
            let t = Rat::new(rng.gen_range(0..=1000).into(), 1000.into());
            let root = Rat::from_integer(root.max(1).into());
            for (xi, wi) in x.iter_mut().zip(&w) {
                *xi = Rat::from_integer((*wi).into()) / &root * &t;
            }
        }
        let mut coeffs = vec![Rat::one()];
        coeffs.extend(x.into_iter().map(|c| -c));
        out.push(DivisorClass { coeffs });
    }
    out
}

/// For `D = d E_0* - Σ r_i E_i*` with `D² < 0`, a rational point of `Q(X)`
/// close to the Cauchy–Schwarz maximizer with `D · x < 0`.
pub fn negative_probe(divisor: &DivisorClass) -> Option<DivisorClass> {
    let d = &divisor.coeffs[0];
    let r: Vec<Rat> = divisor.coeffs.iter().skip(1).map(|c| -c).collect();
    let norm: Rat = r.iter().map(|c| c * c).sum();
    if !d.is_positive() || norm <= d * d {
        return None;
    }
    // x_i = r_i p / q with p² Σ r_i² <= q², so Σ x_i² <= 1.
    let mut q = Int::from(16);
    for _ in 0..256 {
        let ratio = Rat::from_integer(&q * &q) / &norm;
        let p = ratio.to_integer().sqrt();
        let scale = Rat::new(p, q.clone());
        let mut coeffs = vec![Rat::one()];
        coeffs.extend(r.iter().map(|c| -(c * &scale)));
        let x = DivisorClass { coeffs };
        if intersect(divisor, &x).expect("same size").is_negative() {
            return Some(x);
        }
        q *= 2;
    }
    None
}

/// Coefficients of `D_j` over `(L~, E_1, ..., E_m)`: `D_j · D_0` followed by
/// `D_j · D_i`.
pub fn effective_decomposition(config: &Configuration, j: usize) -> Result<Vec<Int>> {
    let m = config.m();
    if j > m {
        return Err(Error::IndexOutOfRange { index: j, m });
    }
    let family = d_family(config);
    let inv = contact_invariants(config);
    if family.d_m() * family.d_m() < *inv.terminal() {
        return Err(Error::NotNonPositive);
    }
    let dj = &family.divisors[j];
    Ok(family.divisors.iter().map(|di| int_pairing(dj, di)).collect())
}

/// Reassembles `c_0 L~ + Σ c_i E_i` in the total basis.
pub fn assemble_strict(config: &Configuration, coeffs: &[Int]) -> DivisorClass {
    let mut acc = line_class(config).scale(&Rat::from_integer(coeffs[0].clone()));
    for (i, c) in coeffs.iter().enumerate().skip(1) {
        acc = &acc + &strict_class(config, i).scale(&Rat::from_integer(c.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::Point::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn cusp(s: usize) -> Configuration {
        Configuration::new(vec![Origin, Free, Satellite(1)], s).unwrap()
    }

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn pairing_basics() {
        let e0 = DivisorClass::basis(2, 0);
        let e1 = DivisorClass::basis(2, 1);
        assert_eq!(intersect(&e0, &e0).unwrap(), r(1));
        assert_eq!(intersect(&e1, &e1).unwrap(), r(-1));
        assert_eq!(intersect(&e0, &e1).unwrap(), r(0));
        assert_eq!(intersect(&e0, &DivisorClass::basis(3, 0)), Err(Error::DimensionMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn cusp_strict_classes() {
        let c = cusp(2);
        assert_eq!(strict_class(&c, 1), DivisorClass::from_i64(&[0, 1, -1, -1]));
        assert_eq!(strict_class(&c, 2), DivisorClass::from_i64(&[0, 0, 1, -1]));
        assert_eq!(strict_class(&c, 3), DivisorClass::from_i64(&[0, 0, 0, 1]));
        let b = strict_basis_change(&c);
        assert_eq!(b.strict_in_total[1][1], Int::one());
        assert_eq!(b.strict_in_total[2][1], Int::from(-1));
        assert_eq!(b.strict_in_total[3][1], Int::from(-1));
        // E_1* = E_1 + E_2 + 2 E_3
        assert_eq!(b.total_in_strict[3][1], Int::from(2));
    }

    #[test]
    fn basis_change_inverse() {
        let c = Configuration::new(vec![Origin, Free, Satellite(1), Satellite(1), Satellite(3), Free], 1).unwrap();
        let b = strict_basis_change(&c);
        let n = c.m() + 1;
        for i in 0..n {
            for j in 0..n {
                let v: Int = (0..n).map(|k| &b.strict_in_total[i][k] * &b.total_in_strict[k][j]).sum();
                assert_eq!(v, if i == j { Int::one() } else { Int::zero() });
            }
        }
    }

    #[test]
    fn line_classes() {
        assert_eq!(line_class(&Configuration::free_chain(1, 1).unwrap()), DivisorClass::from_i64(&[1, -1]));
        let l = line_class(&cusp(2));
        assert_eq!(l, DivisorClass::from_i64(&[1, -1, -1, 0]));
        assert_eq!(l.self_intersection(), r(-1));
    }

    #[test]
    fn cusp_family() {
        let f = d_family(&cusp(2));
        assert_eq!(f.d, ints(&[1, 2, 3]));
        assert_eq!(f.self_int, ints(&[0, 2, 3]));
        assert_eq!(f.divisors[3], DivisorClass::from_i64(&[3, -2, -1, -1]));
        assert_eq!(intersect(&f.divisors[3], &strict_class(&cusp(2), 3)).unwrap(), r(1));
        let f1 = d_family(&cusp(1));
        assert_eq!(f1.self_int[2], Int::from(-2));
    }

    #[test]
    fn single_blowup_family() {
        let f = d_family(&Configuration::free_chain(1, 1).unwrap());
        assert_eq!(f.divisors[1], DivisorClass::from_i64(&[1, -1]));
        assert_eq!(f.self_intersection(1), Int::zero());
        assert_eq!(f.self_intersection(0), Int::one());
    }

    #[test]
    fn canonical() {
        assert_eq!(canonical_class(1).self_intersection(), r(8));
        assert_eq!(canonical_class(9).self_intersection(), r(0));
        let k = canonical_class(4);
        // adjunction on a (-1)-curve
        assert_eq!(intersect(&k, &DivisorClass::basis(4, 2)).unwrap(), r(-1));
    }

    #[test]
    fn lemma1_examples() {
        assert!(lemma1_nonneg(&DivisorClass::from_i64(&[3, -2, -1, -1])).unwrap());
        assert!(!lemma1_nonneg(&DivisorClass::from_i64(&[2, -2, -1, -1])).unwrap());
        assert!(lemma1_nonneg(&DivisorClass::from_i64(&[1, 0, 0])).unwrap());
        assert_eq!(lemma1_nonneg(&DivisorClass::from_i64(&[0, -1])), Err(Error::NonPositiveDegree));
        assert_eq!(lemma1_nonneg(&DivisorClass::from_i64(&[2, -1, 1])), Err(Error::NegativeMultiplicity { index: 2 }));
    }

    #[test]
    fn samples_lie_in_q() {
        let h = DivisorClass::basis(5, 0);
        for x in sample_Q(5, 1000, 42) {
            assert!(!x.self_intersection().is_negative());
            assert!(!intersect(&x, &h).unwrap().is_negative());
        }
        let boundary = sample_Q(5, 2, 1);
        assert_eq!(boundary[0].self_intersection(), r(0));
    }

    #[test]
    fn probe_finds_negative_pairing() {
        let d = DivisorClass::from_i64(&[2, -2, -1, -1]);
        let x = negative_probe(&d).unwrap();
        assert!(!x.self_intersection().is_negative());
        assert!(intersect(&d, &x).unwrap().is_negative());
        assert!(negative_probe(&DivisorClass::from_i64(&[3, -2, -1, -1])).is_none());
    }

    #[test]
    fn decomposition_of_cusp() {
        let c = cusp(2);
        let f = d_family(&c);
        for j in 0..=3 {
            let coeffs = effective_decomposition(&c, j).unwrap();
            assert!(coeffs.iter().all(|x| !x.is_negative()));
            assert_eq!(assemble_strict(&c, &coeffs), f.divisors[j]);
        }
        let m1 = Configuration::free_chain(1, 1).unwrap();
        assert_eq!(effective_decomposition(&m1, 1).unwrap(), ints(&[1, 0]));
        assert_eq!(effective_decomposition(&cusp(1), 3), Err(Error::NotNonPositive));
    }
}
