use super::config::{Configuration, Point};
use crate::error::{Error, Result};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest configuration `configuration_from_contact` will build.
pub const MAX_POINTS: usize = 1 << 16;

/// Numerical invariants of a divisorial valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactInvariants {
    /// Maximal contact values `β̄_0, ..., β̄_{g+1}`.
    pub beta_bar: Vec<Int>,
    /// Puiseux exponents `β'_0, ..., β'_{g+1}`.
    pub puiseux: Vec<Rat>,
    /// `e_j = gcd(β̄_0, ..., β̄_j)` for `j = 0..=g`.
    pub e: Vec<Int>,
    /// `N_0 = 0`, `N_j = e_{j-1} / e_j`.
    pub n: Vec<Int>,
    /// Multiplicities of the generic curvette `φ_m`.
    pub mult: Vec<Int>,
    /// Indices of the free points immediately followed by a satellite one
    /// (one per characteristic pair).
    pub pair_points: Vec<usize>,
    /// Free points after the last satellite one.
    pub trailing_free: usize,
}

impl ContactInvariants {
    /// Number of characteristic pairs.
    pub fn g(&self) -> usize {
        self.beta_bar.len() - 2
    }

    /// `β̄_{g+1}`.
    pub fn terminal(&self) -> &Int {
        self.beta_bar.last().expect("non-empty")
    }
}

fn curvette_pairing(outer: &[Int], inner: &[Int]) -> Int {
    outer.iter().zip(inner).map(|(a, b)| a * b).sum()
}

/// Maximal contact values, Puiseux exponents, gcd chain and curvette
/// multiplicities of a configuration.
///
/// `β̄_0` is the multiplicity of the curvette at `p_1`; for each free point
/// `p_k` followed by a satellite one, the next maximal contact value is the
/// intersection multiplicity of the curvette `φ_m` with `φ_k`; the terminal
/// value is `φ_m · φ_m = Σ m_j²`.
pub fn contact_invariants(config: &Configuration) -> ContactInvariants {
    let m = config.m();
    let mult = config.multiplicity_vector(m).expect("m is in range");
    let pair_points: Vec<usize> = (2..m).filter(|&k| !config.is_satellite(k) && config.is_satellite(k + 1)).collect();
    let mut beta_bar = vec![mult[0].clone()];
    for &k in &pair_points {
        let mk = config.multiplicity_vector(k).expect("k is in range");
        beta_bar.push(curvette_pairing(&mult, &mk));
    }
    beta_bar.push(curvette_pairing(&mult, &mult));
    let trailing_free =
        m - config.points().iter().rposition(|p| matches!(p, Point::Satellite(_))).map(|idx| idx + 1).unwrap_or(1);
    let (e, n) = gcd_chain(&beta_bar[..beta_bar.len() - 1]);
    debug_assert!(e.last().map(|x| x.is_one()).unwrap_or(false));
    let puiseux = puiseux_unchecked(&beta_bar, &e, &n);
    ContactInvariants { beta_bar, puiseux, e, n, mult, pair_points, trailing_free }
}

fn gcd_chain(gens: &[Int]) -> (Vec<Int>, Vec<Int>) {
    let mut e = Vec::with_capacity(gens.len());
    let mut n = Vec::with_capacity(gens.len());
    for (j, b) in gens.iter().enumerate() {
        if j == 0 {
            e.push(b.clone());
            n.push(Int::zero());
        } else {
            let next = e[j - 1].gcd(b);
            n.push(&e[j - 1] / &next);
            e.push(next);
        }
    }
    (e, n)
}

fn puiseux_unchecked(beta_bar: &[Int], e: &[Int], n: &[Int]) -> Vec<Rat> {
    let g = beta_bar.len() - 2;
    let mut out = vec![Rat::from_integer(beta_bar[0].clone())];
    for j in 1..=g + 1 {
        let num = &beta_bar[j] - &n[j - 1] * &beta_bar[j - 1];
        out.push(Rat::new(num, e[j - 1].clone()));
    }
    out
}

/// Checks a generator sequence `β̄_0, ..., β̄_g` and returns its gcd chain.
fn check_generators(gens: &[Int]) -> Result<(Vec<Int>, Vec<Int>)> {
    let bad = |msg: String| Err(Error::InvalidContactSequence(msg));
    if gens.is_empty() {
        return bad("empty sequence".into());
    }
    if !gens[0].is_positive() {
        return bad("β̄_0 must be positive".into());
    }
    let (e, n) = gcd_chain(gens);
    let g = gens.len() - 1;
    for j in 1..=g {
        if e[j] >= e[j - 1] {
            return bad(format!("gcd chain does not drop at index {j}"));
        }
    }
    if !e[g].is_one() {
        return bad("gcd chain does not reach 1".into());
    }
    if g >= 1 && gens[1] <= gens[0] {
        return bad("β̄_1 must exceed β̄_0".into());
    }
    for j in 2..=g {
        if gens[j] <= &n[j - 1] * &gens[j - 1] {
            return bad(format!("β̄_{j} must exceed N_{} β̄_{}", j - 1, j - 1));
        }
    }
    Ok((e, n))
}

/// Splits a full sequence `β̄_0, ..., β̄_{g+1}` into generators and the
/// terminal value, checking both.
fn split_full(beta_bar: &[Int]) -> Result<(usize, Vec<Int>, Vec<Int>)> {
    let bad = |msg: &str| Err(Error::InvalidContactSequence(msg.into()));
    if beta_bar.len() < 2 {
        return bad("need at least β̄_0 and a terminal value");
    }
    let mut e = beta_bar[0].clone();
    let mut g = None;
    for (j, b) in beta_bar.iter().enumerate() {
        e = e.gcd(b);
        if e.is_one() {
            g = Some(j);
            break;
        }
    }
    let g = match g {
        Some(g) if g + 2 == beta_bar.len() => g,
        Some(_) => return bad("sequence does not end one step after its gcd reaches 1"),
        None => return bad("gcd chain does not reach 1"),
    };
    let (e, n) = check_generators(&beta_bar[..=g])?;
    let floor = if g == 0 { Int::one() } else { &e[g - 1] * &beta_bar[g] };
    if beta_bar[g + 1] < floor {
        return bad("terminal value is too small");
    }
    Ok((g, e, n))
}

/// Puiseux exponents from a full sequence of maximal contact values.
///
/// `β'_0 = β̄_0` and `β'_j = (β̄_j - N_{j-1} β̄_{j-1}) / e_{j-1}`.
pub fn puiseux_from_contact(beta_bar: &[Int]) -> Result<Vec<Rat>> {
    let (_, e, n) = split_full(beta_bar)?;
    Ok(puiseux_unchecked(beta_bar, &e, &n))
}

/// Inverse of [`puiseux_from_contact`].
pub fn contact_from_puiseux(puiseux: &[Rat]) -> Result<Vec<Int>> {
    let bad = |msg: &str| Err(Error::InvalidContactSequence(msg.into()));
    if puiseux.len() < 2 {
        return bad("need at least two exponents");
    }
    if !puiseux[0].is_integer() {
        return bad("β'_0 must be an integer");
    }
    let mut beta = vec![puiseux[0].to_integer()];
    let mut e = vec![beta[0].clone()];
    let mut n_prev = Int::zero();
    for (j, exp) in puiseux.iter().enumerate().skip(1) {
        let scaled = exp * Rat::from_integer(e[j - 1].clone());
        if !scaled.is_integer() {
            return bad("exponent denominator does not divide the gcd chain");
        }
        let b = scaled.to_integer() + &n_prev * &beta[j - 1];
        let next = e[j - 1].gcd(&b);
        n_prev = &e[j - 1] / &next;
        beta.push(b);
        e.push(next);
    }
    split_full(&beta)?;
    Ok(beta)
}

/// Euclid's algorithm on `(num, den)`: quotients `q_1, ..., q_k` and the
/// remainders that serve as multiplicities of each run.
fn euclid_runs(num: &Int, den: &Int) -> Vec<(Int, Int)> {
    let (mut a, mut b) = (num.clone(), den.clone());
    let mut runs = Vec::new();
    while b.is_positive() {
        let (q, r) = a.div_rem(&b);
        runs.push((q, b.clone()));
        a = b;
        b = r;
    }
    runs
}

fn to_count(q: &Int, current: usize) -> Result<usize> {
    match q.to_usize() {
        Some(q) if current + q <= MAX_POINTS => Ok(q),
        _ => Err(Error::InvalidContactSequence(format!("configuration would exceed {MAX_POINTS} points"))),
    }
}

/// Builds the configuration whose maximal contact generators are `gens`
/// (`β̄_0, ..., β̄_g`, ending where the gcd reaches 1), followed by
/// `trailing_free` free points, with line contact `s`.
pub fn configuration_from_contact(gens: &[Int], s: usize, trailing_free: usize) -> Result<Configuration> {
    let (e, n) = check_generators(gens)?;
    let g = gens.len() - 1;
    let mut points: Vec<Point> = vec![Point::Origin];
    for j in 1..=g {
        let num = &gens[j] - &n[j - 1] * &gens[j - 1];
        let runs = euclid_runs(&num, &e[j - 1]);
        // ends[l] = index of the last point placed once run l is complete
        let mut ends: Vec<usize> = Vec::with_capacity(runs.len());
        for (l, (q, _)) in runs.iter().enumerate() {
            let mut q = to_count(q, points.len())?;
            if j == 1 && l == 0 {
                // the origin opens the first run
                q -= 1;
            }
            for t in 0..q {
                let point = match (l, t) {
                    (0, _) | (1, 0) => Point::Free,
                    (1, _) => Point::Satellite(ends[0]),
                    (_, 0) => Point::Satellite(ends[l - 2]),
                    (_, _) => Point::Satellite(ends[l - 1]),
                };
                points.push(point);
            }
            ends.push(points.len());
        }
    }
    let extra = to_count(&Int::from(trailing_free), points.len())?;
    points.extend(std::iter::repeat_n(Point::Free, extra));
    let chain = points.iter().position(|p| matches!(p, Point::Satellite(_))).unwrap_or(points.len());
    if s == 0 || s > chain {
        return Err(Error::InconsistentLineContact { s, chain });
    }
    let config = Configuration::new(points, s)?;
    debug_assert_eq!(&contact_invariants(&config).beta_bar[..=g], gens);
    Ok(config)
}

/// Like [`configuration_from_contact`] but takes the full sequence
/// `β̄_0, ..., β̄_{g+1}` and derives the trailing free points from the
/// terminal value.
pub fn configuration_from_full_contact(beta_bar: &[Int], s: usize) -> Result<Configuration> {
    let (g, e, _) = split_full(beta_bar)?;
    let floor = if g == 0 { Int::one() } else { &e[g - 1] * &beta_bar[g] };
    let t = &beta_bar[g + 1] - floor;
    let t = to_count(&t, 0)?;
    configuration_from_contact(&beta_bar[..=g], s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Point::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn cusp(s: usize) -> Configuration {
        Configuration::new(vec![Origin, Free, Satellite(1)], s).unwrap()
    }

    #[test]
    fn cusp_invariants() {
        let inv = contact_invariants(&cusp(2));
        assert_eq!(inv.beta_bar, ints(&[2, 3, 6]));
        assert_eq!(inv.e, ints(&[2, 1]));
        assert_eq!(inv.g(), 1);
        assert_eq!(inv.pair_points, vec![2]);
        assert_eq!(inv.trailing_free, 0);
    }

    #[test]
    fn single_point_invariants() {
        let c = Configuration::new(vec![Origin], 1).unwrap();
        let inv = contact_invariants(&c);
        assert_eq!(inv.beta_bar, ints(&[1, 1]));
        assert_eq!(inv.g(), 0);
        assert_eq!(inv.puiseux, vec![rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn two_pairs() {
        let c = Configuration::new(vec![Origin, Free, Satellite(1), Free, Satellite(3)], 1).unwrap();
        let inv = contact_invariants(&c);
        assert_eq!(inv.beta_bar, ints(&[4, 6, 13, 26]));
        assert_eq!(inv.n, ints(&[0, 2, 2]));
    }

    #[test]
    fn puiseux_of_cusp() {
        let p = puiseux_from_contact(&ints(&[2, 3, 6])).unwrap();
        assert_eq!(p, vec![rat(2, 1), rat(3, 2), rat(0, 1)]);
        assert_eq!(p[1].denom(), &Int::from(2));
        assert_eq!(contact_from_puiseux(&p).unwrap(), ints(&[2, 3, 6]));
    }

    #[test]
    fn puiseux_roundtrip_example() {
        let b = ints(&[4, 59, 237]);
        let p = puiseux_from_contact(&b).unwrap();
        assert_eq!(p[1], rat(59, 4));
        assert_eq!(p[2], rat(1, 1));
        assert_eq!(contact_from_puiseux(&p).unwrap(), b);
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(puiseux_from_contact(&ints(&[4, 6, 8, 20])).is_err());
        assert!(puiseux_from_contact(&ints(&[2, 3])).is_err());
        assert!(puiseux_from_contact(&ints(&[3, 2, 6])).is_err());
        assert!(puiseux_from_contact(&ints(&[2, 3, 5])).is_err());
        assert!(puiseux_from_contact(&ints(&[4, 6, 11, 22])).is_err());
    }

    #[test]
    fn builds_cusp() {
        assert_eq!(configuration_from_contact(&ints(&[2, 3]), 2, 0).unwrap(), cusp(2));
    }

    #[test]
    fn builds_single_point() {
        let c = configuration_from_contact(&ints(&[1]), 1, 0).unwrap();
        assert_eq!(c.points(), &[Origin]);
    }

    #[test]
    fn builds_example_family_member() {
        let c = configuration_from_full_contact(&ints(&[4, 59, 237]), 4).unwrap();
        assert_eq!(c.m(), 19);
        let inv = contact_invariants(&c);
        assert_eq!(inv.beta_bar, ints(&[4, 59, 237]));
        assert_eq!(inv.pair_points, vec![15]);
        assert_eq!(&c.multiplicity_vector(19).unwrap()[..4], &ints(&[4, 4, 4, 4])[..]);
    }

    #[test]
    fn line_contact_must_fit() {
        assert_eq!(
            configuration_from_contact(&ints(&[2, 3]), 3, 0),
            Err(Error::InconsistentLineContact { s: 3, chain: 2 })
        );
    }

    #[test]
    fn roundtrip_two_pairs() {
        let c = Configuration::new(vec![Origin, Free, Satellite(1), Free, Satellite(3), Free], 2).unwrap();
        let inv = contact_invariants(&c);
        let back = configuration_from_full_contact(&inv.beta_bar, 2).unwrap();
        assert_eq!(back, c);
    }
}
