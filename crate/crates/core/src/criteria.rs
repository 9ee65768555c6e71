//! Decision procedures for non-positivity, negativity, closedness of the
//! characteristic cone (finite generation of the Cox ring) and the sign of
//! the anticanonical Iitaka dimension.
//!
//! The boundary cases `D_i² = 0` need the Iitaka dimension of `D_i`, decided
//! through the Abhyankar–Moh semigroup condition on the sequence
//! `δ_0, δ_1, ...` of values at infinity. That branch assumes characteristic
//! zero and a generic realization; over a prime field it reports
//! [`Error::Unsupported`].

use crate::error::{Error, Result};
use crate::germ::Field;
use crate::picard::{canonical_class, d_family, intersect, line_class, strict_class, DFamily, DivisorClass};
use crate::valuation::{
    configuration_from_full_contact, contact_invariants, semigroup_contains, Configuration, ContactInvariants,
};
use crate::Int;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A decision together with the data that justifies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub decision: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `d_m² >= β̄_{g+1}`.
    Nonpositive { d_m_squared: Int, terminal: Int, self_intersection: Int },
    /// Strict inequality, or equality with `κ(D_m) = 0`.
    Negative { d_m_squared: Int, terminal: Int, kappa: Option<IitakaClass> },
    /// Per index `2..=m`: `D_i² > 0`, or `D_i² = 0` and `κ(D_i) > 0`.
    Cox { entries: Vec<CoxEntry> },
    /// `D_i · K_X` for `i = 0..=m`; a positive one rules out effective
    /// multiples of `-K_X`.
    Anticanonical { pairings: Vec<Int>, first_positive: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxEntry {
    pub index: usize,
    pub self_intersection: Int,
    pub kappa: Option<IitakaClass>,
}

impl CoxEntry {
    fn holds(&self) -> bool {
        self.self_intersection.is_positive()
            || (self.self_intersection.is_zero() && self.kappa.as_ref().is_some_and(|k| k.kappa > Kappa::Zero))
    }
}

impl Verdict {
    /// Re-derives the decision from the certificate alone.
    pub fn recheck(&self) -> bool {
        match &self.certificate {
            Certificate::Nonpositive { d_m_squared, terminal, self_intersection } => {
                *self_intersection == d_m_squared - terminal && self.decision == (d_m_squared >= terminal)
            }
            Certificate::Negative { d_m_squared, terminal, kappa } => {
                let expected = match d_m_squared.cmp(terminal) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => match kappa {
                        Some(k) => k.kappa == Kappa::Zero,
                        None => return false,
                    },
                };
                self.decision == expected
            }
            Certificate::Cox { entries } => {
                let shaped = entries.iter().all(|e| e.kappa.is_some() == e.self_intersection.is_zero());
                shaped && self.decision == entries.iter().all(CoxEntry::holds)
            }
            Certificate::Anticanonical { pairings, first_positive } => {
                let first = pairings.iter().position(|p| p.is_positive());
                first == *first_positive && self.decision == first.is_some()
            }
        }
    }
}

/// Theorem-level non-positivity: `d_m² >= β̄_{g+1}`.
pub fn decide_nonpositive(config: &Configuration) -> Verdict {
    let family = d_family(config);
    let inv = contact_invariants(config);
    nonpositive_from(&family, &inv)
}

fn nonpositive_from(family: &DFamily, inv: &ContactInvariants) -> Verdict {
    let d_m_squared = family.d_m() * family.d_m();
    let terminal = inv.terminal().clone();
    Verdict {
        decision: d_m_squared >= terminal,
        certificate: Certificate::Nonpositive { self_intersection: &d_m_squared - &terminal, d_m_squared, terminal },
    }
}

fn is_nonpositive(config: &Configuration) -> bool {
    decide_nonpositive(config).decision
}

/// Generators of the (regular) cone of curves and of its dual nef cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    /// `L~, E_1, ..., E_m` in the total basis.
    pub ne: Vec<DivisorClass>,
    /// `D_0, ..., D_m`.
    pub nef: Vec<DivisorClass>,
}

impl ConeGenerators {
    /// `nef[i] · ne[j]`.
    pub fn pairing_matrix(&self) -> Vec<Vec<Int>> {
        self.nef
            .iter()
            .map(|d| self.ne.iter().map(|b| intersect(d, b).expect("same size").to_integer()).collect())
            .collect()
    }
}

pub fn cone_generators(config: &Configuration) -> Result<ConeGenerators> {
    if !is_nonpositive(config) {
        return Err(Error::NotRegular);
    }
    let mut ne = vec![line_class(config)];
    ne.extend((1..=config.m()).map(|i| strict_class(config, i)));
    Ok(ConeGenerators { ne, nef: d_family(config).divisors })
}

/// Nefness against the generators of a regular cone of curves.
pub fn is_nef(config: &Configuration, divisor: &DivisorClass) -> Result<bool> {
    let cone = cone_generators(config)?;
    for g in &cone.ne {
        if intersect(divisor, g)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Candidate generators `δ_0, δ_1, ...` of the semigroup at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSequence {
    pub delta: Vec<Int>,
}

impl DeltaSequence {
    pub fn new(delta: Vec<Int>) -> Self {
        DeltaSequence { delta }
    }

    /// `gcd(δ_0, ..., δ_i)` for each `i`.
    pub fn gcd_chain(&self) -> Vec<Int> {
        let mut acc = Int::zero();
        self.delta
            .iter()
            .map(|d| {
                acc = acc.gcd(d);
                acc.clone()
            })
            .collect()
    }
}

/// `δ_0 = D_m · D_0 = d_m`, `δ_1 = D_m · D_1`, then `D_m · D_k` for the free
/// points `p_k` that open each characteristic pair. These are `-ν` of `x`,
/// `y` and of the curves at infinity whose strict transforms are the
/// successive maximal contact curvettes. Entries are taken until their gcd
/// reaches 1.
pub fn delta_sequence(config: &Configuration) -> Result<DeltaSequence> {
    let family = d_family(config);
    let inv = contact_invariants(config);
    let dm = &family.divisors[config.m()];
    let mut indices = vec![0];
    if config.m() >= 2 || family.d_m() != &Int::one() {
        indices.push(1);
    }
    indices.extend(inv.pair_points.iter().copied());
    let mut delta = Vec::new();
    let mut gcd = Int::zero();
    for k in indices {
        let value = intersect(dm, &family.divisors[k])?.to_integer();
        if !value.is_positive() {
            return Err(Error::NonPositiveDelta { index: delta.len() });
        }
        gcd = gcd.gcd(&value);
        delta.push(value);
        if gcd.is_one() {
            break;
        }
    }
    Ok(DeltaSequence { delta })
}

/// One stage of the semigroup test: `n_i δ_i ∈ <δ_0, ..., δ_{i-1}>` with
/// `n_i = e_{i-1} / e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmStage {
    pub index: usize,
    pub multiplier: Int,
    pub value: Int,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmCheck {
    pub stages: Vec<AmStage>,
    pub realizable: bool,
}

/// The Abhyankar–Moh semigroup condition with its transcript.
pub fn am_check(delta: &DeltaSequence) -> AmCheck {
    let e = delta.gcd_chain();
    let mut stages = Vec::new();
    for i in 1..delta.delta.len() {
        let multiplier = &e[i - 1] / &e[i];
        let value = &multiplier * &delta.delta[i];
        let contained = semigroup_contains(&delta.delta[..i], &value);
        stages.push(AmStage { index: i, multiplier, value, contained });
    }
    let realizable = stages.iter().all(|s| s.contained);
    AmCheck { stages, realizable }
}

pub fn am_realizable(delta: &DeltaSequence) -> bool {
    am_check(delta).realizable
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kappa {
    MinusInfinity,
    Zero,
    One,
    Two,
}

impl std::fmt::Display for Kappa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kappa::MinusInfinity => "-inf",
            Kappa::Zero => "0",
            Kappa::One => "1",
            Kappa::Two => "2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KappaBasis {
    Big,
    AmRealizable,
    AmObstructed,
}

impl KappaBasis {
    pub fn as_str(&self) -> &'static str {
        match self {
            KappaBasis::Big => "big",
            KappaBasis::AmRealizable => "am-realizable",
            KappaBasis::AmObstructed => "am-obstructed",
        }
    }
}

/// Iitaka dimension of some `D_i` and how it was decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IitakaClass {
    pub kappa: Kappa,
    pub basis: KappaBasis,
    /// The δ-sequence of the truncation, when the boundary branch ran.
    pub delta: Option<Vec<Int>>,
}

/// `κ(D_i)` over a field of characteristic zero.
pub fn kappa(config: &Configuration, i: usize) -> Result<IitakaClass> {
    kappa_over(config, i, &Field::Rationals)
}

pub fn kappa_over(config: &Configuration, i: usize, field: &Field) -> Result<IitakaClass> {
    if i == 0 || i > config.m() {
        return Err(Error::IndexOutOfRange { index: i, m: config.m() });
    }
    if !is_nonpositive(config) {
        return Err(Error::NotNonPositive);
    }
    let family = d_family(config);
    let sq = family.self_intersection(i);
    if sq.is_positive() {
        return Ok(IitakaClass { kappa: Kappa::Two, basis: KappaBasis::Big, delta: None });
    }
    debug_assert!(sq.is_zero(), "non-positive valuations have nef D_i");
    if let Field::Prime(p) = field {
        return Err(Error::Unsupported(format!(
            "the boundary case D_{i}^2 = 0 is only decided in characteristic zero (field F_{p})"
        )));
    }
    let truncated = config.truncate(i)?;
    match delta_sequence(&truncated) {
        Ok(delta) => {
            let realizable = am_realizable(&delta);
            Ok(IitakaClass {
                kappa: if realizable { Kappa::One } else { Kappa::Zero },
                basis: if realizable { KappaBasis::AmRealizable } else { KappaBasis::AmObstructed },
                delta: Some(delta.delta),
            })
        }
        Err(Error::NonPositiveDelta { .. }) => {
            Ok(IitakaClass { kappa: Kappa::Zero, basis: KappaBasis::AmObstructed, delta: None })
        }
        Err(e) => Err(e),
    }
}

pub fn decide_negative(config: &Configuration) -> Result<Verdict> {
    decide_negative_over(config, &Field::Rationals)
}

/// `d_m² > β̄_{g+1}`, or equality with `κ(D_m) = 0`.
pub fn decide_negative_over(config: &Configuration, field: &Field) -> Result<Verdict> {
    let family = d_family(config);
    let inv = contact_invariants(config);
    let d_m_squared = family.d_m() * family.d_m();
    let terminal = inv.terminal().clone();
    let (decision, kappa) = match d_m_squared.cmp(&terminal) {
        std::cmp::Ordering::Greater => (true, None),
        std::cmp::Ordering::Less => (false, None),
        std::cmp::Ordering::Equal => {
            let k = kappa_over(config, config.m(), field)?;
            (k.kappa == Kappa::Zero, Some(k))
        }
    };
    Ok(Verdict { decision, certificate: Certificate::Negative { d_m_squared, terminal, kappa } })
}

pub fn decide_cox(config: &Configuration) -> Result<Verdict> {
    decide_cox_over(config, &Field::Rationals)
}

/// Closedness of the characteristic cone, equivalently finite generation of
/// the Cox ring, for non-positive valuations.
pub fn decide_cox_over(config: &Configuration, field: &Field) -> Result<Verdict> {
    if !is_nonpositive(config) {
        return Err(Error::NotNonPositive);
    }
    let family = d_family(config);
    let mut entries = Vec::new();
    for i in 2..=config.m() {
        let sq = family.self_intersection(i);
        let kappa = if sq.is_zero() { Some(kappa_over(config, i, field)?) } else { None };
        entries.push(CoxEntry { index: i, self_intersection: sq, kappa });
    }
    let decision = entries.iter().all(CoxEntry::holds);
    Ok(Verdict { decision, certificate: Certificate::Cox { entries } })
}

/// Whether some nef `D_i` pairs positively with `K_X`, which forces the
/// anticanonical Iitaka dimension to be `-inf`.
pub fn anticanonical_negative_infinity(config: &Configuration) -> Result<Verdict> {
    if !is_nonpositive(config) {
        return Err(Error::NotNonPositive);
    }
    let k = canonical_class(config.m());
    let pairings: Vec<Int> =
        d_family(config).divisors.iter().map(|d| intersect(d, &k).expect("same size").to_integer()).collect();
    let first_positive = pairings.iter().position(|p| p.is_positive());
    Ok(Verdict {
        decision: first_positive.is_some(),
        certificate: Certificate::Anticanonical { pairings, first_positive },
    })
}

/// All deciders on one configuration. The later three are `None` when the
/// valuation is not non-positive, except `negative`, which is then decided
/// `false` outright.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decisions {
    pub nonpositive: Verdict,
    pub negative: Verdict,
    pub cox: Option<Verdict>,
    pub anticanonical: Option<Verdict>,
}

pub fn decide_all(config: &Configuration, field: &Field) -> Result<Decisions> {
    let nonpositive = decide_nonpositive(config);
    let negative = decide_negative_over(config, field)?;
    let (cox, anticanonical) = if nonpositive.decision {
        (Some(decide_cox_over(config, field)?), Some(anticanonical_negative_infinity(config)?))
    } else {
        (None, None)
    };
    Ok(Decisions { nonpositive, negative, cox, anticanonical })
}

/// A member of the two-parameter family with `r >= a >= 4`,
/// `gcd(a, r + 1) = 1` and line contact `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub a: u64,
    pub r: u64,
    pub config: Configuration,
    pub beta_bar: Vec<Int>,
    pub decisions: Decisions,
    pub delta: DeltaSequence,
    pub am: AmCheck,
}

/// `β̄ = (a, a r² - r - 1, a (a r² - r - 1) + 1)`, `s = r`.
pub fn am_family(a: u64, r: u64) -> Result<FamilyMember> {
    if a < 4 || r < a {
        return Err(Error::PreconditionViolated(format!("need r >= a >= 4, got a = {a}, r = {r}")));
    }
    if a.gcd(&(r + 1)) != 1 {
        return Err(Error::PreconditionViolated(format!(
            "need gcd(a, r + 1) = 1, got gcd({a}, {}) = {}",
            r + 1,
            a.gcd(&(r + 1))
        )));
    }
    let (ai, ri) = (Int::from(a), Int::from(r));
    let b1 = &ai * &ri * &ri - &ri - 1;
    let b2 = &ai * &b1 + 1;
    let beta_bar = vec![ai, b1, b2];
    let s = usize::try_from(r).map_err(|_| Error::PreconditionViolated("r too large".into()))?;
    let config = configuration_from_full_contact(&beta_bar, s)?;
    let decisions = decide_all(&config, &Field::Rationals)?;
    let delta = delta_sequence(&config)?;
    let am = am_check(&delta);
    Ok(FamilyMember { a, r, config, beta_bar, decisions, delta, am })
}
