//! Structured reports, their text rendering and the dual graph export.
//!
//! Reports are plain data that serialize to JSON with exact numbers (see
//! [`Num`]); `parse(emit(report)) == report` for every report.

mod dot;
mod format;
mod text;

pub use dot::export_dot;
pub use format::{emit_config, nums, parse_config, ConfigDoc, Frac, Num, PointDoc, SatelliteDoc};
pub use text::render_text;

use crate::criteria::{
    am_check, decide_all, delta_sequence, AmCheck, Certificate, CoxEntry, Decisions, IitakaClass, Verdict,
};
use crate::error::{Error, Result};
use crate::germ::Field;
use crate::picard::{canonical_class, d_family, intersect};
use crate::valuation::{contact_invariants, Configuration};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsDoc {
    pub g: usize,
    pub beta_bar: Vec<Num>,
    pub puiseux: Vec<Frac>,
    pub e: Vec<Num>,
    pub n: Vec<Num>,
    pub multiplicities: Vec<Num>,
    pub pair_points: Vec<usize>,
    pub trailing_free: usize,
    pub proximity_matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DFamilyDoc {
    /// `d_1, ..., d_m`.
    pub d: Vec<Num>,
    /// `D_1², ..., D_m²`.
    pub self_intersections: Vec<Num>,
    /// Coefficients of `D_0, ..., D_m` over `E_0*, ..., E_m*`.
    pub divisors: Vec<Vec<Num>>,
    /// `D_0 · K_X, ..., D_m · K_X`.
    pub canonical_pairings: Vec<Num>,
}

/// A verdict as reported: decided, or not applicable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Decided(bool),
    NotApplicable,
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Outcome::Decided(b) => s.serialize_bool(*b),
            Outcome::NotApplicable => s.serialize_str("not-applicable"),
        }
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Outcome, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Bool(b) => Ok(Outcome::Decided(b)),
            serde_json::Value::String(s) if s == "not-applicable" => Ok(Outcome::NotApplicable),
            other => Err(de::Error::custom(format!("invalid verdict {other}"))),
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Decided(b) => write!(f, "{b}"),
            Outcome::NotApplicable => f.write_str("not-applicable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictsDoc {
    pub nonpositive: Outcome,
    pub negative: Outcome,
    pub characteristic_cone_closed: Outcome,
    pub cox_finitely_generated: Outcome,
    pub anticanonical_minus_infinity: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaDoc {
    pub kappa: String,
    pub basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Num>>,
}

impl From<&IitakaClass> for KappaDoc {
    fn from(k: &IitakaClass) -> Self {
        KappaDoc {
            kappa: k.kappa.to_string(),
            basis: k.basis.as_str().to_string(),
            delta: k.delta.as_deref().map(nums),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalityDoc {
    pub d_m_squared: Num,
    pub terminal: Num,
    pub self_intersection: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NegativeDoc {
    pub d_m_squared: Num,
    pub terminal: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<KappaDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoxEntryDoc {
    pub index: usize,
    pub self_intersection: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<KappaDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnticanonicalDoc {
    pub pairings: Vec<Num>,
    pub first_positive: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmStageDoc {
    pub index: usize,
    pub multiplier: Num,
    pub value: Num,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaDoc {
    pub delta: Vec<Num>,
    pub stages: Vec<AmStageDoc>,
    pub realizable: bool,
}

impl DeltaDoc {
    pub fn new(delta: &[crate::Int], check: &AmCheck) -> Self {
        DeltaDoc {
            delta: nums(delta),
            stages: check
                .stages
                .iter()
                .map(|s| AmStageDoc {
                    index: s.index,
                    multiplier: (&s.multiplier).into(),
                    value: (&s.value).into(),
                    contained: s.contained,
                })
                .collect(),
            realizable: check.realizable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificatesDoc {
    pub nonpositive: InequalityDoc,
    pub negative: NegativeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cox: Option<Vec<CoxEntryDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anticanonical: Option<AnticanonicalDoc>,
    /// Absent when some value at infinity is not positive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaDoc>,
}

/// Everything computed for one configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub configuration: ConfigDoc,
    pub invariants: InvariantsDoc,
    pub d_family: DFamilyDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<CertificatesDoc>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Invariants, proximity data and the `D_i` family.
pub fn analyze(config: &Configuration) -> Report {
    let inv = contact_invariants(config);
    let family = d_family(config);
    let k = canonical_class(config.m());
    let invariants = InvariantsDoc {
        g: inv.g(),
        beta_bar: nums(&inv.beta_bar),
        puiseux: inv.puiseux.iter().cloned().map(Frac).collect(),
        e: nums(&inv.e),
        n: nums(&inv.n),
        multiplicities: nums(&inv.mult),
        pair_points: inv.pair_points.clone(),
        trailing_free: inv.trailing_free,
        proximity_matrix: config.proximity_matrix(),
    };
    let d_family = DFamilyDoc {
        d: nums(&family.d),
        self_intersections: nums(&family.self_int),
        divisors: family.divisors.iter().map(|d| nums(&d.to_ints().expect("integral classes"))).collect(),
        canonical_pairings: family
            .divisors
            .iter()
            .map(|d| Num(intersect(d, &k).expect("same size").to_integer()))
            .collect(),
    };
    Report {
        configuration: ConfigDoc::from_config(config),
        invariants,
        d_family,
        field: None,
        verdicts: None,
        certificates: None,
    }
}

fn inequality(v: &Verdict) -> InequalityDoc {
    match &v.certificate {
        Certificate::Nonpositive { d_m_squared, terminal, self_intersection } => InequalityDoc {
            d_m_squared: d_m_squared.into(),
            terminal: terminal.into(),
            self_intersection: self_intersection.into(),
        },
        _ => unreachable!("non-positivity certificate"),
    }
}

fn negative_doc(v: &Verdict) -> NegativeDoc {
    match &v.certificate {
        Certificate::Negative { d_m_squared, terminal, kappa } => NegativeDoc {
            d_m_squared: d_m_squared.into(),
            terminal: terminal.into(),
            kappa: kappa.as_ref().map(KappaDoc::from),
        },
        _ => unreachable!("negativity certificate"),
    }
}

fn cox_doc(entries: &[CoxEntry]) -> Vec<CoxEntryDoc> {
    entries
        .iter()
        .map(|e| CoxEntryDoc {
            index: e.index,
            self_intersection: (&e.self_intersection).into(),
            kappa: e.kappa.as_ref().map(KappaDoc::from),
        })
        .collect()
}

/// Report with verdicts and certificates.
///
/// When the valuation is not non-positive the other four verdicts are
/// reported as not applicable.
pub fn decide(config: &Configuration, field: &Field) -> Result<Report> {
    let decisions = decide_all(config, field)?;
    Ok(decide_from(config, field, &decisions))
}

pub fn decide_from(config: &Configuration, field: &Field, decisions: &Decisions) -> Report {
    let mut report = analyze(config);
    let nonpositive = decisions.nonpositive.decision;
    let applicable = |b: bool| if nonpositive { Outcome::Decided(b) } else { Outcome::NotApplicable };
    let cox = decisions.cox.as_ref().map(|v| v.decision).unwrap_or(false);
    let verdicts = VerdictsDoc {
        nonpositive: Outcome::Decided(nonpositive),
        negative: applicable(decisions.negative.decision),
        characteristic_cone_closed: applicable(cox),
        cox_finitely_generated: applicable(cox),
        anticanonical_minus_infinity: applicable(decisions.anticanonical.as_ref().map(|v| v.decision).unwrap_or(false)),
    };
    let delta = delta_sequence(config).ok().map(|d| DeltaDoc::new(&d.delta, &am_check(&d)));
    let certificates = CertificatesDoc {
        nonpositive: inequality(&decisions.nonpositive),
        negative: negative_doc(&decisions.negative),
        cox: decisions.cox.as_ref().map(|v| match &v.certificate {
            Certificate::Cox { entries } => cox_doc(entries),
            _ => unreachable!("cox certificate"),
        }),
        anticanonical: decisions.anticanonical.as_ref().map(|v| match &v.certificate {
            Certificate::Anticanonical { pairings, first_positive } => {
                AnticanonicalDoc { pairings: nums(pairings), first_positive: *first_positive }
            }
            _ => unreachable!("anticanonical certificate"),
        }),
        delta,
    };
    report.field = Some(field.to_string());
    report.verdicts = Some(verdicts);
    report.certificates = Some(certificates);
    report
}

/// One member of a family sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyEntry {
    pub a: u64,
    pub r: u64,
    pub report: Report,
    /// The semigroup condition on the values at infinity fails.
    pub delta_obstruction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkippedPair {
    pub a: u64,
    pub r: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FamilyReport {
    pub members: Vec<FamilyEntry>,
    pub skipped: Vec<SkippedPair>,
}

impl FamilyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<FamilyReport> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Report for one `(a, r)`, or the reason it is skipped.
pub fn family_entry(a: u64, r: u64) -> std::result::Result<FamilyEntry, SkippedPair> {
    match crate::criteria::am_family(a, r) {
        Ok(member) => Ok(FamilyEntry {
            a,
            r,
            report: decide_from(&member.config, &Field::Rationals, &member.decisions),
            delta_obstruction: !member.am.realizable,
        }),
        Err(e) => Err(SkippedPair { a, r, reason: e.to_string() }),
    }
}

/// Outcome of a witness search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    /// `positive` or `zero`.
    pub mode: String,
    pub budget: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Num>,
}

/// Value of a polynomial or germ, or a witness search, under one realization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalReport {
    pub configuration: ConfigDoc,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Directions of the free points `p_2, ...` in order.
    pub directions: Vec<String>,
    /// `polynomial`, `germ` or `witness`.
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<EvalReport> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Parse(e.to_string()))
    }
}
