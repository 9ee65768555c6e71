use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration length is invalid: {0}")]
    BadLength(String),
    #[error("point {position} cannot be satellite to point {target}")]
    IllegalSatelliteTarget { position: usize, target: usize },
    #[error("point {position} lies on the line at infinity but is satellite")]
    LineThroughSatellite { position: usize },
    #[error("point {position} must be {expected}")]
    MisplacedPoint { position: usize, expected: &'static str },
    #[error("index {index} outside 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("invalid maximal contact sequence: {0}")]
    InvalidContactSequence(String),
    #[error("line contact s = {s} exceeds the initial free chain of length {chain}")]
    InconsistentLineContact { s: usize, chain: usize },
    #[error("divisor classes of different sizes ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("divisor degree must be positive")]
    NonPositiveDegree,
    #[error("divisor has a negative multiplicity at E{index}*")]
    NegativeMultiplicity { index: usize },
    #[error("the valuation is positive on some polynomial (d_m^2 < terminal maximal contact value)")]
    NotNonPositive,
    #[error("the cone of curves is not regular")]
    NotRegular,
    #[error("delta sequence has a non-positive entry at position {index}")]
    NonPositiveDelta { index: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("invalid free direction at point {position}: {reason}")]
    InvalidDirection { position: usize, reason: String },
    #[error("the zero germ has no value")]
    ZeroGerm,
    #[error("the zero polynomial has no value")]
    ZeroPolynomial,
    #[error("polynomial is not in Gamma: {0}")]
    NotInGamma(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
