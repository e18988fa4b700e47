use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("taylor model order {order} exceeds the maximum {max}")]
    OrderOverflow { order: usize, max: usize },
    #[error("taylor model degree {0} is even; an odd degree is required")]
    Parity(usize),

    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("sign of {0} is not certified")]
    SignAmbiguous(String),
    #[error("certified signs contradict the requested mode: {0}")]
    ModeMismatch(String),

    #[error("orthogonality precondition violated: 8ms = {value} >= 1")]
    LemmaPrecondition { value: f64 },
    #[error("spectral separation failed: {0}")]
    SeparationFailure(String),
    #[error("proximity to a single eigenvalue is not certified: {0}")]
    ProximityUncertified(String),
    #[error("expected a positive value: {0}")]
    NonPositive(String),
    #[error("numeric backend failure: {0}")]
    Numeric(String),

    #[error("charge {index} lies inside the closed triangle")]
    ChargeInsideDomain { index: usize },
    #[error("no eigenvalue dip in bracket: smallest singular value {smin:e} exceeds {ceiling:e}")]
    NoDip { smin: f64, ceiling: f64 },
    #[error("segment passes through a charge")]
    SegmentThroughCharge,

    #[error("boundary subdivision did not converge within depth {depth}")]
    NonconvergentSubdivision { depth: u32 },
    #[error("every grid triangle has a vanishing lower bound")]
    SignTestFailure,
    #[error("grid triangle area is not below the nodal-domain area threshold: {0}")]
    FaberKrahn(String),
    #[error("tension too large to certify an enclosure: denominator {0}")]
    DenominatorNonpositive(String),
    #[error("near-set isolation failed: {0}")]
    NearSet(String),

    #[error("sign undecided: quotient enclosure {enclosure} meets threshold {threshold}")]
    SignUndecided { enclosure: String, threshold: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enclosures {first} and {second} overlap")]
    Overlap { first: usize, second: usize },
    #[error("enclosure {index} is not below the certified lower bound {bound}")]
    GapInsufficient { index: usize, bound: String },
    #[error("incomplete coverage: missing {}", .0.join(", "))]
    IncompleteCoverage(Vec<String>),
    #[error("contradictory verdict: {0}")]
    Contradiction(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
