use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The configured precision ceiling was reached before a result could be certified.
    #[error("precision exhausted in {context}: could not certify result at {digits} digits")]
    PrecisionExhausted { context: String, digits: u32 },

    /// An iteration that should always converge did not.
    #[error("no convergence in {0}")]
    NonConvergence(String),

    /// Argument outside the domain of a real function (e.g. log of a non-positive number).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u64 },

    #[error("fraction {p}/{q} is not in lowest terms")]
    NotReduced { p: String, q: String },

    /// The distance to the nearest integer cannot be certified because the enclosure is too wide.
    #[error("ambiguous nearest integer: enclosure width {width:e} is not below 1/4")]
    Ambiguous { width: f64 },

    /// A certified value turned out to be an exact rational where an irrational was required.
    #[error("enclosure collapsed to a rational: {0}")]
    CollapsedRational(String),

    /// Every candidate convergent produced a non-positive epsilon.
    #[error("epsilon not certified positive after {tried} convergents")]
    EpsilonNonPositive { tried: usize },

    /// One or more reduction cases failed after all retries and escalations.
    #[error("reduction failed for {} case(s); first: {}", .0.len(), .0.first().map(|c| c.to_string()).unwrap_or_default())]
    Campaign(Vec<CaseFailure>),

    /// A certification step failed, which points at wrong constants or a broken backend.
    #[error("certification failed: {0}")]
    Certification(String),
}

/// Full context for one failed reduction case.
#[derive(Debug, Clone, PartialEq, Error, serde::Serialize)]
#[error("b={base} a={digit} gap={gap:?} after {convergents_tried} convergents at {digits} digits: {reason}")]
pub struct CaseFailure {
    pub base: u32,
    pub digit: u32,
    /// `None` for step-1 cases, `Some(n - m)` for step-2 cases.
    pub gap: Option<u32>,
    pub convergents_tried: usize,
    pub digits: u32,
    pub reason: String,
}

impl Error {
    pub fn is_precision_exhausted(&self) -> bool {
        match self {
            Error::PrecisionExhausted { .. } => true,
            Error::Campaign(cases) => cases.iter().all(|c| c.reason.contains("precision")),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
