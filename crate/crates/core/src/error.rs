use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. Each variant has a stable
/// machine-readable name, see [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rational function is not proper: numerator degree {numer} >= denominator degree {denom}")]
    Improper { numer: usize, denom: usize },

    #[error("denominator is the zero polynomial")]
    ZeroDenominator,

    #[error("insufficient moments: moment s_{needed} required but only {available} given")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("sequence has no normal index within the available data")]
    NoNormalIndex,

    #[error("tail parameter has the wrong asymptotic class: {0}")]
    TauClass(String),

    #[error("assembled solution has a zero denominator")]
    Degenerate,

    #[error("shift {alpha} is singular at continued-fraction step {step}")]
    AlphaSingular { alpha: String, step: usize },

    #[error("multinomial parts sum to {sum}, expected {k}")]
    PartsSum { k: usize, sum: usize },

    #[error("no common normal index exists for all associated sequences")]
    NoCommonNormalIndex,

    #[error("associated sequence {branch:?} is not regular (first failing normal index {witness})")]
    NotRegular { branch: Vec<usize>, witness: usize },

    #[error("strategy {strategy} does not support {parity} data")]
    UnsupportedParity {
        strategy: &'static str,
        parity: &'static str,
    },

    #[error("evaluation point hits a pole")]
    Pole,

    #[error("invalid input: {0}")]
    Schema(String),
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Improper { .. } => "improper",
            Error::ZeroDenominator => "zero-denominator",
            Error::InsufficientMoments { .. } => "insufficient-moments",
            Error::NoNormalIndex => "no-normal-index",
            Error::TauClass(_) => "tau-class",
            Error::Degenerate => "degenerate",
            Error::AlphaSingular { .. } => "alpha-singular",
            Error::PartsSum { .. } => "parts-sum",
            Error::NoCommonNormalIndex => "no-common-normal-index",
            Error::NotRegular { .. } => "not-regular",
            Error::UnsupportedParity { .. } => "unsupported-parity",
            Error::Pole => "pole",
            Error::Schema(_) => "schema",
        }
    }
}
