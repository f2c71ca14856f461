use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("radial moment m_{index} is not positive")]
    NonPositiveMoment { index: usize },

    #[error("m_0 must equal 1, got {0}")]
    NotNormalized(String),

    #[error("moment index {index} exceeds the available range 0..={available}")]
    OutOfRange { index: usize, available: usize },

    #[error("degenerate measure: Hankel matrix of sector {sector} and size {size} is not positive definite")]
    DegenerateMeasure { sector: usize, size: usize },

    #[error("quadrature total mass {0} deviates from 1")]
    NotAProbability(f64),

    #[error("z·P_{{{k},{l}}} leaves the two-term span (residual {residual})")]
    RecurrenceViolation { k: usize, l: usize, residual: f64 },

    #[error("alpha table lacks entry ({k}, {l})")]
    MissingAlpha { k: usize, l: usize },

    #[error("vacuum moment of order ({k}, {l}) needs cutoff >= {}, got {cutoff}", k + l)]
    CutoffTooSmall { k: usize, l: usize, cutoff: usize },

    #[error("alpha table is incomplete: {0}")]
    IncompleteTable(String),

    #[error("alpha entry ({k}, {l}) is not positive")]
    NonPositiveEntry { k: usize, l: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid measure descriptor: {0}")]
    InvalidDescriptor(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
