use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,

    #[error("composition sum {sum} is not a multiple of {modulus}")]
    SumNotMultiple { sum: u32, modulus: u32 },

    #[error("operation requires distinct roots, but a repeated root was certified")]
    RepeatedRoots,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("root refinement exhausted its iteration budget (achieved radius 2^-{achieved_bits})")]
    RefinementBudget { achieved_bits: u32 },

    #[error("precision {bits} bits insufficient to separate residuals; retry higher")]
    PrecisionInsufficient { bits: u32 },

    #[error("non-integer value where an integer was forced: {0}")]
    NonInteger(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
