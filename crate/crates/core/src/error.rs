use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("negative exponent at position {0}")]
    NegativeExponent(usize),

    #[error("rewrite step budget exceeded while reducing `{word}`")]
    RewriteBudget { word: String },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("element is not in the span of the basis (degree {degree})")]
    NoSolution { degree: u32 },

    #[error("decomposition is not unique in degree {degree}")]
    NonUnique { degree: u32 },

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("invalid Hopf algebra: {0}")]
    InvalidHopf(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("group closure exceeded {0} elements")]
    ClosureCap(usize),

    #[error("bundle error: {0}")]
    Bundle(String),

    #[error("{0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
