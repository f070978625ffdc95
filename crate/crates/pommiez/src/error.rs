use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division left a nonzero remainder: {0}")]
    NonzeroRemainder(String),
    #[error("factored polynomial has a zero root")]
    ZeroRoot,
    #[error("jet centers differ: {0} vs {1}")]
    CenterMismatch(String, String),
    #[error("exponential polynomials expand to jets only at center 0")]
    NonzeroCenterForExpPoly,
    #[error("linear system has no exact solution")]
    NoSolution,
    #[error("canonical functional requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("convolution reconstruction stayed inconsistent after raising the order bound: {0}")]
    ReconstructionInconsistent(String),
    #[error("order too small: {0}")]
    OrderTooSmall(String),
    #[error("jet matrix is singular; differential criterion value {criterion}")]
    SingularJetMatrix { criterion: String },
    #[error("isomorphism criterion failed: functional annihilates g0")]
    CriterionFailed,
    #[error("criterion held but the restricted matrix is singular")]
    RestrictedMatrixSingular,
    #[error("cannot factorize the zero functional")]
    ZeroFunctional,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid scalar literal {0:?}")]
    BadScalar(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
