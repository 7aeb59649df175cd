use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
///
/// Axiom failures are not errors: verifiers return reports. These variants
/// cover malformed inputs and violated preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible scalars: cyclotomic order {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    NotDivisible { from: u32, to: u32 },
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("rewriting exceeded the step budget of {0}")]
    RewriteBudget(usize),
    #[error("bad presentation: {0}")]
    BadPresentation(String),
    #[error("associator is not diagonal: {0}")]
    NotDiagonal(String),
    #[error("subalgebra closure failure: {0}")]
    Closure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
