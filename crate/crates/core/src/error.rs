use crate::expr::Var;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot differentiate u with respect to {0}: no conformal factor registered")]
    MissingConformalFactor(Var),
    #[error("conformal factor must be a real polynomial without u or sigma")]
    InvalidConformalFactor,
    #[error("integrand contains u")]
    UBearingIntegrand,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("linear system is inconsistent")]
    InconsistentSystem,
    #[error("division does not clear back to the Laurent ring")]
    NotInRing,
    #[error("structure invariant violated: {0}")]
    StructureInvariant(&'static str),
    #[error("bidegree ({0},{1}) is not a Rumin space")]
    InvalidBidegree(u8, u8),
    #[error("trace-free condition violated in bidegree ({0},{1})")]
    TraceCondition(u8, u8),
    #[error("component tensor does not match bidegree ({0},{1})")]
    ShapeMismatch(u8, u8),
    #[error("form is not in the Rumin subspace of degree {0}")]
    NotRumin(usize),
    #[error("operator {op} is not defined on bidegree ({p},{q})")]
    WrongBidegree { op: &'static str, p: u8, q: u8 },
    #[error("argument is not closed under {0}")]
    NotClosed(&'static str),
    #[error("s-expression parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
