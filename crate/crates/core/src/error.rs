use thiserror::Error;

use crate::tableau::Var;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("pivot element at ({leave}, {enter}) is zero")]
    ZeroPivot { leave: Var, enter: Var },

    #[error("variable {0} is not basic")]
    NotBasic(Var),

    #[error("variable {0} is not nonbasic")]
    NotNonbasic(Var),

    #[error("single improving edge transformation needs at least two improving columns, got {0}")]
    DegenerateSie(usize),

    #[error("constraint row {0} has a zero h-vector")]
    ZeroRow(Var),

    #[error("dual simplex needs a dual feasible dictionary")]
    NotDualFeasible,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("instance too large to enumerate: {bases} candidate bases (limit {limit})")]
    TooLarge { bases: u128, limit: u128 },

    #[error("cannot summarize an empty sample")]
    Empty,
}
