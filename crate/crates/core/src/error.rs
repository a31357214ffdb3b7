use thiserror::Error;

use crate::instances::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("oracle cap exceeded: {0}")]
    OracleCap(String),

    #[error("search budget exceeded after {0} node expansions")]
    SearchBudget(u64),

    #[error("empty formula")]
    EmptyFormula,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("trivially unsolvable: {0}")]
    TriviallyUnsolvable(String),

    #[error("invalid solution: {}", join_violations(.0))]
    InvalidSolution(Vec<Violation>),

    #[error("invalid instance: {}", join_violations(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("construction consistency error: {0}")]
    Construction(String),

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
