use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

/// Named work limits. Every exhaustive routine checks its budget up front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BudgetKind {
    Enumeration,
    BruteForce,
    PowerSum,
    Samples,
}

impl BudgetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BudgetKind::Enumeration => "enumeration",
            BudgetKind::BruteForce => "brute-force",
            BudgetKind::PowerSum => "power-sum",
            BudgetKind::Samples => "samples",
        }
    }
}

impl fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{kind} budget exceeded: {required} units required, limit is {limit}")]
    Budget {
        kind: BudgetKind,
        required: BigUint,
        limit: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("integer overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn budget(kind: BudgetKind, required: impl Into<BigUint>, limit: u64) -> Self {
        Error::Budget {
            kind,
            required: required.into(),
            limit,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
