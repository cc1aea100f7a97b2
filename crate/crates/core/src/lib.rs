//! Singularity probabilities of random circulant Bernoulli matrices.
//!
//! An `n x n` circulant matrix with first row `c` is identified with the
//! polynomial `f(x) = sum c_j x^j` in `Z[x]/(x^n - 1)`; it is singular exactly
//! when some cyclotomic factor `Phi_d`, `d | n`, divides `f`. The crate offers
//! three views of the probability that this happens when the entries are
//! i.i.d. Bernoulli(`q`) (binary `{0,1}` or signed `{-1,1}`):
//!
//! * [`singexact`]: exact rationals, per divisor and for the union, via closed
//!   forms, lattice enumeration in the ideal `Phi_d R_d`, and brute force.
//! * [`asym`]: large-`n` approximations driven by the smallest prime divisor.
//! * [`mcsim`]: seeded Monte-Carlo estimates with exact per-sample tests.
//!
//! [`polycyc`] and [`binomstats`] hold the polynomial and binomial machinery
//! underneath; [`io`] the CSV/JSON surfaces and [`verify`] the invariant
//! suites exposed by the command-line tool.

pub mod asym;
pub mod binomstats;
mod error;
pub mod io;
pub mod mcsim;
pub mod polycyc;
pub mod singexact;
pub mod verify;

pub use error::{BudgetKind, Error, Result};

use serde::{Deserialize, Serialize};

/// Entry alphabet of the random first row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Entries in `{0, 1}`.
    Binary,
    /// Entries in `{-1, 1}`; a bit `b` maps to `2b - 1`.
    Signed,
}

impl Model {
    pub fn is_signed(self) -> bool {
        matches!(self, Model::Signed)
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::Binary => "binary",
            Model::Signed => "signed",
        })
    }
}

/// Work limits shared by the exact routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Candidate vectors in a lattice box enumeration.
    pub enumeration: u64,
    /// First rows visited by exhaustive union computation.
    pub brute_force: u64,
    /// `n * m` term-power operations in an exact power sum.
    pub power_sum: u64,
}

impl Budgets {
    pub const DEFAULT_ENUMERATION: u64 = 10_000_000;
    pub const DEFAULT_BRUTE_FORCE: u64 = 1 << 26;
    pub const DEFAULT_POWER_SUM: u64 = 200_000;
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enumeration: Self::DEFAULT_ENUMERATION,
            brute_force: Self::DEFAULT_BRUTE_FORCE,
            power_sum: Self::DEFAULT_POWER_SUM,
        }
    }
}
