//! One-stop exact report: per-divisor values, bounds and the union.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::divisor::{divisor_probability, prob_bounds, DivisorBounds, DivisorProbability};
use super::union::{prob_union_bruteforce, union_closed_form, UnionClosedForm};
use crate::binomstats::{check_open_unit_exact, ExactRational};
use crate::polycyc::divisors;
use crate::{Budgets, Error, Model, Result};

/// Which strategy produced `exact_union`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    BruteForce,
    Unavailable,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::BruteForce => "brute-force",
            Provenance::Unavailable => "unavailable",
        })
    }
}

/// A divisor whose value could not be computed, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Unresolved {
    pub d: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityReport {
    pub n: usize,
    #[serde(with = "crate::io::rational_json")]
    pub q: ExactRational,
    pub model: Model,
    #[serde(with = "crate::io::rational_json::option")]
    pub exact_union: Option<ExactRational>,
    pub provenance: Provenance,
    pub per_divisor: Vec<DivisorProbability>,
    pub bounds: Vec<DivisorBounds>,
    #[serde(default)]
    pub unresolved: Vec<Unresolved>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl ProbabilityReport {
    pub fn divisor(&self, d: usize) -> Option<&DivisorProbability> {
        self.per_divisor.iter().find(|p| p.d == d)
    }

    /// Checks `max_d P(d) <= union <= sum_d P(d)` over the resolved
    /// divisors. The upper half is only meaningful when none are missing.
    pub fn sandwich_holds(&self) -> Option<bool> {
        let union = self.exact_union.as_ref()?;
        let max = self.per_divisor.iter().map(|p| &p.value).max()?;
        let sum: BigRational = self.per_divisor.iter().map(|p| &p.value).sum();
        Some(max <= union && (!self.unresolved.is_empty() || *union <= sum))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("report JSON: {e}")))
    }
}

/// Assembles per-divisor values, bounds and the best available union.
///
/// Budget overruns never fail the report; they are recorded in
/// `unresolved`, `notes` and `provenance`.
pub fn report(n: usize, q: &ExactRational, model: Model, budgets: &Budgets) -> Result<ProbabilityReport> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    check_open_unit_exact(q)?;
    let mut per_divisor = Vec::new();
    let mut bounds = Vec::new();
    let mut unresolved = Vec::new();
    let mut notes = Vec::new();
    for d in divisors(n) {
        match divisor_probability(d, n, q, model, budgets.enumeration) {
            Ok(p) => per_divisor.push(p),
            Err(e) if e.is_budget() => unresolved.push(Unresolved { d, reason: e.to_string() }),
            Err(e) => return Err(e),
        }
        if d >= 2 {
            bounds.push(prob_bounds(d, n, q)?);
        }
    }

    let (exact_union, provenance) = if n == 1 {
        // The 1x1 matrix (c_0): singular iff c_0 = 0, impossible for +-1.
        let v = match model {
            Model::Binary => BigRational::one() - q,
            Model::Signed => BigRational::zero(),
        };
        (Some(v), Provenance::ClosedForm)
    } else if let UnionClosedForm::Value(v) = union_closed_form(n, q, model)? {
        (Some(v), Provenance::ClosedForm)
    } else {
        match prob_union_bruteforce(n, q, model, budgets.brute_force) {
            Ok(v) => (Some(v), Provenance::BruteForce),
            Err(e) if e.is_budget() => {
                notes.push(format!("no closed form for n = {n}; {e}"));
                (None, Provenance::Unavailable)
            }
            Err(e) => return Err(e),
        }
    };
    Ok(ProbabilityReport {
        n,
        q: q.clone(),
        model,
        exact_union,
        provenance,
        per_divisor,
        bounds,
        unresolved,
        notes,
    })
}
