//! Large-`n` approximations of the singularity probability and their
//! comparison with exact values.
//!
//! The dominant event is divisibility by `Phi_p` for the smallest prime
//! `p = p(n)`, whose probability is `sum_k phi_q(k, n/p)^p`. That sum is the
//! main approximation; its own large-`n` form gives the closed corollary.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomstats::{
    check_open_unit, power_sum_asymptotic, power_sum_exact, power_sum_float, round_sig, to_f64,
    ExactRational, QParam,
};
use crate::polycyc::{is_prime, smallest_prime};
use crate::singexact::{prob_union_bruteforce, union_closed_form, UnionClosedForm};
use crate::{Budgets, Error, Model, Result};

/// Largest `n` for which the main sum is evaluated exactly (rational `q`).
pub const EXACT_MAIN_LIMIT: usize = 4096;
/// Beyond this many terms `n / p(n)`, the main sum is replaced by its
/// power-sum asymptotic.
pub const POWER_SUM_SWITCH: usize = 100_000;
/// Significant digits kept in reported ratios.
pub const RATIO_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// `sum_{k=0}^{n/p} phi_q(k, n/p)^p`.
    MainTheorem,
    /// The main sum with `(2 pi q(1-q) n/p)^(-(p-1)/2) / sqrt(p)` in place
    /// of the explicit terms, used for very large `n / p`.
    MainTheoremPowerSum,
    /// `p^(-1/2) (p / (2 pi q(1-q)))^((p-1)/2) n^(-(p-1)/2)`.
    ClosedFormCorollary,
    /// `2 sqrt(2) / sqrt(pi n)`, the signed model at `q = 1/2`, even `n`.
    SignedCorollary,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::MainTheorem => "main-theorem",
            Formula::MainTheoremPowerSum => "main-theorem-power-sum",
            Formula::ClosedFormCorollary => "closed-form-corollary",
            Formula::SignedCorollary => "signed-corollary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticValue {
    pub n: usize,
    pub q: f64,
    pub model: Model,
    pub value: f64,
    pub formula: Formula,
    /// The approximating expression in exact arithmetic, when evaluated so.
    #[serde(default, with = "crate::io::rational_json::option", skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactRational>,
}

fn smallest_prime_of(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::domain(format!("n must be at least 2, got {n}")));
    }
    Ok(smallest_prime(n).expect("n >= 2 has a prime factor"))
}

/// `sum_{k=0}^{n/p} phi_q(k, n/p)^p`, `p = p(n)`; an equality with the exact
/// probability for prime `n`.
pub fn approx_main(n: usize, q: &QParam) -> Result<AsymptoticValue> {
    let p = smallest_prime_of(n)?;
    let m = n / p;
    let (value, formula, exact) = match q.as_exact() {
        Some(qe) if n <= EXACT_MAIN_LIMIT => {
            let v = power_sum_exact(m, p, qe, Budgets::DEFAULT_POWER_SUM)?;
            (to_f64(&v), Formula::MainTheorem, Some(v))
        }
        _ if m > POWER_SUM_SWITCH => (
            power_sum_asymptotic(m as u64, p as u64, q.value())?,
            Formula::MainTheoremPowerSum,
            None,
        ),
        _ => (power_sum_float(m as u64, p as u64, q.value())?, Formula::MainTheorem, None),
    };
    Ok(AsymptoticValue {
        n,
        q: q.value(),
        model: Model::Binary,
        value,
        formula,
        exact,
    })
}

/// `p^(-1/2) (p / (2 pi q (1-q)))^((p-1)/2) n^(-(p-1)/2)` for composite `n`.
pub fn approx_closed(n: usize, q: f64) -> Result<AsymptoticValue> {
    check_open_unit(q)?;
    let p = smallest_prime_of(n)?;
    if is_prime(n) {
        return Err(Error::domain(format!("{n} is prime; the closed form covers composite n")));
    }
    let (pf, half) = (p as f64, (p as f64 - 1.0) / 2.0);
    let ln = -0.5 * pf.ln() + half * (pf.ln() - (2.0 * PI * q * (1.0 - q)).ln()) - half * (n as f64).ln();
    Ok(AsymptoticValue {
        n,
        q,
        model: Model::Binary,
        value: ln.exp(),
        formula: Formula::ClosedFormCorollary,
        exact: None,
    })
}

/// Signed model: `2 sqrt(2) / sqrt(pi n)` at `q = 1/2` with `n` even, the
/// main approximation otherwise.
pub fn approx_signed(n: usize, q: &QParam) -> Result<AsymptoticValue> {
    smallest_prime_of(n)?;
    if q.is_one_half() && n % 2 == 0 {
        return Ok(AsymptoticValue {
            n,
            q: q.value(),
            model: Model::Signed,
            value: 2.0 * 2f64.sqrt() / (PI * n as f64).sqrt(),
            formula: Formula::SignedCorollary,
            exact: None,
        });
    }
    Ok(AsymptoticValue {
        model: Model::Signed,
        ..approx_main(n, q)?
    })
}

/// The approximation used for `model`: [`approx_main`] or [`approx_signed`].
pub fn approx_for(n: usize, q: &QParam, model: Model) -> Result<AsymptoticValue> {
    match model {
        Model::Binary => approx_main(n, q),
        Model::Signed => approx_signed(n, q),
    }
}

/// One line of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    #[serde(with = "crate::io::rational_json::option")]
    pub exact: Option<ExactRational>,
    pub approx: f64,
    /// `exact / approx`, rounded to [`RATIO_DIGITS`] significant digits.
    pub ratio: Option<f64>,
    pub formula: Formula,
}

/// Exact union by closed form, else brute force within budget; `None` for
/// float-only `q` or when the budget is exceeded.
pub fn exact_union(n: usize, q: &QParam, model: Model, budgets: &Budgets) -> Result<Option<ExactRational>> {
    let Some(qe) = q.as_exact() else {
        return Ok(None);
    };
    if let UnionClosedForm::Value(v) = union_closed_form(n, qe, model)? {
        return Ok(Some(v));
    }
    match prob_union_bruteforce(n, qe, model, budgets.brute_force) {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_budget() => Ok(None),
        Err(e) => Err(e),
    }
}

/// Exact versus approximate values over `ns` (sorted, deduplicated).
pub fn convergence_table(q: &QParam, ns: &[usize], model: Model, budgets: &Budgets) -> Result<Vec<ConvergenceRow>> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if let Some(&n) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::domain(format!("table rows need n >= 2, got {n}")));
    }
    ns.par_iter()
        .map(|&n| {
            let approx = approx_for(n, q, model)?;
            let exact = exact_union(n, q, model, budgets)?;
            let ratio = exact
                .as_ref()
                .map(|e| round_sig(to_f64(e) / approx.value, RATIO_DIGITS));
            Ok(ConvergenceRow {
                n,
                exact,
                approx: approx.value,
                ratio,
                formula: approx.formula,
            })
        })
        .collect()
}
