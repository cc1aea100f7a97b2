//! Per-divisor probabilities `P_q(d, n) = P[Phi_d | f]`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{enumerate_box, EnumerationStats};
use crate::binomstats::{
    binom_max, binom_pdf_exact, check_open_unit_exact, power_sum_exact, ExactRational,
};
use crate::polycyc::{is_prime, prime_power, totient};
use crate::{Error, Model, Result};

/// How a per-divisor value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PrimeClosedForm,
    PrimePowerClosedForm,
    LatticeEnumeration,
    TrivialD1,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::PrimeClosedForm => "prime-closed-form",
            Method::PrimePowerClosedForm => "prime-power-closed-form",
            Method::LatticeEnumeration => "lattice-enumeration",
            Method::TrivialD1 => "trivial-d1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisorProbability {
    pub d: usize,
    pub n: usize,
    #[serde(with = "crate::io::rational_json")]
    pub q: ExactRational,
    pub model: Model,
    #[serde(with = "crate::io::rational_json")]
    pub value: ExactRational,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationStats>,
}

fn check_divisor(d: usize, n: usize) -> Result<()> {
    if n == 0 || d == 0 || n % d != 0 {
        return Err(Error::domain(format!("{d} is not a divisor of {n}")));
    }
    Ok(())
}

/// `sum_{k=0}^{n/p} phi_q(k, n/p)^p` for a prime `p | n`.
pub fn prob_divisor_prime(p: usize, n: usize, q: &ExactRational) -> Result<ExactRational> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    check_divisor(p, n)?;
    // `n/p * p = n` term-powers; linear in the input, no budget needed.
    power_sum_exact(n / p, p, q, u64::MAX)
}

/// `(sum_{k=0}^{n/p^m} phi_q(k, n/p^m)^p)^(p^(m-1))` for `p^m | n`.
pub fn prob_divisor_prime_power(p: usize, m: u32, n: usize, q: &ExactRational) -> Result<ExactRational> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(Error::domain("prime power exponent must be >= 1"));
    }
    let d = p
        .checked_pow(m)
        .ok_or_else(|| Error::domain(format!("{p}^{m} does not divide {n}")))?;
    check_divisor(d, n)?;
    let base = power_sum_exact(n / d, p, q, u64::MAX)?;
    let e = p.pow(m - 1);
    Ok(Pow::pow(base, BigInt::from(e)))
}

/// `P_q(d, n)` by enumerating `Phi_d R_d ∩ [0, n/d]^d`.
pub fn prob_divisor_general(d: usize, n: usize, q: &ExactRational, budget: u64) -> Result<ExactRational> {
    Ok(prob_divisor_enumerated(d, n, q, budget)?.0)
}

/// As [`prob_divisor_general`], returning the enumeration diagnostics too.
pub fn prob_divisor_enumerated(
    d: usize,
    n: usize,
    q: &ExactRational,
    budget: u64,
) -> Result<(ExactRational, EnumerationStats)> {
    check_open_unit_exact(q)?;
    check_divisor(d, n)?;
    if d < 2 {
        return Err(Error::domain("lattice enumeration needs d >= 2"));
    }
    let count = enumerate_box(d, n / d, budget)?;
    Ok((count.evaluate(q)?, count.stats))
}

/// Bounds `M(q, n/d)^d <= P_q(d, n) <= M(q, n/d)^phi(d)`; the lower bound is
/// only available for prime `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisorBounds {
    pub d: usize,
    #[serde(with = "crate::io::rational_json::option")]
    pub lower: Option<ExactRational>,
    #[serde(with = "crate::io::rational_json")]
    pub upper: ExactRational,
}

pub fn prob_bounds(d: usize, n: usize, q: &ExactRational) -> Result<DivisorBounds> {
    check_divisor(d, n)?;
    if d < 2 {
        return Err(Error::domain("bounds are stated for d >= 2"));
    }
    let max = binom_max(n / d, q)?.value;
    let upper = Pow::pow(&max, totient(d));
    let lower = is_prime(d).then(|| Pow::pow(&max, d));
    Ok(DivisorBounds { d, lower, upper })
}

/// Binary `P_q(1, n) = (1 - q)^n`.
pub fn prob_divisor_one(n: usize, q: &ExactRational) -> Result<ExactRational> {
    check_open_unit_exact(q)?;
    Ok(Pow::pow(BigRational::one() - q, n))
}

/// Signed `P_q^+(1, n)`: the entries sum to zero, i.e. exactly `n/2` ones.
pub fn signed_prob_one(n: usize, q: &ExactRational) -> Result<ExactRational> {
    check_open_unit_exact(q)?;
    if n % 2 == 1 {
        return Ok(BigRational::zero());
    }
    binom_pdf_exact(n / 2, n, q)
}

/// Best available per-divisor value: the closed forms for `d = 1`, prime
/// and prime-power `d`, lattice enumeration otherwise.
pub fn divisor_probability(
    d: usize,
    n: usize,
    q: &ExactRational,
    model: Model,
    enumeration_budget: u64,
) -> Result<DivisorProbability> {
    check_open_unit_exact(q)?;
    check_divisor(d, n)?;
    let mut enumeration = None;
    let (value, method) = match (d, prime_power(d)) {
        (1, _) => {
            let v = match model {
                Model::Binary => prob_divisor_one(n, q)?,
                Model::Signed => signed_prob_one(n, q)?,
            };
            (v, Method::TrivialD1)
        }
        (_, Some((p, 1))) => (prob_divisor_prime(p, n, q)?, Method::PrimeClosedForm),
        (_, Some((p, m))) => (prob_divisor_prime_power(p, m, n, q)?, Method::PrimePowerClosedForm),
        (_, None) => {
            let (v, stats) = prob_divisor_enumerated(d, n, q, enumeration_budget)?;
            enumeration = Some(stats);
            (v, Method::LatticeEnumeration)
        }
    };
    Ok(DivisorProbability {
        d,
        n,
        q: q.clone(),
        model,
        value,
        method,
        enumeration,
    })
}

/// `P_q^+(d, n)`: equal to the binary value for `d != 1`.
pub fn signed_prob_divisor(d: usize, n: usize, q: &ExactRational, enumeration_budget: u64) -> Result<ExactRational> {
    Ok(divisor_probability(d, n, q, Model::Signed, enumeration_budget)?.value)
}
