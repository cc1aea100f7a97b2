use std::f64::consts::PI;

use num_bigint::BigUint;
use num_traits::Zero;

use super::pdf::{binom_pdf_log, BinomialWeights};
use super::rational::{check_open_unit, from_biguint_ratio};
use super::ExactRational;
use crate::{BudgetKind, Error, Result};

/// `sum_{k=0}^n phi_q(k, n)^m` exactly.
///
/// Terms are accumulated as numerators over the shared denominator
/// `b^(n m)` (with `q = a/b`), so there is one reduction at the end. The
/// work budget bounds `n * m`.
pub fn power_sum_exact(n: usize, m: usize, q: &ExactRational, budget: u64) -> Result<ExactRational> {
    if m == 0 {
        return Err(Error::domain("power sums need m >= 1"));
    }
    let work = (n as u128) * (m as u128);
    if work > budget as u128 {
        return Err(Error::budget(BudgetKind::PowerSum, BigUint::from(work), budget));
    }
    let weights = BinomialWeights::new(n, q)?;
    let total = weights
        .numerators
        .iter()
        .fold(BigUint::zero(), |acc, w| acc + w.pow(m as u32));
    Ok(from_biguint_ratio(total, weights.denominator_for(m)))
}

/// `(2 pi q (1-q) n)^(-(m-1)/2) / sqrt(m)`, the large-`n` value of the
/// power sum when `m` grows slower than `sqrt(n)`.
pub fn power_sum_asymptotic(n: u64, m: u64, q: f64) -> Result<f64> {
    check_open_unit(q)?;
    if m == 0 || n == 0 {
        return Err(Error::domain("asymptotic power sum needs n >= 1 and m >= 1"));
    }
    let scale = 2.0 * PI * q * (1.0 - q) * n as f64;
    let ln = -((m - 1) as f64) / 2.0 * scale.ln() - 0.5 * (m as f64).ln();
    Ok(ln.exp())
}

/// Floating-point power sum from log-domain terms.
pub fn power_sum_float(n: u64, m: u64, q: f64) -> Result<f64> {
    Ok(power_sum_ln(n, m, q)?.exp())
}

/// `ln sum_k phi_q(k, n)^m`, via log-sum-exp with pairwise summation.
pub fn power_sum_ln(n: u64, m: u64, q: f64) -> Result<f64> {
    check_open_unit(q)?;
    if m == 0 {
        return Err(Error::domain("power sums need m >= 1"));
    }
    let logs = (0..=n)
        .map(|k| binom_pdf_log(k, n, q).map(|l| l * m as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok(log_sum_exp(&logs))
}

pub fn log_sum_exp(logs: &[f64]) -> f64 {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let scaled: Vec<f64> = logs.iter().map(|l| (l - max).exp()).collect();
    max + pairwise_sum(&scaled).ln()
}

/// Pairwise (cascade) summation; error grows as `O(log n)` rather than `O(n)`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomstats::rational::{rational, to_f64};

    const BUDGET: u64 = 200_000;

    #[test]
    fn exact_examples() {
        for n in [0, 1, 5, 17] {
            assert_eq!(power_sum_exact(n, 1, &rational(2, 5), BUDGET).unwrap(), rational(1, 1));
        }
        assert_eq!(power_sum_exact(2, 2, &rational(1, 2), BUDGET).unwrap(), rational(3, 8));
        assert_eq!(power_sum_exact(2, 3, &rational(1, 2), BUDGET).unwrap(), rational(5, 32));
    }

    #[test]
    fn budget_is_enforced() {
        let err = power_sum_exact(1000, 300, &rational(1, 2), BUDGET).unwrap_err();
        assert!(matches!(err, Error::Budget { kind: BudgetKind::PowerSum, .. }));
        assert!(err.to_string().contains("power-sum"));
        assert!(power_sum_exact(3, 0, &rational(1, 2), BUDGET).is_err());
    }

    #[test]
    fn asymptotic_examples() {
        for (n, q) in [(1, 0.5), (1000, 0.3), (7, 0.9)] {
            assert!((power_sum_asymptotic(n, 1, q).unwrap() - 1.0).abs() < 1e-15);
        }
        let v = power_sum_asymptotic(1000, 2, 0.5).unwrap();
        assert!((v - (PI * 1000.0).sqrt().recip()).abs() < 1e-15);
        assert!((v - 0.0178412411615).abs() < 1e-12);
        let v = power_sum_asymptotic(2, 2, 0.5).unwrap();
        assert!((v - 0.398942280401).abs() < 1e-12);
    }

    #[test]
    fn float_route_tracks_exact() {
        for (n, m) in [(10, 2), (100, 3), (400, 5)] {
            for q in [rational(1, 2), rational(1, 3)] {
                let exact = to_f64(&power_sum_exact(n, m, &q, BUDGET).unwrap());
                let float = power_sum_float(n as u64, m as u64, to_f64(&q)).unwrap();
                assert!((float / exact - 1.0).abs() < 1e-11, "n={n} m={m} q={q}");
            }
        }
    }

    #[test]
    fn pairwise_matches_naive_on_short_input() {
        let xs: Vec<f64> = (1..=100).map(|i| 1.0 / i as f64).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-13);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
    }
}
