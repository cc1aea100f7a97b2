//! The union `P_q(n) = P[some Phi_d divides f]`: closed forms for `n = p`,
//! `p^2`, `pr`, and an exhaustive oracle.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::divisor::signed_prob_one;
use crate::binomstats::{
    binom_pdf_exact, binomial, check_open_unit_exact, from_biguint_ratio, power_sum_exact,
    split_probability, ExactRational,
};
use crate::polycyc::{factorize, SingularityTester};
use crate::{BudgetKind, Error, Model, Result};

/// Shapes of `n` that admit a closed-form union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnionShape {
    Prime { p: usize },
    PrimeSquare { p: usize },
    PrimeProduct { p: usize, r: usize },
}

impl UnionShape {
    pub fn of(n: usize) -> Option<Self> {
        match factorize(n).as_slice() {
            [(p, 1)] => Some(UnionShape::Prime { p: *p }),
            [(p, 2)] => Some(UnionShape::PrimeSquare { p: *p }),
            [(p, 1), (r, 1)] => Some(UnionShape::PrimeProduct { p: *p, r: *r }),
            _ => None,
        }
    }
}

/// Outcome of a closed-form lookup; `Unsupported` is not an error.
#[derive(Debug, Clone, PartialEq)]
pub enum UnionClosedForm {
    Value(ExactRational),
    Unsupported,
}

impl UnionClosedForm {
    pub fn value(self) -> Option<ExactRational> {
        match self {
            UnionClosedForm::Value(v) => Some(v),
            UnionClosedForm::Unsupported => None,
        }
    }
}

fn power_sum(n: usize, m: usize, q: &ExactRational) -> Result<ExactRational> {
    power_sum_exact(n, m, q, u64::MAX)
}

/// Binary union in closed form for `n` prime, a prime square, or a product
/// of two distinct primes.
pub fn prob_union_closed_form(n: usize, q: &ExactRational) -> Result<UnionClosedForm> {
    check_open_unit_exact(q)?;
    let one = BigRational::one();
    let c = &one - q;
    let v = match UnionShape::of(n) {
        None => return Ok(UnionClosedForm::Unsupported),
        Some(UnionShape::Prime { p }) => Pow::pow(q, p) + Pow::pow(&c, p),
        Some(UnionShape::PrimeSquare { p }) => {
            let s: BigRational = Pow::pow(q, p) + Pow::pow(&c, p);
            Pow::pow(s, p) + power_sum(p, p, q)? - Pow::pow(q, p * p) - Pow::pow(&c, p * p)
        }
        Some(UnionShape::PrimeProduct { p, r }) => {
            power_sum(p, r, q)? + power_sum(r, p, q)? - Pow::pow(q, p * r) - Pow::pow(&c, p * r)
        }
    };
    Ok(UnionClosedForm::Value(v))
}

/// Signed union in closed form.
///
/// Every event `d != 1` coincides with its binary counterpart (both say
/// `Phi_d | f`, since `Phi_d` divides `1 + x + ... + x^(n-1)`), so the
/// signed union differs from the binary one only through the balanced-row
/// event `d = 1`, which is empty for odd `n`. For `n = 2` every row is
/// singular; for `n = 4` a balanced row always lies in another event; for
/// `n = 2r`, `r` an odd prime, a balanced row is also singular for some
/// `d != 1` exactly when `c_i + c_{i+r} = 1` for all `i`, which has
/// probability `(2q(1-q))^r`.
pub fn signed_union_closed_form(n: usize, q: &ExactRational) -> Result<UnionClosedForm> {
    check_open_unit_exact(q)?;
    if n % 2 == 1 {
        return prob_union_closed_form(n, q);
    }
    let v = match UnionShape::of(n) {
        Some(UnionShape::Prime { p: 2 }) => BigRational::one(),
        Some(UnionShape::PrimeSquare { p: 2 }) => match prob_union_closed_form(n, q)? {
            UnionClosedForm::Value(v) => v,
            UnionClosedForm::Unsupported => unreachable!("4 is a prime square"),
        },
        Some(UnionShape::PrimeProduct { p: 2, r }) => {
            let binary = prob_union_closed_form(n, q)?
                .value()
                .expect("2r is a prime product");
            let two = BigRational::from_integer(2.into());
            let both: BigRational = Pow::pow(two * q * (BigRational::one() - q), r);
            binary + signed_prob_one(n, q)? - both
        }
        _ => return Ok(UnionClosedForm::Unsupported),
    };
    Ok(UnionClosedForm::Value(v))
}

/// Dispatches on the model.
pub fn union_closed_form(n: usize, q: &ExactRational, model: Model) -> Result<UnionClosedForm> {
    match model {
        Model::Binary => prob_union_closed_form(n, q),
        Model::Signed => signed_union_closed_form(n, q),
    }
}

fn check_brute_budget(n: usize, budget: u64) -> Result<()> {
    let fits = n < 64 && (1u64 << n) <= budget;
    if !fits {
        return Err(Error::budget(BudgetKind::BruteForce, BigUint::one() << n, budget));
    }
    Ok(())
}

/// Number of singular first rows of each Hamming weight (of the `{0,1}`
/// pattern, in both models), by visiting all `2^n` rows.
pub fn singular_weight_histogram(n: usize, model: Model, budget: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    check_brute_budget(n, budget)?;
    let tester = SingularityTester::new(n, model);
    let total = 1u64 << n;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let hist = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut h = vec![0u64; n + 1];
            for row in c * CHUNK..((c + 1) * CHUNK).min(total) {
                if tester.is_singular_word(row) {
                    h[row.count_ones() as usize] += 1;
                }
            }
            h
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist)
}

/// `sum_w h[w] q^w (1-q)^(n-w)` exactly.
pub fn evaluate_weight_histogram(hist: &[u64], q: &ExactRational) -> Result<ExactRational> {
    check_open_unit_exact(q)?;
    let n = hist.len() - 1;
    let (a, b) = split_probability(q);
    let c = &b - &a;
    let num = hist.iter().enumerate().fold(BigUint::zero(), |acc, (w, &h)| {
        if h == 0 {
            acc
        } else {
            acc + BigUint::from(h) * Pow::pow(&a, w as u32) * Pow::pow(&c, (n - w) as u32)
        }
    });
    Ok(from_biguint_ratio(num, Pow::pow(&b, n as u32)))
}

/// Exact union probability by exhausting all `2^n` rows.
pub fn prob_union_bruteforce(n: usize, q: &ExactRational, model: Model, budget: u64) -> Result<ExactRational> {
    check_open_unit_exact(q)?;
    let hist = singular_weight_histogram(n, model, budget)?;
    evaluate_weight_histogram(&hist, q)
}

/// `P[f^+(1) = 0 and f^+(-1) = 0]`: `C(n/2, n/4)^2 q^(n/2) (1-q)^(n/2)` when
/// `4 | n`, else 0.
pub fn signed_intersection_1_2(n: usize, q: &ExactRational) -> Result<ExactRational> {
    check_open_unit_exact(q)?;
    if n % 2 == 1 {
        return Err(Error::domain(format!("n must be even, got {n}")));
    }
    if n % 4 != 0 {
        return Ok(BigRational::zero());
    }
    let c = BigRational::from_integer(binomial(n / 2, n / 4).into());
    // C(n, n/2) q^(n/2) (1-q)^(n/2) / C(n, n/2) = q^(n/2) (1-q)^(n/2).
    let mass = binom_pdf_exact(n / 2, n, q)? / BigRational::from_integer(binomial(n, n / 2).into());
    Ok(&c * &c * mass)
}
