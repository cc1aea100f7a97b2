use std::f64::consts::{PI, TAU};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::rational::{check_open_unit, check_open_unit_exact, from_biguint_ratio, split_probability};
use super::ExactRational;
use crate::{Error, Result};

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * BigUint::from(n - k) / BigUint::from(k + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |c, i| c * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Binomial(`m`, `a/b`) masses sharing the denominator `b^m`.
///
/// `numerators[k] = C(m,k) a^k (b-a)^(m-k)`; products over several
/// coordinates keep a single power of `b` as denominator.
#[derive(Debug, Clone)]
pub struct BinomialWeights {
    pub m: usize,
    pub numerators: Vec<BigUint>,
    pub denominator: BigUint,
    base: BigUint,
}

impl BinomialWeights {
    pub fn new(m: usize, q: &ExactRational) -> Result<Self> {
        check_open_unit_exact(q)?;
        let (a, b) = split_probability(q);
        let c = &b - &a;
        let mut a_pow = vec![BigUint::one(); m + 1];
        let mut c_pow = vec![BigUint::one(); m + 1];
        for k in 1..=m {
            a_pow[k] = &a_pow[k - 1] * &a;
            c_pow[k] = &c_pow[k - 1] * &c;
        }
        let numerators = binomial_row(m)
            .into_iter()
            .enumerate()
            .map(|(k, binom)| binom * &a_pow[k] * &c_pow[m - k])
            .collect();
        Ok(BinomialWeights {
            m,
            numerators,
            denominator: b.pow(m as u32),
            base: b,
        })
    }

    /// Denominator of a product of `count` masses: `b^(m * count)`.
    pub fn denominator_for(&self, count: usize) -> BigUint {
        self.base.pow((self.m * count) as u32)
    }

    pub fn mass(&self, k: usize) -> ExactRational {
        from_biguint_ratio(self.numerators[k].clone(), self.denominator.clone())
    }
}

/// `phi_q(k, n) = C(n,k) q^k (1-q)^(n-k)` exactly.
pub fn binom_pdf_exact(k: usize, n: usize, q: &ExactRational) -> Result<ExactRational> {
    check_open_unit_exact(q)?;
    if k > n {
        return Err(Error::domain(format!("k = {k} is outside [0, {n}]")));
    }
    let one = BigRational::one();
    Ok(BigRational::from_integer(binomial(n, k).into())
        * num_traits::pow(q.clone(), k)
        * num_traits::pow(one - q, n - k))
}

// Stirling error ln(n!) - ((n + 1/2) ln n - n + ln(2 pi)/2) for n = 0..=15.
#[allow(clippy::excessive_precision)]
const STIRLING_ERROR_TABLE: [f64; 16] = [
    0.0,
    0.08106146679532725822,
    0.041340695955409294094,
    0.027677925684998339149,
    0.020790672103765093112,
    0.016644691189821192163,
    0.013876128823070747999,
    0.011896709945891770095,
    0.010411265261972096497,
    0.0092554621827127329177,
    0.0083305634333628712565,
    0.007573675487951840795,
    0.0069428401072095298657,
    0.0064089941880042070684,
    0.0059513701127588477356,
    0.005554733551962801371,
];

fn stirling_error(n: u64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15 {
        return STIRLING_ERROR_TABLE[n as usize];
    }
    let n = n as f64;
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance term `x ln(x / mean) + mean - x`, series-evaluated near `x = mean`.
fn deviance(x: f64, mean: f64) -> f64 {
    if (x - mean).abs() < 0.1 * (x + mean) {
        let v = (x - mean) / (x + mean);
        let v2 = v * v;
        let mut s = (x - mean) * v;
        let mut ej = 2.0 * x * v;
        for j in 1..1000 {
            ej *= v2;
            let next = s + ej / (2 * j + 1) as f64;
            if next == s {
                return next;
            }
            s = next;
        }
        s
    } else {
        x * (x / mean).ln() + mean - x
    }
}

/// `ln phi_q(k, n)` in floating point.
///
/// Uses the saddle-point decomposition into Stirling errors and deviance
/// terms, which keeps full relative precision for `n` up to `1e9` and
/// beyond, where log-gamma differences lose most digits to cancellation.
pub fn binom_pdf_log(k: u64, n: u64, q: f64) -> Result<f64> {
    check_open_unit(q)?;
    if k > n {
        return Err(Error::domain(format!("k = {k} is outside [0, {n}]")));
    }
    let p = 1.0 - q;
    if k == 0 {
        return Ok(n as f64 * (-q).ln_1p());
    }
    if k == n {
        return Ok(n as f64 * q.ln());
    }
    let (kf, nf) = (k as f64, n as f64);
    let lc = stirling_error(n)
        - stirling_error(k)
        - stirling_error(n - k)
        - deviance(kf, nf * q)
        - deviance(nf - kf, nf * p);
    let lf = TAU.ln() + kf.ln() + (-kf / nf).ln_1p();
    Ok(lc - 0.5 * lf)
}

/// Location and value of the binomial maximum `M(q, n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinomialMax {
    pub argmax_k: usize,
    #[serde(with = "crate::io::rational_json")]
    pub value: ExactRational,
    /// Two adjacent maximizers; `argmax_k` is the lower one.
    pub tied: bool,
}

/// `M(q, n) = max_k phi_q(k, n)`, attained at `floor((n + 1) q)`.
pub fn binom_max(n: usize, q: &ExactRational) -> Result<BinomialMax> {
    check_open_unit_exact(q)?;
    let mode = q * BigRational::from_integer((n + 1).into());
    let floor = mode.floor().to_integer();
    let floor = floor.to_usize().expect("mode lies in [0, n + 1)").min(n);
    let tied = mode.is_integer() && (1..=n).contains(&floor);
    let argmax_k = if tied { floor - 1 } else { floor };
    Ok(BinomialMax {
        argmax_k,
        value: binom_pdf_exact(argmax_k, n, q)?,
        tied,
    })
}

/// Normal density approximation to `phi_q(k, n)`.
pub fn demoivre_approx(k: i64, n: u64, q: f64) -> Result<f64> {
    check_open_unit(q)?;
    if n == 0 {
        return Err(Error::domain("de Moivre-Laplace needs n >= 1"));
    }
    let var = n as f64 * q * (1.0 - q);
    let dev = k as f64 - n as f64 * q;
    Ok((2.0 * PI * var).sqrt().recip() * (-dev * dev / (2.0 * var)).exp())
}
