#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Circulant matrix with first row `c`: entry `(i, j)` is `c[(j - i) mod n]`.
pub fn circulant(c: &[i64]) -> Vec<Vec<BigInt>> {
    let n = c.len();
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(c[(j + n - i) % n])).collect())
        .collect()
}

/// Fraction-free Gaussian elimination (Bareiss); exact integer determinant.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `f(exp(2 pi i / d))` in floating point.
pub fn eval_at_root(c: &[i64], d: usize) -> (f64, f64) {
    let mut re = 0.0;
    let mut im = 0.0;
    for (j, &cj) in c.iter().enumerate() {
        let angle = 2.0 * std::f64::consts::PI * ((j % d) as f64) / d as f64;
        re += cj as f64 * angle.cos();
        im += cj as f64 * angle.sin();
    }
    (re, im)
}

/// Bits of `mask` as a `{0,1}` or `{-1,1}` row.
pub fn row_entries(n: usize, mask: u64, signed: bool) -> Vec<i64> {
    (0..n)
        .map(|i| {
            let b = ((mask >> i) & 1) as i64;
            if signed {
                2 * b - 1
            } else {
                b
            }
        })
        .collect()
}
