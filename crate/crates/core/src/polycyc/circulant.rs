use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::arith::divisors;
use super::cyclotomic::reduce_mod_cyclotomic;
use super::poly::IntPolynomial;
use crate::{Error, Model, Result};

/// First row of a circulant matrix as Bernoulli outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FirstRow {
    bits: Vec<bool>,
}

impl FirstRow {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::domain("a first row needs at least one entry"));
        }
        Ok(FirstRow { bits })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        bits.iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::domain(format!("entry {other} is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()
            .and_then(Self::new)
    }

    /// Bit `j` of `mask` becomes entry `c_j`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::domain("mask rows need 1 <= n <= 64"));
        }
        Self::new((0..n).map(|j| mask >> j & 1 == 1).collect())
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of ones in the binary coefficient vector.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Entries as integers under the given model.
    pub fn entries(&self, model: Model) -> Vec<i64> {
        self.bits
            .iter()
            .map(|&b| match (model, b) {
                (_, true) => 1,
                (Model::Binary, false) => 0,
                (Model::Signed, false) => -1,
            })
            .collect()
    }

    /// `f(x) = sum c_j x^j`, or `f+(x)` for the signed model.
    pub fn polynomial(&self, model: Model) -> IntPolynomial {
        IntPolynomial::from_i64s(&self.entries(model))
    }
}

/// Image of `f` (with `deg f < n`) in `R_d = Z[x]/(x^d - 1)`.
pub fn fold(f: &IntPolynomial, n: usize, d: usize) -> Result<IntPolynomial> {
    if n == 0 || d == 0 || n % d != 0 {
        return Err(Error::domain(format!("{d} does not divide {n}")));
    }
    if f.degree().is_some_and(|deg| deg >= n) {
        return Err(Error::domain(format!("degree of {f} is not below {n}")));
    }
    let mut out = vec![BigInt::zero(); d];
    for (i, c) in f.coeffs().iter().enumerate() {
        out[i % d] += c;
    }
    Ok(IntPolynomial::from_coeffs(out))
}

/// Every `d | n` with `Phi_d | f`. The matrix is singular iff this is nonempty.
pub fn singular_divisors(row: &FirstRow, model: Model) -> BTreeSet<usize> {
    let n = row.n();
    let f = row.polynomial(model);
    divisors(n)
        .into_iter()
        .filter(|&d| {
            let folded = fold(&f, n, d).expect("d divides n and deg f < n");
            reduce_mod_cyclotomic(&folded, d).is_zero()
        })
        .collect()
}

/// Floating-point eigenvalues `lambda_j = sum_k c_k exp(2 pi i kj / n)`.
pub fn dft_eigenvalues(row: &FirstRow, model: Model) -> Vec<Complex64> {
    let n = row.n();
    let entries = row.entries(model);
    (0..n)
        .map(|j| {
            entries
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    // Reduce kj mod n before scaling so the angle stays accurate.
                    let angle = std::f64::consts::TAU * ((k * j) % n) as f64 / n as f64;
                    Complex64::from_polar(c as f64, angle)
                })
                .sum()
        })
        .collect()
}

/// Relative threshold under which an eigenvalue counts as numerically zero.
pub const EIGEN_ZERO_TOLERANCE: f64 = 1e-6;

/// Floating-point singularity verdict set against the exact one.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCrossCheck {
    pub min_modulus: f64,
    pub numeric_singular: bool,
    pub exact_singular: bool,
}

impl EigenCrossCheck {
    pub fn agrees(&self) -> bool {
        self.numeric_singular == self.exact_singular
    }

    /// Warning text for a disagreement. The exact verdict is authoritative.
    pub fn warning(&self) -> Option<String> {
        (!self.agrees()).then(|| {
            format!(
                "eigenvalue check disagrees with exact test: min |lambda| = {:e}, exact singular = {}",
                self.min_modulus, self.exact_singular
            )
        })
    }
}

pub fn eigen_cross_check(row: &FirstRow, model: Model) -> EigenCrossCheck {
    let min_modulus = dft_eigenvalues(row, model)
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    EigenCrossCheck {
        min_modulus,
        numeric_singular: min_modulus < EIGEN_ZERO_TOLERANCE * row.n() as f64,
        exact_singular: !singular_divisors(row, model).is_empty(),
    }
}
