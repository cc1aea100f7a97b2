//! Exact singularity test specialised to one dimension `n`.
//!
//! For each `d | n`, reducing a folded vector `s in Z^d` modulo `Phi_d` is a
//! linear map, so `Phi_d | f` iff `s R_d = 0` where row `j` of `R_d` holds
//! the coefficients of `x^j mod Phi_d`. The matrices are precomputed once in
//! exact arithmetic. When every entry fits in `i32` and `d * n < 2^32`, the
//! products run in `i64` without any possibility of overflow; otherwise that
//! divisor falls back to big-integer polynomial division.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::arith::divisors;
use super::cyclotomic::cyclotomic;
use super::poly::IntPolynomial;
use crate::Model;

#[derive(Debug, Clone)]
enum Kernel {
    /// `phi(d)` rows of length `d`: coefficient `t` of the remainder is
    /// `sum_j s_j rows[t][j]`.
    Small(Vec<Vec<i64>>),
    Big(IntPolynomial),
}

#[derive(Debug, Clone)]
struct DivisorCheck {
    d: usize,
    /// `n / d`, the offset applied to signed folds.
    block: i64,
    /// Residue-class masks for the single-word path (`n <= 64`).
    masks: Vec<u64>,
    kernel: Kernel,
}

impl DivisorCheck {
    fn new(n: usize, d: usize) -> Self {
        let phi = cyclotomic(d);
        let deg = phi.degree().expect("cyclotomic polynomials are nonzero");
        let rows: Vec<IntPolynomial> = (0..d)
            .map(|j| {
                IntPolynomial::monomial(j, BigInt::from(1))
                    .rem_monic(&phi)
                    .expect("monic")
            })
            .collect();
        let small = (d as u64).saturating_mul(n as u64) < (1 << 32);
        let kernel = small
            .then(|| {
                (0..deg)
                    .map(|t| {
                        rows.iter()
                            .map(|r| r.coeff(t).to_i32().map(i64::from))
                            .collect::<Option<Vec<_>>>()
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .flatten()
            .map_or(Kernel::Big(phi), Kernel::Small);
        let masks = if n <= 64 {
            (0..d)
                .map(|j| (j..n).step_by(d).fold(0u64, |m, i| m | 1 << i))
                .collect()
        } else {
            Vec::new()
        };
        DivisorCheck {
            d,
            block: (n / d) as i64,
            masks,
            kernel,
        }
    }

    fn divides(&self, s: &[i64]) -> bool {
        match &self.kernel {
            Kernel::Small(rows) => rows
                .iter()
                .all(|r| r.iter().zip(s).map(|(a, b)| a * b).sum::<i64>() == 0),
            Kernel::Big(phi) => IntPolynomial::from_i64s(s)
                .rem_monic(phi)
                .expect("monic")
                .is_zero(),
        }
    }
}

/// Precomputed exact singularity test for first rows of length `n`.
#[derive(Debug, Clone)]
pub struct SingularityTester {
    n: usize,
    model: Model,
    checks: Vec<DivisorCheck>,
}

impl SingularityTester {
    pub fn new(n: usize, model: Model) -> Self {
        assert!(n >= 1, "SingularityTester: n must be positive");
        let checks = divisors(n).into_iter().map(|d| DivisorCheck::new(n, d)).collect();
        SingularityTester { n, model, checks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> Model {
        self.model
    }

    fn fold_word(&self, c: &DivisorCheck, row: u64, buf: &mut [i64; 64]) {
        for (slot, &mask) in buf.iter_mut().zip(&c.masks) {
            let ones = i64::from((row & mask).count_ones());
            *slot = match self.model {
                Model::Binary => ones,
                Model::Signed => 2 * ones - c.block,
            };
        }
    }

    fn fold_bits(&self, c: &DivisorCheck, bits: &[bool], buf: &mut Vec<i64>) {
        buf.clear();
        buf.resize(c.d, 0);
        for (i, &b) in bits.iter().enumerate() {
            buf[i % c.d] += i64::from(b);
        }
        if self.model == Model::Signed {
            for s in buf.iter_mut() {
                *s = 2 * *s - c.block;
            }
        }
    }

    /// Row packed in the low `n` bits of a word; requires `n <= 64`.
    pub fn is_singular_word(&self, row: u64) -> bool {
        assert!(self.n <= 64, "word rows need n <= 64");
        let mut buf = [0i64; 64];
        self.checks.iter().any(|c| {
            self.fold_word(c, row, &mut buf);
            c.divides(&buf[..c.d])
        })
    }

    pub fn singular_divisors_word(&self, row: u64) -> Vec<usize> {
        assert!(self.n <= 64, "word rows need n <= 64");
        let mut buf = [0i64; 64];
        self.checks
            .iter()
            .filter(|c| {
                self.fold_word(c, row, &mut buf);
                c.divides(&buf[..c.d])
            })
            .map(|c| c.d)
            .collect()
    }

    pub fn is_singular_bits(&self, bits: &[bool]) -> bool {
        assert_eq!(bits.len(), self.n, "row length must equal n");
        if self.n <= 64 {
            let word = bits
                .iter()
                .enumerate()
                .fold(0u64, |w, (i, &b)| w | u64::from(b) << i);
            return self.is_singular_word(word);
        }
        let mut buf = Vec::new();
        self.checks.iter().any(|c| {
            self.fold_bits(c, bits, &mut buf);
            c.divides(&buf)
        })
    }

    pub fn singular_divisors_bits(&self, bits: &[bool]) -> Vec<usize> {
        assert_eq!(bits.len(), self.n, "row length must equal n");
        let mut buf = Vec::new();
        self.checks
            .iter()
            .filter(|c| {
                self.fold_bits(c, bits, &mut buf);
                c.divides(&buf)
            })
            .map(|c| c.d)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycyc::{singular_divisors, FirstRow};

    #[test]
    fn matches_polynomial_route_exhaustively() {
        for n in 1..=12 {
            for model in [Model::Binary, Model::Signed] {
                let tester = SingularityTester::new(n, model);
                for mask in 0..(1u64 << n) {
                    let row = FirstRow::from_mask(n, mask).unwrap();
                    let want: Vec<usize> = singular_divisors(&row, model).into_iter().collect();
                    assert_eq!(tester.singular_divisors_word(mask), want, "n={n} {mask:b}");
                    assert_eq!(tester.singular_divisors_bits(row.bits()), want);
                    assert_eq!(tester.is_singular_word(mask), !want.is_empty());
                }
            }
        }
    }

    #[test]
    fn big_kernel_agrees_with_small() {
        let n = 12;
        let tester = SingularityTester::new(n, Model::Binary);
        for c in &tester.checks {
            let Kernel::Small(_) = c.kernel else { panic!("expected i64 kernel") };
            let big = DivisorCheck {
                kernel: Kernel::Big(cyclotomic(c.d)),
                ..c.clone()
            };
            for mask in 0..(1u64 << n) {
                let mut buf = [0i64; 64];
                tester.fold_word(c, mask, &mut buf);
                assert_eq!(c.divides(&buf[..c.d]), big.divides(&buf[..c.d]));
            }
        }
    }

    #[test]
    fn long_rows_use_bit_path() {
        let n = 70;
        let tester = SingularityTester::new(n, Model::Binary);
        let zeros = vec![false; n];
        assert!(tester.is_singular_bits(&zeros));
        let mut bits = vec![false; n];
        bits[0] = true;
        assert!(!tester.is_singular_bits(&bits));
        // Alternating row; compare with the polynomial route.
        let periodic: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
        let row = FirstRow::new(periodic.clone()).unwrap();
        let want: Vec<usize> = singular_divisors(&row, Model::Binary).into_iter().collect();
        assert_eq!(tester.singular_divisors_bits(&periodic), want);
    }
}
