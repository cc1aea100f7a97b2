//! The lattice `Phi_d R_d` inside `Z^d` and enumeration of its points in the
//! box `[0, N]^d`.
//!
//! Rows `x^j Phi_d(x)` for `j < d - phi(d)` never wrap around, start with the
//! unit `Phi_d(0) = 1` on the diagonal, and so reduce to `(I | A)` by plain
//! back-substitution. A lattice point is then `s = z (I | A)`: its first
//! `rank` coordinates are `z` itself, so `z` ranges over `[0, N]^rank` and
//! only the tail `z A` needs filtering.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomstats::{from_biguint_ratio, BinomialWeights, ExactRational};
use crate::polycyc::{cyclotomic, totient};
use crate::{BudgetKind, Error, Result};

/// Row basis `(I | A)` of `Phi_d R_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub d: usize,
    pub rank: usize,
    pub rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    /// The `rank x (d - rank)` block `A`.
    pub fn tail(&self) -> Vec<&[BigInt]> {
        self.rows.iter().map(|r| &r[self.rank..]).collect()
    }

    /// `z B` for an integer vector `z` of length `rank`.
    pub fn combine(&self, z: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(z.len(), self.rank);
        let mut s = vec![BigInt::zero(); self.d];
        for (zi, row) in z.iter().zip(&self.rows) {
            for (acc, b) in s.iter_mut().zip(row) {
                *acc += zi * b;
            }
        }
        s
    }
}

pub fn hnf_basis(d: usize) -> Result<LatticeBasis> {
    if d < 2 {
        return Err(Error::domain(format!("hnf_basis needs d >= 2, got {d}")));
    }
    let phi = cyclotomic(d);
    let rank = d - totient(d);
    let mut rows: Vec<Vec<BigInt>> = (0..rank)
        .map(|j| {
            let mut row = vec![BigInt::zero(); d];
            for (k, c) in phi.coeffs().iter().enumerate() {
                row[j + k] = c.clone();
            }
            row
        })
        .collect();
    // Rows are upper triangular with unit diagonal; clear above the pivots.
    // Row i only has to be reduced against rows j > i, which are already
    // final, so walking i downwards never reintroduces entries.
    for i in (0..rank).rev() {
        for j in i + 1..rank {
            let c = rows[i][j].clone();
            if c.is_zero() {
                continue;
            }
            let (head, rest) = rows.split_at_mut(j);
            for (a, b) in head[i].iter_mut().zip(&rest[0]).skip(j) {
                *a -= &c * b;
            }
        }
    }
    Ok(LatticeBasis { d, rank, rows })
}

/// Diagnostics of a box enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerationStats {
    /// `(N + 1)^rank`, the size of the box the free coordinates range over.
    pub box_size: u64,
    /// Lattice points with every coordinate in `[0, N]`.
    pub kept: u64,
    /// Search-tree nodes actually expanded after pruning.
    pub visited: u64,
    /// `1 - kept / box_size`.
    pub discard_ratio: f64,
}

/// Lattice points of `Phi_d R_d` in `[0, N]^d`, grouped by value histogram.
///
/// A point contributes `prod_j phi_q(s_j, N)`, which depends only on how
/// many coordinates take each value. Grouping makes the enumeration
/// independent of `q`.
#[derive(Debug, Clone)]
pub struct BoxCount {
    pub d: usize,
    pub block: usize,
    /// Key `h` has `h[v]` coordinates equal to `v`, `v = 0..=N`.
    pub histograms: HashMap<Vec<u32>, u64>,
    pub stats: EnumerationStats,
}

impl BoxCount {
    /// `sum_{s in S_d} prod_j phi_q(s_j, N)`.
    pub fn evaluate(&self, q: &ExactRational) -> Result<ExactRational> {
        let w = BinomialWeights::new(self.block, q)?;
        let mut cache: Vec<Vec<BigUint>> = w.numerators.iter().map(|x| vec![BigUint::one(), x.clone()]).collect();
        let mut total = BigUint::zero();
        // Deterministic order keeps the work (not the result) reproducible.
        let mut keys: Vec<_> = self.histograms.iter().collect();
        keys.sort();
        for (hist, &count) in keys {
            let mut term = BigUint::from(count);
            for (v, &e) in hist.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[v];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &w.numerators[v];
                    powers.push(next);
                }
                term *= &powers[e as usize];
            }
            total += term;
        }
        Ok(from_biguint_ratio(total, w.denominator_for(self.d)))
    }

    /// Number of lattice points in the box.
    pub fn points(&self) -> u64 {
        self.stats.kept
    }
}

/// `(N + 1)^(d - phi(d))`.
pub fn box_size(d: usize, block: usize) -> BigUint {
    BigUint::from(block + 1).pow(d - totient(d))
}

/// Enumerates `S_d = Phi_d R_d ∩ [0, N]^d`, `N = block`.
pub fn enumerate_box(d: usize, block: usize, budget: u64) -> Result<BoxCount> {
    let required = box_size(d, block);
    let box_size = match required.to_u64() {
        Some(b) if b <= budget => b,
        _ => return Err(Error::budget(BudgetKind::Enumeration, required, budget)),
    };
    let basis = hnf_basis(d)?;
    let rank = basis.rank;
    let width = d - rank;
    let bound = block as i64;
    let too_big = || Error::Overflow(format!("HNF entries of Phi_{d} exceed the 64-bit enumerator"));
    // `A` as i64, with headroom for `rank * N * |a|` partial sums.
    let limit = (i64::MAX / 4) / ((rank as i64 + 1) * (bound + 1));
    let a: Vec<Vec<i64>> = basis
        .tail()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_i64().filter(|v| v.abs() <= limit))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(too_big)?;
    // suffix_lo[i][t], suffix_hi[i][t]: range of sum_{k >= i} z_k a[k][t].
    let mut suffix_lo = vec![vec![0i64; width]; rank + 1];
    let mut suffix_hi = vec![vec![0i64; width]; rank + 1];
    for i in (0..rank).rev() {
        for t in 0..width {
            let c = a[i][t] * bound;
            suffix_lo[i][t] = suffix_lo[i + 1][t] + c.min(0);
            suffix_hi[i][t] = suffix_hi[i + 1][t] + c.max(0);
        }
    }
    let search = Search {
        a: &a,
        lo: &suffix_lo,
        hi: &suffix_hi,
        rank,
        width,
        bound,
    };
    let partials: Vec<Partial> = (0..=block)
        .into_par_iter()
        .map(|z0| {
            let mut part = Partial::new(block);
            let mut tail = vec![0i64; width];
            search.descend(0, z0 as i64, &mut tail, &mut part);
            part
        })
        .collect();
    let mut histograms: HashMap<Vec<u32>, u64> = HashMap::new();
    let (mut kept, mut visited) = (0u64, 0u64);
    for part in partials {
        kept += part.kept;
        visited += part.visited;
        for (k, v) in part.histograms {
            *histograms.entry(k).or_default() += v;
        }
    }
    Ok(BoxCount {
        d,
        block,
        histograms,
        stats: EnumerationStats {
            box_size,
            kept,
            visited,
            discard_ratio: 1.0 - kept as f64 / box_size as f64,
        },
    })
}

struct Search<'a> {
    a: &'a [Vec<i64>],
    lo: &'a [Vec<i64>],
    hi: &'a [Vec<i64>],
    rank: usize,
    width: usize,
    bound: i64,
}

struct Partial {
    counts: Vec<u32>,
    histograms: HashMap<Vec<u32>, u64>,
    kept: u64,
    visited: u64,
}

impl Partial {
    fn new(block: usize) -> Self {
        Partial {
            counts: vec![0; block + 1],
            histograms: HashMap::new(),
            kept: 0,
            visited: 0,
        }
    }
}

impl Search<'_> {
    /// Fixes `z_level = value` on top of the partial tail sums and recurses.
    fn descend(&self, level: usize, value: i64, tail: &mut [i64], part: &mut Partial) {
        part.visited += 1;
        let row = &self.a[level];
        for t in 0..self.width {
            tail[t] += value * row[t];
        }
        let next = level + 1;
        let feasible = (0..self.width).all(|t| {
            tail[t] + self.lo[next][t] <= self.bound && tail[t] + self.hi[next][t] >= 0
        });
        if feasible {
            part.counts[value as usize] += 1;
            if next == self.rank {
                self.leaf(tail, part);
            } else {
                for v in 0..=self.bound {
                    self.descend(next, v, tail, part);
                }
            }
            part.counts[value as usize] -= 1;
        }
        for t in 0..self.width {
            tail[t] -= value * row[t];
        }
    }

    /// All free coordinates fixed; feasibility guarantees the tail is in range.
    fn leaf(&self, tail: &[i64], part: &mut Partial) {
        for &s in tail {
            part.counts[s as usize] += 1;
        }
        part.kept += 1;
        match part.histograms.get_mut(part.counts.as_slice()) {
            Some(c) => *c += 1,
            None => {
                part.histograms.insert(part.counts.clone(), 1);
            }
        }
        for &s in tail {
            part.counts[s as usize] -= 1;
        }
    }
}
