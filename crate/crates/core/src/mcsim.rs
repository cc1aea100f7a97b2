//! Monte-Carlo estimates with exact per-sample singularity tests.
//!
//! Samples are cut into fixed blocks of [`BLOCK_SIZE`]; block `b` draws from
//! ChaCha8 keyed by the seed with stream number `b`. Shards take blocks
//! round-robin, so the singular count depends only on `(seed, samples)`,
//! never on the shard or thread count.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomstats::QParam;
use crate::polycyc::SingularityTester;
use crate::{BudgetKind, Error, Model, Result};

pub const GENERATOR: &str = "chacha8/seed_from_u64/stream=block";
pub const BLOCK_SIZE: u64 = 1 << 14;
/// Default cap on samples per run.
pub const DEFAULT_SAMPLES_CAP: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithCI {
    pub n: usize,
    pub q: f64,
    /// How `q` was given: the rational and its nearest float, or the decimal.
    pub q_source: String,
    pub model: Model,
    pub samples: u64,
    pub singular_count: u64,
    pub p_hat: f64,
    pub stderr: f64,
    pub seed: u64,
    pub shards: usize,
    pub generator: String,
    pub block_size: u64,
}

impl EstimateWithCI {
    /// Whether `p` lies within `k` standard errors of the estimate.
    pub fn covers(&self, p: f64, k: f64) -> bool {
        (self.p_hat - p).abs() <= k * self.stderr
    }
}

pub fn check_samples(samples: u64, cap: u64) -> Result<()> {
    if samples > cap {
        return Err(Error::budget(BudgetKind::Samples, samples, cap));
    }
    Ok(())
}

/// Uniform `[0, 1)` with 53 random bits, compared against `q`.
fn bernoulli(rng: &mut ChaCha8Rng, q: f64) -> bool {
    ((rng.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < q
}

fn count_block(tester: &SingularityTester, q: f64, seed: u64, block: u64, len: u64, bits: &mut Vec<bool>) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let n = tester.n();
    let mut hits = 0;
    for _ in 0..len {
        let singular = if n <= 64 {
            let word = (0..n).fold(0u64, |w, i| w | u64::from(bernoulli(&mut rng, q)) << i);
            tester.is_singular_word(word)
        } else {
            bits.clear();
            bits.extend((0..n).map(|_| bernoulli(&mut rng, q)));
            tester.is_singular_bits(bits)
        };
        hits += u64::from(singular);
    }
    hits
}

pub fn sample_singularity(
    n: usize,
    q: &QParam,
    samples: u64,
    seed: u64,
    model: Model,
    shards: usize,
) -> Result<EstimateWithCI> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if samples == 0 {
        return Err(Error::domain("samples must be positive"));
    }
    if shards == 0 {
        return Err(Error::domain("shards must be positive"));
    }
    let qf = q.value();
    let tester = SingularityTester::new(n, model);
    let blocks = samples.div_ceil(BLOCK_SIZE);
    let singular_count: u64 = (0..shards as u64)
        .into_par_iter()
        .map(|shard| {
            let mut bits = Vec::new();
            (shard..blocks)
                .step_by(shards)
                .map(|b| {
                    let len = BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
                    count_block(&tester, qf, seed, b, len, &mut bits)
                })
                .sum::<u64>()
        })
        .sum();
    let p_hat = singular_count as f64 / samples as f64;
    let q_source = match q.as_exact() {
        Some(r) => format!("{r} -> {qf:?}"),
        None => format!("{qf:?}"),
    };
    Ok(EstimateWithCI {
        n,
        q: qf,
        q_source,
        model,
        samples,
        singular_count,
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / samples as f64).sqrt(),
        seed,
        shards,
        generator: GENERATOR.to_string(),
        block_size: BLOCK_SIZE,
    })
}
