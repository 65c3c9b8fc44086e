use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Permutation;
use crate::error::{Error, Result};

/// Parameters of a seeded Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkSpec {
    pub n: usize,
    pub t: usize,
    pub seed: u64,
    pub samples: u64,
    pub shards: u64,
}

impl WalkSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidWalkSpec("n must be >= 1"));
        }
        if self.samples < 1 {
            return Err(Error::InvalidWalkSpec("samples must be >= 1"));
        }
        if self.shards < 1 || self.shards > self.samples {
            return Err(Error::InvalidWalkSpec("shards must be in 1..=samples"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(samples)`.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// ChaCha8 stream with unbiased bounded draws.
pub struct WalkRng(ChaCha8Rng);

impl WalkRng {
    /// Uniform generator index in `1..=n` (Lemire's multiply-and-reject).
    pub fn generator(&mut self, n: usize) -> usize {
        let bound = n as u64;
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let m = self.0.next_u64() as u128 * bound as u128;
            if (m as u64) >= threshold {
                return (m >> 64) as usize + 1;
            }
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// RNG for shard `k` of a run seeded with `seed`.
///
/// The ChaCha8 key is four successive SplitMix64 outputs starting from
/// state `seed`, little-endian; the ChaCha stream id is `k`. Frozen: changing
/// it changes every published Monte Carlo number.
pub fn shard_rng(seed: u64, shard: u64) -> WalkRng {
    let mut state = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(shard);
    WalkRng(rng)
}

/// `t` uniform generator applications to the identity of `S_{n+1}`.
pub fn sample_walk(n: usize, t: usize, rng: &mut WalkRng) -> Permutation {
    let mut p = Permutation::identity(n);
    if n == 0 {
        return p;
    }
    for _ in 0..t {
        let i = rng.generator(n);
        p.word.swap(i - 1, i);
    }
    p
}

#[derive(Default, Clone, Copy)]
struct Moments {
    sum: u128,
    sum_sq: u128,
}

fn run_shard(n: usize, t: usize, samples: u64, mut rng: WalkRng) -> Moments {
    let mut word: Vec<u32> = (1..=n as u32 + 1).collect();
    let mut acc = Moments::default();
    for _ in 0..samples {
        for (k, v) in word.iter_mut().enumerate() {
            *v = k as u32 + 1;
        }
        let mut inv: i64 = 0;
        for _ in 0..t {
            let i = rng.generator(n);
            inv += if word[i - 1] < word[i] { 1 } else { -1 };
            word.swap(i - 1, i);
        }
        let inv = inv as u128;
        acc.sum += inv;
        acc.sum_sq += inv * inv;
    }
    acc
}

/// Monte Carlo estimate of `E_nt`. Shard `k` draws `samples / shards`
/// walks (the first `samples % shards` shards one more) from
/// [`shard_rng`]`(seed, k)`; shard moments are exact integers, so the
/// result is bit-identical for a fixed `(seed, shards)` whatever the thread
/// schedule.
pub fn monte_carlo_e(spec: &WalkSpec) -> Result<McEstimate> {
    spec.validate()?;
    let base = spec.samples / spec.shards;
    let extra = spec.samples % spec.shards;
    let shards: Vec<Moments> = (0..spec.shards)
        .into_par_iter()
        .map(|k| {
            let count = base + u64::from(k < extra);
            run_shard(spec.n, spec.t, count, shard_rng(spec.seed, k))
        })
        .collect();
    let total = shards.iter().fold(Moments::default(), |a, m| Moments {
        sum: a.sum + m.sum,
        sum_sq: a.sum_sq + m.sum_sq,
    });

    let count = spec.samples as f64;
    let mean = total.sum as f64 / count;
    let stderr = if spec.samples > 1 {
        // N Σx² − (Σx)² is exact in integers
        let big_n = spec.samples as u128;
        let numer = big_n * total.sum_sq - total.sum * total.sum;
        let variance = numer as f64 / (count * (count - 1.0));
        (variance / count).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        stderr,
        samples: spec.samples,
        seed: spec.seed,
    })
}
