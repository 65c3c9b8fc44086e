//! Permutations of `{1..n+1}` and the adjacent-transposition walk.
//!
//! This is the ground-truth side: exhaustive enumeration over all `n^t`
//! generator words and Monte Carlo sampling, against which the heat-flow
//! engine is checked.

mod enumerate;
mod walk;

pub use enumerate::{enumerate_total_inversions, DEFAULT_ENUM_BUDGET};
pub use walk::{monte_carlo_e, sample_walk, shard_rng, McEstimate, WalkRng, WalkSpec};

use crate::error::{Error, Result};

/// One-line notation word on `{1..m}`, `m = n + 1` for `n` generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let m = word.len();
        let mut seen = vec![false; m];
        for &v in &word {
            let idx = (v as usize).wrapping_sub(1);
            if idx >= m || seen[idx] {
                return Err(Error::NotAPermutation(word));
            }
            seen[idx] = true;
        }
        Ok(Permutation { word })
    }

    /// Identity of `S_{n+1}`, the start of every walk with `n` generators.
    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32 + 1).collect(),
        }
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Number of generators `s_1..s_n` acting on this permutation.
    pub fn generator_count(&self) -> usize {
        self.word.len().saturating_sub(1)
    }

    /// Applies `s_i` (swap positions `i` and `i+1`, 1-based).
    pub fn apply_generator(&self, i: usize) -> Result<Permutation> {
        let mut next = self.clone();
        next.apply_generator_in_place(i)?;
        Ok(next)
    }

    pub fn apply_generator_in_place(&mut self, i: usize) -> Result<()> {
        let n = self.generator_count();
        if i == 0 || i > n {
            return Err(Error::GeneratorOutOfRange { index: i, n });
        }
        self.word.swap(i - 1, i);
        Ok(())
    }

    /// Inversion count by merge sort, `O(m log m)`.
    pub fn inversions(&self) -> u64 {
        let mut buf = self.word.clone();
        let mut scratch = vec![0; buf.len()];
        merge_count(&mut buf, &mut scratch)
    }

    /// Inversion count by checking every pair, `O(m²)`.
    pub fn inversions_naive(&self) -> u64 {
        let w = &self.word;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.word.iter().map(u32::to_string).collect();
        let sep = if self.word.len() > 9 { " " } else { "" };
        f.write_str(&parts.join(sep))
    }
}

fn merge_count(v: &mut [u32], scratch: &mut [u32]) -> u64 {
    let len = v.len();
    if len < 2 {
        return 0;
    }
    let mid = len / 2;
    let mut count = {
        let (left, right) = v.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        merge_count(left, sl) + merge_count(right, sr)
    };
    let (mut a, mut b, mut k) = (0, mid, 0);
    while a < mid && b < len {
        if v[a] <= v[b] {
            scratch[k] = v[a];
            a += 1;
        } else {
            scratch[k] = v[b];
            b += 1;
            // every remaining left element exceeds v[b]
            count += (mid - a) as u64;
        }
        k += 1;
    }
    scratch[k..k + mid - a].copy_from_slice(&v[a..mid]);
    k += mid - a;
    scratch[k..k + len - b].copy_from_slice(&v[b..len]);
    v.copy_from_slice(&scratch[..len]);
    count
}
