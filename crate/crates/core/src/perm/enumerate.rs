use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default cap on the number of words `n^t` visited by enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 100_000_000;

/// `Σ inv(π)` over all `n^t` generator words, i.e. `n^t · E_nt`.
///
/// Depth-first over the word tree with an undo stack: each step applies
/// `s_i`, recurses, then applies `s_i` again. The inversion count is kept
/// incrementally. Subtrees under each first letter run in parallel and are
/// summed, which gives the same integer as a sequential walk.
pub fn enumerate_total_inversions(n: u64, t: u32, budget: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let words = n.checked_pow(t).filter(|&w| w <= budget);
    if words.is_none() {
        return Err(Error::BudgetExceeded { n, t, budget });
    }
    if t == 0 {
        return Ok(BigUint::from(0u32));
    }
    let n = n as usize;
    let total: u128 = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut word: Vec<u32> = (1..=n as u32 + 1).collect();
            word.swap(first - 1, first);
            descend(&mut word, n, t as usize - 1, 1)
        })
        .sum();
    Ok(BigUint::from(total))
}

fn descend(word: &mut [u32], n: usize, remaining: usize, inv: i64) -> u128 {
    if remaining == 0 {
        return inv as u128;
    }
    let mut total = 0;
    for i in 1..=n {
        let delta = if word[i - 1] < word[i] { 1 } else { -1 };
        word.swap(i - 1, i);
        total += descend(word, n, remaining - 1, inv + delta);
        word.swap(i - 1, i);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    /// Materializes every word; independent of the undo-stack walk.
    fn brute(n: usize, t: u32) -> u64 {
        let mut total = 0;
        for code in 0..(n as u64).pow(t) {
            let mut p = Permutation::identity(n);
            let mut c = code;
            for _ in 0..t {
                p.apply_generator_in_place((c % n as u64) as usize + 1)
                    .unwrap();
                c /= n as u64;
            }
            total += p.inversions();
        }
        total
    }

    #[test]
    fn known_totals() {
        assert_eq!(
            enumerate_total_inversions(4, 1, DEFAULT_ENUM_BUDGET).unwrap(),
            4u32.into()
        );
        assert_eq!(
            enumerate_total_inversions(2, 2, DEFAULT_ENUM_BUDGET).unwrap(),
            4u32.into()
        );
        assert_eq!(
            enumerate_total_inversions(1, 3, DEFAULT_ENUM_BUDGET).unwrap(),
            1u32.into()
        );
        assert_eq!(
            enumerate_total_inversions(2, 3, DEFAULT_ENUM_BUDGET).unwrap(),
            12u32.into()
        );
        assert_eq!(
            enumerate_total_inversions(4, 2, DEFAULT_ENUM_BUDGET).unwrap(),
            24u32.into()
        );
        assert_eq!(
            enumerate_total_inversions(3, 0, DEFAULT_ENUM_BUDGET).unwrap(),
            0u32.into()
        );
    }

    #[test]
    fn agrees_with_materialized_words() {
        for n in 1..=4 {
            for t in 0..=5 {
                assert_eq!(
                    enumerate_total_inversions(n, t, DEFAULT_ENUM_BUDGET).unwrap(),
                    BigUint::from(brute(n as usize, t)),
                    "n={n} t={t}"
                );
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_total_inversions(10, 9, 1000).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                n: 10,
                t: 9,
                budget: 1000
            }
        );
        assert!(err.to_string().contains("1000"));
        // overflow of n^t is also over budget
        assert!(enumerate_total_inversions(1000, 100, u64::MAX).is_err());
        assert!(enumerate_total_inversions(10, 3, 1000).is_ok());
    }
}
