use std::collections::BTreeSet;

use super::Rational;
use crate::error::{Error, Result};

/// Coefficients `a_0..a_t` of `n ↦ Σ a_r / n^r`, the representation of
/// `E_nt` at `x = 1/n` for fixed `t` and all `n ≥ t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseNExpansion {
    t: usize,
    coefficients: Vec<Rational>,
}

impl InverseNExpansion {
    pub fn new(t: usize, coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.len() != t + 1 {
            return Err(Error::SampleCount {
                expected: t + 1,
                got: coefficients.len(),
            });
        }
        Ok(InverseNExpansion { t, coefficients })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, r: usize) -> &Rational {
        &self.coefficients[r]
    }

    /// `Σ a_r / n^r`. Errors on `n = 0`.
    pub fn eval_at(&self, n: u64) -> Result<Rational> {
        let inv = Rational::recip_of(n)?;
        Ok(self
            .coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * &inv + a))
    }
}

/// Recovers the unique expansion of degree `t` in `1/n` through `t + 1`
/// exact samples `(n, value)` by Gaussian elimination over the rationals.
pub fn solve_vandermonde_inverse_n(
    t: usize,
    samples: &[(u64, Rational)],
) -> Result<InverseNExpansion> {
    if samples.len() != t + 1 {
        return Err(Error::SampleCount {
            expected: t + 1,
            got: samples.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for &(n, _) in samples {
        if n == 0 || (n as u128) < t as u128 {
            return Err(Error::OutsideValidityRange { n, t });
        }
        if !seen.insert(n) {
            return Err(Error::DuplicateSample(n));
        }
    }

    let size = t + 1;
    // augmented rows [1, 1/n, 1/n^2, ..., 1/n^t | value]
    let mut rows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|(n, value)| {
            let inv = Rational::recip_of(*n).expect("n checked non-zero");
            let mut row = Vec::with_capacity(size + 1);
            let mut power = Rational::one();
            for _ in 0..size {
                row.push(power.clone());
                power = power * &inv;
            }
            row.push(value.clone());
            row
        })
        .collect();

    for col in 0..size {
        // distinct nodes make the system non-singular, so a pivot always exists
        let pivot = (col..size)
            .find(|&r| !rows[r][col].is_zero())
            .expect("Vandermonde system with distinct nodes is non-singular");
        rows.swap(col, pivot);
        let inv_pivot = rows[col][col].recip()?;
        for entry in rows[col].iter_mut().skip(col) {
            *entry = &*entry * &inv_pivot;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *entry -= &(&factor * p);
            }
        }
    }

    let coefficients = rows.into_iter().map(|row| row[size].clone()).collect();
    InverseNExpansion::new(t, coefficients)
}
