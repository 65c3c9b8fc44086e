//! Recovers the correction sequences `d_r` and `g_r` from exact runs.
//!
//! For `n ≥ t`, `E_nt` at `x = 1/n` is a polynomial of degree `t` in `1/n`
//! whose coefficients are fixed by Catalan numbers up to one integer `d_r`
//! per power. Solving for the expansion from `t+1` exact values of `E_nt`
//! and peeling off the known part yields `d_r`. Separately, the symbolic
//! finite-triangle heat minus the semi-infinite total is a polynomial in
//! `x` independent of `n`; its coefficients give `g_r`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::closedform::{catalan, semi_infinite_e, theorem_formula};
use crate::error::{Error, Result};
use crate::heatflow;
use crate::numerics::{binomial, solve_vandermonde_inverse_n, InverseNExpansion, Poly, Rational};

/// Extra sample points used to confirm an expansion after solving.
const VERIFY_EXTRA: u64 = 2;

#[derive(Debug, Clone)]
pub struct DExtraction {
    pub t: usize,
    /// `d_r` for `2 ≤ r ≤ t`.
    pub d: BTreeMap<usize, Rational>,
    pub expansion: InverseNExpansion,
    /// `n` values the expansion was solved and verified on.
    pub n_set: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct GExtraction {
    pub t: usize,
    /// `g_r` for `2 ≤ r ≤ t`.
    pub g: BTreeMap<usize, Rational>,
    pub correction: Poly,
    pub n_set: Vec<u64>,
}

fn first_sample_n(t: usize) -> u64 {
    (t as u64).max(1)
}

/// Sample points `n = max(t,1) ..` used by [`expand_e_in_inverse_n`]: the
/// `t+1` solve points followed by the verification points.
pub fn expansion_n_set(t: usize) -> Vec<u64> {
    let start = first_sample_n(t);
    (start..start + t as u64 + 1 + VERIFY_EXTRA).collect()
}

/// Exact `E_nt` at `x = 1/n` for `t+1` consecutive `n ≥ t`, solved for the
/// `1/n` expansion and checked at two further `n`.
pub fn expand_e_in_inverse_n(t: usize) -> Result<InverseNExpansion> {
    let n_set = expansion_n_set(t);
    let values: Vec<(u64, Rational)> = n_set
        .par_iter()
        .map(|&n| heatflow::exact_e(n as usize, t).map(|e| (n, e)))
        .collect::<Result<_>>()?;
    let expansion = solve_vandermonde_inverse_n(t, &values[..=t])?;
    for (n, e) in &values[t + 1..] {
        if &expansion.eval_at(*n)? != e {
            return Err(Error::NotPolynomialInInverseN { n: *n });
        }
    }
    Ok(expansion)
}

/// Reads `d_r = ((−1)^r a_r − 2^r C_r C(t, r+1)) / (4 C(t, r))` off the
/// expansion, after checking `a_0 = t` and `a_1 = −2 C(t, 2)`.
pub fn extract_d(t: usize) -> Result<DExtraction> {
    if t < 2 {
        return Err(Error::ExtractionPrecondition { what: "t >= 2" });
    }
    let expansion = expand_e_in_inverse_n(t)?;
    let ti = t as i64;
    let a = expansion.coefficients();
    if a[0] != Rational::from(ti) || a[1] != Rational::from(-2 * binomial(ti, 2)) {
        return Err(Error::LeadingTermMismatch { t });
    }
    let mut d = BTreeMap::new();
    for (r, a_r) in a.iter().enumerate().take(t + 1).skip(2) {
        let ri = r as i64;
        let signed = if r % 2 == 0 { a_r.clone() } else { -a_r };
        let known = Rational::from(
            (num_bigint::BigInt::from(1) << r) * catalan(r as u32) * binomial(ti, ri + 1),
        );
        let denom = Rational::from(4 * binomial(ti, ri));
        let value = (signed - known).checked_div(&denom)?;
        if !value.is_integer() || value.is_negative() {
            return Err(Error::NonIntegerD {
                r,
                value: value.to_string(),
            });
        }
        d.insert(r, value);
    }
    Ok(DExtraction {
        t,
        d,
        expansion,
        n_set: expansion_n_set(t),
    })
}

/// Finite-minus-semi-infinite correction polynomial at each `n`, required
/// to be identical; `g_r = (−1)^r [x^r] / (2 C(t, r))`.
pub fn extract_g(t: usize, n_values: &[u64]) -> Result<GExtraction> {
    if t < 2 {
        return Err(Error::ExtractionPrecondition { what: "t >= 2" });
    }
    if n_values.len() < 3 {
        return Err(Error::ExtractionPrecondition {
            what: "at least 3 values of n",
        });
    }
    if let Some(&n) = n_values.iter().find(|&&n| n < t as u64 || n == 0) {
        return Err(Error::OutsideValidityRange { n, t });
    }
    let corrections: Vec<Poly> = n_values
        .par_iter()
        .map(|&n| {
            let finite = heatflow::symbolic_e(n as usize, t)?;
            Ok(&finite - &semi_infinite_e(n as u32, t as u32))
        })
        .collect::<Result<_>>()?;
    let correction = corrections[0].clone();
    for (k, c) in corrections.iter().enumerate().skip(1) {
        if c != &correction {
            return Err(Error::GDependsOnN {
                a: n_values[0],
                b: n_values[k],
            });
        }
    }
    for power in 0..2 {
        if !correction.coeff(power).is_zero() {
            return Err(Error::NonzeroLowOrderCorrection { power });
        }
    }
    let ti = t as i64;
    let g = (2..=t)
        .map(|r| {
            let c = correction.coeff(r);
            let signed = if r % 2 == 0 { c } else { -c };
            let denom = Rational::from(2 * binomial(ti, r as i64));
            Ok((r, signed.checked_div(&denom)?))
        })
        .collect::<Result<_>>()?;
    Ok(GExtraction {
        t,
        g,
        correction,
        n_set: n_values.to_vec(),
    })
}

/// Exact form of `E_nt` with the extracted `d_r`.
pub fn theorem_reconstruct(n: u64, t: usize, d: &DExtraction) -> Result<Rational> {
    if n < t as u64 || n == 0 {
        return Err(Error::OutsideValidityRange { n, t });
    }
    if let Some(r) = (2..=t).find(|r| !d.d.contains_key(r)) {
        return Err(Error::MissingD(r));
    }
    Ok(theorem_formula(n as u32, t as u32, |r| d.d[&r].clone()))
}
