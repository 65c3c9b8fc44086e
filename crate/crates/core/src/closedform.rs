//! Closed forms: Catalan and ballot counts, the semi-infinite solution,
//! its total heat, and the two-sided bounds on `E_nt`.
//!
//! Every bound comes in two forms, a polynomial in `x` and a sum in powers
//! of `1/n`. Their agreement at `x = 1/n` is tested, not assumed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{binomial, Poly, Rational};

/// Largest `r` accepted by [`brute_force_catalan_walks`] (`2^{2r}` paths).
pub const BRUTE_FORCE_MAX_R: u32 = 12;

/// Catalan number `C_r = C(2r, r) / (r + 1)`.
pub fn catalan(r: u32) -> BigInt {
    let r = i64::from(r);
    binomial(2 * r, r) / BigInt::from(r + 1)
}

/// Walks of `2r` half-steps from sublevel `k` to sublevel 0 that touch 0
/// only at the last half-step: `C(2r−1, r−k) − C(2r−1, r−k−1)`.
pub fn ballot_walks(r: u32, k: u32) -> BigInt {
    let (r, k) = (i64::from(r), i64::from(k));
    binomial(2 * r - 1, r - k) - binomial(2 * r - 1, r - k - 1)
}

/// Direct enumeration of the same walks, in half-step units: start at
/// `2k`, take `2r` steps of ±1, first reach 0 on the last step.
pub fn brute_force_catalan_walks(r: u32, k: u32) -> Result<u64> {
    if r > BRUTE_FORCE_MAX_R {
        return Err(Error::BruteForceBudget {
            r,
            max: BRUTE_FORCE_MAX_R,
        });
    }
    let steps = 2 * r;
    let start = 2 * i64::from(k);
    let mut count = 0;
    for mask in 0u32..(1 << steps) {
        let mut pos = start;
        let mut ok = true;
        for s in 0..steps {
            pos += if mask >> s & 1 == 1 { 1 } else { -1 };
            if pos == 0 && s + 1 < steps {
                ok = false;
                break;
            }
        }
        if ok && pos == 0 {
            count += 1;
        }
    }
    Ok(count)
}

/// Memoized `W(r, k)` for `1 ≤ k ≤ r ≤ max_r`. Built once, then read-only,
/// so it can be shared across threads.
#[derive(Debug, Clone)]
pub struct BallotTable {
    rows: Vec<Vec<BigInt>>,
}

impl BallotTable {
    pub fn new(max_r: u32) -> Self {
        let rows = (0..=max_r)
            .map(|r| (0..=r).map(|k| ballot_walks(r, k)).collect())
            .collect();
        BallotTable { rows }
    }

    pub fn max_r(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    /// `W(r, k)`; zero for `k > r`. Falls back to the formula past `max_r`.
    pub fn get(&self, r: u32, k: u32) -> BigInt {
        match self.rows.get(r as usize) {
            Some(row) => row.get(k as usize).cloned().unwrap_or_else(BigInt::zero),
            None => ballot_walks(r, k),
        }
    }
}

fn sign(power: i64) -> BigInt {
    if power.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn pow2(r: i64) -> BigInt {
    BigInt::one() << r as usize
}

/// Semi-infinite temperature at sublevel `k ≥ 1` after `t` steps:
/// `½ Σ_{r=k}^{t} (−1)^{r+k} C(t,r) 2^r W(r,k) x^r`.
pub fn semi_infinite_p(k: u32, t: u32) -> Poly {
    let (ki, ti) = (i64::from(k), i64::from(t));
    let half = Rational::half();
    let coeffs = (0..=ti)
        .map(|r| {
            if r < ki {
                return Rational::zero();
            }
            let count = sign(r + ki) * binomial(ti, r) * pow2(r) * ballot_walks(r as u32, k);
            &half * &Rational::from(count)
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// Total semi-infinite heat on `n+1−k` cells per sublevel:
/// `ntx − ((n+1)/2) Σ_{r=2}^{t} (−1)^r C(t,r) 2^r C_{r−1} x^r`.
pub fn semi_infinite_e(n: u32, t: u32) -> Poly {
    let (ni, ti) = (i64::from(n), i64::from(t));
    let scale = Rational::new(ni + 1, 2).expect("non-zero denominator");
    let mut coeffs = vec![Rational::zero(); t as usize + 1];
    if t >= 1 {
        coeffs[1] = Rational::from(ni * ti);
    }
    for r in 2..=ti {
        let term = sign(r) * binomial(ti, r) * pow2(r) * catalan(r as u32 - 1);
        coeffs[r as usize] = -(&scale * &Rational::from(term));
    }
    Poly::from_coeffs(coeffs)
}

/// `t − (2/n)C(t,2) + Σ_{r=2}^{t} ((−1)^r / n^r)·bracket(r)`.
fn inverse_n_series(n: u32, t: u32, bracket: impl Fn(i64) -> BigInt) -> Rational {
    let ti = i64::from(t);
    let inv = Rational::recip_of(u64::from(n)).expect("n >= 1");
    let mut acc = Rational::from(ti) - &inv * &Rational::from(2 * binomial(ti, 2));
    for r in 2..=ti {
        acc += &(&inv.pow(r as u32) * &Rational::from(sign(r) * bracket(r)));
    }
    acc
}

/// Lower bound in powers of `1/n`:
/// bracket `2^r C_r C(t, r+1) − 2^{r−1} C_{r−1} C(t, r)`.
pub fn theorem_lower_bound(n: u32, t: u32) -> Rational {
    let ti = i64::from(t);
    inverse_n_series(n, t, |r| {
        pow2(r) * catalan(r as u32) * binomial(ti, r + 1)
            - pow2(r - 1) * catalan(r as u32 - 1) * binomial(ti, r)
    })
}

/// Upper bound in powers of `1/n`: bracket `2^r C_r C(t, r+1)`.
pub fn theorem_upper_bound(n: u32, t: u32) -> Rational {
    let ti = i64::from(t);
    inverse_n_series(n, t, |r| pow2(r) * catalan(r as u32) * binomial(ti, r + 1))
}

/// Full exact form with the correction integers `d_r` (indexed by `r`,
/// entries below 2 ignored): bracket `2^r C_r C(t, r+1) + 4 d_r C(t, r)`.
pub fn theorem_formula(n: u32, t: u32, d: impl Fn(usize) -> Rational) -> Rational {
    let ti = i64::from(t);
    let inv = Rational::recip_of(u64::from(n)).expect("n >= 1");
    let mut acc = inverse_n_series(n, t, |r| pow2(r) * catalan(r as u32) * binomial(ti, r + 1));
    for r in 2..=ti {
        let term = &Rational::from(sign(r) * 4 * binomial(ti, r)) * &d(r as usize);
        acc += &(&inv.pow(r as u32) * &term);
    }
    acc
}

/// Upper bound from the net-transfer lemma with the semi-infinite
/// subdiagonal sums `n·p_1(τ)` in place of the finite ones:
/// `ntx − 2x Σ_{τ=1}^{t−1} n·p_1(τ)`.
pub fn iterated_upper_bound(n: u32, t: u32) -> Poly {
    let nt = Rational::from(i64::from(n) * i64::from(t));
    let mut acc = Poly::monomial(nt, 1);
    let scale = Rational::from(-2 * i64::from(n));
    for tau in 1..t {
        acc = &acc + &semi_infinite_p(1, tau).shift(1).scale(&scale);
    }
    acc
}
