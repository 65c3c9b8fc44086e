//! Exact scalar and polynomial arithmetic.
//!
//! Everything downstream (the heat-flow DP, closed forms, sequence
//! extraction) is computed over [`Rational`] or [`Poly`] so that identities
//! can be checked with exact equality.

mod expansion;
mod poly;
mod rational;

pub use expansion::{solve_vandermonde_inverse_n, InverseNExpansion};
pub use poly::Poly;
pub use rational::{rat, Rational};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}
