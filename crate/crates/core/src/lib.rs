//! Expected number of inversions after `t` random adjacent transpositions.
//!
//! A walk of `t` uniformly chosen generators `s_1..s_n` on `S_{n+1}`,
//! started at the identity, ends at a permutation `π`; `E_nt` is the mean
//! of `inv(π)`. The crate computes it
//!
//! * by brute force and Monte Carlo ([`perm`]),
//! * exactly, as a heat flow on the matrix `p_ij = Prob(π_i < π_j)`
//!   ([`heatflow`]),
//! * through closed forms and two-sided bounds ([`closedform`]),
//!
//! and recovers the integer sequences `d_r` and `g_r` that describe the
//! finite-size corrections ([`extract`]).

pub mod closedform;
pub mod error;
pub mod extract;
pub mod heatflow;
pub mod numerics;
pub mod perm;

pub use error::{Error, Result};
pub use numerics::{rat, Poly, Rational};
