//! Heat-flow dynamic program over the `p_ij = Prob(π_i < π_j)` matrices.
//!
//! After `t` random adjacent transpositions on `S_{n+1}`, the matrix
//! `(p_ij)` evolves as a synchronous heat flow with conductivity `x = 1/n`,
//! and `E_nt = Σ_{i>j} p_ij`. The same process is run for general `x`,
//! either numerically or symbolically (entries are polynomials in `x`), on
//! several equivalent graphs; see [`ModelVariant`].

mod field;
mod scalar;

pub use field::{Cell, ModelVariant, OrderField};
pub use scalar::{Scalar, ScalarKind};

use crate::error::{Error, Result};
use crate::numerics::{Poly, Rational};

pub fn init_field<S: Scalar>(n: usize, variant: ModelVariant) -> Result<OrderField<S>> {
    OrderField::init(n, variant)
}

pub fn step<S: Scalar>(field: &OrderField<S>, x: &S) -> Result<OrderField<S>> {
    field.step(x)
}

pub fn subdiagonal_heat<S: Scalar>(field: &OrderField<S>) -> Result<S> {
    field.subdiagonal_heat()
}

/// Diamond model at `t = 0`.
pub fn unfold_to_diamond<S: Scalar>(n: usize) -> Result<OrderField<S>> {
    OrderField::init(n, ModelVariant::DiamondHotBoundary)
}

/// Result of a `t`-step run.
#[derive(Debug, Clone)]
pub struct HeatRunReport<S: Scalar> {
    /// `E` after each step, starting with `E = 0` at `t = 0` (length `t+1`).
    pub energy: Vec<S>,
    /// Subdiagonal sums `e_τ` for `τ = 1..=t`.
    pub subdiagonal: Vec<S>,
    pub field: OrderField<S>,
}

impl<S: Scalar> HeatRunReport<S> {
    pub fn final_energy(&self) -> &S {
        self.energy
            .last()
            .expect("energy always holds the t = 0 value")
    }
}

/// Runs `t` steps from the initial field of `variant`.
pub fn run<S: Scalar>(
    n: usize,
    t: usize,
    x: &S,
    variant: ModelVariant,
) -> Result<HeatRunReport<S>> {
    if let ModelVariant::SemiInfinite { .. } = variant {
        return Err(Error::UnsupportedVariant(variant.name()));
    }
    let mut field = OrderField::init(n, variant)?;
    S::check_conductivity(x, n)?;
    let mut energy = Vec::with_capacity(t + 1);
    let mut subdiagonal = Vec::with_capacity(t);
    energy.push(field.subdiagonal_heat()?);
    for _ in 0..t {
        field = field.step(x)?;
        energy.push(field.subdiagonal_heat()?);
        subdiagonal.push(field.first_subdiagonal_sum()?);
    }
    Ok(HeatRunReport {
        energy,
        subdiagonal,
        field,
    })
}

/// Every field from `t = 0` to `t = steps`.
pub fn trajectory<S: Scalar>(
    init: OrderField<S>,
    x: &S,
    steps: usize,
) -> Result<Vec<OrderField<S>>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(init);
    for _ in 0..steps {
        let next = out.last().expect("non-empty").step(x)?;
        out.push(next);
    }
    Ok(out)
}

/// Exact `E_nt` at the walk conductivity `x = 1/n`.
pub fn exact_e(n: usize, t: usize) -> Result<Rational> {
    let x = Rational::recip_of(n as u64)?;
    Ok(run(n, t, &x, ModelVariant::TriangleHotBoundary)?
        .final_energy()
        .clone())
}

/// Exact `E_nt` for every `t` in `0..=t_max` from a single run.
pub fn exact_e_series(n: usize, t_max: usize) -> Result<Vec<Rational>> {
    let x = Rational::recip_of(n as u64)?;
    Ok(run(n, t_max, &x, ModelVariant::TriangleHotBoundary)?.energy)
}

/// `E_nt(x)` as a polynomial in the conductivity.
pub fn symbolic_e(n: usize, t: usize) -> Result<Poly> {
    Ok(run(n, t, &Poly::x(), ModelVariant::TriangleHotBoundary)?
        .final_energy()
        .clone())
}

/// Floating-point `E_nt` at `x = 1/n`.
pub fn float_e_series(n: usize, t_max: usize) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::InvalidN);
    }
    Ok(run(
        n,
        t_max,
        &(1.0 / n as f64),
        ModelVariant::TriangleHotBoundary,
    )?
    .energy)
}

/// `t`-step semi-infinite run at default depth `t + 1`; returns sublevels
/// `p_0..p_{t+1}`.
pub fn semi_infinite_profile<S: Scalar>(t: usize, x: &S) -> Result<Vec<S>> {
    let variant = ModelVariant::semi_infinite_for(t);
    let mut field = OrderField::init(1, variant)?;
    for _ in 0..t {
        field = field.step(x)?;
    }
    (0..=t + 1).map(|k| field.sublevel(k)).collect()
}
