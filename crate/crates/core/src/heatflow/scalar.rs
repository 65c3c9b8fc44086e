use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::numerics::{Poly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Float,
    Rational,
    Poly,
}

/// Values a heat field can carry: floats, exact rationals, or polynomials in
/// the conductivity `x`.
///
/// A field and its conductivity must share one scalar type, so a kind
/// mismatch is a type error rather than a runtime one.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn half() -> Self;
    fn from_count(c: usize) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn sum<'a>(items: impl Iterator<Item = &'a Self>) -> Self {
        items.fold(Self::zero(), |acc, v| acc.add(v))
    }

    /// Accepts `x ∈ [0, 1/2]` and the walk conductivity `x = 1/n`.
    /// Symbolic conductivities are unrestricted.
    fn check_conductivity(x: &Self, n: usize) -> Result<()>;

    /// Cell value as written in matrix dumps.
    fn dump(&self) -> String;
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn half() -> Self {
        0.5
    }
    fn from_count(c: usize) -> Self {
        c as f64
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    /// Neumaier compensated sum, so totals of many equal cells round once.
    fn sum<'a>(items: impl Iterator<Item = &'a Self>) -> Self {
        let (mut s, mut c) = (0.0f64, 0.0f64);
        for &v in items {
            let t = s + v;
            c += if s.abs() >= v.abs() {
                (s - t) + v
            } else {
                (v - t) + s
            };
            s = t;
        }
        s + c
    }

    fn check_conductivity(x: &Self, n: usize) -> Result<()> {
        if (0.0..=0.5).contains(x) || (n > 0 && *x == 1.0 / n as f64) {
            Ok(())
        } else {
            Err(Error::ConductivityOutOfRange(format!("{x:?}")))
        }
    }

    fn dump(&self) -> String {
        format!("{self:?}")
    }
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn half() -> Self {
        Rational::half()
    }
    fn from_count(c: usize) -> Self {
        Rational::from(c as i64)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn check_conductivity(x: &Self, n: usize) -> Result<()> {
        let in_range = !x.is_negative() && *x <= Rational::half();
        let walk = n > 0 && *x == Rational::recip_of(n as u64)?;
        if in_range || walk {
            Ok(())
        } else {
            Err(Error::ConductivityOutOfRange(x.to_string()))
        }
    }

    fn dump(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Poly {
    const KIND: ScalarKind = ScalarKind::Poly;

    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
    fn half() -> Self {
        Poly::constant(Rational::half())
    }
    fn from_count(c: usize) -> Self {
        Poly::constant(Rational::from(c as i64))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn check_conductivity(_x: &Self, _n: usize) -> Result<()> {
        Ok(())
    }

    fn dump(&self) -> String {
        self.to_coefficient_string()
    }
}
