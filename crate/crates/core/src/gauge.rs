//! Cone-adapted gauges, the Sobolev weight, and its reflection onto the
//! union of the dual cone with its negative.
//!
//! A gauge is positively homogeneous of degree one and strictly positive on
//! the punctured dual cone. Two families are shipped: the euclidean norm and
//! a linear functional <e, .> with direction e in the cone interior. The
//! weight of order n is `w_n(xi) = sum_{k=0}^n rho(xi)^{2k}`; homogeneity of
//! rho forces rho(0) = 0, so w_n(0) = 1.

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::scalar::{dot, norm2, Real};
use serde::{Deserialize, Serialize};

/// Membership tolerance used by gauge/weight evaluation.
const MEMBERSHIP_TOL: f64 = 1e-10;

/// JSON-facing gauge specification.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GaugeSpec {
    Euclidean,
    Linear { direction: Vec<f64> },
}

#[derive(Clone, Debug)]
pub enum Gauge<T> {
    Euclidean,
    /// <e, .> with e in the cone interior.
    Linear { direction: Vec<T> },
}

impl<T: Real> Gauge<T> {
    /// Build and validate against the cone: a linear gauge direction must
    /// have positive interior depth so the gauge is positive on the
    /// punctured dual cone.
    pub fn build(spec: &GaugeSpec, cone: &Cone<T>) -> Result<Self> {
        match spec {
            GaugeSpec::Euclidean => Ok(Gauge::Euclidean),
            GaugeSpec::Linear { direction } => {
                let e: Vec<T> = direction.iter().map(|&v| T::of(v)).collect();
                let depth = cone.interior_depth(&e)?;
                if depth <= T::zero() {
                    return Err(Error::NotInInterior { depth: depth.as_f64() });
                }
                Ok(Gauge::Linear { direction: e })
            }
        }
    }

    /// Gauge value; errors when `xi` leaves the dual cone.
    pub fn eval(&self, cone: &Cone<T>, xi: &[T]) -> Result<T> {
        if !cone.contains_dual(xi, T::of(MEMBERSHIP_TOL))? {
            return Err(Error::OutsideDualCone);
        }
        Ok(self.eval_unchecked(xi))
    }

    /// Gauge value without the membership check, for quadrature nodes that
    /// lie in the dual cone by construction.
    pub fn eval_unchecked(&self, xi: &[T]) -> T {
        match self {
            Gauge::Euclidean => norm2(xi),
            Gauge::Linear { direction } => dot(direction, xi),
        }
    }
}

/// The Sobolev weight of order n over a gauge.
#[derive(Clone, Debug)]
pub struct Weight<T> {
    pub order: u32,
    pub gauge: Gauge<T>,
}

impl<T: Real> Weight<T> {
    pub fn new(order: u32, gauge: Gauge<T>) -> Self {
        Weight { order, gauge }
    }

    /// `sum_{k=0}^n rho(xi)^{2k}`, evaluated by Horner in rho^2.
    pub fn eval(&self, cone: &Cone<T>, xi: &[T]) -> Result<T> {
        if !cone.contains_dual(xi, T::of(MEMBERSHIP_TOL))? {
            return Err(Error::OutsideDualCone);
        }
        Ok(self.eval_unchecked(xi))
    }

    pub fn eval_unchecked(&self, xi: &[T]) -> T {
        let rho2 = {
            let r = self.gauge.eval_unchecked(xi);
            r * r
        };
        let mut acc = T::one();
        for _ in 0..self.order {
            acc = acc * rho2 + T::one();
        }
        acc
    }

    /// Reflected weight on the union of the dual cone and its negative:
    /// `w_n(xi)` on the dual cone, `w_n(-xi)` on the reflection, 1 at 0.
    pub fn eval_reflected(&self, cone: &Cone<T>, xi: &[T]) -> Result<T> {
        let tol = T::of(MEMBERSHIP_TOL);
        if cone.contains_dual(xi, tol)? {
            return Ok(self.eval_unchecked(xi));
        }
        let neg: Vec<T> = xi.iter().map(|&v| -v).collect();
        if cone.contains_dual(&neg, tol)? {
            return Ok(self.eval_unchecked(&neg));
        }
        Err(Error::OutsideSpectralSet)
    }
}
