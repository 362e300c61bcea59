//! The weighted Fourier-Laplace realization: spectral densities on the dual
//! cone, the holomorphic extension `F(z) = int e^{i<z,xi>} f(xi) dxi` into
//! the tube, derivative evaluation, Hardy-Sobolev and H^2 norms, boundary
//! translates, and polynomial Fourier multipliers.
//!
//! Norms and inner products live on the spectral side. Physical-space
//! L^2(R^d) quantities, where reported, differ by the factor (2 pi)^{d/2}
//! and are labeled as such by callers.

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::gauge::Weight;
use crate::quad::{build_rule_spec, QuadratureRule, RuleSpec, Support};
use crate::scalar::{dot, norm2, Cx, Real};
use num_traits::Float;
use std::sync::Arc;

/// A point z = x + iy of the tube, with y in the open cone.
#[derive(Clone, Debug, PartialEq)]
pub struct TubePoint<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
}

impl<T: Real> TubePoint<T> {
    /// Validated constructor: y must have positive interior depth.
    pub fn new(cone: &Cone<T>, x: Vec<T>, y: Vec<T>) -> Result<Self> {
        if x.len() != cone.dim() || y.len() != cone.dim() {
            return Err(Error::DimensionMismatch { expected: cone.dim(), got: x.len().max(y.len()) });
        }
        let depth = cone.interior_depth(&y)?;
        if depth <= T::zero() {
            return Err(Error::NotInInterior { depth: depth.as_f64() });
        }
        Ok(TubePoint { x, y })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// 1D convenience constructor on the half-plane.
    pub fn halfplane(cone: &Cone<T>, re: T, im: T) -> Result<Self> {
        Self::new(cone, vec![re], vec![im])
    }
}

/// Declared envelope bound `|f(xi)| <= M e^{-a |xi|} (1 + |xi|)^m`.
#[derive(Clone, Copy, Debug)]
pub struct Envelope<T> {
    pub amplitude: T,
    pub decay: T,
    pub poly_degree: u32,
}

/// A spectral density on the dual cone: an evaluator plus its declared
/// envelope and support.
#[derive(Clone)]
pub struct SpectralDensity<T> {
    eval: Arc<dyn Fn(&[T]) -> Cx<T> + Send + Sync>,
    pub envelope: Envelope<T>,
    pub support: Support<T>,
    pub description: String,
}

impl<T: Real> SpectralDensity<T> {
    pub fn new(
        eval: impl Fn(&[T]) -> Cx<T> + Send + Sync + 'static,
        envelope: Envelope<T>,
        description: impl Into<String>,
    ) -> Self {
        SpectralDensity {
            eval: Arc::new(eval),
            envelope,
            support: Support::HalfLine,
            description: description.into(),
        }
    }

    pub fn with_support(mut self, support: Support<T>) -> Self {
        self.support = support;
        self
    }

    #[inline]
    pub fn eval(&self, xi: &[T]) -> Cx<T> {
        (self.eval)(xi)
    }

    /// The zero density.
    pub fn zero() -> Self {
        SpectralDensity::new(
            |_| Cx::new(T::zero(), T::zero()),
            Envelope { amplitude: T::zero(), decay: T::one(), poly_degree: 0 },
            "zero",
        )
    }
}

impl<T> std::fmt::Debug for SpectralDensity<T>
where
    T: std::fmt::Debug,
{
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralDensity")
            .field("envelope", &self.envelope)
            .field("description", &self.description)
            .finish()
    }
}

/// Complex polynomial in d variables, stored as (multi-index, coefficient)
/// terms.
#[derive(Clone, Debug)]
pub struct MultiPoly<T> {
    pub terms: Vec<(Vec<u32>, Cx<T>)>,
}

impl<T: Real> MultiPoly<T> {
    pub fn constant(c: Cx<T>, dim: usize) -> Self {
        MultiPoly { terms: vec![(vec![0; dim], c)] }
    }

    /// The monomial `zeta_j` in d variables.
    pub fn coordinate(j: usize, dim: usize) -> Self {
        let mut alpha = vec![0; dim];
        alpha[j] = 1;
        MultiPoly { terms: vec![(alpha, Cx::new(T::one(), T::zero()))] }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(a, _)| a.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn eval(&self, zeta: &[Cx<T>]) -> Cx<T> {
        let mut acc = Cx::new(T::zero(), T::zero());
        for (alpha, coeff) in &self.terms {
            let mut term = *coeff;
            for (j, &e) in alpha.iter().enumerate() {
                for _ in 0..e {
                    term = term * zeta[j];
                }
            }
            acc = acc + term;
        }
        acc
    }
}

/// `(i xi)^alpha` over a real node.
pub fn i_xi_pow<T: Real>(alpha: &[u32], xi: &[T]) -> Cx<T> {
    let i = Cx::new(T::zero(), T::one());
    let mut acc = Cx::new(T::one(), T::zero());
    for (j, &e) in alpha.iter().enumerate() {
        let base = i * Cx::new(xi[j], T::zero());
        for _ in 0..e {
            acc = acc * base;
        }
    }
    acc
}

/// `e^{i <z, xi>}` for z = x + iy and real xi.
#[inline]
pub fn tube_phase<T: Real>(z: &TubePoint<T>, xi: &[T]) -> Cx<T> {
    Cx::new(-dot(&z.y, xi), dot(&z.x, xi)).exp()
}

/// A Hardy-Sobolev element represented by its spectral density, together
/// with the cone, the weight, and the quadrature rule resolving it.
#[derive(Clone, Debug)]
pub struct HSFunction<T> {
    pub density: SpectralDensity<T>,
    pub cone: Arc<Cone<T>>,
    pub weight: Weight<T>,
    pub rule: Arc<QuadratureRule<T>>,
}

impl<T: Real> HSFunction<T> {
    /// Build with the default oscillation budget.
    pub fn new(
        cone: Arc<Cone<T>>,
        weight: Weight<T>,
        density: SpectralDensity<T>,
        target: T,
    ) -> Result<Self> {
        Self::with_max_frequency(cone, weight, density, target, T::zero())
    }

    /// Build, sizing the rule for evaluations up to real-part frequency
    /// `max_frequency`.
    pub fn with_max_frequency(
        cone: Arc<Cone<T>>,
        weight: Weight<T>,
        density: SpectralDensity<T>,
        target: T,
        max_frequency: T,
    ) -> Result<Self> {
        let decay_scale = match density.support {
            Support::HalfLine => {
                if density.envelope.decay <= T::zero() {
                    return Err(Error::TargetUnreachable {
                        detail: "half-line density needs a positive envelope decay".into(),
                    });
                }
                density.envelope.decay
            }
            Support::Truncated(_) => Float::max(density.envelope.decay, T::one()),
        };
        let degree = 2 * density.envelope.poly_degree + 2 * weight.order + 8;
        let rule = build_rule_spec(
            &cone,
            &RuleSpec { decay_scale, degree, target, max_frequency, support: density.support },
        )?;
        let f = HSFunction { density, cone, weight, rule: Arc::new(rule) };
        // the finite weighted norm invariant is checked at build time
        let norm = f.hs_norm()?;
        if !Float::is_finite(norm) {
            return Err(Error::NonFiniteIntegrand);
        }
        Ok(f)
    }

    /// Rewrap the same cone/rule with a different density and weight. The
    /// caller asserts the new density decays at least as fast.
    pub fn rewrapped(&self, density: SpectralDensity<T>, weight: Weight<T>) -> Self {
        HSFunction { density, cone: Arc::clone(&self.cone), weight, rule: Arc::clone(&self.rule) }
    }

    fn check_evaluable(&self, z: &TubePoint<T>) -> Result<T> {
        let depth = self.cone.interior_depth(&z.y)?;
        if depth <= T::zero() {
            return Err(Error::NotInInterior { depth: depth.as_f64() });
        }
        if matches!(self.density.support, Support::HalfLine) {
            let available = depth + self.density.envelope.decay;
            let slack = T::of(1e-12);
            if self.rule.decay_scale > available + slack {
                return Err(Error::RuleMismatch {
                    rule_scale: self.rule.decay_scale.as_f64(),
                    available: available.as_f64(),
                });
            }
        }
        self.rule.check_oscillation(norm2(&z.x))?;
        Ok(depth)
    }

    /// `F(z) = int e^{i<z,xi>} f(xi) dxi` by the working rule.
    pub fn evaluate(&self, z: &TubePoint<T>) -> Result<Cx<T>> {
        self.check_evaluable(z)?;
        self.rule.integrate(|xi| tube_phase(z, xi) * self.density.eval(xi))
    }

    /// `d^alpha F(z) = int (i xi)^alpha e^{i<z,xi>} f(xi) dxi`.
    pub fn evaluate_derivative(&self, alpha: &[u32], z: &TubePoint<T>) -> Result<Cx<T>> {
        let total: u32 = alpha.iter().sum();
        if total > self.rule.order_budget {
            return Err(Error::DegreeTooHigh { degree: total, order: self.rule.order_budget });
        }
        self.check_evaluable(z)?;
        self.rule
            .integrate(|xi| i_xi_pow(alpha, xi) * tube_phase(z, xi) * self.density.eval(xi))
    }

    /// The Hardy-Sobolev norm: `(int |f|^2 w_n)^(1/2)` on the spectral side.
    pub fn hs_norm(&self) -> Result<T> {
        let w = &self.weight;
        let v = self.rule.integrate(|xi| {
            let fv = self.density.eval(xi);
            Cx::new(fv.norm_sqr() * w.eval_unchecked(xi), T::zero())
        })?;
        Ok(Float::sqrt(Float::max(v.re, T::zero())))
    }

    /// The spectral-side H^2 norm `(int |f|^2)^(1/2)`. This equals the
    /// supremum over y of the translate norms, since `e^{-2<y,xi>} <= 1` on
    /// the dual cone.
    pub fn h2_sup_norm(&self) -> Result<T> {
        let v = self.rule.integrate(|xi| Cx::new(self.density.eval(xi).norm_sqr(), T::zero()))?;
        Ok(Float::sqrt(Float::max(v.re, T::zero())))
    }

    /// Spectrum of the boundary translate `F_y`: the damped density
    /// `e^{-<y,xi>} f(xi)`.
    pub fn translate_density(&self, y: &[T]) -> Result<SpectralDensity<T>> {
        let depth = self.cone.interior_depth(y)?;
        if depth <= T::zero() {
            return Err(Error::NotInInterior { depth: depth.as_f64() });
        }
        let yv = y.to_vec();
        let inner = self.density.clone();
        Ok(SpectralDensity {
            eval: Arc::new(move |xi: &[T]| {
                inner.eval(xi) * Cx::new(Float::exp(-dot(&yv, xi)), T::zero())
            }),
            envelope: Envelope {
                amplitude: self.density.envelope.amplitude,
                decay: self.density.envelope.decay + depth,
                poly_degree: self.density.envelope.poly_degree,
            },
            support: self.density.support,
            description: format!("translate of {}", self.density.description),
        })
    }

    /// Apply the polynomial Fourier multiplier `P(D)`: wraps the density
    /// `P(i xi) f(xi)` as an order-0 element and reports the empirical
    /// domination constant `max |P(i xi)| / w_n(xi)^(1/2)` over the nodes.
    pub fn apply_poly_multiplier(&self, p: &MultiPoly<T>) -> Result<(HSFunction<T>, T)> {
        let deg = p.degree();
        if deg > self.weight.order {
            return Err(Error::DegreeTooHigh { degree: deg, order: self.weight.order });
        }
        let mut c_p = T::zero();
        for node in &self.rule.nodes {
            let i_xi: Vec<Cx<T>> = node.iter().map(|&v| Cx::new(T::zero(), v)).collect();
            let ratio = p.eval(&i_xi).norm() / Float::sqrt(self.weight.eval_unchecked(node));
            c_p = Float::max(c_p, ratio);
        }
        let inner = self.density.clone();
        let pc = p.clone();
        let density = SpectralDensity {
            eval: Arc::new(move |xi: &[T]| {
                let i_xi: Vec<Cx<T>> = xi.iter().map(|&v| Cx::new(T::zero(), v)).collect();
                pc.eval(&i_xi) * inner.eval(xi)
            }),
            envelope: Envelope {
                amplitude: self.density.envelope.amplitude,
                decay: self.density.envelope.decay,
                poly_degree: self.density.envelope.poly_degree + deg,
            },
            support: self.density.support,
            description: format!("poly multiplier on {}", self.density.description),
        };
        let order0 = Weight::new(0, self.weight.gauge.clone());
        let out = self.rewrapped(density, order0);
        Ok((out, c_p))
    }
}
