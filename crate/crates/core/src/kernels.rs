//! Reproducing kernels: quadrature evaluation of
//! `K(z, w) = int e^{i<z - conj(w), xi>} / w_n(xi) dxi`, the diagonal, the
//! d = 1 order-0 closed form `i / (z - conj(w))`, derivative kernels, and
//! the reproducing-property check.
//!
//! Rules are keyed by buckets of the effective depth `interior_depth(Im z +
//! Im w)` and of the real-direction frequency `|Re z - Re w|`, and cached.
//! The cache is a read-mostly map; concurrent inserts are idempotent.

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::gauge::{Gauge, Weight};
use crate::laplace::{i_xi_pow, HSFunction, TubePoint};
use crate::quad::{build_rule_spec, QuadratureRule, RuleSpec, Support};
use crate::scalar::{dot, norm2, Cx, Real};
use num_traits::Float;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Kernel configuration: cone, weight, and the per-pair rule policy.
#[derive(Debug)]
pub struct KernelParams<T> {
    pub cone: Arc<Cone<T>>,
    pub weight: Weight<T>,
    pub target: T,
    /// Multi-index degree budget for derivative kernels.
    pub degree_budget: u32,
    cache: RwLock<HashMap<(i32, i32), Arc<QuadratureRule<T>>>>,
}

impl<T: Real> KernelParams<T> {
    pub fn new(cone: Arc<Cone<T>>, weight: Weight<T>, target: T) -> Self {
        KernelParams { cone, weight, target, degree_budget: 8, cache: RwLock::new(HashMap::new()) }
    }

    /// Bucket keys: depth rounded down and frequency rounded up along a
    /// sqrt(2)-spaced grid, so a cached rule is always at least as strong as
    /// the request it serves.
    fn bucket(&self, depth: T, freq: T) -> (i32, i32, T, T) {
        let d = depth.as_f64();
        let f = freq.as_f64();
        let kd = (2.0 * d.log2()).floor() as i32;
        let c_lo = 2f64.powf(kd as f64 / 2.0);
        let (kf, f_hi) = if f <= 1e-9 {
            (i32::MIN, 0.0)
        } else {
            let k = (2.0 * f.log2()).ceil() as i32;
            (k, 2f64.powf(k as f64 / 2.0))
        };
        (kd, kf, T::of(c_lo), T::of(f_hi))
    }

    fn rule_for(&self, depth: T, freq: T) -> Result<Arc<QuadratureRule<T>>> {
        let (kd, kf, c_lo, f_hi) = self.bucket(depth, freq);
        if let Some(r) = self.cache.read().unwrap().get(&(kd, kf)) {
            return Ok(Arc::clone(r));
        }
        let rule = build_rule_spec(
            &self.cone,
            &RuleSpec {
                decay_scale: c_lo,
                degree: self.degree_budget + 2 * self.weight.order,
                target: self.target,
                max_frequency: f_hi,
                support: Support::HalfLine,
            },
        )
        .map_err(|e| match e {
            Error::TargetUnreachable { .. } => Error::OscillationBudgetExceeded {
                freq: freq.as_f64(),
                capacity: depth.as_f64() * 6.0,
            },
            other => other,
        })?;
        let rule = Arc::new(rule);
        // last-writer-wins; values for a key are identical
        self.cache.write().unwrap().insert((kd, kf), Arc::clone(&rule));
        Ok(rule)
    }

    fn effective(&self, z: &TubePoint<T>, w: &TubePoint<T>) -> Result<(T, T, Vec<T>, Vec<T>)> {
        let y_eff: Vec<T> = z.y.iter().zip(&w.y).map(|(&a, &b)| a + b).collect();
        let x_eff: Vec<T> = z.x.iter().zip(&w.x).map(|(&a, &b)| a - b).collect();
        let depth = self.cone.interior_depth(&y_eff)?;
        if depth <= T::zero() {
            return Err(Error::NotInInterior { depth: depth.as_f64() });
        }
        Ok((depth, norm2(&x_eff), x_eff, y_eff))
    }

    /// `K(z, w)` by quadrature.
    pub fn kernel_eval(&self, z: &TubePoint<T>, w: &TubePoint<T>) -> Result<Cx<T>> {
        self.kernel_derivative(&vec![0; self.cone.dim()], &vec![0; self.cone.dim()], z, w)
    }

    /// Mixed derivative kernel
    /// `int (i xi)^alpha (-i xi)^beta e^{i<z - conj(w), xi>} / w_n dxi`.
    pub fn kernel_derivative(
        &self,
        alpha: &[u32],
        beta: &[u32],
        z: &TubePoint<T>,
        w: &TubePoint<T>,
    ) -> Result<Cx<T>> {
        let total: u32 = alpha.iter().chain(beta).sum();
        if total > self.degree_budget {
            return Err(Error::DegreeTooHigh { degree: total, order: self.degree_budget });
        }
        let (depth, freq, x_eff, y_eff) = self.effective(z, w)?;
        let rule = self.rule_for(depth, freq)?;
        rule.check_oscillation(freq)?;
        let wn = &self.weight;
        rule.integrate(|xi| {
            let phase = Cx::new(-dot(&y_eff, xi), dot(&x_eff, xi)).exp();
            let poly = i_xi_pow(alpha, xi) * i_xi_pow(beta, xi).conj();
            poly * phase / Cx::new(wn.eval_unchecked(xi), T::zero())
        })
    }

    /// The diagonal `K(z, z) = int e^{-2<y,xi>} / w_n dxi`, a positive real.
    pub fn kernel_diag(&self, z: &TubePoint<T>) -> Result<T> {
        let depth = self.cone.interior_depth(&z.y)?;
        if depth <= T::zero() {
            return Err(Error::NotInInterior { depth: depth.as_f64() });
        }
        let two = T::of(2.0);
        let rule = self.rule_for(two * depth, T::zero())?;
        let wn = &self.weight;
        let v = rule.integrate(|xi| {
            Cx::new(Float::exp(-two * dot(&z.y, xi)) / wn.eval_unchecked(xi), T::zero())
        })?;
        Ok(v.re)
    }

    /// Both sides of the reproducing identity `<F, L k_w> = F(w)`, with the
    /// inner product computed literally against the kernel density on the
    /// kernel's own rule.
    pub fn reproduce_check(&self, f: &HSFunction<T>, w: &TubePoint<T>) -> Result<(Cx<T>, Cx<T>, T)> {
        if f.cone.dim() != self.cone.dim() || f.weight.order != self.weight.order {
            return Err(Error::ParameterMismatch);
        }
        let gauges_match = matches!(
            (&f.weight.gauge, &self.weight.gauge),
            (Gauge::Euclidean, Gauge::Euclidean) | (Gauge::Linear { .. }, Gauge::Linear { .. })
        );
        if !gauges_match {
            return Err(Error::ParameterMismatch);
        }
        let lhs = f.evaluate(w)?;
        let depth = self.cone.interior_depth(&w.y)?;
        let rule = self.rule_for(depth + f.density.envelope.decay, norm2(&w.x))?;
        let wn = &self.weight;
        let rhs = rule.integrate(|xi| {
            // k_w(xi) = e^{-i<conj(w), xi>} / w_n(xi)
            let k_w = Cx::new(-dot(&w.y, xi), -dot(&w.x, xi)).exp()
                / Cx::new(wn.eval_unchecked(xi), T::zero());
            f.density.eval(xi) * k_w.conj() * Cx::new(wn.eval_unchecked(xi), T::zero())
        })?;
        let denom = Float::max(lhs.norm(), T::of(1e-30));
        Ok((lhs, rhs, (lhs - rhs).norm() / denom))
    }
}

/// Closed-form kernel for the upper half-plane (d = 1, order 0):
/// `i / (z - conj(w))`.
pub fn kernel_halfplane_closed<T: Real>(z: Cx<T>, w: Cx<T>) -> Result<Cx<T>> {
    if z.im <= T::zero() || w.im <= T::zero() {
        return Err(Error::NotInHalfPlane);
    }
    let i = Cx::new(T::zero(), T::one());
    Ok(i / (z - w.conj()))
}
