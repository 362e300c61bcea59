//! Concrete multiplier and weighted-composition families: modulations
//! `psi(z) = e^{i<z, eta0>}` with `eta0` in the dual cone, and translations
//! `phi(z) = z + b` with `Im b` in the closed cone. Both act exactly on the
//! spectral side, so the kernel adjoint identity and the necessary-condition
//! ratio become direct numerical checks.

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::kernels::KernelParams;
use crate::laplace::{tube_phase, Envelope, HSFunction, SpectralDensity, TubePoint};
use crate::quad::Support;
use crate::scalar::{dot, norm2, Cx, Real};
use num_traits::Float;
use std::sync::Arc;

const MEMBERSHIP_TOL: f64 = 1e-10;

/// The symbol `psi(z) = e^{i<z, eta0>}` with `eta0` in the dual cone, so
/// `|psi| <= 1` on the tube.
#[derive(Clone, Debug)]
pub struct ModulationSymbol<T> {
    pub eta0: Vec<T>,
}

impl<T: Real> ModulationSymbol<T> {
    pub fn new(cone: &Cone<T>, eta0: Vec<T>) -> Result<Self> {
        if !cone.contains_dual(&eta0, T::of(MEMBERSHIP_TOL))? {
            return Err(Error::SymbolOutsideDualCone);
        }
        Ok(ModulationSymbol { eta0 })
    }

    pub fn eval(&self, z: &TubePoint<T>) -> Cx<T> {
        tube_phase(z, &self.eta0)
    }
}

/// The self-map `phi(z) = z + b` of the tube, requiring `Im b` in the
/// closed cone.
#[derive(Clone, Debug)]
pub struct TranslationMap<T> {
    pub b_re: Vec<T>,
    pub b_im: Vec<T>,
}

impl<T: Real> TranslationMap<T> {
    pub fn new(cone: &Cone<T>, b_re: Vec<T>, b_im: Vec<T>) -> Result<Self> {
        if b_re.len() != b_im.len() {
            return Err(Error::DimensionMismatch { expected: b_re.len(), got: b_im.len() });
        }
        if !cone.contains_primal(&b_im, T::of(MEMBERSHIP_TOL))? {
            return Err(Error::NotSelfMap);
        }
        Ok(TranslationMap { b_re, b_im })
    }

    /// `phi(z) = z + b`; lands in the tube since the cone is convex.
    pub fn apply(&self, cone: &Cone<T>, z: &TubePoint<T>) -> Result<TubePoint<T>> {
        let x = z.x.iter().zip(&self.b_re).map(|(&a, &b)| a + b).collect();
        let y = z.y.iter().zip(&self.b_im).map(|(&a, &b)| a + b).collect();
        TubePoint::new(cone, x, y)
    }
}

/// A multiplier symbol for the weighted-composition checks: either a
/// constant or a modulation.
#[derive(Clone, Debug)]
pub enum Symbol<T> {
    Constant(Cx<T>),
    Modulation(ModulationSymbol<T>),
}

impl<T: Real> Symbol<T> {
    pub fn eval(&self, z: &TubePoint<T>) -> Cx<T> {
        match self {
            Symbol::Constant(c) => *c,
            Symbol::Modulation(m) => m.eval(z),
        }
    }
}

/// Multiply by the modulation: the density shifts, `g(xi) = f(xi - eta0)`
/// supported on `eta0 + dual cone`. Returns the new element together with
/// the empirical weight-shift constant
/// `C = max over rule nodes of w_n(xi + eta0) / w_n(xi)`,
/// which bounds the squared norm growth: `|psi F|^2 <= C |F|^2`.
///
/// The working rule is the original rule with every node shifted by
/// `eta0` — exact for integrands supported on the shifted cone, so the
/// spectral cutoff costs no accuracy.
pub fn modulation_apply<T: Real>(
    f: &HSFunction<T>,
    s: &ModulationSymbol<T>,
) -> Result<(HSFunction<T>, T)> {
    if s.eta0.len() != f.cone.dim() {
        return Err(Error::DimensionMismatch { expected: f.cone.dim(), got: s.eta0.len() });
    }
    if !f.cone.contains_dual(&s.eta0, T::of(MEMBERSHIP_TOL))? {
        return Err(Error::SymbolOutsideDualCone);
    }
    let mut c_shift = T::zero();
    for node in &f.rule.nodes {
        let shifted: Vec<T> = node.iter().zip(&s.eta0).map(|(&a, &b)| a + b).collect();
        let ratio = f.weight.eval_unchecked(&shifted) / f.weight.eval_unchecked(node);
        c_shift = Float::max(c_shift, ratio);
    }
    let eta = s.eta0.clone();
    let eta_density = eta.clone();
    let cone = Arc::clone(&f.cone);
    let inner = f.density.clone();
    let env = f.density.envelope;
    let density = SpectralDensity::new(
        move |xi: &[T]| {
            let back: Vec<T> = xi.iter().zip(&eta_density).map(|(&a, &b)| a - b).collect();
            match cone.contains_dual(&back, T::of(MEMBERSHIP_TOL)) {
                Ok(true) => inner.eval(&back),
                _ => Cx::new(T::zero(), T::zero()),
            }
        },
        Envelope {
            amplitude: env.amplitude * Float::exp(env.decay * norm2(&s.eta0)),
            decay: env.decay,
            poly_degree: env.poly_degree,
        },
        format!("modulation shift of {}", f.density.description),
    )
    .with_support(match f.density.support {
        Support::HalfLine => Support::HalfLine,
        Support::Truncated(r) => Support::Truncated(r + norm2(&s.eta0)),
    });
    let mut rule = (*f.rule).clone();
    for node in &mut rule.nodes {
        for (v, &e) in node.iter_mut().zip(&eta) {
            *v = *v + e;
        }
    }
    let out = HSFunction {
        density,
        cone: Arc::clone(&f.cone),
        weight: f.weight.clone(),
        rule: Arc::new(rule),
    };
    Ok((out, c_shift))
}

/// Samples where a proposed multiplier symbol exceeds its claimed operator
/// norm, violating the pointwise bound `|psi(w)| <= |M_psi|`.
#[derive(Clone, Debug)]
pub struct PointwiseReport<T> {
    pub max_abs: T,
    pub flagged: Vec<usize>,
}

pub fn multiplier_pointwise_check<T: Real>(
    psi: &Symbol<T>,
    norm_bound: T,
    samples: &[TubePoint<T>],
) -> PointwiseReport<T> {
    let slack = T::of(1e-10);
    let mut max_abs = T::zero();
    let mut flagged = Vec::new();
    for (i, w) in samples.iter().enumerate() {
        let a = psi.eval(w).norm();
        max_abs = Float::max(max_abs, a);
        if a > norm_bound + slack {
            flagged.push(i);
        }
    }
    PointwiseReport { max_abs, flagged }
}

/// Compose with the translation: `(F o phi)(z) = F(z + b)` has density
/// `e^{i<b, xi>} f(xi)`, a contraction since `|e^{i<b, xi>}| <= 1` on the
/// dual cone.
pub fn composition_apply<T: Real>(
    f: &HSFunction<T>,
    t: &TranslationMap<T>,
) -> Result<HSFunction<T>> {
    if t.b_im.len() != f.cone.dim() {
        return Err(Error::DimensionMismatch { expected: f.cone.dim(), got: t.b_im.len() });
    }
    if !f.cone.contains_primal(&t.b_im, T::of(MEMBERSHIP_TOL))? {
        return Err(Error::NotSelfMap);
    }
    let depth = Float::max(f.cone.interior_depth(&t.b_im)?, T::zero());
    let re = t.b_re.clone();
    let im = t.b_im.clone();
    let inner = f.density.clone();
    let env = f.density.envelope;
    let density = SpectralDensity::new(
        move |xi: &[T]| inner.eval(xi) * Cx::new(-dot(&im, xi), dot(&re, xi)).exp(),
        Envelope { amplitude: env.amplitude, decay: env.decay + depth, poly_degree: env.poly_degree },
        format!("translate composition of {}", f.density.description),
    )
    .with_support(f.density.support);
    Ok(f.rewrapped(density, f.weight.clone()))
}

/// The adjoint identity `W* K_w = conj(psi(w)) K_{phi(w)}` tested in inner
/// products: for each test element `F`, compares `(WF)(w)` against
/// `psi(w) F(phi(w))`, the latter recovered through the kernel-side
/// reproduction at `phi(w)`. Returns the worst relative discrepancy.
pub fn wco_adjoint_check<T: Real>(
    params: &KernelParams<T>,
    psi: &Symbol<T>,
    t: &TranslationMap<T>,
    w: &TubePoint<T>,
    tests: &[HSFunction<T>],
) -> Result<T> {
    let mut worst = T::zero();
    for f in tests {
        let wf = match psi {
            Symbol::Constant(c) => {
                let g = composition_apply(f, t)?;
                let cc = *c;
                let inner = g.density.clone();
                let env = g.density.envelope;
                let scaled = SpectralDensity::new(
                    move |xi: &[T]| inner.eval(xi) * cc,
                    Envelope {
                        amplitude: env.amplitude * Float::max(cc.norm(), T::min_positive_value()),
                        decay: env.decay,
                        poly_degree: env.poly_degree,
                    },
                    g.density.description.clone(),
                )
                .with_support(g.density.support);
                g.rewrapped(scaled, g.weight.clone())
            }
            Symbol::Modulation(m) => modulation_apply(&composition_apply(f, t)?, m)?.0,
        };
        let lhs = wf.evaluate(w)?;
        let phi_w = t.apply(&f.cone, w)?;
        // kernel-side value of F at phi(w), independent of F's own rule
        let (_, reproduced, _) = params.reproduce_check(f, &phi_w)?;
        let rhs = psi.eval(w) * reproduced;
        let denom = Float::max(Float::max(lhs.norm(), rhs.norm()), T::of(1e-30));
        worst = Float::max(worst, (lhs - rhs).norm() / denom);
    }
    Ok(worst)
}

/// The necessary-condition ratio
/// `|psi(w)|^2 K(phi(w), phi(w)) / K(w, w)`, which any bounded weighted
/// composition operator must dominate by its squared norm.
pub fn wco_necessary_ratio<T: Real>(
    params: &KernelParams<T>,
    psi: &Symbol<T>,
    t: &TranslationMap<T>,
    w: &TubePoint<T>,
) -> Result<T> {
    let phi_w = t.apply(&params.cone, w)?;
    let num = params.kernel_diag(&phi_w)?;
    let den = params.kernel_diag(w)?;
    Ok(psi.eval(w).norm_sqr() * num / den)
}
