//! Discrete Carleson-measure tests: kernel testing ratios, a Gram-matrix
//! embedding estimate (the compression of the embedding quadratic form to a
//! finite kernel frame), and the spectral-side inequality checked directly
//! on a family of densities.
//!
//! Only finite point-mass measures are supported; the constants reported
//! are a kernel-test supremum (necessary side) and a frame-limited lower
//! bound for the embedding norm. No sufficiency is claimed.

use crate::error::{Error, Result};
use crate::kernels::KernelParams;
use crate::laplace::{HSFunction, SpectralDensity, TubePoint};
use crate::linalg::{generalized_eigen_max, CMat};
use crate::scalar::{Cx, Real};
use num_traits::Float;

/// A finite positive measure: point masses at tube points.
#[derive(Clone, Debug)]
pub struct DiscreteMeasure<T> {
    pub points: Vec<TubePoint<T>>,
    pub masses: Vec<T>,
}

impl<T: Real> DiscreteMeasure<T> {
    pub fn new(points: Vec<TubePoint<T>>, masses: Vec<T>) -> Result<Self> {
        if points.len() != masses.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), got: masses.len() });
        }
        if masses.iter().any(|&m| !Float::is_finite(m) || m <= T::zero()) {
            return Err(Error::ConfigInvalid("masses must be finite and positive".into()));
        }
        Ok(DiscreteMeasure { points, masses })
    }

    pub fn total_mass(&self) -> T {
        self.masses.iter().fold(T::zero(), |a, &m| a + m)
    }
}

/// `sum_m mu_m |K(z_m, w)|^2 / K(w, w)`: the measure applied to the
/// normalized kernel at `w`. A necessary lower bound for the Carleson
/// constant.
pub fn testing_ratio<T: Real>(
    params: &KernelParams<T>,
    measure: &DiscreteMeasure<T>,
    w: &TubePoint<T>,
) -> Result<T> {
    let diag = params.kernel_diag(w)?;
    let mut acc = T::zero();
    for (z, &mass) in measure.points.iter().zip(&measure.masses) {
        let k = params.kernel_eval(z, w)?;
        acc = acc + mass * k.norm_sqr();
    }
    Ok(acc / diag)
}

/// Largest generalized eigenvalue of `M v = lambda G v` over a kernel
/// frame `{K_{w_j}}`: `G_{jl} = K(w_l, w_j)` and
/// `M_{jl} = sum_m mu_m K(z_m, w_j) conj(K(z_m, w_l))`. This is the norm
/// of the compression of the embedding form to the frame span, hence a
/// lower bound that tightens as the frame grows. The Gram matrix is
/// Tikhonov-shifted by `1e-12 trace(G)/size` before the solve.
pub fn embedding_estimate<T: Real>(
    params: &KernelParams<T>,
    measure: &DiscreteMeasure<T>,
    frame: &[TubePoint<T>],
) -> Result<T> {
    if frame.is_empty() {
        return Err(Error::ConfigInvalid("kernel frame is empty".into()));
    }
    let n = frame.len();
    let mut gram = CMat::zeros(n);
    for j in 0..n {
        for l in 0..n {
            *gram.at_mut(j, l) = params.kernel_eval(&frame[l], &frame[j])?;
        }
    }
    let mut m = CMat::zeros(n);
    for (z, &mass) in measure.points.iter().zip(&measure.masses) {
        let col: Vec<Cx<T>> =
            frame.iter().map(|w| params.kernel_eval(z, w)).collect::<Result<_>>()?;
        for j in 0..n {
            for l in 0..n {
                *m.at_mut(j, l) = m.at(j, l) + col[j] * col[l].conj() * Cx::new(mass, T::zero());
            }
        }
    }
    generalized_eigen_max(&m, &gram, T::of(1e-12))
}

/// One row of the spectral-side check: a density, its measured embedding
/// ratio `sum mu_m |F(z_m)|^2 / (C |f|_w^2)`, and whether it violates the
/// candidate constant.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SpectralCheckRow<T> {
    pub description: String,
    pub lhs: T,
    pub rhs: T,
    pub ratio: T,
    pub violated: bool,
}

/// Report of the direct inequality `int |Lf|^2 dmu <= C |f|^2` over a
/// density family.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SpectralCheckReport<T> {
    pub rows: Vec<SpectralCheckRow<T>>,
    pub max_ratio: T,
    pub violations: usize,
}

/// Check the embedding inequality density by density: for each `f`,
/// `lhs = sum_m mu_m |(Lf)(z_m)|^2` against `rhs = C |f|_w^2`.
pub fn spectral_embedding_check<T: Real>(
    params: &KernelParams<T>,
    measure: &DiscreteMeasure<T>,
    densities: &[SpectralDensity<T>],
    candidate: T,
) -> Result<SpectralCheckReport<T>> {
    let slack = T::of(1e-9);
    let mut rows = Vec::with_capacity(densities.len());
    let mut max_ratio = T::zero();
    let mut violations = 0;
    for density in densities {
        let f = HSFunction::new(
            std::sync::Arc::clone(&params.cone),
            params.weight.clone(),
            density.clone(),
            params.target,
        )?;
        let mut lhs = T::zero();
        for (z, &mass) in measure.points.iter().zip(&measure.masses) {
            lhs = lhs + mass * f.evaluate(z)?.norm_sqr();
        }
        let norm = f.hs_norm()?;
        let rhs = candidate * norm * norm;
        let ratio = lhs / Float::max(rhs, T::min_positive_value());
        max_ratio = Float::max(max_ratio, ratio);
        let violated = ratio > T::one() + slack;
        if violated {
            violations += 1;
        }
        rows.push(SpectralCheckRow {
            description: density.description.clone(),
            lhs,
            rhs,
            ratio,
            violated,
        });
    }
    Ok(SpectralCheckReport { rows, max_ratio, violations })
}

/// The combined CLI-facing report: kernel-test supremum over the frame
/// points and the frame-limited embedding lower bound.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CarlesonReport<T> {
    pub kernel_test_sup: T,
    pub embedding_lower_bound: T,
    pub frame_size: usize,
    pub measure_size: usize,
}

pub fn carleson_report<T: Real>(
    params: &KernelParams<T>,
    measure: &DiscreteMeasure<T>,
    frame: &[TubePoint<T>],
) -> Result<CarlesonReport<T>> {
    let mut sup = T::zero();
    for w in frame {
        sup = Float::max(sup, testing_ratio(params, measure, w)?);
    }
    Ok(CarlesonReport {
        kernel_test_sup: sup,
        embedding_lower_bound: embedding_estimate(params, measure, frame)?,
        frame_size: frame.len(),
        measure_size: measure.points.len(),
    })
}
