//! Two-sided boundary decomposition on a periodic grid surrogate: classify
//! the DFT spectrum into the dual cone, its reflection, and a residual;
//! extend the two parts holomorphically into the opposite tubes; verify the
//! norm identity and the boundary L^2 convergence rate.
//!
//! Normalization: coefficients are the raw forward DFT divided by N^d, so a
//! pure mode `e^{i<x, xi_k>}` has unit coefficient mass on bin k, and
//! Parseval reads `sum_k |b_k|^2 = N^{-d} sum_j |u(x_j)|^2`. Bins live at
//! `xi_k = 2 pi k / L` with `k` in `[-N/2, N/2)^d`. The DC bin belongs to
//! the plus component; bins on the boundary of the dual cone are plus only.

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::gauge::Weight;
use crate::scalar::{dot, Cx, Real};
use num_traits::Float;
use rustfft::FftPlanner;
use std::sync::Arc;

/// Membership tolerance for classifying DFT bins that fall exactly on the
/// cone boundary.
const BIN_TOL: f64 = 1e-9;

/// Sampled boundary data on a uniform periodic grid (d = 1 or 2).
#[derive(Clone, Debug)]
pub struct BoundaryGrid<T> {
    pub dim: usize,
    /// Points per axis, a power of two, at least 4.
    pub points_per_axis: usize,
    pub period: T,
    /// Row-major samples `u(x_j)`, `x_j = j L / N`.
    pub samples: Vec<Cx<T>>,
}

impl<T: Real> BoundaryGrid<T> {
    pub fn new(dim: usize, points_per_axis: usize, period: T, samples: Vec<Cx<T>>) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::UnsupportedDimension { kind: "grid".into(), dim });
        }
        let n = points_per_axis;
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::ConfigInvalid(format!(
                "points_per_axis must be a power of two >= 4, got {n}"
            )));
        }
        if period <= T::zero() {
            return Err(Error::ConfigInvalid("period must be positive".into()));
        }
        if samples.len() != n.pow(dim as u32) {
            return Err(Error::DimensionMismatch { expected: n.pow(dim as u32), got: samples.len() });
        }
        if samples.iter().any(|c| !Float::is_finite(c.re) || !Float::is_finite(c.im)) {
            return Err(Error::NonFiniteSamples);
        }
        Ok(BoundaryGrid { dim, points_per_axis: n, period, samples })
    }

    /// Sample a function of the physical coordinate on the grid.
    pub fn from_fn(
        dim: usize,
        points_per_axis: usize,
        period: T,
        f: impl Fn(&[T]) -> Cx<T>,
    ) -> Result<Self> {
        let n = points_per_axis;
        let step = period / T::of(n as f64);
        let total = n.pow(dim as u32);
        let mut samples = Vec::with_capacity(total);
        for j in 0..total {
            let coords: Vec<T> = match dim {
                1 => vec![T::of(j as f64) * step],
                _ => vec![T::of((j / n) as f64) * step, T::of((j % n) as f64) * step],
            };
            samples.push(f(&coords));
        }
        BoundaryGrid::new(dim, n, period, samples)
    }
}

/// The normalized DFT spectrum of a grid.
#[derive(Clone, Debug)]
pub struct Spectrum<T> {
    pub dim: usize,
    pub points_per_axis: usize,
    pub period: T,
    /// Row-major coefficients in FFT index order, scaled by N^{-d}.
    pub coeffs: Vec<Cx<T>>,
}

impl<T: Real> Spectrum<T> {
    /// Signed bin multi-index for a flat FFT index.
    pub fn bin(&self, flat: usize) -> Vec<i64> {
        let n = self.points_per_axis;
        let signed = |idx: usize| -> i64 {
            if idx < n / 2 {
                idx as i64
            } else {
                idx as i64 - n as i64
            }
        };
        match self.dim {
            1 => vec![signed(flat)],
            _ => vec![signed(flat / n), signed(flat % n)],
        }
    }

    /// `xi_k = 2 pi k / L`.
    pub fn frequency(&self, k: &[i64]) -> Vec<T> {
        let base = T::of(2.0 * std::f64::consts::PI) / self.period;
        k.iter().map(|&ki| base * T::of(ki as f64)).collect()
    }
}

/// Unitary-bookkeeping DFT of the grid.
pub fn analyze_grid<T: Real>(g: &BoundaryGrid<T>) -> Result<Spectrum<T>> {
    let n = g.points_per_axis;
    let mut buf = g.samples.clone();
    let mut planner = FftPlanner::<T>::new();
    let fft = planner.plan_fft_forward(n);
    match g.dim {
        1 => fft.process(&mut buf),
        _ => {
            // rows (contiguous), then columns (strided)
            for row in buf.chunks_exact_mut(n) {
                fft.process(row);
            }
            let mut col = vec![Cx::new(T::zero(), T::zero()); n];
            for j1 in 0..n {
                for j0 in 0..n {
                    col[j0] = buf[j0 * n + j1];
                }
                fft.process(&mut col);
                for j0 in 0..n {
                    buf[j0 * n + j1] = col[j0];
                }
            }
        }
    }
    let scale = T::one() / T::of((n.pow(g.dim as u32)) as f64);
    for c in &mut buf {
        *c = *c * Cx::new(scale, T::zero());
    }
    Ok(Spectrum { dim: g.dim, points_per_axis: n, period: g.period, coeffs: buf })
}

/// The classified spectrum: plus bins (dual cone, including DC and cone
/// boundary), minus bins (reflected cone), and the residual mass outside.
#[derive(Clone, Debug)]
pub struct SpectrumSplit<T> {
    pub dim: usize,
    pub points_per_axis: usize,
    pub period: T,
    pub plus: Vec<(Vec<i64>, Cx<T>)>,
    pub minus: Vec<(Vec<i64>, Cx<T>)>,
    pub residual_mass: T,
    pub total_energy: T,
}

impl<T: Real> SpectrumSplit<T> {
    pub fn frequency(&self, k: &[i64]) -> Vec<T> {
        let base = T::of(2.0 * std::f64::consts::PI) / self.period;
        k.iter().map(|&ki| base * T::of(ki as f64)).collect()
    }

    pub fn plus_energy(&self) -> T {
        self.plus.iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    pub fn minus_energy(&self) -> T {
        self.minus.iter().map(|(_, c)| c.norm_sqr()).sum()
    }
}

/// Classify every nonzero bin. Errors when the residual mass outside both
/// cones exceeds `tol` times the total energy.
pub fn split_spectrum<T: Real>(
    spectrum: &Spectrum<T>,
    cone: &Cone<T>,
    tol: T,
) -> Result<SpectrumSplit<T>> {
    let bin_tol = T::of(BIN_TOL);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut residual = T::zero();
    let total = spectrum.coeffs.iter().map(|c| c.norm_sqr()).sum::<T>();
    // bins at the FFT round-off floor are noise, not spectrum
    let floor = total * T::of(1e-28);
    for (flat, &c) in spectrum.coeffs.iter().enumerate() {
        let mass = c.norm_sqr();
        if mass <= floor {
            continue;
        }
        let k = spectrum.bin(flat);
        let xi = spectrum.frequency(&k);
        if cone.contains_dual(&xi, bin_tol)? {
            plus.push((k, c));
        } else {
            let neg: Vec<T> = xi.iter().map(|&v| -v).collect();
            if cone.contains_dual(&neg, bin_tol)? {
                minus.push((k, c));
            } else {
                residual = residual + mass;
            }
        }
    }
    if residual > tol * total {
        return Err(Error::SpectrumOutsideCones {
            fraction: (residual / Float::max(total, T::min_positive_value())).as_f64(),
            tol: tol.as_f64(),
        });
    }
    Ok(SpectrumSplit {
        dim: spectrum.dim,
        points_per_axis: spectrum.points_per_axis,
        period: spectrum.period,
        plus,
        minus,
        residual_mass: residual,
        total_energy: total,
    })
}

/// Which tube a holomorphic extension lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TubeSide {
    /// Im z in the cone.
    Plus,
    /// Im z in the negated cone.
    Minus,
}

/// A finite trigonometric sum `sum b_k e^{i<z, xi_k>}`, evaluable on its
/// tube (closure included, so boundary values are reachable directly).
#[derive(Clone, Debug)]
pub struct TrigExtension<T> {
    pub side: TubeSide,
    pub terms: Vec<(Vec<T>, Cx<T>)>,
    cone: Arc<Cone<T>>,
}

impl<T: Real> TrigExtension<T> {
    pub fn eval(&self, x: &[T], y: &[T]) -> Result<Cx<T>> {
        let y_oriented: Vec<T> = match self.side {
            TubeSide::Plus => y.to_vec(),
            TubeSide::Minus => y.iter().map(|&v| -v).collect(),
        };
        if !self.cone.contains_primal(&y_oriented, T::of(1e-12))? {
            return Err(Error::WrongTube);
        }
        let mut acc = Cx::new(T::zero(), T::zero());
        for (xi, b) in &self.terms {
            acc = acc + *b * Cx::new(-dot(y, xi), dot(x, xi)).exp();
        }
        Ok(acc)
    }
}

/// Build the two holomorphic extensions from a split.
pub fn extend<T: Real>(
    split: &SpectrumSplit<T>,
    cone: Arc<Cone<T>>,
) -> (TrigExtension<T>, TrigExtension<T>) {
    let to_terms = |bins: &[(Vec<i64>, Cx<T>)]| {
        bins.iter()
            .map(|(k, c)| (split.frequency(k), *c))
            .collect::<Vec<_>>()
    };
    (
        TrigExtension { side: TubeSide::Plus, terms: to_terms(&split.plus), cone: Arc::clone(&cone) },
        TrigExtension { side: TubeSide::Minus, terms: to_terms(&split.minus), cone },
    )
}

/// The norm identity report for a grid.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct NormIdentityReport<T> {
    pub boundary_norm_sq: T,
    pub plus_norm_sq: T,
    pub minus_norm_sq: T,
    pub defect: T,
    pub residual_mass: T,
}

/// Boundary Sobolev norm against the reflected weight, the two one-sided
/// norms against the plain weight, and the identity defect.
pub fn norm_identity_report<T: Real>(
    grid: &BoundaryGrid<T>,
    cone: &Cone<T>,
    weight: &Weight<T>,
    residual_tol: T,
) -> Result<NormIdentityReport<T>> {
    let spectrum = analyze_grid(grid)?;
    let split = split_spectrum(&spectrum, cone, residual_tol)?;
    let mut plus_sq = T::zero();
    for (k, c) in &split.plus {
        let xi = split.frequency(k);
        plus_sq = plus_sq + c.norm_sqr() * weight.eval_unchecked(&xi);
    }
    let mut minus_sq = T::zero();
    for (k, c) in &split.minus {
        let xi: Vec<T> = split.frequency(k).iter().map(|&v| -v).collect();
        minus_sq = minus_sq + c.norm_sqr() * weight.eval_unchecked(&xi);
    }
    let mut boundary_sq = T::zero();
    for (k, c) in split.plus.iter().chain(&split.minus) {
        let xi = split.frequency(k);
        boundary_sq = boundary_sq + c.norm_sqr() * weight.eval_reflected(cone, &xi)?;
    }
    Ok(NormIdentityReport {
        boundary_norm_sq: boundary_sq,
        plus_norm_sq: plus_sq,
        minus_norm_sq: minus_sq,
        defect: Float::abs(boundary_sq - plus_sq - minus_sq),
        residual_mass: split.residual_mass,
    })
}

/// The squared L^2 distance between the translate `F_+(. + iy)` and the
/// boundary part `u_+`: `sum_{plus} |e^{-<y, xi_k>} - 1|^2 |b_k|^2`.
pub fn boundary_limit_error<T: Real>(
    split: &SpectrumSplit<T>,
    cone: &Cone<T>,
    y: &[T],
) -> Result<T> {
    let depth = cone.interior_depth(y)?;
    if depth <= T::zero() {
        return Err(Error::NotInInterior { depth: depth.as_f64() });
    }
    let mut acc = T::zero();
    for (k, c) in &split.plus {
        let xi = split.frequency(k);
        let damp = Float::exp(-dot(y, &xi)) - T::one();
        acc = acc + damp * damp * c.norm_sqr();
    }
    Ok(acc)
}
