//! Numerics for Hilbertian Hardy-Sobolev spaces on tube domains over
//! proper open convex cones.
//!
//! The library works on the spectral side throughout: a function of the
//! space is represented by its density on the dual cone, and the
//! holomorphic extension, norms, reproducing kernels, Carleson tests, and
//! operator families are all computed as weighted integrals over the dual
//! cone with rules tuned to the integrand's exponential decay.
//!
//! The modules are layered bottom-up:
//!
//! - [`cone`]: the cone catalogue (orthant, Lorentz, simplicial), dual
//!   cones, membership, and the interior-depth constant.
//! - [`gauge`]: gauges and the Sobolev weight `w_n`.
//! - [`quad`]: Gauss-Laguerre/Legendre rules on dual cones and an
//!   independent adaptive reference integrator.
//! - [`laplace`]: spectral densities, the Fourier-Laplace extension,
//!   norms, translates, and polynomial multipliers.
//! - [`kernels`]: reproducing kernels, derivative kernels, and the
//!   reproduction check.
//! - [`boundary`]: the periodic-grid boundary decomposition and its norm
//!   identity.
//! - [`carleson`]: discrete Carleson testing ratios and embedding
//!   estimates.
//! - [`operators`]: modulation multipliers and translation compositions
//!   with their kernel identities.
//! - [`catalog`]: named densities for configs.
//!
//! Everything is generic over the scalar through [`scalar::Real`]
//! (implemented for `f32` and `f64`); the aliases at the crate root fix
//! the common double-precision instantiation.

pub mod boundary;
pub mod carleson;
pub mod catalog;
pub mod cone;
pub mod error;
pub mod gauge;
pub mod kernels;
pub mod laplace;
pub mod linalg;
pub mod operators;
pub mod quad;
pub mod scalar;

pub use catalog::DensitySpec;
pub use cone::{ConeKind, ConeSpec};
pub use error::{Error, Result};
pub use gauge::GaugeSpec;
pub use scalar::{Cx, Real};

/// Double-precision instantiations, the default working types.
pub type Cone64 = cone::Cone<f64>;
pub type Gauge64 = gauge::Gauge<f64>;
pub type Weight64 = gauge::Weight<f64>;
pub type QuadratureRule64 = quad::QuadratureRule<f64>;
pub type SpectralDensity64 = laplace::SpectralDensity<f64>;
pub type TubePoint64 = laplace::TubePoint<f64>;
pub type HSFunction64 = laplace::HSFunction<f64>;
pub type KernelParams64 = kernels::KernelParams<f64>;
pub type BoundaryGrid64 = boundary::BoundaryGrid<f64>;
pub type DiscreteMeasure64 = carleson::DiscreteMeasure<f64>;

/// Single-precision instantiations, for quick low-accuracy sweeps.
pub type Cone32 = cone::Cone<f32>;
pub type Gauge32 = gauge::Gauge<f32>;
pub type Weight32 = gauge::Weight<f32>;
pub type QuadratureRule32 = quad::QuadratureRule<f32>;
pub type SpectralDensity32 = laplace::SpectralDensity<f32>;
pub type TubePoint32 = laplace::TubePoint<f32>;
pub type HSFunction32 = laplace::HSFunction<f32>;
pub type KernelParams32 = kernels::KernelParams<f32>;
pub type BoundaryGrid32 = boundary::BoundaryGrid<f32>;
pub type DiscreteMeasure32 = carleson::DiscreteMeasure<f32>;
