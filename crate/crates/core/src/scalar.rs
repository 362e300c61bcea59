//! Scalar abstraction: the whole library is generic over the working
//! floating-point type through [`Real`], with `f32` and `f64` as the two
//! shipped instantiations (aliases at the crate root).

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Complex number over the working scalar.
pub type Cx<T> = Complex<T>;

/// Floating-point scalar the library is generic over.
///
/// `rustfft::FftNum` is required so boundary grids can be transformed with
/// the same scalar; it is satisfied by both `f32` and `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + core::iter::Sum
    + core::fmt::Debug
    + core::fmt::Display
    + core::fmt::LowerExp
    + Send
    + Sync
    + rustfft::FftNum
    + 'static
{
    /// Lift an `f64` literal into the working scalar.
    fn of(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("literal not representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `i` in the working complex type.
pub fn imag_unit<T: Real>() -> Cx<T> {
    Cx::new(T::zero(), T::one())
}

/// Euclidean inner product.
pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        s = s + *x * *y;
    }
    s
}

/// Euclidean norm.
pub fn norm2<T: Real>(a: &[T]) -> T {
    Float::sqrt(dot(a, a))
}

/// Pairwise (cascade) summation of complex values.
///
/// Deterministic for a fixed input order and more accurate than naive
/// left-to-right accumulation on long quadrature sums.
pub fn pairwise_sum<T: Real>(xs: &[Cx<T>]) -> Cx<T> {
    match xs.len() {
        0 => Cx::new(T::zero(), T::zero()),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Pairwise summation of real values.
pub fn pairwise_sum_real<T: Real>(xs: &[T]) -> T {
    match xs.len() {
        0 => T::zero(),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum_real(&xs[..mid]) + pairwise_sum_real(&xs[mid..])
        }
    }
}
