//! Named spectral densities selectable from JSON configs: pure
//! exponentials, monomial-times-exponential profiles, and truncated
//! indicators. Parameters are plain f64 in the config and are converted to
//! the working scalar on build.

use crate::cone::{Cone, ConeKind};
use crate::error::{Error, Result};
use crate::laplace::{Envelope, SpectralDensity};
use crate::quad::Support;
use crate::scalar::{dot, Cx, Real};
use num_traits::Float;
use serde::{Deserialize, Serialize};

/// A catalogue entry, as it appears in CLI configs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensitySpec {
    /// `f(xi) = A e^{-<y0, xi>}` with `y0` interior to the cone. When
    /// `direction` is omitted a canonical interior direction is used.
    Exponential {
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default)]
        direction: Option<Vec<f64>>,
    },
    /// `f(xi) = A (prod xi_j^{p_j}) e^{-<y0, xi>}`.
    PolyExponential {
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default)]
        direction: Option<Vec<f64>>,
        powers: Vec<u32>,
    },
    /// `f(xi) = A` on the coordinate box `[0, radius]^d` (orthant cones
    /// only), zero outside.
    Indicator {
        #[serde(default = "one")]
        amplitude: f64,
        radius: f64,
    },
}

fn one() -> f64 {
    1.0
}

/// A canonical interior direction for each shipped cone.
pub fn default_direction<T: Real>(cone: &Cone<T>) -> Vec<T> {
    match cone.kind() {
        ConeKind::Orthant => vec![T::one(); cone.dim()],
        ConeKind::Lorentz => {
            let mut e = vec![T::zero(); cone.dim()];
            e[cone.dim() - 1] = T::one();
            e
        }
        ConeKind::Simplicial => {
            // sum of the generator columns lies in the interior
            let g = cone.generators().expect("simplicial cone has generators");
            let mut acc = vec![T::zero(); cone.dim()];
            for j in 0..cone.dim() {
                for (a, v) in acc.iter_mut().zip(g.col(j)) {
                    *a = *a + v;
                }
            }
            acc
        }
    }
}

impl DensitySpec {
    /// Instantiate on a cone, validating the parameters against it.
    pub fn build<T: Real>(&self, cone: &Cone<T>) -> Result<SpectralDensity<T>> {
        match self {
            DensitySpec::Exponential { amplitude, direction } => {
                let (y0, depth) = resolve_direction(cone, direction.as_deref())?;
                let a = T::of(*amplitude);
                Ok(SpectralDensity::new(
                    move |xi: &[T]| Cx::new(a * Float::exp(-dot(&y0, xi)), T::zero()),
                    Envelope { amplitude: Float::abs(a), decay: depth, poly_degree: 0 },
                    format!("exponential({amplitude}, {direction:?})"),
                ))
            }
            DensitySpec::PolyExponential { amplitude, direction, powers } => {
                if powers.len() != cone.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: cone.dim(),
                        got: powers.len(),
                    });
                }
                let (y0, depth) = resolve_direction(cone, direction.as_deref())?;
                let a = T::of(*amplitude);
                let p = powers.clone();
                Ok(SpectralDensity::new(
                    move |xi: &[T]| {
                        let mut v = a;
                        for (&x, &e) in xi.iter().zip(&p) {
                            for _ in 0..e {
                                v = v * x;
                            }
                        }
                        Cx::new(v * Float::exp(-dot(&y0, xi)), T::zero())
                    },
                    Envelope {
                        amplitude: Float::abs(a),
                        decay: depth,
                        poly_degree: powers.iter().sum(),
                    },
                    format!("poly_exponential({amplitude}, {powers:?})"),
                ))
            }
            DensitySpec::Indicator { amplitude, radius } => {
                if cone.kind() != ConeKind::Orthant {
                    return Err(Error::UnsupportedCone);
                }
                if *radius <= 0.0 {
                    return Err(Error::ConfigInvalid("indicator radius must be positive".into()));
                }
                let a = T::of(*amplitude);
                let r = T::of(*radius);
                Ok(SpectralDensity::new(
                    move |xi: &[T]| {
                        if xi.iter().all(|&v| v >= T::zero() && v <= r) {
                            Cx::new(a, T::zero())
                        } else {
                            Cx::new(T::zero(), T::zero())
                        }
                    },
                    Envelope { amplitude: Float::abs(a), decay: T::zero(), poly_degree: 0 },
                    format!("indicator({amplitude}, {radius})"),
                )
                .with_support(Support::Truncated(r)))
            }
        }
    }
}

fn resolve_direction<T: Real>(cone: &Cone<T>, dir: Option<&[f64]>) -> Result<(Vec<T>, T)> {
    let y0: Vec<T> = match dir {
        Some(v) => {
            if v.len() != cone.dim() {
                return Err(Error::DimensionMismatch { expected: cone.dim(), got: v.len() });
            }
            v.iter().map(|&x| T::of(x)).collect()
        }
        None => default_direction(cone),
    };
    let depth = cone.interior_depth(&y0)?;
    if depth <= T::zero() {
        return Err(Error::NotInInterior { depth: depth.as_f64() });
    }
    Ok((y0, depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConeSpec;
    use crate::gauge::{Gauge, Weight};
    use crate::laplace::HSFunction;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    #[test]
    fn parse_and_build_exponential() {
        let spec: DensitySpec =
            serde_json::from_str(r#"{"kind": "exponential", "direction": [1.0]}"#).unwrap();
        let cone = Arc::new(Cone::<f64>::build(&ConeSpec::Orthant { dim: 1 }).unwrap());
        let d = spec.build(&cone).unwrap();
        assert_relative_eq!(d.eval(&[1.0]).re, (-1.0f64).exp(), epsilon = 1e-15);
        let f = HSFunction::new(cone, Weight::new(0, Gauge::Euclidean), d, 1e-10).unwrap();
        assert_relative_eq!(f.hs_norm().unwrap(), 0.5f64.sqrt(), max_relative = 1e-10);
    }

    #[test]
    fn default_directions_are_interior() {
        let specs = [
            ConeSpec::Orthant { dim: 2 },
            ConeSpec::Lorentz { dim: 3 },
            ConeSpec::Simplicial {
                dim: 2,
                generators: vec![vec![1.0, 0.0], vec![1.0, 1.0]],
            },
        ];
        for cs in &specs {
            let cone = Cone::<f64>::build(cs).unwrap();
            let y0 = default_direction(&cone);
            assert!(cone.interior_depth(&y0).unwrap() > 0.0, "{cs:?}");
        }
    }

    #[test]
    fn poly_exponential_norm() {
        // f = xi e^{-xi}: int xi^2 e^{-2 xi} = 1/4
        let spec: DensitySpec = serde_json::from_str(
            r#"{"kind": "poly_exponential", "powers": [1], "direction": [1.0]}"#,
        )
        .unwrap();
        let cone = Arc::new(Cone::<f64>::build(&ConeSpec::Orthant { dim: 1 }).unwrap());
        let f = HSFunction::new(
            Arc::clone(&cone),
            Weight::new(0, Gauge::Euclidean),
            spec.build(&cone).unwrap(),
            1e-10,
        )
        .unwrap();
        assert_relative_eq!(f.hs_norm().unwrap(), 0.5, max_relative = 1e-10);
    }

    #[test]
    fn indicator_truncated_norm() {
        // f = 1 on [0,1]: ||f||^2 = 1, F(i) = int_0^1 e^{-xi} = 1 - e^{-1}
        let spec: DensitySpec =
            serde_json::from_str(r#"{"kind": "indicator", "radius": 1.0}"#).unwrap();
        let cone = Arc::new(Cone::<f64>::build(&ConeSpec::Orthant { dim: 1 }).unwrap());
        let f = HSFunction::new(
            Arc::clone(&cone),
            Weight::new(0, Gauge::Euclidean),
            spec.build(&cone).unwrap(),
            1e-10,
        )
        .unwrap();
        assert_relative_eq!(f.hs_norm().unwrap(), 1.0, max_relative = 1e-10);
        let z = crate::laplace::TubePoint::halfplane(&cone, 0.0, 1.0).unwrap();
        assert_relative_eq!(
            f.evaluate(&z).unwrap().re,
            1.0 - (-1.0f64).exp(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn invalid_parameters_rejected() {
        let cone = Cone::<f64>::build(&ConeSpec::Orthant { dim: 2 }).unwrap();
        let bad_dir = DensitySpec::Exponential {
            amplitude: 1.0,
            direction: Some(vec![1.0, -1.0]),
        };
        assert!(bad_dir.build(&cone).is_err());
        let bad_pow = DensitySpec::PolyExponential {
            amplitude: 1.0,
            direction: None,
            powers: vec![1],
        };
        assert!(matches!(bad_pow.build(&cone), Err(Error::DimensionMismatch { .. })));
        let lorentz = Cone::<f64>::build(&ConeSpec::Lorentz { dim: 3 }).unwrap();
        let ind = DensitySpec::Indicator { amplitude: 1.0, radius: 1.0 };
        assert!(matches!(ind.build(&lorentz), Err(Error::UnsupportedCone)));
    }
}
