//! Proper open convex cones, their dual cones, and the interior-depth
//! constant that controls exponential decay of every spectral integrand.
//!
//! Three families are supported: the positive orthant, the Lorentz (light)
//! cone for d in {2, 3}, and simplicial cones spanned by d independent
//! generators. The Lorentz cone in d = 2 is handled through its simplicial
//! description with generators (1, 1) and (-1, 1).

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{dot, norm2, Real};
use num_traits::Float;
use serde::{Deserialize, Serialize};

const GENERATOR_DET_TOL: f64 = 1e-12;

/// JSON-facing cone specification.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConeSpec {
    Orthant { dim: usize },
    Lorentz { dim: usize },
    Simplicial { dim: usize, generators: Vec<Vec<f64>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    Orthant,
    Lorentz,
    Simplicial,
}

/// A proper open convex cone in R^d.
#[derive(Clone, Debug)]
pub struct Cone<T> {
    kind: ConeKind,
    dim: usize,
    /// Generator matrix (columns span the cone), present for the simplicial
    /// representation; also used for the d = 2 Lorentz cone.
    generators: Option<Mat<T>>,
    /// Inverse of the generator matrix (rows test primal membership).
    generators_inv: Option<Mat<T>>,
    /// Columns of G^{-T}: the extreme rays of the dual cone, unnormalized.
    dual_ray_matrix: Option<Mat<T>>,
}

/// Finite or analytic description of the dual cone.
#[derive(Clone, Debug)]
pub enum DualDescription<T> {
    /// Intersection of halfspaces <h_i, xi> >= 0 (unit normals).
    Polyhedral { halfspace_normals: Vec<Vec<T>> },
    /// Lorentz cone xi_d >= |xi'| (self-dual, analytic).
    LorentzAnalytic,
}

/// The dual cone, with extreme rays materialized as unit vectors. For the
/// analytic Lorentz description the boundary ray continuum is discretized.
#[derive(Clone, Debug)]
pub struct DualConeView<T> {
    pub description: DualDescription<T>,
    pub extreme_rays: Vec<Vec<T>>,
}

impl<T: Real> Cone<T> {
    /// Validate a specification and build the cone.
    pub fn build(spec: &ConeSpec) -> Result<Self> {
        match spec {
            ConeSpec::Orthant { dim } => {
                if *dim == 0 {
                    return Err(Error::UnsupportedDimension { kind: "orthant".into(), dim: 0 });
                }
                Ok(Cone {
                    kind: ConeKind::Orthant,
                    dim: *dim,
                    generators: None,
                    generators_inv: None,
                    dual_ray_matrix: None,
                })
            }
            ConeSpec::Lorentz { dim } => match dim {
                2 => {
                    // simplicial description: generators (1,1), (-1,1)
                    let g = vec![vec![1.0, 1.0], vec![-1.0, 1.0]];
                    let mut cone = Self::build_simplicial(2, &g)?;
                    cone.kind = ConeKind::Lorentz;
                    Ok(cone)
                }
                3 => Ok(Cone {
                    kind: ConeKind::Lorentz,
                    dim: 3,
                    generators: None,
                    generators_inv: None,
                    dual_ray_matrix: None,
                }),
                d => Err(Error::UnsupportedDimension { kind: "lorentz".into(), dim: *d }),
            },
            ConeSpec::Simplicial { dim, generators } => Self::build_simplicial(*dim, generators),
        }
    }

    fn build_simplicial(dim: usize, generators: &[Vec<f64>]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::UnsupportedDimension { kind: "simplicial".into(), dim: 0 });
        }
        if generators.len() != dim || generators.iter().any(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: generators.len(),
            });
        }
        let cols: Vec<Vec<T>> = generators
            .iter()
            .map(|c| c.iter().map(|&v| T::of(v)).collect())
            .collect();
        let g = Mat::from_cols(&cols);
        let (det, inv) = g.det_inverse(T::of(GENERATOR_DET_TOL)).map_err(|_| {
            Error::SingularGenerators { det: 0.0 }
        })?;
        if Float::abs(det) <= T::of(GENERATOR_DET_TOL) {
            return Err(Error::SingularGenerators { det: det.as_f64() });
        }
        let dual_rays = inv.transpose();
        Ok(Cone {
            kind: ConeKind::Simplicial,
            dim,
            generators: Some(g),
            generators_inv: Some(inv),
            dual_ray_matrix: Some(dual_rays),
        })
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> Option<&Mat<T>> {
        self.generators.as_ref()
    }

    /// The dual cone: halfspace description plus extreme rays.
    ///
    /// Orthant and Lorentz cones are self-dual; a simplicial cone with
    /// generator matrix G has dual halfspace normals the columns of G and
    /// dual extreme rays the columns of G^{-T}.
    pub fn dual_view(&self) -> DualConeView<T> {
        self.dual_view_with_rays(64)
    }

    /// Same as [`dual_view`](Self::dual_view) with a chosen boundary-ray
    /// discretization count for the analytic Lorentz description.
    pub fn dual_view_with_rays(&self, lorentz_rays: usize) -> DualConeView<T> {
        match self.kind {
            ConeKind::Orthant => {
                let normals: Vec<Vec<T>> = (0..self.dim)
                    .map(|i| {
                        let mut e = vec![T::zero(); self.dim];
                        e[i] = T::one();
                        e
                    })
                    .collect();
                DualConeView {
                    extreme_rays: normals.clone(),
                    description: DualDescription::Polyhedral { halfspace_normals: normals },
                }
            }
            ConeKind::Lorentz if self.dim == 3 => {
                let inv_sqrt2 = T::one() / Float::sqrt(T::of(2.0));
                let rays = (0..lorentz_rays)
                    .map(|k| {
                        let th = T::of(2.0 * std::f64::consts::PI * k as f64 / lorentz_rays as f64);
                        vec![
                            Float::cos(th) * inv_sqrt2,
                            Float::sin(th) * inv_sqrt2,
                            inv_sqrt2,
                        ]
                    })
                    .collect();
                DualConeView {
                    description: DualDescription::LorentzAnalytic,
                    extreme_rays: rays,
                }
            }
            // simplicial, and the simplicially-represented d=2 Lorentz cone
            _ => {
                let g = self.generators.as_ref().expect("simplicial cone has generators");
                let normals: Vec<Vec<T>> = (0..self.dim)
                    .map(|j| {
                        let c = g.col(j);
                        let n = norm2(&c);
                        c.iter().map(|&v| v / n).collect()
                    })
                    .collect();
                let rays_m = self.dual_ray_matrix.as_ref().unwrap();
                let rays: Vec<Vec<T>> = (0..self.dim)
                    .map(|j| {
                        let c = rays_m.col(j);
                        let n = norm2(&c);
                        c.iter().map(|&v| v / n).collect()
                    })
                    .collect();
                DualConeView {
                    description: DualDescription::Polyhedral { halfspace_normals: normals },
                    extreme_rays: rays,
                }
            }
        }
    }

    /// Membership of `xi` in the closed dual cone, with an absolute
    /// tolerance scaled by max(1, |xi|).
    pub fn contains_dual(&self, xi: &[T], tol: T) -> Result<bool> {
        if xi.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: xi.len() });
        }
        let slack = -tol * Float::max(T::one(), norm2(xi));
        Ok(match self.kind {
            ConeKind::Orthant => xi.iter().all(|&v| v >= slack),
            ConeKind::Lorentz if self.dim == 3 => {
                let radial = Float::hypot(xi[0], xi[1]);
                xi[2] - radial >= slack
            }
            _ => {
                let g = self.generators.as_ref().unwrap();
                (0..self.dim).all(|j| {
                    let col = g.col(j);
                    let n = norm2(&col);
                    dot(&col, xi) / n >= slack
                })
            }
        })
    }

    /// Membership of `y` in the closed primal cone.
    pub fn contains_primal(&self, y: &[T], tol: T) -> Result<bool> {
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: y.len() });
        }
        let slack = -tol * Float::max(T::one(), norm2(y));
        Ok(match self.kind {
            ConeKind::Orthant => y.iter().all(|&v| v >= slack),
            ConeKind::Lorentz if self.dim == 3 => {
                let radial = Float::hypot(y[0], y[1]);
                y[2] - radial >= slack
            }
            _ => {
                let inv = self.generators_inv.as_ref().unwrap();
                inv.matvec(y).iter().all(|&lam| lam >= slack)
            }
        })
    }

    /// The interior-depth constant: min over unit vectors xi in the dual
    /// cone of <y, xi>. Positive exactly when y lies in the open cone; a
    /// value <= 0 is the out-of-interior diagnostic.
    ///
    /// For polyhedral duals the minimum is attained on an extreme ray; for
    /// the d = 3 Lorentz cone it is (y_3 - |y'|) / sqrt(2).
    pub fn interior_depth(&self, y: &[T]) -> Result<T> {
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: y.len() });
        }
        Ok(match self.kind {
            ConeKind::Orthant => {
                let mut m = y[0];
                for &v in &y[1..] {
                    m = Float::min(m, v);
                }
                m
            }
            ConeKind::Lorentz if self.dim == 3 => {
                (y[2] - Float::hypot(y[0], y[1])) / Float::sqrt(T::of(2.0))
            }
            _ => {
                let rays_m = self.dual_ray_matrix.as_ref().unwrap();
                let mut m = T::infinity();
                for j in 0..self.dim {
                    let r = rays_m.col(j);
                    let v = dot(&r, y) / norm2(&r);
                    m = Float::min(m, v);
                }
                m
            }
        })
    }

    /// A cone is proper when it contains no complete line. Orthant and
    /// Lorentz cones are proper by construction; improper simplicial input
    /// is already rejected at build time, so this is constant true.
    pub fn is_proper(&self) -> bool {
        true
    }
}
