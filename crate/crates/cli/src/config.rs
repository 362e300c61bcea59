//! Experiment configuration: the JSON schema the driver consumes, plus
//! loaders for the file-based inputs (boundary grids and discrete
//! measures) it references.

use hstube::boundary::BoundaryGrid;
use hstube::carleson::DiscreteMeasure;
use hstube::catalog::DensitySpec;
use hstube::cone::{Cone, ConeSpec};
use hstube::error::Error;
use hstube::gauge::GaugeSpec;
use hstube::laplace::TubePoint;
use hstube::scalar::Cx;
use serde::Deserialize;
use std::path::Path;

/// Top-level config. Command-specific blocks are optional: a command
/// requires its own block and ignores the others.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub cone: ConeSpec,
    #[serde(default = "default_gauge")]
    pub gauge: GaugeSpec,
    #[serde(default)]
    pub order: u32,
    /// Quadrature accuracy target; the `--tol` flag overrides it.
    #[serde(default = "default_target")]
    pub target: f64,
    #[serde(default)]
    pub kernel: Option<KernelBlock>,
    #[serde(default)]
    pub decompose: Option<DecomposeBlock>,
    #[serde(default)]
    pub norms: Option<NormsBlock>,
    #[serde(default)]
    pub carleson: Option<CarlesonBlock>,
    #[serde(default)]
    pub operators: Option<OperatorsBlock>,
}

fn default_gauge() -> GaugeSpec {
    GaugeSpec::Euclidean
}

fn default_target() -> f64 {
    1e-9
}

impl ExperimentConfig {
    /// The default half-plane config used by `verify` when no config file
    /// is given.
    pub fn halfplane_default() -> Self {
        ExperimentConfig {
            cone: ConeSpec::Orthant { dim: 1 },
            gauge: GaugeSpec::Euclidean,
            order: 0,
            target: 1e-9,
            kernel: None,
            decompose: None,
            norms: None,
            carleson: None,
            operators: None,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.target <= 0.0 || !self.target.is_finite() {
            return Err(Error::ConfigInvalid("target tolerance must be positive".into()));
        }
        if self.order > 8 {
            return Err(Error::ConfigInvalid(format!(
                "order {} beyond the supported range 0..=8",
                self.order
            )));
        }
        Ok(())
    }
}

/// A point of the tube, `z = x + iy`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl PointSpec {
    pub fn build(&self, cone: &Cone<f64>) -> Result<TubePoint<f64>, Error> {
        TubePoint::new(cone, self.x.clone(), self.y.clone())
    }
}

/// `kernel`: evaluate `K(z, w)` and `K(z, z)` over a list of grid points.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelBlock {
    pub grid: Vec<PointSpec>,
    pub w: PointSpec,
}

/// `decompose`: boundary grid file plus the sampling geometry. The
/// geometry fields are required for CSV files and ignored for JSON files,
/// which carry their own.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecomposeBlock {
    pub grid_file: String,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub points_per_axis: Option<usize>,
    #[serde(default)]
    pub period: Option<f64>,
    #[serde(default = "default_residual_tol")]
    pub residual_tol: f64,
}

fn default_residual_tol() -> f64 {
    1e-8
}

/// `norms`: a catalogue density and the derivative multi-indices to
/// report.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormsBlock {
    pub density: DensitySpec,
    #[serde(default)]
    pub derivatives: Vec<Vec<u32>>,
}

/// `carleson`: a discrete measure file and a kernel frame.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarlesonBlock {
    pub measure_file: String,
    pub frame: Vec<PointSpec>,
}

/// Weighted-composition symbol.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SymbolSpec {
    Constant {
        re: f64,
        #[serde(default)]
        im: f64,
    },
    Modulation {
        eta0: Vec<f64>,
    },
}

/// `operators`: a symbol, a translation `z -> z + b`, witness points, and
/// the test densities for the adjoint identity.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorsBlock {
    pub symbol: SymbolSpec,
    pub b_re: Vec<f64>,
    pub b_im: Vec<f64>,
    pub witnesses: Vec<PointSpec>,
    pub densities: Vec<DensitySpec>,
}

/// One atom of a discrete measure file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureAtom {
    x: Vec<f64>,
    y: Vec<f64>,
    mass: f64,
}

/// Load `[{"x": [..], "y": [..], "mass": m}, ..]`.
pub fn load_measure(path: &Path, cone: &Cone<f64>) -> Result<DiscreteMeasure<f64>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ConfigInvalid(format!("cannot read {}: {e}", path.display())))?;
    let atoms: Vec<MeasureAtom> = serde_json::from_str(&text)
        .map_err(|e| Error::ConfigInvalid(format!("bad measure file {}: {e}", path.display())))?;
    if atoms.is_empty() {
        return Err(Error::ConfigInvalid("measure file holds no atoms".into()));
    }
    let mut points = Vec::with_capacity(atoms.len());
    let mut masses = Vec::with_capacity(atoms.len());
    for atom in atoms {
        points.push(TubePoint::new(cone, atom.x, atom.y)?);
        masses.push(atom.mass);
    }
    DiscreteMeasure::new(points, masses)
}

/// JSON boundary-grid file: geometry plus `[re, im]` sample pairs in
/// row-major order.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    dim: usize,
    points_per_axis: usize,
    period: f64,
    samples: Vec<[f64; 2]>,
}

/// Load a boundary grid from JSON (self-describing) or CSV
/// (`index,re,im` rows with geometry from the block).
pub fn load_grid(path: &Path, block: &DecomposeBlock) -> Result<BoundaryGrid<f64>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ConfigInvalid(format!("cannot read {}: {e}", path.display())))?;
    if path.extension().and_then(|e| e.to_str()) == Some("json") {
        let file: GridFile = serde_json::from_str(&text)
            .map_err(|e| Error::ConfigInvalid(format!("bad grid file {}: {e}", path.display())))?;
        let samples = file.samples.iter().map(|&[re, im]| Cx::new(re, im)).collect();
        return BoundaryGrid::new(file.dim, file.points_per_axis, file.period, samples);
    }
    let (dim, n, period) = match (block.dim, block.points_per_axis, block.period) {
        (Some(d), Some(n), Some(p)) => (d, n, p),
        _ => {
            return Err(Error::ConfigInvalid(
                "CSV grids need dim, points_per_axis, and period in the decompose block".into(),
            ))
        }
    };
    let count = n.pow(dim as u32);
    let mut samples = vec![Cx::new(0.0, 0.0); count];
    let mut seen = vec![false; count];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("index") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::ConfigInvalid(format!(
                "grid CSV line {}: expected index,re,im",
                lineno + 1
            )));
        }
        let idx: usize = fields[0]
            .parse()
            .map_err(|_| Error::ConfigInvalid(format!("grid CSV line {}: bad index", lineno + 1)))?;
        let re: f64 = fields[1]
            .parse()
            .map_err(|_| Error::ConfigInvalid(format!("grid CSV line {}: bad re", lineno + 1)))?;
        let im: f64 = fields[2]
            .parse()
            .map_err(|_| Error::ConfigInvalid(format!("grid CSV line {}: bad im", lineno + 1)))?;
        if idx >= count {
            return Err(Error::ConfigInvalid(format!(
                "grid CSV line {}: index {idx} beyond {count} samples",
                lineno + 1
            )));
        }
        samples[idx] = Cx::new(re, im);
        seen[idx] = true;
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::ConfigInvalid("grid CSV does not cover every sample index".into()));
    }
    BoundaryGrid::new(dim, n, period, samples)
}
