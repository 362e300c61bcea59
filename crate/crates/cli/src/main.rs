//! Batch driver for the Hardy-Sobolev tube-domain library: JSON configs
//! in, JSON/CSV artifacts out, written atomically. Exit codes: 0 on
//! success, 2 for configuration errors, 3 for numerical failures.

mod config;
mod verify;

use clap::{Parser, Subcommand};
use hstube::carleson::carleson_report;
use hstube::cone::Cone;
use hstube::error::Error;
use hstube::gauge::{Gauge, Weight};
use hstube::kernels::KernelParams;
use hstube::laplace::{HSFunction, MultiPoly, TubePoint};
use hstube::operators::{
    composition_apply, wco_adjoint_check, wco_necessary_ratio, ModulationSymbol, Symbol,
    TranslationMap,
};
use hstube::scalar::Cx;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use config::{ExperimentConfig, SymbolSpec};

#[derive(Parser)]
#[command(name = "hstube", version, about = "Hardy-Sobolev spaces on tube domains over cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Experiment config (JSON). `verify` falls back to the default
    /// half-plane config when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for artifacts.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// RNG seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override the config's quadrature accuracy target.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel values and diagonals over a grid (CSV).
    Kernel,
    /// Boundary norm-identity report for a sampled grid (JSON).
    Decompose,
    /// Spectral, sup, and derivative norms of a catalogue density (JSON).
    Norms,
    /// Carleson kernel-test and embedding lower bound (JSON).
    Carleson,
    /// Weighted-composition ratio/adjoint report (JSON).
    Operators,
    /// Full invariant suite with measured defects.
    Verify,
}

/// Failures split by phase: everything before the numerics starts is a
/// configuration error.
enum Failure {
    Config(String),
    Numerical(String),
}

impl Failure {
    fn config(e: Error) -> Self {
        Failure::Config(e.to_string())
    }

    fn numerical(e: Error) -> Self {
        Failure::Numerical(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let command_name = match cli.command {
        Command::Kernel => "kernel",
        Command::Decompose => "decompose",
        Command::Norms => "norms",
        Command::Carleson => "carleson",
        Command::Operators => "operators",
        Command::Verify => "verify",
    };
    match run(&cli) {
        Ok(()) => {}
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            std::process::exit(2);
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            let report = serde_json::json!({ "command": command_name, "error": msg });
            // best-effort error artifact; the exit code carries the status
            let _ = write_json(&cli.out, "error.json", &report);
            std::process::exit(3);
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut cfg = load_config(cli)?;
    if let Some(tol) = cli.tol {
        cfg.target = tol;
    }
    cfg.validate().map_err(Failure::config)?;
    let cone = Arc::new(Cone::build(&cfg.cone).map_err(Failure::config)?);
    let gauge = Gauge::build(&cfg.gauge, &cone).map_err(Failure::config)?;
    let weight = Weight::new(cfg.order, gauge);
    match cli.command {
        Command::Kernel => run_kernel(&cfg, &cone, &weight, &cli.out),
        Command::Decompose => run_decompose(&cfg, &cone, &weight, &cli.out),
        Command::Norms => run_norms(&cfg, &cone, &weight, &cli.out),
        Command::Carleson => run_carleson(&cfg, &cone, &weight, &cli.out),
        Command::Operators => run_operators(&cfg, &cone, &weight, &cli.out),
        Command::Verify => run_verify(&cfg, cli.seed, &cli.out),
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, Failure> {
    match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::Config(format!("bad config {}: {e}", path.display())))
        }
        None => match cli.command {
            Command::Verify => Ok(ExperimentConfig::halfplane_default()),
            _ => Err(Failure::Config("--config is required".into())),
        },
    }
}

fn run_kernel(
    cfg: &ExperimentConfig,
    cone: &Arc<Cone<f64>>,
    weight: &Weight<f64>,
    out: &Path,
) -> Result<(), Failure> {
    let block = cfg
        .kernel
        .as_ref()
        .ok_or_else(|| Failure::Config("config has no kernel block".into()))?;
    let w = block.w.build(cone).map_err(Failure::config)?;
    let grid: Vec<TubePoint<f64>> = block
        .grid
        .iter()
        .map(|p| p.build(cone))
        .collect::<Result<_, _>>()
        .map_err(Failure::config)?;
    if grid.is_empty() {
        return Err(Failure::Config("kernel grid is empty".into()));
    }

    let params = KernelParams::new(Arc::clone(cone), weight.clone(), cfg.target);
    let d = cone.dim();
    let mut csv = String::new();
    csv.push_str("index");
    for j in 0..d {
        csv.push_str(&format!(",x{j}"));
    }
    for j in 0..d {
        csv.push_str(&format!(",y{j}"));
    }
    csv.push_str(",re_k,im_k,diag\n");
    for (i, z) in grid.iter().enumerate() {
        let k = params.kernel_eval(z, &w).map_err(Failure::numerical)?;
        let diag = params.kernel_diag(z).map_err(Failure::numerical)?;
        csv.push_str(&format!("{i}"));
        for v in z.x.iter().chain(&z.y) {
            csv.push_str(&format!(",{v:.16e}"));
        }
        csv.push_str(&format!(",{:.16e},{:.16e},{diag:.16e}\n", k.re, k.im));
    }
    write_atomic(out, "kernel.csv", csv.as_bytes())?;
    Ok(())
}

fn run_decompose(
    cfg: &ExperimentConfig,
    cone: &Arc<Cone<f64>>,
    weight: &Weight<f64>,
    out: &Path,
) -> Result<(), Failure> {
    let block = cfg
        .decompose
        .as_ref()
        .ok_or_else(|| Failure::Config("config has no decompose block".into()))?;
    let grid = config::load_grid(Path::new(&block.grid_file), block).map_err(Failure::config)?;
    let report = hstube::boundary::norm_identity_report(&grid, cone, weight, block.residual_tol)
        .map_err(Failure::numerical)?;
    write_json(out, "decompose.json", &report)
}

#[derive(Serialize)]
struct DerivativeRow {
    alpha: Vec<u32>,
    h2_norm: f64,
    domination_constant: f64,
}

#[derive(Serialize)]
struct NormsReport {
    density: String,
    order: u32,
    hs_norm: f64,
    h2_sup_norm: f64,
    derivatives: Vec<DerivativeRow>,
}

fn run_norms(
    cfg: &ExperimentConfig,
    cone: &Arc<Cone<f64>>,
    weight: &Weight<f64>,
    out: &Path,
) -> Result<(), Failure> {
    let block = cfg
        .norms
        .as_ref()
        .ok_or_else(|| Failure::Config("config has no norms block".into()))?;
    let density = block.density.build(cone).map_err(Failure::config)?;
    for alpha in &block.derivatives {
        if alpha.len() != cone.dim() {
            return Err(Failure::Config(format!(
                "derivative index {alpha:?} does not match dimension {}",
                cone.dim()
            )));
        }
        if alpha.iter().sum::<u32>() > cfg.order {
            return Err(Failure::Config(format!(
                "derivative index {alpha:?} beyond the Sobolev order {}",
                cfg.order
            )));
        }
    }

    let description = density.description.clone();
    let f = HSFunction::new(Arc::clone(cone), weight.clone(), density, cfg.target)
        .map_err(Failure::numerical)?;
    let mut derivatives = Vec::new();
    for alpha in &block.derivatives {
        let p = MultiPoly { terms: vec![(alpha.clone(), Cx::new(1.0, 0.0))] };
        let (df, c) = f.apply_poly_multiplier(&p).map_err(Failure::numerical)?;
        derivatives.push(DerivativeRow {
            alpha: alpha.clone(),
            h2_norm: df.hs_norm().map_err(Failure::numerical)?,
            domination_constant: c,
        });
    }
    let report = NormsReport {
        density: description,
        order: cfg.order,
        hs_norm: f.hs_norm().map_err(Failure::numerical)?,
        h2_sup_norm: f.h2_sup_norm().map_err(Failure::numerical)?,
        derivatives,
    };
    write_json(out, "norms.json", &report)
}

fn run_carleson(
    cfg: &ExperimentConfig,
    cone: &Arc<Cone<f64>>,
    weight: &Weight<f64>,
    out: &Path,
) -> Result<(), Failure> {
    let block = cfg
        .carleson
        .as_ref()
        .ok_or_else(|| Failure::Config("config has no carleson block".into()))?;
    let measure =
        config::load_measure(Path::new(&block.measure_file), cone).map_err(Failure::config)?;
    let frame: Vec<TubePoint<f64>> = block
        .frame
        .iter()
        .map(|p| p.build(cone))
        .collect::<Result<_, _>>()
        .map_err(Failure::config)?;
    if frame.is_empty() {
        return Err(Failure::Config("carleson frame is empty".into()));
    }

    let params = KernelParams::new(Arc::clone(cone), weight.clone(), cfg.target);
    let report = carleson_report(&params, &measure, &frame).map_err(Failure::numerical)?;
    write_json(out, "carleson.json", &report)
}

#[derive(Serialize)]
struct WitnessRow {
    x: Vec<f64>,
    y: Vec<f64>,
    necessary_ratio: f64,
}

#[derive(Serialize)]
struct ContractionRow {
    density: String,
    norm_before: f64,
    norm_after: f64,
}

#[derive(Serialize)]
struct OperatorsReport {
    adjoint_defect: f64,
    witnesses: Vec<WitnessRow>,
    contraction: Vec<ContractionRow>,
}

fn run_operators(
    cfg: &ExperimentConfig,
    cone: &Arc<Cone<f64>>,
    weight: &Weight<f64>,
    out: &Path,
) -> Result<(), Failure> {
    let block = cfg
        .operators
        .as_ref()
        .ok_or_else(|| Failure::Config("config has no operators block".into()))?;
    let symbol = match &block.symbol {
        SymbolSpec::Constant { re, im } => Symbol::Constant(Cx::new(*re, *im)),
        SymbolSpec::Modulation { eta0 } => Symbol::Modulation(
            ModulationSymbol::new(cone, eta0.clone()).map_err(Failure::config)?,
        ),
    };
    let translation = TranslationMap::new(cone, block.b_re.clone(), block.b_im.clone())
        .map_err(Failure::config)?;
    let witnesses: Vec<TubePoint<f64>> = block
        .witnesses
        .iter()
        .map(|p| p.build(cone))
        .collect::<Result<_, _>>()
        .map_err(Failure::config)?;
    if witnesses.is_empty() || block.densities.is_empty() {
        return Err(Failure::Config("operators block needs witnesses and densities".into()));
    }
    // size the working rules for the frequencies the witnesses reach
    let norm2 = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let max_freq = witnesses
        .iter()
        .map(|w| norm2(&w.x))
        .fold(0.0f64, f64::max)
        + norm2(&block.b_re)
        + 0.5;
    let tests: Vec<HSFunction<f64>> = block
        .densities
        .iter()
        .map(|spec| {
            let density = spec.build(cone)?;
            HSFunction::with_max_frequency(
                Arc::clone(cone),
                weight.clone(),
                density,
                cfg.target,
                max_freq,
            )
        })
        .collect::<Result<_, _>>()
        .map_err(Failure::config)?;

    let params = KernelParams::new(Arc::clone(cone), weight.clone(), cfg.target);
    let mut adjoint_defect = 0.0f64;
    let mut witness_rows = Vec::new();
    for w in &witnesses {
        let defect = wco_adjoint_check(&params, &symbol, &translation, w, &tests)
            .map_err(Failure::numerical)?;
        adjoint_defect = adjoint_defect.max(defect);
        let ratio = wco_necessary_ratio(&params, &symbol, &translation, w)
            .map_err(Failure::numerical)?;
        witness_rows.push(WitnessRow { x: w.x.clone(), y: w.y.clone(), necessary_ratio: ratio });
    }
    let mut contraction = Vec::new();
    for f in &tests {
        let g = composition_apply(f, &translation).map_err(Failure::numerical)?;
        contraction.push(ContractionRow {
            density: f.density.description.clone(),
            norm_before: f.hs_norm().map_err(Failure::numerical)?,
            norm_after: g.hs_norm().map_err(Failure::numerical)?,
        });
    }
    let report = OperatorsReport { adjoint_defect, witnesses: witness_rows, contraction };
    write_json(out, "operators.json", &report)
}

fn run_verify(cfg: &ExperimentConfig, seed: u64, out: &Path) -> Result<(), Failure> {
    let report = verify::run(cfg, seed).map_err(Failure::numerical)?;
    for p in &report.properties {
        let status = if p.pass { "pass" } else { "FAIL" };
        println!("{}: {status} (defect {:.3e}, tol {:.1e})", p.name, p.defect, p.tol);
    }
    write_json(out, "verify.json", &report)?;
    if !report.all_pass {
        return Err(Failure::Numerical("one or more verify properties failed".into()));
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &Path, name: &str, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Numerical(format!("serialization: {e}")))?;
    text.push('\n');
    write_atomic(out, name, text.as_bytes())
}

/// Write via a temp file in the target directory and rename into place,
/// so failures leave no partial artifact.
fn write_atomic(out: &Path, name: &str, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::create_dir_all(out)
        .map_err(|e| Failure::Config(format!("cannot create {}: {e}", out.display())))?;
    let mut tmp = tempfile::NamedTempFile::new_in(out)
        .map_err(|e| Failure::Numerical(format!("temp file in {}: {e}", out.display())))?;
    tmp.write_all(bytes)
        .map_err(|e| Failure::Numerical(format!("write: {e}")))?;
    tmp.persist(out.join(name))
        .map_err(|e| Failure::Numerical(format!("rename into place: {e}")))?;
    Ok(())
}
