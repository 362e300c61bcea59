//! The `verify` command: seeded invariant checks over the configured cone,
//! one pass/fail row per property with its measured defect.

use hstube::boundary::{analyze_grid, boundary_limit_error, norm_identity_report, split_spectrum, BoundaryGrid};
use hstube::carleson::{embedding_estimate, DiscreteMeasure};
use hstube::catalog::{default_direction, DensitySpec};
use hstube::cone::{Cone, ConeKind};
use hstube::gauge::{Gauge, Weight};
use hstube::kernels::{kernel_halfplane_closed, KernelParams};
use hstube::laplace::{HSFunction, TubePoint};
use hstube::operators::{composition_apply, wco_adjoint_check, Symbol, TranslationMap};
use hstube::quad::{adaptive_reference, build_rule};
use hstube::scalar::Cx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

use crate::config::ExperimentConfig;

#[derive(Debug, Serialize)]
pub struct PropertyRow {
    pub name: &'static str,
    pub defect: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub order: u32,
    pub properties: Vec<PropertyRow>,
    pub all_pass: bool,
}

fn row(name: &'static str, defect: f64, tol: f64) -> PropertyRow {
    PropertyRow { name, defect, tol, pass: defect.is_finite() && defect <= tol }
}

fn random_interior(cone: &Cone<f64>, r: &mut ChaCha8Rng) -> Vec<f64> {
    let base = default_direction(cone);
    loop {
        let y: Vec<f64> = base
            .iter()
            .map(|&b| b * r.gen_range(0.8..2.0) + r.gen_range(-0.2..0.2))
            .collect();
        if cone.interior_depth(&y).map(|d| d > 0.3).unwrap_or(false) {
            return y;
        }
    }
}

fn random_point(cone: &Cone<f64>, r: &mut ChaCha8Rng) -> TubePoint<f64> {
    let x: Vec<f64> = (0..cone.dim()).map(|_| r.gen_range(-0.5..0.5)).collect();
    let y = random_interior(cone, r);
    TubePoint::new(cone, x, y).expect("interior point")
}

fn exp_member(
    cone: &Arc<Cone<f64>>,
    weight: &Weight<f64>,
    direction: Vec<f64>,
    target: f64,
) -> Result<HSFunction<f64>, hstube::error::Error> {
    let density =
        DensitySpec::Exponential { amplitude: 1.0, direction: Some(direction) }.build(cone)?;
    HSFunction::with_max_frequency(Arc::clone(cone), weight.clone(), density, target, 2.0)
}

/// Run every applicable property and collect the report. Properties that
/// need a module unavailable in the configured dimension are skipped.
pub fn run(config: &ExperimentConfig, seed: u64) -> Result<VerifyReport, hstube::error::Error> {
    let cone = Arc::new(Cone::build(&config.cone)?);
    let gauge = Gauge::build(&config.gauge, &cone)?;
    let weight = Weight::new(config.order, gauge);
    let target = config.target;
    let d = cone.dim();
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();

    // spectral norm vs the independent adaptive integrator
    {
        let mut worst = 0.0f64;
        for _ in 0..3 {
            let f = exp_member(&cone, &weight, random_interior(&cone, &mut r), target)?;
            let rule_sq = f.hs_norm()?.powi(2);
            let decay = f.density.envelope.decay;
            let density = f.density.clone();
            let w = weight.clone();
            let oracle = adaptive_reference(
                &cone,
                |xi: &[f64]| Cx::new(density.eval(xi).norm_sqr() * w.eval_unchecked(xi), 0.0),
                decay,
                (target * 1e2).clamp(1e-10, 1e-7),
            )?
            .re;
            worst = worst.max((rule_sq - oracle).abs() / oracle.abs());
        }
        rows.push(row("norm_identity_vs_oracle", worst, 1e-7));
    }

    // kernel Hermitian symmetry
    {
        let params = KernelParams::new(Arc::clone(&cone), weight.clone(), target);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let z = random_point(&cone, &mut r);
            let w = random_point(&cone, &mut r);
            let k_zw = params.kernel_eval(&z, &w)?;
            let k_wz = params.kernel_eval(&w, &z)?;
            worst = worst.max((k_zw - k_wz.conj()).norm());
        }
        rows.push(row("kernel_hermitian", worst, 1e-12));
    }

    // closed form on the half-plane
    if cone.kind() == ConeKind::Orthant && d == 1 && config.order == 0 {
        let params = KernelParams::new(Arc::clone(&cone), weight.clone(), target);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let z = random_point(&cone, &mut r);
            let w = random_point(&cone, &mut r);
            let k = params.kernel_eval(&z, &w)?;
            let exact =
                kernel_halfplane_closed(Cx::new(z.x[0], z.y[0]), Cx::new(w.x[0], w.y[0]))?;
            worst = worst.max((k - exact).norm() / exact.norm());
        }
        rows.push(row("kernel_closed_form", worst, 1e-8));
    }

    // reproducing identity
    {
        let params = KernelParams::new(Arc::clone(&cone), weight.clone(), target);
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let f = exp_member(&cone, &weight, random_interior(&cone, &mut r), target)?;
            let w = random_point(&cone, &mut r);
            let (_, _, rel) = params.reproduce_check(&f, &w)?;
            worst = worst.max(rel);
        }
        rows.push(row("reproducing_identity", worst, 1e-6));
    }

    // boundary decomposition (the FFT module covers d <= 2)
    if d <= 2 {
        let n_axis = 32;
        let band = 8i64;
        let mut modes: Vec<(Vec<f64>, Cx<f64>)> = Vec::new();
        while modes.len() < 6 {
            let k: Vec<f64> = (0..d).map(|_| r.gen_range(-band..=band) as f64).collect();
            let keep = cone.contains_dual(&k, 1e-9)?
                || cone.contains_dual(&k.iter().map(|v| -v).collect::<Vec<_>>(), 1e-9)?;
            if keep {
                modes.push((k, Cx::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))));
            }
        }
        let grid = BoundaryGrid::from_fn(d, n_axis, 2.0 * std::f64::consts::PI, |x: &[f64]| {
            let mut acc = Cx::new(0.0, 0.0);
            for (k, c) in &modes {
                let phase: f64 = x.iter().zip(k).map(|(a, b)| a * b).sum();
                acc += *c * Cx::new(0.0, phase).exp();
            }
            acc
        })?;
        let report = norm_identity_report(&grid, &cone, &weight, 1e-8)?;
        rows.push(row(
            "decomposition_defect",
            report.defect / report.boundary_norm_sq.max(1e-30),
            1e-10,
        ));

        let spectrum = analyze_grid(&grid)?;
        let split = split_spectrum(&spectrum, &cone, 1e-8)?;
        let energy = split.plus_energy() + split.minus_energy();
        let y0 = default_direction(&cone);
        let mut monotone = true;
        let mut prev = f64::INFINITY;
        let mut last = f64::INFINITY;
        for j in 0..=15 {
            let t = 0.5f64.powi(j);
            let ty: Vec<f64> = y0.iter().map(|v| v * t).collect();
            let err = boundary_limit_error(&split, &cone, &ty)?;
            if err > prev * (1.0 + 1e-12) {
                monotone = false;
            }
            prev = err;
            last = err;
        }
        let defect = if monotone { last / energy } else { f64::INFINITY };
        rows.push(row("boundary_convergence", defect, 1e-6));
    }

    // point-mass embedding estimate equals the kernel diagonal
    {
        let params = KernelParams::new(Arc::clone(&cone), weight.clone(), target);
        let w0 = TubePoint::new(&cone, vec![0.0; d], default_direction(&cone))?;
        let measure = DiscreteMeasure::new(vec![w0.clone()], vec![1.0])?;
        let est = embedding_estimate(&params, &measure, std::slice::from_ref(&w0))?;
        let diag = params.kernel_diag(&w0)?;
        rows.push(row("carleson_point_mass", (est - diag).abs() / diag, 1e-8));
    }

    // translation composition contracts, and its adjoint identity holds
    {
        let params = KernelParams::new(Arc::clone(&cone), weight.clone(), target);
        let t = TranslationMap::new(&cone, vec![0.0; d], default_direction(&cone))?;
        let mut worst_contract = 0.0f64;
        let mut tests = Vec::new();
        for _ in 0..3 {
            let f = exp_member(&cone, &weight, random_interior(&cone, &mut r), target)?;
            let g = composition_apply(&f, &t)?;
            worst_contract = worst_contract.max(g.hs_norm()? / f.hs_norm()? - 1.0);
            tests.push(f);
        }
        rows.push(row("composition_contraction", worst_contract.max(0.0), 1e-10));
        let w = random_point(&cone, &mut r);
        let defect =
            wco_adjoint_check(&params, &Symbol::Constant(Cx::new(1.0, 0.0)), &t, &w, &tests)?;
        rows.push(row("wco_adjoint_identity", defect, 1e-7));
    }

    // working rule vs the oracle on a plain exponential
    {
        let y = random_interior(&cone, &mut r);
        let depth = cone.interior_depth(&y)?;
        let rule = build_rule(&cone, depth, 0, target)?;
        let f = |xi: &[f64]| {
            let dot: f64 = y.iter().zip(xi).map(|(a, b)| a * b).sum();
            Cx::new((-dot).exp(), 0.0)
        };
        let got = rule.integrate(f)?;
        let oracle =
            adaptive_reference(&cone, f, depth, (target * 1e2).clamp(1e-10, 1e-7))?;
        let defect = (got - oracle).norm() / oracle.norm();
        rows.push(row("quadrature_oracle_agreement", defect, 10.0 * target.max(1e-8)));
    }

    let all_pass = rows.iter().all(|p| p.pass);
    Ok(VerifyReport { seed, order: config.order, properties: rows, all_pass })
}
