//! End-to-end acceptance checks, one test per shipped guarantee. Each test
//! prints a single pass/fail line with the measured defect and runtime so
//! the suite doubles as a release report.

use hstube::boundary::{
    analyze_grid, boundary_limit_error, extend, norm_identity_report, split_spectrum,
    BoundaryGrid,
};
use hstube::carleson::{embedding_estimate, testing_ratio, DiscreteMeasure};
use hstube::catalog::{default_direction, DensitySpec};
use hstube::cone::{Cone, ConeSpec};
use hstube::gauge::{Gauge, Weight};
use hstube::kernels::{kernel_halfplane_closed, KernelParams};
use hstube::laplace::{HSFunction, MultiPoly, TubePoint};
use hstube::operators::{
    composition_apply, wco_adjoint_check, wco_necessary_ratio, ModulationSymbol, Symbol,
    TranslationMap,
};
use hstube::quad::{adaptive_reference, build_rule, build_rule_spec, RuleSpec, Support};
use hstube::scalar::Cx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::Instant;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn orthant(d: usize) -> Cone<f64> {
    Cone::build(&ConeSpec::Orthant { dim: d }).unwrap()
}

fn catalogue_cones() -> Vec<Cone<f64>> {
    vec![
        orthant(1),
        orthant(2),
        Cone::build(&ConeSpec::Lorentz { dim: 2 }).unwrap(),
        Cone::build(&ConeSpec::Simplicial {
            dim: 2,
            generators: vec![vec![1.0, 0.0], vec![1.0, 1.0]],
        })
        .unwrap(),
    ]
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

fn euclid(order: u32) -> Weight<f64> {
    Weight::new(order, Gauge::Euclidean)
}

/// Build a catalogue member over `cone` with order `n` and an oscillation
/// budget for point evaluation up to real-part frequency `max_freq`.
fn build_member_freq(
    cone: &Cone<f64>,
    spec: &DensitySpec,
    n: u32,
    max_freq: f64,
) -> HSFunction<f64> {
    let density = spec.build(cone).unwrap();
    HSFunction::with_max_frequency(Arc::new(cone.clone()), euclid(n), density, 1e-9, max_freq)
        .unwrap()
}

/// Norm-only catalogue member (no oscillation budget).
fn build_member(cone: &Cone<f64>, spec: &DensitySpec, n: u32) -> HSFunction<f64> {
    build_member_freq(cone, spec, n, 0.0)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

#[test]
fn criterion_1_paley_wiener_isometry() {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    for cone in catalogue_cones() {
        let dir = default_direction(&cone);
        let specs = vec![
            DensitySpec::Exponential { amplitude: 1.0, direction: None },
            DensitySpec::PolyExponential {
                amplitude: 0.7,
                direction: Some(dir.iter().map(|v| 1.3 * v).collect()),
                powers: if cone.dim() == 1 { vec![1] } else { vec![1, 0] },
            },
            DensitySpec::Exponential {
                amplitude: 2.0,
                direction: Some(dir.iter().map(|v| 0.9 * v).collect()),
            },
        ];
        for spec in &specs {
            for n in 0..=2u32 {
                let f = build_member(&cone, spec, n);
                let rule_sq = f.hs_norm().unwrap().powi(2);
                let w = euclid(n);
                let density = spec.build(&cone).unwrap();
                let depth = density.envelope.decay;
                let oracle = adaptive_reference(
                    &cone,
                    |xi| Cx::new(density.eval(xi).norm_sqr() * w.eval_unchecked(xi), 0.0),
                    depth.max(0.5),
                    1e-9,
                )
                .unwrap()
                .re;
                let rel = (rule_sq - oracle).abs() / oracle.abs();
                worst = worst.max(rel);
                cases += 1;
            }
        }
    }
    // closed form: d = 1, f = e^{-xi}, n = 1 gives 3/4
    let f = build_member(&orthant(1), &DensitySpec::Exponential { amplitude: 1.0, direction: None }, 1);
    let dev = (f.hs_norm().unwrap().powi(2) - 0.75).abs();
    let dt = t0.elapsed().as_secs_f64();
    let ok = cases >= 20 && worst <= 1e-7 && dev <= 1e-8 && dt < 10.0;
    println!(
        "criterion 1 (Paley-Wiener norm identity): {} ({cases} cases, max rel {worst:.2e}, exact dev {dev:.2e}, {dt:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_2_reproducing_property() {
    let t0 = Instant::now();
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let cone = if trial % 5 == 4 { orthant(2) } else { orthant(1) };
        let d = cone.dim();
        let n = r.gen_range(0..=1u32);
        let spec = if r.gen_bool(0.5) {
            DensitySpec::Exponential {
                amplitude: r.gen_range(0.5..2.0),
                direction: Some(vec![r.gen_range(0.8..2.0); d]),
            }
        } else {
            DensitySpec::PolyExponential {
                amplitude: r.gen_range(0.5..2.0),
                direction: Some(vec![r.gen_range(0.8..2.0); d]),
                powers: (0..d).map(|_| r.gen_range(0..=1u32)).collect(),
            }
        };
        let f = build_member_freq(&cone, &spec, n, 2.0);
        let params = KernelParams::new(Arc::new(cone.clone()), euclid(n), 1e-9);
        let x: Vec<f64> = (0..d).map(|_| r.gen_range(-0.8..0.8)).collect();
        let y: Vec<f64> = (0..d).map(|_| r.gen_range(0.5..1.8)).collect();
        let w = TubePoint::new(&cone, x, y).unwrap();
        let (_, _, rel) = params.reproduce_check(&f, &w).unwrap();
        worst = worst.max(rel);
    }
    // closed form: <e^{-xi}, k_i> = F(i) = 1/2
    let cone = orthant(1);
    let f = build_member(&cone, &DensitySpec::Exponential { amplitude: 1.0, direction: None }, 0);
    let params = KernelParams::new(Arc::new(cone.clone()), euclid(0), 1e-9);
    let w = TubePoint::halfplane(&cone, 0.0, 1.0).unwrap();
    let (lhs, rhs, _) = params.reproduce_check(&f, &w).unwrap();
    let dev = (lhs - Cx::new(0.5, 0.0)).norm().max((rhs - Cx::new(0.5, 0.0)).norm());
    let dt = t0.elapsed().as_secs_f64();
    let ok = worst <= 1e-6 && dev <= 1e-8 && dt < 30.0;
    println!(
        "criterion 2 (reproducing property): {} (100 pairs, max rel {worst:.2e}, F(i) dev {dev:.2e}, {dt:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_3_kernel_closed_form_and_symmetries() {
    let t0 = Instant::now();
    let cone = orthant(1);
    let params = KernelParams::new(Arc::new(cone.clone()), euclid(0), 1e-10);
    let mut r = rng(3);
    let pt = |r: &mut ChaCha8Rng| {
        TubePoint::halfplane(&cone, r.gen_range(-1.0..1.0), r.gen_range(0.4..2.0)).unwrap()
    };
    let mut worst_closed = 0.0f64;
    for _ in 0..100 {
        let z = pt(&mut r);
        let w = pt(&mut r);
        let k = params.kernel_eval(&z, &w).unwrap();
        let zc = Cx::new(z.x[0], z.y[0]);
        let wc = Cx::new(w.x[0], w.y[0]);
        let exact = kernel_halfplane_closed(zc, wc).unwrap();
        worst_closed = worst_closed.max((k - exact).norm() / exact.norm());
    }
    let mut worst_sym = 0.0f64;
    for _ in 0..200 {
        let z = pt(&mut r);
        let w = pt(&mut r);
        let k_zw = params.kernel_eval(&z, &w).unwrap();
        let k_wz = params.kernel_eval(&w, &z).unwrap();
        worst_sym = worst_sym.max((k_zw - k_wz.conj()).norm());
        let a = r.gen_range(-1.0..1.0);
        let zs = TubePoint::halfplane(&cone, z.x[0] + a, z.y[0]).unwrap();
        let ws = TubePoint::halfplane(&cone, w.x[0] + a, w.y[0]).unwrap();
        let k_shift = params.kernel_eval(&zs, &ws).unwrap();
        worst_sym = worst_sym.max((k_shift - k_zw).norm());
    }
    let mut min_eig = f64::INFINITY;
    for _ in 0..3 {
        let pts: Vec<TubePoint<f64>> = (0..8).map(|_| pt(&mut r)).collect();
        let mut gram = hstube::linalg::CMat::zeros(8);
        for i in 0..8 {
            for j in 0..8 {
                *gram.at_mut(i, j) = params.kernel_eval(&pts[j], &pts[i]).unwrap();
            }
        }
        gram.hermitize();
        let eigs = hstube::linalg::hermitian_eigenvalues(&gram).unwrap();
        let scale = gram.trace_real();
        for e in eigs {
            min_eig = min_eig.min(e / scale);
        }
    }
    let dt = t0.elapsed().as_secs_f64();
    let ok = worst_closed <= 1e-8 && worst_sym <= 1e-12 && min_eig >= -1e-12 && dt < 10.0;
    println!(
        "criterion 3 (kernel closed form): {} (closed {worst_closed:.2e}, sym/shift {worst_sym:.2e}, min Gram eig {min_eig:.2e}, {dt:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}

/// A random band-limited boundary sample: modes drawn from the closed cone
/// and its negation so the spectrum splits without residual.
fn random_bandlimited(
    cone: &Cone<f64>,
    n_axis: usize,
    r: &mut ChaCha8Rng,
) -> (BoundaryGrid<f64>, Vec<(Vec<f64>, Cx<f64>)>) {
    let d = cone.dim();
    let band = (n_axis as i64 / 3).max(1);
    let mut modes: Vec<(Vec<f64>, Cx<f64>)> = Vec::new();
    while modes.len() < 8 {
        let k: Vec<i64> = (0..d).map(|_| r.gen_range(0..=band)).collect();
        let sign = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let xi: Vec<f64> = k.iter().map(|&v| sign * v as f64).collect();
        let c = Cx::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        modes.push((xi, c));
    }
    let period = 2.0 * std::f64::consts::PI;
    let grid = BoundaryGrid::from_fn(d, n_axis, period, |x: &[f64]| {
        let mut acc = Cx::new(0.0, 0.0);
        for (xi, c) in &modes {
            let phase: f64 = x.iter().zip(xi).map(|(a, b)| a * b).sum();
            acc += *c * Cx::new(0.0, phase).exp();
        }
        acc
    })
    .unwrap();
    (grid, modes)
}

#[test]
fn criterion_4_decomposition_identity() {
    let t0 = Instant::now();
    let mut r = rng(4);
    let mut worst_defect = 0.0f64;
    let mut worst_add = 0.0f64;
    for trial in 0..50 {
        let (cone, n_axis) = if trial % 2 == 0 {
            (orthant(1), *[16, 64, 128, 256].get(trial / 2 % 4).unwrap())
        } else {
            (orthant(2), *[8, 16, 32].get(trial / 2 % 3).unwrap())
        };
        let (grid, modes) = random_bandlimited(&cone, n_axis, &mut r);
        let order = (trial % 3) as u32;
        let report = norm_identity_report(&grid, &cone, &euclid(order), 1e-8).unwrap();
        worst_defect = worst_defect.max(report.defect / report.boundary_norm_sq.max(1e-30));
        // sample additivity of the two one-sided extensions at the boundary
        let spectrum = analyze_grid(&grid).unwrap();
        let split = split_spectrum(&spectrum, &cone, 1e-8).unwrap();
        let (plus, minus) = extend(&split, Arc::new(cone.clone()));
        let d = cone.dim();
        let step = grid.period / n_axis as f64;
        let zero = vec![0.0; d];
        let scale: f64 = modes.iter().map(|(_, c)| c.norm()).sum::<f64>().max(1.0);
        for _ in 0..12 {
            let idx: Vec<usize> = (0..d).map(|_| r.gen_range(0..n_axis)).collect();
            let flat = idx.iter().fold(0, |acc, &i| acc * n_axis + i);
            let x: Vec<f64> = idx.iter().map(|&i| i as f64 * step).collect();
            let u = grid.samples[flat];
            let back = plus.eval(&x, &zero).unwrap() + minus.eval(&x, &zero).unwrap();
            worst_add = worst_add.max((back - u).norm() / scale);
        }
    }
    // the 2 cos x half-plane case
    let cone = orthant(1);
    let grid = BoundaryGrid::from_fn(1, 16, 2.0 * std::f64::consts::PI, |x: &[f64]| {
        Cx::new(2.0 * x[0].cos(), 0.0)
    })
    .unwrap();
    let mut worst_cos = 0.0f64;
    for (n, expect) in [(0u32, [2.0, 1.0, 1.0, 0.0]), (1, [4.0, 2.0, 2.0, 0.0])] {
        let rep = norm_identity_report(&grid, &cone, &euclid(n), 1e-10).unwrap();
        let got = [rep.boundary_norm_sq, rep.plus_norm_sq, rep.minus_norm_sq, rep.defect];
        for (g, e) in got.iter().zip(&expect) {
            worst_cos = worst_cos.max((g - e).abs());
        }
    }
    let dt = t0.elapsed().as_secs_f64();
    let ok = worst_defect <= 1e-10 && worst_add <= 1e-12 && worst_cos <= 1e-10 && dt < 20.0;
    println!(
        "criterion 4 (decomposition identity): {} (50 grids, rel defect {worst_defect:.2e}, additivity {worst_add:.2e}, cos case {worst_cos:.2e}, {dt:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_5_boundary_convergence() {
    let t0 = Instant::now();
    let mut r = rng(5);
    let mut worst_ratio = 0.0f64;
    let mut monotone = true;
    for cone in [orthant(1), orthant(2)] {
        let (grid, _) = random_bandlimited(&cone, 32, &mut r);
        let spectrum = analyze_grid(&grid).unwrap();
        let split = split_spectrum(&spectrum, &cone, 1e-8).unwrap();
        let energy = split.plus_energy() + split.minus_energy();
        let y0 = vec![1.0; cone.dim()];
        let mut prev = f64::INFINITY;
        let mut last = f64::INFINITY;
        for j in 0..=15 {
            let t = 0.5f64.powi(j);
            let ty: Vec<f64> = y0.iter().map(|v| v * t).collect();
            let err = boundary_limit_error(&split, &cone, &ty).unwrap();
            if err > prev * (1.0 + 1e-12) {
                monotone = false;
            }
            prev = err;
            last = err;
        }
        worst_ratio = worst_ratio.max(last / energy);
    }
    let dt = t0.elapsed().as_secs_f64();
    let ok = monotone && worst_ratio <= 1e-6 && dt < 5.0;
    println!(
        "criterion 5 (boundary convergence): {} (monotone {monotone}, final/energy {worst_ratio:.2e}, {dt:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_6_derivative_estimates() {
    let t0 = Instant::now();
    let mut r = rng(6);
    let mut worst_slack = f64::NEG_INFINITY;
    for trial in 0..20 {
        let cone = if trial % 2 == 0 { orthant(1) } else { orthant(2) };
        let d = cone.dim();
        let n = r.gen_range(1..=2u32);
        let spec = DensitySpec::PolyExponential {
            amplitude: r.gen_range(0.5..1.5),
            direction: Some(vec![r.gen_range(0.9..1.8); d]),
            powers: (0..d).map(|_| r.gen_range(0..=1u32)).collect(),
        };
        let f = build_member(&cone, &spec, n);
        let hn = f.hs_norm().unwrap();
        // every monomial multiplier of total degree <= n
        let mut alphas: Vec<Vec<u32>> = vec![vec![0; d]];
        for total in 1..=n {
            if d == 1 {
                alphas.push(vec![total]);
            } else {
                for a0 in 0..=total {
                    alphas.push(vec![a0, total - a0]);
                }
            }
        }
        for alpha in alphas {
            let p = MultiPoly { terms: vec![(alpha.clone(), Cx::new(1.0, 0.0))] };
            let (df, c_alpha) = f.apply_poly_multiplier(&p).unwrap();
            let h2 = df.hs_norm().unwrap();
            // node-wise domination makes this exact up to round-off
            worst_slack = worst_slack.max(h2 - c_alpha * hn);
        }
    }
    // closed-form instance: |d/dz F|_{H^2} = 1/2, |F|_{H^1} = sqrt(3/4)
    let f = build_member(&orthant(1), &DensitySpec::Exponential { amplitude: 1.0, direction: None }, 1);
    let p = MultiPoly::coordinate(0, 1);
    let (df, c1) = f.apply_poly_multiplier(&p).unwrap();
    let dev = (df.hs_norm().unwrap() - 0.5).abs();
    let exact_holds = 0.5 <= c1 * f.hs_norm().unwrap() && c1 <= 1.0 + 1e-12;
    let dt = t0.elapsed().as_secs_f64();
    let ok = worst_slack <= 1e-12 && dev <= 1e-8 && exact_holds && dt < 10.0;
    println!(
        "criterion 6 (derivative estimates): {} (max slack {worst_slack:.2e}, exact dev {dev:.2e}, {dt:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_7_carleson_point_mass() {
    let t0 = Instant::now();
    let cone = orthant(1);
    let params = KernelParams::new(Arc::new(cone.clone()), euclid(0), 1e-9);
    let delta_i = DiscreteMeasure::new(
        vec![TubePoint::halfplane(&cone, 0.0, 1.0).unwrap()],
        vec![1.0],
    )
    .unwrap();
    let frame_i = vec![TubePoint::halfplane(&cone, 0.0, 1.0).unwrap()];
    let est = embedding_estimate(&params, &delta_i, &frame_i).unwrap();
    let dev = (est - 0.5).abs();
    let mut r = rng(7);
    let mut worst_gap = f64::NEG_INFINITY;
    for _ in 0..10 {
        let m = r.gen_range(2..=4usize);
        let points: Vec<TubePoint<f64>> = (0..m)
            .map(|j| {
                TubePoint::halfplane(
                    &cone,
                    -1.0 + 2.0 * j as f64 / m as f64 + r.gen_range(-0.2..0.2),
                    r.gen_range(0.5..2.0),
                )
                .unwrap()
            })
            .collect();
        let masses: Vec<f64> = (0..m).map(|_| r.gen_range(0.1..2.0)).collect();
        let measure = DiscreteMeasure::new(points.clone(), masses).unwrap();
        let mut frame = points;
        frame.push(TubePoint::halfplane(&cone, r.gen_range(-1.5..1.5), r.gen_range(0.5..2.0)).unwrap());
        let est = embedding_estimate(&params, &measure, &frame).unwrap();
        let mut sup = 0.0f64;
        for w in &frame {
            sup = sup.max(testing_ratio(&params, &measure, w).unwrap());
        }
        worst_gap = worst_gap.max(sup - est);
    }
    let dt = t0.elapsed().as_secs_f64();
    let ok = dev <= 1e-8 && worst_gap <= 1e-8 && dt < 30.0;
    println!(
        "criterion 7 (Carleson point mass): {} (delta_i dev {dev:.2e}, sup-estimate gap {worst_gap:.2e}, {dt:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_8_operator_identities() {
    let t0 = Instant::now();
    let cone = orthant(1);
    let arc = Arc::new(cone.clone());
    let params = KernelParams::new(Arc::clone(&arc), euclid(0), 1e-9);
    let tests: Vec<HSFunction<f64>> = vec![
        build_member_freq(&cone, &DensitySpec::Exponential { amplitude: 1.0, direction: None }, 0, 2.0),
        build_member_freq(
            &cone,
            &DensitySpec::PolyExponential { amplitude: 1.0, direction: None, powers: vec![1] },
            0,
            2.0,
        ),
        build_member_freq(
            &cone,
            &DensitySpec::Exponential { amplitude: 0.8, direction: Some(vec![1.5]) },
            0,
            2.0,
        ),
    ];
    let families: Vec<(Symbol<f64>, TranslationMap<f64>)> = vec![
        (Symbol::Constant(Cx::new(1.0, 0.0)), TranslationMap::new(&cone, vec![0.0], vec![1.0]).unwrap()),
        (
            Symbol::Constant(Cx::new(0.5, -0.25)),
            TranslationMap::new(&cone, vec![0.3], vec![0.7]).unwrap(),
        ),
        (
            Symbol::Modulation(ModulationSymbol::new(&cone, vec![1.0]).unwrap()),
            TranslationMap::new(&cone, vec![0.0], vec![1.0]).unwrap(),
        ),
        (
            Symbol::Modulation(ModulationSymbol::new(&cone, vec![0.5]).unwrap()),
            TranslationMap::new(&cone, vec![-0.4], vec![0.6]).unwrap(),
        ),
    ];
    let witnesses = [
        TubePoint::halfplane(&cone, 0.0, 1.0).unwrap(),
        TubePoint::halfplane(&cone, 0.2, 0.8).unwrap(),
    ];
    let mut worst_adj = 0.0f64;
    for (psi, t) in &families {
        for w in &witnesses {
            worst_adj = worst_adj.max(wco_adjoint_check(&params, psi, t, w, &tests).unwrap());
        }
    }
    // closed form: psi = 1, b = i, w = i gives K(2i,2i)/K(i,i) = 1/2
    let ratio = wco_necessary_ratio(
        &params,
        &Symbol::Constant(Cx::new(1.0, 0.0)),
        &TranslationMap::new(&cone, vec![0.0], vec![1.0]).unwrap(),
        &TubePoint::halfplane(&cone, 0.0, 1.0).unwrap(),
    )
    .unwrap();
    let dev = (ratio - 0.5).abs();
    // translation composition contracts the norm
    let mut r = rng(8);
    let mut contraction = true;
    for _ in 0..50 {
        let spec = DensitySpec::PolyExponential {
            amplitude: r.gen_range(0.5..2.0),
            direction: Some(vec![r.gen_range(0.8..2.0)]),
            powers: vec![r.gen_range(0..=2u32)],
        };
        let f = build_member(&cone, &spec, 0);
        let t = TranslationMap::new(&cone, vec![r.gen_range(-1.0..1.0)], vec![r.gen_range(0.1..1.5)])
            .unwrap();
        let g = composition_apply(&f, &t).unwrap();
        if g.hs_norm().unwrap() > f.hs_norm().unwrap() * (1.0 + 1e-10) {
            contraction = false;
        }
    }
    let dt = t0.elapsed().as_secs_f64();
    let ok = worst_adj <= 1e-7 && dev <= 1e-8 && contraction && dt < 20.0;
    println!(
        "criterion 8 (operator identities): {} (adjoint {worst_adj:.2e}, ratio dev {dev:.2e}, contraction {contraction}, {dt:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_9_oracle_agreement() {
    let t0 = Instant::now();
    let mut r = rng(9);
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    // d = 1: exponentials with polynomial, rational, and oscillatory factors
    let cone1 = orthant(1);
    for kind in 0..26 {
        let c = r.gen_range(0.8..2.0);
        let target = 1e-9;
        let (rule, f): (_, Box<dyn Fn(&[f64]) -> Cx<f64>>) = match kind % 3 {
            0 => {
                let p = r.gen_range(0..=3i32);
                (
                    build_rule(&cone1, c, p as u32, target).unwrap(),
                    Box::new(move |xi: &[f64]| Cx::new(xi[0].powi(p) * (-c * xi[0]).exp(), 0.0)),
                )
            }
            1 => (
                build_rule(&cone1, c, 0, target).unwrap(),
                Box::new(move |xi: &[f64]| Cx::new((-c * xi[0]).exp() / (1.0 + xi[0] * xi[0]), 0.0)),
            ),
            _ => {
                let a = r.gen_range(0.0..1.5) * c;
                let spec = RuleSpec {
                    decay_scale: c,
                    degree: 0,
                    target,
                    max_frequency: a,
                    support: Support::HalfLine,
                };
                (
                    build_rule_spec(&cone1, &spec).unwrap(),
                    Box::new(move |xi: &[f64]| Cx::new(0.0, a * xi[0]).exp() * Cx::new((-c * xi[0]).exp(), 0.0)),
                )
            }
        };
        let got = rule.integrate(|xi| f(xi)).unwrap();
        let oracle = adaptive_reference(&cone1, |xi| f(xi), c, 1e-10).unwrap();
        worst = worst.max((got - oracle).norm() / oracle.norm().max(1e-3) / target);
        cases += 1;
    }
    // d = 2: exponential-times-polynomial over each catalogue cone
    for cone in [
        orthant(2),
        Cone::build(&ConeSpec::Lorentz { dim: 2 }).unwrap(),
        Cone::build(&ConeSpec::Simplicial {
            dim: 2,
            generators: vec![vec![1.0, 0.0], vec![1.0, 1.0]],
        })
        .unwrap(),
    ] {
        for _ in 0..7 {
            let y = random_interior(&cone, &mut r);
            let depth = cone.interior_depth(&y).unwrap();
            let powers: Vec<i32> = (0..2).map(|_| r.gen_range(0..=1i32)).collect();
            let deg: u32 = powers.iter().sum::<i32>() as u32;
            let target = 1e-9;
            let rule = build_rule(&cone, depth, deg, target).unwrap();
            let yv = y.clone();
            let pw = powers.clone();
            let f = move |xi: &[f64]| {
                let dot: f64 = yv.iter().zip(xi).map(|(a, b)| a * b).sum();
                let poly: f64 = xi.iter().zip(&pw).map(|(v, &p)| v.powi(p)).product();
                Cx::new(poly * (-dot).exp(), 0.0)
            };
            let got = rule.integrate(&f).unwrap();
            let oracle = adaptive_reference(&cone, &f, depth, 1e-9).unwrap();
            worst = worst.max((got - oracle).norm() / oracle.norm().max(1e-3) / target);
            cases += 1;
        }
    }
    // d = 3: exponentials over the Lorentz cone
    let lorentz3 = Cone::build(&ConeSpec::Lorentz { dim: 3 }).unwrap();
    for _ in 0..3 {
        let y = random_interior(&lorentz3, &mut r);
        let depth = lorentz3.interior_depth(&y).unwrap();
        let target = 1e-7;
        let rule = build_rule(&lorentz3, depth, 0, target).unwrap();
        let yv = y.clone();
        let f = move |xi: &[f64]| {
            let dot: f64 = yv.iter().zip(xi).map(|(a, b)| a * b).sum();
            Cx::new((-dot).exp(), 0.0)
        };
        let got = rule.integrate(&f).unwrap();
        let oracle = adaptive_reference(&lorentz3, &f, depth, 1e-7).unwrap();
        worst = worst.max((got - oracle).norm() / oracle.norm().max(1e-3) / target);
        cases += 1;
    }
    let dt = t0.elapsed().as_secs_f64();
    let ok = cases == 50 && worst <= 10.0 && dt < 30.0;
    println!(
        "criterion 9 (oracle agreement): {} ({cases} cases, worst err/target {worst:.2}, {dt:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}
