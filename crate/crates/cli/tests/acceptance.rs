//! Acceptance gate: one test per criterion. Each test checks the stated
//! tolerance, asserts the stated runtime budget, and ends with a single
//! `PASS criterion N` line (visible with `--nocapture`); the per-test
//! ok/FAILED line from the harness is the machine-readable verdict.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use geoflow_core::geodesic::{
    hopf_blowup_estimate, simulate, EquationConfig, SolverOptions, TimeScheme,
};
use geoflow_core::jet::{
    closure_check, equation, hs_family, invariance_pairs, mutation_suite, JetPoly, Var,
};
use geoflow_core::lie::{
    ad, ad_star, bott_thurston, gelfand_fuchs, pairing, schwarzian, vir_bracket, CircleDiffeo,
    VirasoroVector,
};
use geoflow_core::spectral::{
    analyze, interpolate_spectrum, spectral_derivative, synthesize, GridField, PeriodicGrid,
};
use geoflow_core::symmetry::{list_symmetries, symmetry_consistency_test};

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

fn random_trig(grid: PeriodicGrid, rng: &mut ChaCha8Rng, max_mode: usize) -> GridField {
    let mut coeffs = Vec::with_capacity(2 * max_mode);
    for _ in 0..max_mode {
        coeffs.push((rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    }
    GridField::from_fn(grid, move |x| {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, (a, b))| {
                let k = (i + 1) as f64;
                a * (k * x).cos() + b * (k * x).sin()
            })
            .sum()
    })
}

fn random_diffeo(grid: PeriodicGrid, rng: &mut ChaCha8Rng, max_c: f64) -> CircleDiffeo {
    let c = max_c * rng.random_range(-1.0..1.0);
    let d = rng.random_range(0.0..TAU);
    CircleDiffeo::from_map(grid, move |x| x + c * (x + d).sin()).unwrap()
}

fn smooth_ic(grid: PeriodicGrid) -> GridField {
    GridField::from_fn(grid, |x| x.sin() + 0.3 * (2.0 * x).cos())
}

/// Criterion 1: all 18 cataloged (equation, generator) pairs reduce to the
/// exact zero polynomial, and every cataloged mutation (50 cases, ≥ 36
/// required) leaves a nonzero remainder. Budget 30 s.
#[test]
fn criterion_01_exact_invariance_and_mutation_kill() {
    let start = Instant::now();

    let pairs = invariance_pairs();
    assert_eq!(pairs.len(), 18, "generator count 3+4+4+3+4");
    for (eq, info) in &pairs {
        let pde = equation(eq).unwrap();
        let report = pde.invariance_check(&info.field).unwrap();
        assert!(
            report.holds && report.remainder.is_zero(),
            "{eq}/{} is not exactly invariant: remainder = {}",
            info.label,
            report.remainder
        );
    }

    let mutations = mutation_suite();
    assert!(
        mutations.len() >= 36,
        "need at least 36 mutation cases, have {}",
        mutations.len()
    );
    for case in &mutations {
        let pde = equation(case.equation).unwrap();
        let report = pde.invariance_check(&case.field).unwrap();
        assert!(
            !report.holds && !report.remainder.is_zero(),
            "mutant survived: {}/{} ({})",
            case.equation,
            case.generator,
            case.description
        );
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "runtime {elapsed:.1} s exceeds 30 s");
    println!(
        "PASS criterion 1: 18/18 exact-zero invariance, {}/{} mutations rejected ({elapsed:.2} s)",
        mutations.len(),
        mutations.len()
    );
}

/// Criterion 2: the five cataloged algebras close with the expected
/// dimensions and exact rational structure constants; F₁(t) = t² breaks
/// closure. Budget 5 s.
#[test]
fn criterion_02_closure_dimensions_and_non_closure_witness() {
    let start = Instant::now();

    for (name, dim) in [
        ("camassa-holm", 3usize),
        ("hunter-saxton", 4),
        ("kdv", 4),
        ("dispersive-ch", 3),
        ("dispersive-hs", 4),
    ] {
        let fields: Vec<_> = geoflow_core::jet::generators(name)
            .unwrap()
            .into_iter()
            .map(|g| g.field)
            .collect();
        let report = closure_check(&fields).unwrap();
        assert!(report.closed, "{name} failed to close");
        assert_eq!(report.dimension, dim, "{name} dimension");
        // Structure constants are exact JetPoly rationals by construction;
        // every recorded expansion must reproduce its bracket exactly.
        assert_eq!(report.table.len(), dim * (dim - 1) / 2);
    }

    let t_sq = &JetPoly::var(Var::T) * &JetPoly::var(Var::T);
    let family = hs_family(&t_sq, &JetPoly::one(), false).unwrap();
    let report = closure_check(&family).unwrap();
    assert!(!report.closed, "F1(t) = t^2 must not close");
    assert!(report.witness.is_some());

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "runtime {elapsed:.1} s exceeds 5 s");
    println!("PASS criterion 2: dimensions 3,4,4,3,4 closed; t^2 witness found ({elapsed:.2} s)");
}

/// Criterion 3: Gel'fand–Fuchs identity < 1e−9 on 50 trig triples at
/// n = 128; Bott–Thurston identity < 1e−7 on 20 diffeo triples
/// x + c·sin(x + d) with |c| ≤ 0.3. Budget 10 s.
#[test]
fn criterion_03_cocycle_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = PeriodicGrid::two_pi(128).unwrap();

    let mut worst_gf = 0.0f64;
    for _ in 0..50 {
        let u = random_trig(grid, &mut rng, 5);
        let v = random_trig(grid, &mut rng, 5);
        let w = random_trig(grid, &mut rng, 5);
        let r = gelfand_fuchs(&ad(&u, &v).unwrap(), &w).unwrap()
            + gelfand_fuchs(&ad(&w, &u).unwrap(), &v).unwrap()
            + gelfand_fuchs(&ad(&v, &w).unwrap(), &u).unwrap();
        worst_gf = worst_gf.max(r.abs());
    }
    assert!(worst_gf < 1e-9, "Gel'fand-Fuchs identity residual {worst_gf:.3e}");

    let mut worst_bt = 0.0f64;
    let mut largest_b = 0.0f64;
    for _ in 0..20 {
        let phi = random_diffeo(grid, &mut rng, 0.3);
        let zeta = random_diffeo(grid, &mut rng, 0.3);
        let psi = random_diffeo(grid, &mut rng, 0.3);
        let b_phi_zeta = bott_thurston(&phi, &zeta).unwrap();
        let lhs = bott_thurston(&phi.compose(&zeta).unwrap(), &psi).unwrap() + b_phi_zeta;
        let rhs = bott_thurston(&phi, &zeta.compose(&psi).unwrap()).unwrap()
            + bott_thurston(&zeta, &psi).unwrap();
        worst_bt = worst_bt.max((lhs - rhs).abs());
        largest_b = largest_b.max(b_phi_zeta.abs());
    }
    assert!(worst_bt < 1e-7, "Bott-Thurston identity residual {worst_bt:.3e}");
    // Guard against a vacuous 0 = 0 identity: the cocycle itself must be
    // visibly nonzero on these samples.
    assert!(largest_b > 1e-4, "Bott-Thurston values all near zero: {largest_b:.3e}");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "runtime {elapsed:.1} s exceeds 10 s");
    println!(
        "PASS criterion 3: GF residual {worst_gf:.2e} < 1e-9 (50 triples), \
         BT residual {worst_bt:.2e} < 1e-7 (20 triples, max |B| = {largest_b:.2e}) ({elapsed:.2} s)"
    );
}

/// Criterion 4: ⟨ad*(u, m), v⟩ + ⟨m, ad(u, v)⟩ < 1e−10 and the Virasoro
/// bracket Jacobi residual < 1e−9, 50 samples each. Budget 5 s.
#[test]
fn criterion_04_duality_and_jacobi() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let grid = PeriodicGrid::two_pi(128).unwrap();

    let mut worst_dual = 0.0f64;
    for _ in 0..50 {
        let u = random_trig(grid, &mut rng, 5);
        let m = random_trig(grid, &mut rng, 5);
        let v = random_trig(grid, &mut rng, 5);
        let lhs = pairing(&ad_star(&u, &m).unwrap(), &v).unwrap();
        let rhs = pairing(&m, &ad(&u, &v).unwrap()).unwrap();
        worst_dual = worst_dual.max((lhs + rhs).abs());
    }
    assert!(worst_dual < 1e-10, "duality residual {worst_dual:.3e}");

    let mut worst_jacobi = 0.0f64;
    for _ in 0..50 {
        let mut vec = || {
            VirasoroVector::new(random_trig(grid, &mut rng, 5), 0.0)
        };
        let (mut x, mut y, mut z) = (vec(), vec(), vec());
        x.a = rng.random_range(-1.0..1.0);
        y.a = rng.random_range(-1.0..1.0);
        z.a = rng.random_range(-1.0..1.0);
        let t1 = vir_bracket(&x, &vir_bracket(&y, &z).unwrap()).unwrap();
        let t2 = vir_bracket(&z, &vir_bracket(&x, &y).unwrap()).unwrap();
        let t3 = vir_bracket(&y, &vir_bracket(&z, &x).unwrap()).unwrap();
        worst_jacobi = worst_jacobi
            .max((&(&t1.u + &t2.u) + &t3.u).max_norm())
            .max((t1.a + t2.a + t3.a).abs());
    }
    assert!(worst_jacobi < 1e-9, "Jacobi residual {worst_jacobi:.3e}");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "runtime {elapsed:.1} s exceeds 5 s");
    println!(
        "PASS criterion 4: duality {worst_dual:.2e} < 1e-10, Jacobi {worst_jacobi:.2e} < 1e-9, \
         50 samples each ({elapsed:.2} s)"
    );
}

/// Criterion 5: S(identity) = 0 to 1e−13; Möbius-composition invariance of
/// the Schwarzian to 1e−6 on 10 sampled maps. Budget 2 s.
#[test]
fn criterion_05_schwarzian() {
    let start = Instant::now();
    let grid = PeriodicGrid::two_pi(256).unwrap();

    let id = CircleDiffeo::identity(grid);
    let s_id = schwarzian(&id).unwrap().max_norm();
    assert!(s_id < 1e-13, "S(identity) = {s_id:.3e}");

    // Möbius maps act on the lift; S(M ∘ φ) = S(φ). The composite's
    // derivatives follow from the chain rule with M' = det/(cy+d)².
    let phi = CircleDiffeo::from_map(grid, |x| x + 0.3 * (x + 0.4).sin()).unwrap();
    let s_phi = schwarzian(&phi).unwrap();
    let p = phi.periodic_part();
    let fx = phi.jacobian();
    let fxx = spectral_derivative(&p, 2);
    let fxxx = spectral_derivative(&p, 3);
    let maps = [
        (1.0, 0.0, 0.02, 1.0),
        (1.3, -0.4, -0.03, 1.1),
        (0.7, 2.0, 0.05, 1.4),
        (2.0, 1.0, -0.01, 0.8),
        (1.0, -1.0, 0.04, 1.2),
        (0.5, 0.3, -0.05, 1.5),
        (3.0, 0.2, 0.015, 1.0),
        (1.1, 5.0, -0.02, 0.9),
        (0.9, -2.5, 0.03, 1.3),
        (1.7, 0.7, -0.04, 1.6),
    ];
    let mut worst = 0.0f64;
    for &(a, b, c, d) in &maps {
        let det: f64 = a * d - b * c;
        assert!(det.abs() > 1e-6);
        for j in 0..grid.n() {
            let y = phi.lift()[j];
            let den = c * y + d;
            let m1 = det / (den * den);
            let m2 = -2.0 * c * det / (den * den * den);
            let m3 = 6.0 * c * c * det / (den * den * den * den);
            let gx = m1 * fx.values()[j];
            let gxx = m2 * fx.values()[j] * fx.values()[j] + m1 * fxx.values()[j];
            let gxxx = m3 * fx.values()[j].powi(3)
                + 3.0 * m2 * fx.values()[j] * fxx.values()[j]
                + m1 * fxxx.values()[j];
            let s_comp = gxxx / gx - 1.5 * (gxx / gx) * (gxx / gx);
            worst = worst.max((s_comp - s_phi.values()[j]).abs());
        }
    }
    assert!(worst < 1e-6, "Mobius invariance deviation {worst:.3e}");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 2.0, "runtime {elapsed:.1} s exceeds 2 s");
    println!(
        "PASS criterion 5: S(id) = {s_id:.2e} < 1e-13, Mobius deviation {worst:.2e} < 1e-6 \
         on 10 maps ({elapsed:.2} s)"
    );
}

/// Criterion 6: n = 256, dt = 1e−3, u0 = sin x + 0.3 cos 2x, t ∈ [0, 1]:
/// relative energy drift < 1e−6 on CH/HS/KdV/dCH/dHS; KdV mass drift
/// < 1e−8; CH mean-momentum drift < 1e−8. Hopf is excluded: its solution
/// breaks at t* = 1/3 < 1 (criterion 7 covers it). Budget 60 s.
#[test]
fn criterion_06_conservation() {
    let start = Instant::now();
    let grid = PeriodicGrid::two_pi(256).unwrap();
    let u0 = smooth_ic(grid);

    let configs = [
        ("camassa-holm", EquationConfig::camassa_holm()),
        ("hunter-saxton", EquationConfig::hunter_saxton()),
        ("kdv", EquationConfig::kdv(1.0)),
        ("dispersive-ch", EquationConfig::dispersive_ch(1.0)),
        ("dispersive-hs", EquationConfig::dispersive_hs(1.0)),
    ];
    let mut lines = Vec::new();
    for (name, config) in configs {
        let mut opts = SolverOptions::recommended(&config, 1e-3);
        opts.store_every = 10;
        let traj = simulate(&config, &u0, 1.0, &opts).unwrap();
        assert!(traj.blowup.is_none(), "{name} lost finiteness");
        assert!((traj.final_time() - 1.0).abs() < 1e-9);

        let energies: Vec<f64> = traj.invariant_log.iter().map(|r| r.energy).collect();
        let e0 = energies[0];
        let drift = energies
            .iter()
            .map(|e| (e - e0).abs())
            .fold(0.0f64, f64::max)
            / e0.abs();
        assert!(drift < 1e-6, "{name} relative energy drift {drift:.3e}");
        lines.push(format!("{name} dE/E {drift:.1e}"));

        if name == "kdv" {
            let m0 = traj.invariant_log[0].mass;
            let mass_drift = traj
                .invariant_log
                .iter()
                .map(|r| (r.mass - m0).abs())
                .fold(0.0f64, f64::max);
            assert!(mass_drift < 1e-8, "kdv mass drift {mass_drift:.3e}");
            lines.push(format!("kdv dM {mass_drift:.1e}"));
        }
        if name == "camassa-holm" {
            let p0 = traj.invariant_log[0].momentum_mean;
            let mom_drift = traj
                .invariant_log
                .iter()
                .map(|r| (r.momentum_mean - p0).abs())
                .fold(0.0f64, f64::max);
            assert!(mom_drift < 1e-8, "CH mean-momentum drift {mom_drift:.3e}");
            lines.push(format!("ch dP {mom_drift:.1e}"));
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "runtime {elapsed:.1} s exceeds 60 s");
    println!("PASS criterion 6: {} ({elapsed:.2} s)", lines.join(", "));
}

/// Criterion 7: from u0 = sin x the simulated max |u_x| exceeds 10 by
/// t = 0.32; the characteristics estimator returns 1/3 ± 1e−12. Budget 10 s.
#[test]
fn criterion_07_hopf_blowup() {
    let start = Instant::now();
    let grid = PeriodicGrid::two_pi(512).unwrap();
    let u0 = GridField::from_fn(grid, f64::sin);

    let estimate = hopf_blowup_estimate(&u0);
    assert!(
        (estimate - 1.0 / 3.0).abs() <= 1e-12,
        "estimator {estimate} vs 1/3"
    );

    let config = EquationConfig::hopf();
    let mut opts = SolverOptions::new(1e-4);
    opts.hopf_guard = false;
    opts.store_every = 10;
    let traj = simulate(&config, &u0, 0.32, &opts).unwrap();
    assert!(traj.blowup.is_none(), "run must stay finite up to 0.32");
    let mut crossing = None;
    for (t, u) in traj.times.iter().zip(&traj.snapshots) {
        let slope = spectral_derivative(u, 1).max_norm();
        if slope > 10.0 {
            crossing = Some((*t, slope));
            break;
        }
    }
    let (t_cross, slope) = crossing.expect("max |u_x| never exceeded 10 by t = 0.32");
    assert!(t_cross <= 0.32);

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "runtime {elapsed:.1} s exceeds 10 s");
    println!(
        "PASS criterion 7: estimator = 1/3 {:+.1e}, max |u_x| = {slope:.1} > 10 at \
         t = {t_cross:.3} <= 0.32 ({elapsed:.2} s)",
        estimate - 1.0 / 3.0
    );
}

/// Criterion 8: every grid-compatible (equation, generator) pair matches
/// its transformed run to < 1e−4 at n = 256, dt = 1e−3, t_end = 0.5, and
/// the discrepancy shrinks ≥ 8× when dt is halved (or is already at the
/// 1e−10 floating-point floor). Budget 5 min.
#[test]
fn criterion_08_symmetry_harness_consistency() {
    let start = Instant::now();
    let grid = PeriodicGrid::two_pi(256).unwrap();
    let u0 = smooth_ic(grid);

    let configs = [
        EquationConfig::camassa_holm(),
        EquationConfig::hunter_saxton(),
        EquationConfig::kdv(1.0),
        EquationConfig::dispersive_ch(1.0),
        EquationConfig::dispersive_hs(1.0),
    ];
    let mut pairs = 0usize;
    let mut worst_coarse = 0.0f64;
    for config in configs {
        for spec in list_symmetries(&config).unwrap() {
            if !spec.grid_compatible {
                continue;
            }
            // Time translation needs δ ≤ 0 (and |δ| an exact step multiple
            // keeps the comparison grid-aligned at both resolutions).
            let delta = match spec.classification {
                "time translation" => -0.1,
                "space translation" => 1.0,
                "scaling" => 0.2,
                "Galilean boost" => 0.3,
                "generalised Galilean boost" => 0.5,
                other => panic!("unexpected classification {other}"),
            };
            let run = |dt: f64| {
                let opts = SolverOptions::recommended(&spec.equation, dt);
                symmetry_consistency_test(&spec, delta, &u0, 0.5, &opts)
                    .unwrap()
                    .discrepancy
            };
            let coarse = run(1e-3);
            let fine = run(5e-4);
            assert!(
                coarse < 1e-4,
                "{}/{}: discrepancy {coarse:.3e} at dt = 1e-3",
                spec.equation_name,
                spec.generator_id
            );
            assert!(
                fine < 1e-10 || fine * 8.0 <= coarse * 1.0001,
                "{}/{}: no 8x shrink ({coarse:.3e} -> {fine:.3e})",
                spec.equation_name,
                spec.generator_id
            );
            worst_coarse = worst_coarse.max(coarse);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 15, "expected 15 grid-compatible pairs");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "runtime {elapsed:.1} s exceeds 5 min");
    println!(
        "PASS criterion 8: 15/15 pairs, worst discrepancy {worst_coarse:.2e} < 1e-4, \
         all shrink >= 8x at dt/2 ({elapsed:.2} s)"
    );
}

/// Criterion 9: the c = 16 traveling wave u = c sech²(√c/2 (x − ct))
/// translates with speed c; shape error < 1e−3 at t = 0.1 (IFRK4,
/// dt = 2e−4). Budget 30 s.
#[test]
fn criterion_09_kdv_traveling_wave() {
    let start = Instant::now();
    let grid = PeriodicGrid::two_pi(256).unwrap();
    let c: f64 = 16.0;
    let b = c.sqrt() / 2.0; // profile u = c sech²(b (x − ct))
    let profile = |xi: f64| {
        let s = 1.0 / (b * xi).cosh();
        c * s * s
    };
    // Minimum-image offset so the periodized oracle follows the peak.
    let wrapped = |x: f64, center: f64| {
        let mut xi = x - center;
        while xi > PI {
            xi -= TAU;
        }
        while xi < -PI {
            xi += TAU;
        }
        xi
    };
    let u0 = GridField::from_fn(grid, |x| profile(wrapped(x, PI)));

    // Analytic validity: with t = tanh(bξ), s = sech²(bξ) the closed-form
    // derivatives give −c u' + 3uu' + u''' = 2abts[(c − 4b²) + s(12b² − 3a)],
    // zero exactly when a = 4b² = c. Checked pointwise with a = c. (A
    // spectral-derivative version would only measure the periodization
    // kink at the seam, k³-amplified, not the profile.)
    let mut ode_residual = 0.0f64;
    for k in 0..200 {
        let xi = -PI + TAU * (k as f64 + 0.5) / 200.0;
        let (th, s) = ((b * xi).tanh(), 1.0 / (b * xi).cosh().powi(2));
        let f = c * s;
        let fp = -2.0 * c * b * th * s;
        let fppp = 8.0 * c * b.powi(3) * th * s * (3.0 * s - 1.0);
        ode_residual = ode_residual.max((-c * fp + 3.0 * f * fp + fppp).abs());
    }
    assert!(
        ode_residual < 1e-9,
        "profile fails the traveling-wave ODE: residual {ode_residual:.3e}"
    );

    let config = EquationConfig::kdv(1.0);
    let mut opts = SolverOptions::recommended(&config, 2e-4);
    assert_eq!(opts.scheme, TimeScheme::IfRk4);
    opts.store_every = 50;
    let traj = simulate(&config, &u0, 0.1, &opts).unwrap();
    assert!(traj.blowup.is_none());
    let u_end = traj.snapshots.last().unwrap();
    let center = PI + c * 0.1;
    let mut shape_error = 0.0f64;
    for (j, &x) in grid.points().iter().enumerate() {
        shape_error = shape_error.max((u_end.values()[j] - profile(wrapped(x, center))).abs());
    }
    assert!(shape_error < 1e-3, "shape error {shape_error:.3e} at t = 0.1");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "runtime {elapsed:.1} s exceeds 30 s");
    println!(
        "PASS criterion 9: sech^2 wave, speed 16, shape error {shape_error:.2e} < 1e-3 \
         (ODE residual {ode_residual:.1e}) ({elapsed:.2} s)"
    );
}

/// Criterion 10: transform round-trip, spectral derivative on trig
/// polynomials, and off-grid interpolation all < 1e−12 across
/// n ∈ {8, …, 512} including non-power-of-two sizes. Budget 5 s.
#[test]
fn criterion_10_spectral_substrate() {
    let start = Instant::now();
    let sizes = [8usize, 12, 16, 24, 32, 48, 64, 96, 100, 128, 192, 256, 384, 512];
    let mut worst_round = 0.0f64;
    let mut worst_deriv = 0.0f64;
    let mut worst_interp = 0.0f64;
    for &n in &sizes {
        let grid = PeriodicGrid::two_pi(n).unwrap();
        // Round-trip on a generic smooth (non-band-limited) field.
        let f = GridField::from_fn(grid, |x| (x.sin()).exp());
        let back = synthesize(&analyze(&f));
        worst_round = worst_round.max((&back - &f).max_norm());

        // Derivative of a trig polynomial resolvable for every n ≥ 8.
        let g = GridField::from_fn(grid, |x| (3.0 * x).sin() + 0.5 * (2.0 * x).cos());
        let g_x = spectral_derivative(&g, 1);
        let oracle = GridField::from_fn(grid, |x| 3.0 * (3.0 * x).cos() - (2.0 * x).sin());
        worst_deriv = worst_deriv.max((&g_x - &oracle).max_norm());

        // Off-grid interpolation of the same trig polynomial.
        let g_hat = analyze(&g);
        for k in 0..7 {
            let x = 0.137 + 0.83 * k as f64;
            let exact = (3.0 * x).sin() + 0.5 * (2.0 * x).cos();
            worst_interp = worst_interp.max((interpolate_spectrum(&g_hat, x) - exact).abs());
        }
    }
    assert!(worst_round < 1e-12, "round-trip {worst_round:.3e}");
    assert!(worst_deriv < 1e-12, "derivative {worst_deriv:.3e}");
    assert!(worst_interp < 1e-12, "interpolation {worst_interp:.3e}");

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "runtime {elapsed:.1} s exceeds 5 s");
    println!(
        "PASS criterion 10: round-trip {worst_round:.2e}, derivative {worst_deriv:.2e}, \
         interpolation {worst_interp:.2e}, all < 1e-12 over n in 8..=512 ({elapsed:.2} s)"
    );
}
