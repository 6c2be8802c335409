//! Randomized property suites behind `algebra-check` / `cocycle-check`.
//!
//! Each suite evaluates a fixed set of operator identities on seeded
//! random samples and reports the worst residual per identity. The seed
//! comes from `GEOFLOW_SEED` (decimal u64) so failures replay exactly;
//! the default seed is fixed, making reports reproducible by default.
//!
//! Tolerances are the verified ceilings of the spectral discretization:
//! quadrature identities sit near 1e−12…1e−10 and are checked at 1e−10 /
//! 1e−9; anything routed through diffeomorphism composition (trig
//! interpolation + Newton inversion) is checked at 1e−7.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use geoflow_core::jet::{closure_check, equation, generators, hs_family, invariance_pairs, JetPoly};
use geoflow_core::lie::{
    ad, ad_star, adjoint_group_action, bott_thurston, coadjoint_group_action, gelfand_fuchs,
    pairing, vir_bracket, CircleDiffeo, VirasoroMomentum, VirasoroVector,
};
use geoflow_core::spectral::{GridField, PeriodicGrid};

use crate::fault::Fault;
use crate::report::{AlgebraReport, CheckResult};

/// Valid suite names, in help order.
pub const SUITE_NAMES: [&str; 5] = [
    "diffeo-actions",
    "virasoro",
    "cocycles",
    "invariance",
    "closure",
];

/// Default seed for the property suites (override with `GEOFLOW_SEED`).
pub const DEFAULT_SEED: u64 = 0x47656F66;

/// Reads `GEOFLOW_SEED` (decimal u64) or falls back to the default.
pub fn seed_from_env() -> Result<u64, Fault> {
    match std::env::var("GEOFLOW_SEED") {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            Fault::usage(
                "invalid-option",
                format!("GEOFLOW_SEED must be a decimal u64, got '{text}'"),
            )
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Sample sizes for the cocycle suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CocycleOptions {
    pub n: usize,
    pub gf_samples: usize,
    pub bt_samples: usize,
}

impl Default for CocycleOptions {
    fn default() -> Self {
        CocycleOptions {
            n: 128,
            gf_samples: 50,
            bt_samples: 20,
        }
    }
}

/// Dispatches a suite by name with default sample sizes.
pub fn run_suite(name: &str, seed: u64) -> Result<AlgebraReport, Fault> {
    match name {
        "diffeo-actions" => diffeo_actions_suite(seed),
        "virasoro" => virasoro_suite(seed),
        "cocycles" => cocycle_suite(seed, &CocycleOptions::default()),
        "invariance" => invariance_suite(),
        "closure" => closure_suite(),
        other => Err(Fault::usage(
            "unknown-suite",
            format!(
                "unknown suite '{other}'; valid suites: {}",
                SUITE_NAMES.join(", ")
            ),
        )),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random band-limited field: Σ_{k≤max_mode} a_k cos(kx) + b_k sin(kx),
/// coefficients uniform in [−1, 1).
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

/// Random diffeomorphism `x + c·sin(x + d)` with `|c| ≤ max_c`.
fn random_diffeo(
    grid: PeriodicGrid,
    rng: &mut ChaCha8Rng,
    max_c: f64,
) -> Result<CircleDiffeo, Fault> {
    let c = max_c * rng.random_range(-1.0..1.0);
    let d = rng.random_range(0.0..std::f64::consts::TAU);
    Ok(CircleDiffeo::from_map(grid, move |x| x + c * (x + d).sin())?)
}

struct Recorder {
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: Vec::new() }
    }

    fn record(&mut self, name: &str, residual: f64, tolerance: f64, samples: usize) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed: residual.is_finite() && residual <= tolerance,
            residual,
            tolerance,
            samples,
        });
    }

    /// For exact (rational-arithmetic) checks: residual 0 or 1.
    fn record_exact(&mut self, name: &str, passed: bool, samples: usize) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            residual: if passed { 0.0 } else { 1.0 },
            tolerance: 0.0,
            samples,
        });
    }
}

/// Group actions of Diff⁺(S¹): the pushforward representation property and
/// its duality with the momentum pullback.
pub fn diffeo_actions_suite(seed: u64) -> Result<AlgebraReport, Fault> {
    let mut rng = rng(seed);
    let grid = PeriodicGrid::two_pi(128)?;
    let mut rec = Recorder::new();

    // Identity fixes fields and momenta.
    let mut worst = 0.0f64;
    let id = CircleDiffeo::identity(grid);
    for _ in 0..10 {
        let u = random_trig(grid, &mut rng, 4);
        worst = worst.max((&adjoint_group_action(&id, &u)? - &u).max_norm());
        let mu = VirasoroMomentum::new(u.clone(), 0.0);
        worst = worst.max((&coadjoint_group_action(&id, &mu)?.m - &u).max_norm());
    }
    rec.record("identity-acts-trivially", worst, 1e-10, 10);

    // Rotations act by translation: Ad_rot u = u(· − c).
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let c = rng.random_range(-3.0..3.0);
        let rot = CircleDiffeo::rotation(grid, c)?;
        let u = random_trig(grid, &mut rng, 4);
        let moved = adjoint_group_action(&rot, &u)?;
        let oracle = geoflow_core::spectral::phase_shift(&u, c);
        worst = worst.max((&moved - &oracle).max_norm());
    }
    rec.record("rotation-translates-fields", worst, 1e-9, 10);

    // Representation property: Ad_{φ∘ψ} = Ad_φ ∘ Ad_ψ.
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let phi = random_diffeo(grid, &mut rng, 0.25)?;
        let psi = random_diffeo(grid, &mut rng, 0.25)?;
        let v = random_trig(grid, &mut rng, 4);
        let composed = adjoint_group_action(&phi.compose(&psi)?, &v)?;
        let chained = adjoint_group_action(&phi, &adjoint_group_action(&psi, &v)?)?;
        worst = worst.max((&composed - &chained).max_norm());
    }
    rec.record("pushforward-representation", worst, 1e-7, 10);

    // Duality: ⟨coadjoint(φ, μ), X⟩ = ⟨μ, adjoint(φ, X)⟩ at ε = 0.
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let phi = random_diffeo(grid, &mut rng, 0.25)?;
        let mu = random_trig(grid, &mut rng, 4);
        let x_vec = random_trig(grid, &mut rng, 4);
        let lhs = pairing(
            &coadjoint_group_action(&phi, &VirasoroMomentum::new(mu.clone(), 0.0))?.m,
            &x_vec,
        )?;
        let rhs = pairing(&mu, &adjoint_group_action(&phi, &x_vec)?)?;
        worst = worst.max((lhs - rhs).abs());
    }
    rec.record("pullback-pushforward-duality", worst, 1e-7, 10);

    // Inversion: φ(φ⁻¹(x)) = x on the grid.
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let phi = random_diffeo(grid, &mut rng, 0.3)?;
        let inv = phi.inverse()?;
        for &x in grid.points().iter().step_by(8) {
            worst = worst.max((phi.eval(inv.eval(x)) - x).abs());
        }
    }
    rec.record("inverse-roundtrip", worst, 1e-8, 10);

    Ok(AlgebraReport::new("diffeo-actions", seed, rec.checks))
}

/// Virasoro algebra: coadjoint duality, antisymmetry, Jacobi identity.
pub fn virasoro_suite(seed: u64) -> Result<AlgebraReport, Fault> {
    let mut rng = rng(seed);
    let grid = PeriodicGrid::two_pi(128)?;
    let mut rec = Recorder::new();

    // ⟨ad*(u, m), v⟩ + ⟨m, ad(u, v)⟩ = 0.
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let u = random_trig(grid, &mut rng, 5);
        let m = random_trig(grid, &mut rng, 5);
        let v = random_trig(grid, &mut rng, 5);
        let lhs = pairing(&ad_star(&u, &m)?, &v)?;
        let rhs = pairing(&m, &ad(&u, &v)?)?;
        worst = worst.max((lhs + rhs).abs());
    }
    rec.record("coadjoint-duality", worst, 1e-10, 50);

    // [(u,a),(v,b)] + [(v,b),(u,a)] = 0 in both slots.
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = VirasoroVector::new(random_trig(grid, &mut rng, 5), rng.random_range(-1.0..1.0));
        let y = VirasoroVector::new(random_trig(grid, &mut rng, 5), rng.random_range(-1.0..1.0));
        let fwd = vir_bracket(&x, &y)?;
        let bwd = vir_bracket(&y, &x)?;
        worst = worst.max((&fwd.u + &bwd.u).max_norm()).max((fwd.a + bwd.a).abs());
    }
    rec.record("bracket-antisymmetry", worst, 1e-10, 20);

    // Cyclic Jacobi sum vanishes in the vector and central slots.
    let mut worst_u = 0.0f64;
    let mut worst_a = 0.0f64;
    for _ in 0..50 {
        let x = VirasoroVector::new(random_trig(grid, &mut rng, 5), rng.random_range(-1.0..1.0));
        let y = VirasoroVector::new(random_trig(grid, &mut rng, 5), rng.random_range(-1.0..1.0));
        let z = VirasoroVector::new(random_trig(grid, &mut rng, 5), rng.random_range(-1.0..1.0));
        let t1 = vir_bracket(&x, &vir_bracket(&y, &z)?)?;
        let t2 = vir_bracket(&z, &vir_bracket(&x, &y)?)?;
        let t3 = vir_bracket(&y, &vir_bracket(&z, &x)?)?;
        worst_u = worst_u.max((&(&t1.u + &t2.u) + &t3.u).max_norm());
        worst_a = worst_a.max((t1.a + t2.a + t3.a).abs());
    }
    rec.record("jacobi-vector-part", worst_u, 1e-9, 50);
    rec.record("jacobi-central-part", worst_a, 1e-9, 50);

    Ok(AlgebraReport::new("virasoro", seed, rec.checks))
}

/// The two cocycles: Gel'fand–Fuchs (algebra level) and Bott–Thurston
/// (group level).
pub fn cocycle_suite(seed: u64, opts: &CocycleOptions) -> Result<AlgebraReport, Fault> {
    let mut rng = rng(seed);
    let grid = PeriodicGrid::two_pi(opts.n)?;
    let mut rec = Recorder::new();

    // ω([u,v], w) + ω([w,u], v) + ω([v,w], u) = 0.
    let mut worst = 0.0f64;
    for _ in 0..opts.gf_samples {
        let u = random_trig(grid, &mut rng, 5);
        let v = random_trig(grid, &mut rng, 5);
        let w = random_trig(grid, &mut rng, 5);
        let r = gelfand_fuchs(&ad(&u, &v)?, &w)?
            + gelfand_fuchs(&ad(&w, &u)?, &v)?
            + gelfand_fuchs(&ad(&v, &w)?, &u)?;
        worst = worst.max(r.abs());
    }
    rec.record("gelfand-fuchs-2-cocycle", worst, 1e-9, opts.gf_samples);

    // ω(u, v) + ω(v, u) = 0.
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let u = random_trig(grid, &mut rng, 5);
        let v = random_trig(grid, &mut rng, 5);
        worst = worst.max((gelfand_fuchs(&u, &v)? + gelfand_fuchs(&v, &u)?).abs());
    }
    rec.record("gelfand-fuchs-antisymmetry", worst, 1e-10, 20);

    // B(φ∘ζ, ψ) + B(φ, ζ) = B(φ, ζ∘ψ) + B(ζ, ψ).
    let mut worst = 0.0f64;
    for _ in 0..opts.bt_samples {
        let phi = random_diffeo(grid, &mut rng, 0.3)?;
        let zeta = random_diffeo(grid, &mut rng, 0.3)?;
        let psi = random_diffeo(grid, &mut rng, 0.3)?;
        let lhs = bott_thurston(&phi.compose(&zeta)?, &psi)? + bott_thurston(&phi, &zeta)?;
        let rhs = bott_thurston(&phi, &zeta.compose(&psi)?)? + bott_thurston(&zeta, &psi)?;
        worst = worst.max((lhs - rhs).abs());
    }
    rec.record("bott-thurston-2-cocycle", worst, 1e-7, opts.bt_samples);

    Ok(AlgebraReport::new("cocycles", seed, rec.checks))
}

/// The 18 exact-zero invariance checks (CH 3 + HS 4 + KdV 4 + dCH 3 +
/// dHS 4), evaluated in rational arithmetic.
pub fn invariance_suite() -> Result<AlgebraReport, Fault> {
    let mut rec = Recorder::new();
    for (eq, info) in invariance_pairs() {
        let pde = equation(eq)?;
        let report = pde.invariance_check(&info.field)?;
        rec.record_exact(
            &format!("{eq}/{}", info.label),
            report.holds && report.remainder.is_zero(),
            1,
        );
    }
    Ok(AlgebraReport::new("invariance", 0, rec.checks))
}

/// Commutator closure of the five cataloged algebras, plus the
/// non-closure witness for the quadratic time-reparameterization family.
pub fn closure_suite() -> Result<AlgebraReport, Fault> {
    let mut rec = Recorder::new();
    for (name, dim) in [
        ("camassa-holm", 3usize),
        ("hunter-saxton", 4),
        ("kdv", 4),
        ("dispersive-ch", 3),
        ("dispersive-hs", 4),
    ] {
        let fields: Vec<_> = generators(name)?.into_iter().map(|g| g.field).collect();
        let report = closure_check(&fields)?;
        rec.record_exact(
            &format!("{name}/closed-dimension-{dim}"),
            report.closed && report.dimension == dim,
            1,
        );
    }
    // F₁(t) = t² must leave the span: [∂t, t²∂t + 2tx∂x + 2x∂u] ∉ span.
    let t_sq = &JetPoly::var(geoflow_core::jet::Var::T) * &JetPoly::var(geoflow_core::jet::Var::T);
    let family = hs_family(&t_sq, &JetPoly::one(), false)?;
    let report = closure_check(&family)?;
    rec.record_exact(
        "hs-family/t^2-non-closure-witnessed",
        !report.closed && report.witness.is_some(),
        1,
    );
    Ok(AlgebraReport::new("closure", 0, rec.checks))
}
