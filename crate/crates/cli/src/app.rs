//! Argument parsing and subcommand dispatch for the `geoflow` binary.
//!
//! Every runner returns `Result<(), Fault>`; `main` prints the fault's
//! single-line diagnostic to stderr and exits with its code (2 for
//! usage/configuration problems, 1 for failed checks). Success prints
//! human-readable progress to stdout and exits 0.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use geoflow_core::geodesic::simulate;
use geoflow_core::jet::{self, GeneratorInfo};
use geoflow_core::symmetry::{symmetry_consistency_test, symmetry_spec};

use crate::config::RunConfig;
use crate::fault::Fault;
use crate::report::{
    write_json, write_trajectory_csv, AlgebraReport, CheckResult, ResidualSample, RunSummary,
    SymmetrySummary,
};
use crate::suites::{self, CocycleOptions};

#[derive(Parser, Debug)]
#[command(
    name = "geoflow",
    version,
    about = "Geodesic flow on Diff+(S1) and the Virasoro group: \
             six integrable PDEs, one-parameter symmetry transforms, and \
             exact Lie-algebraic checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integrate one equation; writes <prefix>.traj.csv and <prefix>.summary.json
    Simulate(SimulateArgs),
    /// Transform a run by a one-parameter symmetry and compare against a direct run
    SymmetryCheck(SymmetryCheckArgs),
    /// Exact-rational check that a generator's prolongation annihilates the equation
    InvarianceCheck(InvarianceCheckArgs),
    /// Run a named property suite (diffeo-actions, virasoro, cocycles, invariance, closure)
    AlgebraCheck(AlgebraCheckArgs),
    /// Cocycle identities with configurable sample counts
    CocycleCheck(CocycleCheckArgs),
}

/// Numeric options shared by the simulation-backed subcommands.
#[derive(Args, Debug)]
pub struct NumericsArgs {
    /// Number of grid points (any n >= 4; powers of two are fastest)
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// Circumference of the periodic domain
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    pub length: f64,
    /// Time step
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Time scheme: auto, rk4, or ifrk4
    #[arg(long, default_value = "auto")]
    pub scheme: String,
    /// Dispersion coefficient (kdv, dispersive-ch, dispersive-hs)
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Equation: hopf | ch | hs | kdv | dch | dhs (long names accepted)
    #[arg(long)]
    pub equation: String,
    /// Initial condition u(0, x), e.g. "sin(x) + 0.3*cos(2*x)"
    #[arg(long)]
    pub ic: String,
    #[command(flatten)]
    pub numerics: NumericsArgs,
    /// Integration horizon
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
    /// Store every k-th step
    #[arg(long, default_value_t = 1)]
    pub store_every: usize,
    /// Prefix for the emitted files
    #[arg(long, default_value = "geoflow")]
    pub output_prefix: String,
}

#[derive(Args, Debug)]
pub struct SymmetryCheckArgs {
    /// Equation: ch | hs | kdv | dch | dhs (hopf is excluded)
    #[arg(long)]
    pub equation: String,
    /// Generator label from the equation's block: v1, v2, ...
    #[arg(long)]
    pub generator: String,
    /// Group parameter of the one-parameter symmetry
    #[arg(long, alias = "epsilon", allow_hyphen_values = true)]
    pub delta: f64,
    /// Maximum allowed discrepancy max_t |B - transform(A)|
    #[arg(long, default_value_t = 1e-4)]
    pub threshold: f64,
    /// Initial condition for the source run
    #[arg(long, default_value = "sin(x) + 0.3*cos(2*x)")]
    pub ic: String,
    #[command(flatten)]
    pub numerics: NumericsArgs,
    /// Horizon of the transformed run
    #[arg(long, default_value_t = 0.5)]
    pub t_end: f64,
    /// Prefix for <prefix>.report.json
    #[arg(long, default_value = "geoflow")]
    pub output_prefix: String,
}

#[derive(Args, Debug)]
pub struct InvarianceCheckArgs {
    /// Restrict to one equation's cataloged generators
    #[arg(long)]
    pub equation: Option<String>,
    /// Restrict further to one generator label (requires --equation)
    #[arg(long)]
    pub generator: Option<String>,
    /// Custom PDE in jet notation, e.g. "u_t + 3*u*u_x" or "u_t = -3*u*u_x"
    #[arg(long)]
    pub pde: Option<String>,
    /// Custom generator, e.g. "t*d_t + x*d_x" (requires --pde)
    #[arg(long)]
    pub vector: Option<String>,
    /// Prefix for <prefix>.report.json
    #[arg(long, default_value = "geoflow")]
    pub output_prefix: String,
}

#[derive(Args, Debug)]
pub struct AlgebraCheckArgs {
    /// Suite: diffeo-actions | virasoro | cocycles | invariance | closure
    pub suite: String,
    /// Prefix for <prefix>.report.json
    #[arg(long, default_value = "geoflow")]
    pub output_prefix: String,
}

#[derive(Args, Debug)]
pub struct CocycleCheckArgs {
    /// Grid size for the quadratures
    #[arg(long, default_value_t = 128)]
    pub n: usize,
    /// Gel'fand-Fuchs identity sample triples
    #[arg(long, default_value_t = 50)]
    pub gf_samples: usize,
    /// Bott-Thurston identity sample triples
    #[arg(long, default_value_t = 20)]
    pub bt_samples: usize,
    /// Prefix for <prefix>.report.json
    #[arg(long, default_value = "geoflow")]
    pub output_prefix: String,
}

/// Dispatches a parsed command line. `Ok(())` means exit 0.
pub fn run(cli: Cli) -> Result<(), Fault> {
    match cli.command {
        Command::Simulate(args) => run_simulate(args),
        Command::SymmetryCheck(args) => run_symmetry_check(args),
        Command::InvarianceCheck(args) => run_invariance_check(args),
        Command::AlgebraCheck(args) => run_algebra_check(args),
        Command::CocycleCheck(args) => run_cocycle_check(args),
    }
}

fn out_path(prefix: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}.{suffix}"))
}

fn run_config(equation: &str, num: &NumericsArgs, t_end: f64, store_every: usize, ic: &str) -> RunConfig {
    RunConfig {
        equation: equation.to_string(),
        n: num.n,
        length: num.length,
        dt: num.dt,
        t_end,
        scheme: num.scheme.clone(),
        eps: num.eps,
        store_every,
        initial_condition: ic.to_string(),
    }
}

pub fn run_simulate(args: SimulateArgs) -> Result<(), Fault> {
    let cfg = run_config(
        &args.equation,
        &args.numerics,
        args.t_end,
        args.store_every,
        &args.ic,
    );
    let equation = cfg.equation_config()?;
    let u0 = cfg.initial_field()?;
    let opts = cfg.solver_options(&equation)?;

    let start = Instant::now();
    let traj = simulate(&equation, &u0, cfg.t_end, &opts)?;
    let wall = start.elapsed().as_secs_f64();

    let csv_path = out_path(&args.output_prefix, "traj.csv");
    let json_path = out_path(&args.output_prefix, "summary.json");
    write_trajectory_csv(&csv_path, &traj)?;
    let summary = RunSummary::new(cfg, &traj, wall);
    write_json(&json_path, &summary)?;

    if let Some(tr) = &traj.truncation {
        eprintln!(
            "warning: blow-up estimated at t = {:.6}; run truncated at t = {:.6} \
             (requested t_end = {})",
            tr.blowup_estimate, tr.stopped_at, tr.requested_t_end
        );
    }
    if let Some(t) = traj.blowup {
        return Err(Fault::failure(
            "blow-up",
            format!("solution lost finiteness at t = {t:.6}; partial results written to {}", csv_path.display()),
        ));
    }
    println!(
        "wrote {} and {} ({} stored states, final t = {:.6}, wall {:.2}s)",
        csv_path.display(),
        json_path.display(),
        traj.len(),
        traj.final_time(),
        wall
    );
    Ok(())
}

pub fn run_symmetry_check(args: SymmetryCheckArgs) -> Result<(), Fault> {
    let cfg = run_config(&args.equation, &args.numerics, args.t_end, 1, &args.ic);
    let equation = cfg.equation_config()?;
    let u0 = cfg.initial_field()?;
    let opts = cfg.solver_options(&equation)?;
    let spec = symmetry_spec(&equation, &args.generator)?;
    let report = symmetry_consistency_test(&spec, args.delta, &u0, cfg.t_end, &opts)?;

    let passed = report.discrepancy.is_finite() && report.discrepancy <= args.threshold;
    let to_samples = |v: &[(f64, f64)]| {
        v.iter()
            .map(|&(t, residual)| ResidualSample { t, residual })
            .collect()
    };
    let summary = SymmetrySummary {
        equation: report.equation.to_string(),
        generator: report.generator.to_string(),
        classification: report.classification.to_string(),
        delta: report.delta,
        threshold: args.threshold,
        compared: report.compared,
        discrepancy: report.discrepancy,
        residual_samples: to_samples(&report.residual_samples),
        residual_reference: to_samples(&report.residual_reference),
        passed,
    };
    write_json(&out_path(&args.output_prefix, "report.json"), &summary)?;

    println!(
        "{} {}/{} ({}) delta = {}: discrepancy {:.6e} over {} states, threshold {:.1e}",
        if passed { "ok" } else { "FAIL" },
        report.equation,
        report.generator,
        report.classification,
        report.delta,
        report.discrepancy,
        report.compared,
        args.threshold
    );
    if passed {
        Ok(())
    } else {
        Err(Fault::failure(
            "discrepancy-exceeded",
            format!(
                "symmetry discrepancy {:.6e} exceeds threshold {:.1e} for {}/{}",
                report.discrepancy, args.threshold, report.equation, report.generator
            ),
        ))
    }
}

pub fn run_invariance_check(args: InvarianceCheckArgs) -> Result<(), Fault> {
    let custom = args.pde.is_some() || args.vector.is_some();
    if custom && (args.equation.is_some() || args.generator.is_some()) {
        return Err(Fault::usage(
            "invalid-option",
            "give either --equation/--generator (catalog mode) or --pde/--vector (custom mode), not both",
        ));
    }
    if custom && (args.pde.is_none() || args.vector.is_none()) {
        return Err(Fault::usage(
            "invalid-option",
            "--pde and --vector must be given together",
        ));
    }
    if args.generator.is_some() && args.equation.is_none() {
        return Err(Fault::usage(
            "invalid-option",
            "--generator requires --equation",
        ));
    }

    let mut checks: Vec<CheckResult> = Vec::new();
    if custom {
        let form = jet::parse_pde(args.pde.as_deref().expect("checked above"))?;
        let field = jet::parse_vector_field(args.vector.as_deref().expect("checked above"))?;
        let report = form.invariance_check(&field)?;
        push_invariance_line(&mut checks, "custom/field", &report);
    } else {
        let pairs: Vec<(String, GeneratorInfo)> = match &args.equation {
            None => jet::invariance_pairs()
                .into_iter()
                .map(|(eq, info)| (eq.to_string(), info))
                .collect(),
            Some(eq) => {
                let all = jet::generators(eq)?;
                let name = jet::canonical_name(eq).expect("generators() validated the name");
                let selected: Vec<_> = all
                    .into_iter()
                    .filter(|g| args.generator.as_deref().is_none_or(|want| g.label == want))
                    .map(|g| (name.to_string(), g))
                    .collect();
                if selected.is_empty() {
                    return Err(Fault::usage(
                        "unknown-generator",
                        format!(
                            "equation {name} has no generator '{}'",
                            args.generator.as_deref().unwrap_or("")
                        ),
                    ));
                }
                selected
            }
        };
        for (eq, info) in pairs {
            let form = jet::equation(&eq)?;
            let report = form.invariance_check(&info.field)?;
            push_invariance_line(&mut checks, &format!("{eq}/{}", info.label), &report);
        }
    }

    let total = checks.len();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let report = AlgebraReport::new("invariance-check", 0, checks);
    write_json(&out_path(&args.output_prefix, "report.json"), &report)?;
    if failed > 0 {
        Err(Fault::failure(
            "invariance-failed",
            format!("{failed} of {total} generators left a nonzero remainder"),
        ))
    } else {
        println!("{total} of {total} invariance checks reduce to the exact zero polynomial");
        Ok(())
    }
}

fn push_invariance_line(checks: &mut Vec<CheckResult>, name: &str, report: &jet::InvarianceReport) {
    let passed = report.holds && report.remainder.is_zero();
    if passed {
        println!("ok {name}: remainder = 0");
    } else {
        println!("FAIL {name}: remainder = {}", report.remainder);
    }
    checks.push(CheckResult {
        name: name.to_string(),
        passed,
        residual: if passed { 0.0 } else { 1.0 },
        tolerance: 0.0,
        samples: 1,
    });
}

fn print_suite(report: &AlgebraReport) {
    for check in &report.checks {
        let verdict = if check.passed { "ok" } else { "FAIL" };
        if check.tolerance == 0.0 {
            println!(
                "{verdict} {}/{}: {}",
                report.suite,
                check.name,
                if check.passed { "exact" } else { "violated" }
            );
        } else {
            println!(
                "{verdict} {}/{}: residual {:.3e} vs tolerance {:.1e} ({} samples)",
                report.suite, check.name, check.residual, check.tolerance, check.samples
            );
        }
    }
}

fn finish_suite(report: &AlgebraReport, prefix: &str) -> Result<(), Fault> {
    print_suite(report);
    write_json(&out_path(prefix, "report.json"), report)?;
    if report.passed {
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        Err(Fault::failure(
            "suite-failed",
            format!("{failed} of {} checks failed in suite {}", report.checks.len(), report.suite),
        ))
    }
}

pub fn run_algebra_check(args: AlgebraCheckArgs) -> Result<(), Fault> {
    let seed = suites::seed_from_env()?;
    let report = suites::run_suite(&args.suite, seed)?;
    finish_suite(&report, &args.output_prefix)
}

pub fn run_cocycle_check(args: CocycleCheckArgs) -> Result<(), Fault> {
    let seed = suites::seed_from_env()?;
    let opts = CocycleOptions {
        n: args.n,
        gf_samples: args.gf_samples,
        bt_samples: args.bt_samples,
    };
    let report = suites::cocycle_suite(seed, &opts)?;
    finish_suite(&report, &args.output_prefix)
}
