//! File formats: trajectory CSV and the JSON summaries/reports.
//!
//! Trajectory CSV schema: header `t,x0,x1,…,x{n−1}`, one row per stored
//! time, every value printed with 17 significant digits (`{:.16e}`), which
//! round-trips f64 bit-exactly.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use geoflow_core::geodesic::{InvariantRecord, Trajectory, Truncation};
use geoflow_core::spectral::{GridField, PeriodicGrid};

use crate::config::RunConfig;
use crate::fault::Fault;

fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `t,x0,…,x{n−1}` rows for every stored snapshot.
pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<(), Fault> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    let n = traj.snapshots.first().map_or(0, |s| s.values().len());
    let mut header = Vec::with_capacity(n + 1);
    header.push("t".to_string());
    for i in 0..n {
        header.push(format!("x{i}"));
    }
    w.write_record(&header)?;
    for (t, snap) in traj.times.iter().zip(traj.snapshots.iter()) {
        let mut row = Vec::with_capacity(n + 1);
        row.push(sig17(*t));
        row.extend(snap.values().iter().map(|&v| sig17(v)));
        w.write_record(&row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads a trajectory CSV back into times and per-row sample vectors.
pub fn read_trajectory_csv(path: &Path) -> Result<(Vec<f64>, Vec<Vec<f64>>), Fault> {
    let mut r = csv::Reader::from_reader(BufReader::new(File::open(path)?));
    let mut times = Vec::new();
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let mut it = record.iter();
        let t: f64 = it
            .next()
            .ok_or_else(|| Fault::failure("io", "empty CSV row"))?
            .parse()
            .map_err(|e| Fault::failure("io", format!("bad time value: {e}")))?;
        let vals: Result<Vec<f64>, _> = it.map(str::parse::<f64>).collect();
        times.push(t);
        rows.push(vals.map_err(|e| Fault::failure("io", format!("bad sample value: {e}")))?);
    }
    Ok((times, rows))
}

/// Rebuilds grid fields from CSV rows (for round-trip checks and
/// downstream tooling).
pub fn rows_to_fields(
    rows: &[Vec<f64>],
    length: f64,
) -> Result<Vec<GridField>, Fault> {
    rows.iter()
        .map(|row| {
            let grid = PeriodicGrid::new(row.len(), length)?;
            Ok(GridField::from_values(grid, row.clone())?)
        })
        .collect()
}

/// One invariant sample in the summary JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantSample {
    pub t: f64,
    pub energy: f64,
    pub momentum_mean: f64,
    pub mass: f64,
    pub l2: f64,
}

impl InvariantSample {
    pub fn new(t: f64, rec: &InvariantRecord) -> Self {
        InvariantSample {
            t,
            energy: rec.energy,
            momentum_mean: rec.momentum_mean,
            mass: rec.mass,
            l2: rec.l2,
        }
    }
}

/// Truncation note mirrored from the solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationNote {
    pub requested_t_end: f64,
    pub blowup_estimate: f64,
    pub stopped_at: f64,
}

impl From<&Truncation> for TruncationNote {
    fn from(t: &Truncation) -> Self {
        TruncationNote {
            requested_t_end: t.requested_t_end,
            blowup_estimate: t.blowup_estimate,
            stopped_at: t.stopped_at,
        }
    }
}

/// `<prefix>.summary.json` for a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub config: RunConfig,
    /// Invariant series over the stored times, up to the last finite
    /// record (JSON has no NaN; a blown-up tail is summarized by `blowup`).
    pub invariants: Vec<InvariantSample>,
    /// Time at which the solution lost finiteness, if it did.
    pub blowup: Option<f64>,
    /// Present when the blow-up guard shortened the run.
    pub truncation: Option<TruncationNote>,
    pub wall_time_s: f64,
}

impl RunSummary {
    pub fn new(config: RunConfig, traj: &Trajectory, wall_time_s: f64) -> Self {
        RunSummary {
            config,
            invariants: traj
                .times
                .iter()
                .zip(traj.invariant_log.iter())
                .map(|(t, rec)| InvariantSample::new(*t, rec))
                .take_while(|s| {
                    s.energy.is_finite()
                        && s.momentum_mean.is_finite()
                        && s.mass.is_finite()
                        && s.l2.is_finite()
                })
                .collect(),
            blowup: traj.blowup,
            truncation: traj.truncation.as_ref().map(TruncationNote::from),
            wall_time_s,
        }
    }
}

/// One residual probe of a transformed trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSample {
    pub t: f64,
    pub residual: f64,
}

/// `<prefix>.report.json` for `symmetry-check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetrySummary {
    pub equation: String,
    pub generator: String,
    pub classification: String,
    pub delta: f64,
    pub threshold: f64,
    /// Stored times compared between re-simulation and transform.
    pub compared: usize,
    pub discrepancy: f64,
    pub residual_samples: Vec<ResidualSample>,
    pub residual_reference: Vec<ResidualSample>,
    pub passed: bool,
}

/// One property check inside an algebra report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst measured residual across the check's samples.
    pub residual: f64,
    pub tolerance: f64,
    pub samples: usize,
}

/// `<prefix>.report.json` for `algebra-check` / `cocycle-check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl AlgebraReport {
    pub fn new(suite: impl Into<String>, seed: u64, checks: Vec<CheckResult>) -> Self {
        AlgebraReport {
            suite: suite.into(),
            seed,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Fault> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Fault> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use geoflow_core::geodesic::{simulate, EquationConfig, SolverOptions};

    #[test]
    fn csv_round_trips_bit_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.traj.csv");
        let config = EquationConfig::kdv(1.0);
        let grid = PeriodicGrid::two_pi(32).unwrap();
        let u0 = GridField::from_fn(grid, |x| x.sin() + 0.3 * (2.0 * x).cos());
        let opts = SolverOptions::recommended(&config, 1e-3);
        let traj = simulate(&config, &u0, 0.01, &opts).unwrap();

        write_trajectory_csv(&path, &traj).unwrap();
        let (times, rows) = read_trajectory_csv(&path).unwrap();
        assert_eq!(times.len(), traj.len());
        for (a, b) in times.iter().zip(traj.times.iter()) {
            assert_eq!(a, b, "times round-trip exactly");
        }
        for (row, snap) in rows.iter().zip(traj.snapshots.iter()) {
            assert_eq!(row.len(), 32);
            for (a, b) in row.iter().zip(snap.values().iter()) {
                assert_eq!(a, b, "17 significant digits round-trip f64");
            }
        }
        let fields = rows_to_fields(&rows, std::f64::consts::TAU).unwrap();
        assert_eq!(fields.len(), traj.len());
    }

    #[test]
    fn json_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.summary.json");
        let summary = RunSummary {
            config: RunConfig {
                equation: "kdv".into(),
                n: 32,
                length: std::f64::consts::TAU,
                dt: 1e-3,
                t_end: 0.01,
                scheme: "auto".into(),
                eps: 1.0,
                store_every: 1,
                initial_condition: "sin(x)".into(),
            },
            invariants: vec![InvariantSample {
                t: 0.0,
                energy: 1.0 + 1e-16,
                momentum_mean: -0.25,
                mass: 3.0,
                l2: 2.0,
            }],
            blowup: None,
            truncation: Some(TruncationNote {
                requested_t_end: 1.0,
                blowup_estimate: 1.0 / 3.0,
                stopped_at: 0.3,
            }),
            wall_time_s: 0.125,
        };
        write_json(&path, &summary).unwrap();
        let back: RunSummary = read_json(&path).unwrap();
        assert_eq!(back, summary);
    }
}
