//! Euler–Poincaré geodesic flow in momentum form.
//!
//! For the inertia operator `A = α² Id − β² ∂xx` the geodesic equation on
//! the diffeomorphism group (optionally centrally extended) reads
//!
//! ```text
//! m_t + u m_x + 2 u_x m + ε u_xxx = 0,       m = A u,
//! ```
//!
//! where the `ε u_xxx` term is present only for the Virasoro group. The six
//! named instances are Hopf `(Diff⁺, L²)`, Camassa–Holm `(Diff⁺, H¹)`,
//! Hunter–Saxton `(Diff⁺, Ḣ¹)`, KdV `(Virasoro, L²)`, and the dispersive
//! CH/HS equations `(Virasoro, H¹/Ḣ¹)`.
//!
//! The solver advances the momentum spectrum `m̂` with classical RK4 or an
//! integrating-factor RK4 that applies the linear phase
//! `exp(i ε κ³ t / a(κ))` exactly — mandatory for KdV, where `ε κ³ dt` far
//! exceeds the RK4 stability interval at practical resolutions. Velocity is
//! recovered mode-wise through the inertia symbol each stage; quadratic
//! terms are dealiased by the two-thirds rule. For the degenerate Ḣ¹ case
//! the zero mode of `m̂` is pinned to zero (the solvability condition) and
//! the constant component of `u` rides along unchanged.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// Supplies sin/cos/exp/… on f64 in the no_std build. Unused when a test
// build pulls std into the graph (dev-deps unify num-traits/std) and the
// inherent f64 methods shadow the trait ones.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::inertia::{apply_inertia, invert_inertia, MetricParams};
use crate::spectral::{analyze_with, dealias_field, spectral_derivative, Dft, GridField, PeriodicGrid};

/// Safety factor applied to the Hopf blow-up estimate when truncating runs.
pub const HOPF_SAFETY: f64 = 0.9;

/// Which group the geodesic lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// Orientation-preserving circle diffeomorphisms.
    DiffPlus,
    /// The Virasoro extension; adds the `ε u_xxx` dispersive term.
    Virasoro,
}

/// A geodesic equation: group, metric, and central parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquationConfig {
    pub group: GroupKind,
    pub metric: MetricParams,
    /// Central (dispersion) coefficient; ignored for [`GroupKind::DiffPlus`].
    pub eps: f64,
}

impl EquationConfig {
    /// Hopf (inviscid Burgers): `u_t + 3 u u_x = 0`.
    pub fn hopf() -> Self {
        Self {
            group: GroupKind::DiffPlus,
            metric: MetricParams::l2(),
            eps: 0.0,
        }
    }

    /// Camassa–Holm: `u_t − u_txx + 3 u u_x − 2 u_x u_xx − u u_xxx = 0`.
    pub fn camassa_holm() -> Self {
        Self {
            group: GroupKind::DiffPlus,
            metric: MetricParams::h1(),
            eps: 0.0,
        }
    }

    /// Hunter–Saxton: `u_txx + 2 u_x u_xx + u u_xxx = 0`.
    pub fn hunter_saxton() -> Self {
        Self {
            group: GroupKind::DiffPlus,
            metric: MetricParams::h1_homogeneous(),
            eps: 0.0,
        }
    }

    /// Korteweg–de Vries: `u_t + 3 u u_x + ε u_xxx = 0`.
    pub fn kdv(eps: f64) -> Self {
        Self {
            group: GroupKind::Virasoro,
            metric: MetricParams::l2(),
            eps,
        }
    }

    /// Dispersive Camassa–Holm: CH plus `ε u_xxx`.
    pub fn dispersive_ch(eps: f64) -> Self {
        Self {
            group: GroupKind::Virasoro,
            metric: MetricParams::h1(),
            eps,
        }
    }

    /// Dispersive Hunter–Saxton: `u_txx + 2 u_x u_xx + u u_xxx − ε u_xxx = 0`.
    pub fn dispersive_hs(eps: f64) -> Self {
        Self {
            group: GroupKind::Virasoro,
            metric: MetricParams::h1_homogeneous(),
            eps,
        }
    }

    /// The catalog name of this configuration, if it is one of the six.
    pub fn name(&self) -> Option<&'static str> {
        let (a, b) = (self.metric.alpha(), self.metric.beta());
        match (self.group, a, b) {
            (GroupKind::DiffPlus, 1.0, 0.0) => Some("hopf"),
            (GroupKind::DiffPlus, 1.0, 1.0) => Some("camassa-holm"),
            (GroupKind::DiffPlus, 0.0, 1.0) => Some("hunter-saxton"),
            (GroupKind::Virasoro, 1.0, 0.0) => Some("kdv"),
            (GroupKind::Virasoro, 1.0, 1.0) => Some("dispersive-ch"),
            (GroupKind::Virasoro, 0.0, 1.0) => Some("dispersive-hs"),
            _ => None,
        }
    }

    /// True for the Hopf family (pure advection, shocks in finite time).
    pub fn is_hopf_like(&self) -> bool {
        self.group == GroupKind::DiffPlus && self.metric.beta() == 0.0
    }

    /// The dispersion coefficient actually entering the dynamics.
    pub fn effective_eps(&self) -> f64 {
        match self.group {
            GroupKind::DiffPlus => 0.0,
            GroupKind::Virasoro => self.eps,
        }
    }
}

/// Time-stepping scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeScheme {
    /// Classical explicit Runge–Kutta 4.
    Rk4,
    /// Integrating-factor RK4: the linear dispersive symbol is integrated
    /// exactly, RK4 handles only the advective nonlinearity.
    IfRk4,
}

/// Options controlling a [`simulate`] run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub dt: f64,
    pub scheme: TimeScheme,
    /// Apply the two-thirds rule to the quadratic term (default true).
    pub dealias: bool,
    /// Store every `store_every`-th step (the final state is always kept).
    pub store_every: usize,
    /// Stop Hopf-family runs at `0.9 ×` the blow-up estimate (default true).
    pub hopf_guard: bool,
}

impl SolverOptions {
    /// Defaults: RK4, dealiasing on, every step stored, Hopf guard on.
    pub fn new(dt: f64) -> Self {
        Self {
            dt,
            scheme: TimeScheme::Rk4,
            dealias: true,
            store_every: 1,
            hopf_guard: true,
        }
    }

    /// Like [`SolverOptions::new`] but picks the integrating-factor scheme
    /// for Virasoro configurations (stiff dispersion).
    pub fn recommended(config: &EquationConfig, dt: f64) -> Self {
        let mut opts = Self::new(dt);
        if config.group == GroupKind::Virasoro {
            opts.scheme = TimeScheme::IfRk4;
        }
        opts
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidOptions("dt must be positive and finite"));
        }
        if self.store_every == 0 {
            return Err(Error::InvalidOptions("store_every must be at least 1"));
        }
        Ok(())
    }
}

/// Monitored quantities at one stored time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantRecord {
    /// Metric Lagrangian `ℓ(u) = ½ ∫ (α² u² + β² u_x²) dx`.
    pub energy: f64,
    /// Momentum integral `∫ m dx` (conserved for every config).
    pub momentum_mean: f64,
    /// Mass `∫ u dx`.
    pub mass: f64,
    /// `∫ u² dx`.
    pub l2: f64,
}

/// Record of a run truncated by the Hopf blow-up guard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// Horizon originally requested.
    pub requested_t_end: f64,
    /// Blow-up time estimate from the initial condition.
    pub blowup_estimate: f64,
    /// Horizon actually integrated (`0.9 ×` the estimate).
    pub stopped_at: f64,
}

/// Result of a simulation: stored velocity snapshots plus bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub config: EquationConfig,
    /// Strictly increasing stored times, starting at 0.
    pub times: Vec<f64>,
    /// Velocity field at each stored time.
    pub snapshots: Vec<GridField>,
    /// Invariant monitors, index-aligned with `times`.
    pub invariant_log: Vec<InvariantRecord>,
    /// Set to the failing time if NaN/Inf appeared mid-run.
    pub blowup: Option<f64>,
    /// Set when the Hopf guard shortened the run.
    pub truncation: Option<Truncation>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory holds at least t = 0")
    }

    /// Index of the stored time matching `t` to `1e−9·(1+|t|)`.
    pub fn find_time(&self, t: f64) -> Result<usize> {
        let tol = 1e-9 * (1.0 + t.abs());
        let idx = self
            .times
            .partition_point(|&s| s < t - tol)
            .min(self.times.len().saturating_sub(1));
        for i in [idx.saturating_sub(1), idx, (idx + 1).min(self.times.len() - 1)] {
            if (self.times[i] - t).abs() <= tol {
                return Ok(i);
            }
        }
        Err(Error::TimeNotStored { time: t })
    }
}

/// Monitored invariants of a single state.
pub fn invariants(config: &EquationConfig, u: &GridField) -> InvariantRecord {
    let m = apply_inertia(config.metric, u);
    let mu = m.product(u).expect("same grid by construction");
    InvariantRecord {
        energy: 0.5 * mu.integrate(),
        momentum_mean: m.integrate(),
        mass: u.integrate(),
        l2: u.product(u).expect("same grid").integrate(),
    }
}

/// Shock-formation estimate for the Hopf equation `u_t + 3 u u_x = 0`:
/// along characteristics `u_x(t) = u_x(0)/(1 + 3 t u_x(0))`, so the first
/// blow-up is at `t* = 1/(3 max(−u0_x))`, infinite for non-compressive data.
pub fn hopf_blowup_estimate(u0: &GridField) -> f64 {
    let ux = spectral_derivative(u0, 1);
    let max_compression = ux.values().iter().fold(0.0f64, |m, &v| m.max(-v));
    if max_compression > 0.0 {
        1.0 / (3.0 * max_compression)
    } else {
        f64::INFINITY
    }
}

/// Velocity-form right-hand side `u_t = A⁻¹(−(u m_x + 2 u_x m) − ε u_xxx)`.
///
/// Expanding the momentum form reproduces each catalog equation; for the
/// degenerate Ḣ¹ metric the result is the zero-mean representative.
pub fn rhs(config: &EquationConfig, u: &GridField) -> GridField {
    let m = apply_inertia(config.metric, u);
    let ux = spectral_derivative(u, 1);
    let mx = spectral_derivative(&m, 1);
    let quad = &u.product(&mx).expect("same grid") + &ux.product(&m).expect("same grid").scaled(2.0);
    let mut mt = -&dealias_field(&quad);
    let eps = config.effective_eps();
    if eps != 0.0 {
        let uxxx = spectral_derivative(u, 3);
        mt = &mt - &uxxx.scaled(eps);
    }
    if config.metric.is_degenerate() {
        // ∫(u m_x + 2 u_x m) dx = ∫ u_x m dx = 0 exactly; remove rounding
        // residue so the degenerate inversion is well posed.
        let mean = mt.mean();
        mt = mt.offset(-mean);
    }
    invert_inertia(config.metric, &mt).expect("momentum tendency has zero mean by construction")
}

// ---------------------------------------------------------------------------
// Spectral stepping machinery
// ---------------------------------------------------------------------------

/// Precomputed per-run spectral data.
struct Workspace {
    grid: PeriodicGrid,
    dft: Dft,
    /// Inertia symbol per slot.
    symbol: Vec<f64>,
    /// Derivative multiplier `iκ` per slot (zeroed at Nyquist).
    ik: Vec<Complex64>,
    /// Linear dispersive symbol `L_k = i ε κ³ / a(κ)` per slot.
    lin: Vec<Complex64>,
    /// Two-thirds keep mask.
    keep: Vec<bool>,
    degenerate: bool,
    /// Constant component of `u` carried outside `m̂` when degenerate.
    u_mean: f64,
    dealias: bool,
    /// RK4 folds the linear term into the nonlinearity; IFRK4 does not.
    linear_in_nonlinear: bool,
}

impl Workspace {
    fn new(config: &EquationConfig, grid: PeriodicGrid, opts: &SolverOptions, u_mean: f64) -> Self {
        let n = grid.n();
        let eps = config.effective_eps();
        let mut symbol = vec![0.0; n];
        let mut ik = vec![Complex64::new(0.0, 0.0); n];
        let mut lin = vec![Complex64::new(0.0, 0.0); n];
        let mut keep = vec![true; n];
        for slot in 0..n {
            let k = grid.wavenumber(slot);
            let kappa = grid.angular(k);
            symbol[slot] = config.metric.symbol(kappa);
            if k != -(n as i64) / 2 {
                ik[slot] = Complex64::new(0.0, kappa);
                if symbol[slot] > 0.0 {
                    lin[slot] = Complex64::new(0.0, eps * kappa * kappa * kappa / symbol[slot]);
                }
            }
            keep[slot] = 3 * k.abs() <= n as i64;
        }
        Self {
            grid,
            dft: Dft::new(n),
            symbol,
            ik,
            lin,
            keep,
            degenerate: config.metric.is_degenerate(),
            u_mean,
            dealias: opts.dealias,
            linear_in_nonlinear: opts.scheme == TimeScheme::Rk4,
        }
    }

    fn mask(&self, v: &mut [Complex64]) {
        if self.dealias {
            for (c, &k) in v.iter_mut().zip(&self.keep) {
                if !k {
                    *c = Complex64::new(0.0, 0.0);
                }
            }
        }
    }

    fn uhat(&self, mhat: &[Complex64]) -> Vec<Complex64> {
        let mut uh: Vec<Complex64> = mhat
            .iter()
            .zip(&self.symbol)
            .map(|(&m, &a)| if a > 0.0 { m / a } else { Complex64::new(0.0, 0.0) })
            .collect();
        if self.degenerate {
            uh[0] = Complex64::new(self.u_mean, 0.0);
        }
        uh
    }

    fn grid_values(&self, hat: &[Complex64]) -> Vec<f64> {
        let mut buf = hat.to_vec();
        self.dft.inverse(&mut buf);
        buf.iter().map(|c| c.re).collect()
    }

    /// Momentum tendency `−(u m_x + 2 u_x m)̂` (plus the linear term for
    /// plain RK4), dealiased.
    fn nonlinear(&self, mhat: &[Complex64]) -> Vec<Complex64> {
        let n = mhat.len();
        let uh = self.uhat(mhat);
        let uxh: Vec<Complex64> = uh.iter().zip(&self.ik).map(|(&c, &d)| c * d).collect();
        let mxh: Vec<Complex64> = mhat.iter().zip(&self.ik).map(|(&c, &d)| c * d).collect();
        let u = self.grid_values(&uh);
        let ux = self.grid_values(&uxh);
        let m = self.grid_values(mhat);
        let mx = self.grid_values(&mxh);
        let mut prod: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(u[j] * mx[j] + 2.0 * ux[j] * m[j], 0.0))
            .collect();
        self.dft.forward(&mut prod);
        let scale = 1.0 / n as f64;
        for c in prod.iter_mut() {
            *c = -*c * scale;
        }
        self.mask(&mut prod);
        if self.degenerate {
            prod[0] = Complex64::new(0.0, 0.0);
        }
        if self.linear_in_nonlinear {
            for (c, (&l, &m0)) in prod.iter_mut().zip(self.lin.iter().zip(mhat)) {
                *c += l * m0;
            }
        }
        prod
    }

    /// Integrating-factor propagator `exp(L h)` per slot (all ones for RK4,
    /// where the linear term lives inside the nonlinearity).
    fn propagator(&self, h: f64) -> Vec<Complex64> {
        if self.linear_in_nonlinear {
            vec![Complex64::new(1.0, 0.0); self.lin.len()]
        } else {
            self.lin
                .iter()
                .map(|l| {
                    let th = l.im * h;
                    Complex64::new(th.cos(), th.sin())
                })
                .collect()
        }
    }

    /// One RK4 / IFRK4 step of size `h` on the momentum spectrum.
    fn step(&self, mhat: &[Complex64], h: f64, e_half: &[Complex64], e_full: &[Complex64]) -> Vec<Complex64> {
        let n = mhat.len();
        let n1 = self.nonlinear(mhat);
        let s2: Vec<Complex64> = (0..n)
            .map(|i| e_half[i] * (mhat[i] + 0.5 * h * n1[i]))
            .collect();
        let n2 = self.nonlinear(&s2);
        let s3: Vec<Complex64> = (0..n)
            .map(|i| e_half[i] * mhat[i] + 0.5 * h * n2[i])
            .collect();
        let n3 = self.nonlinear(&s3);
        let s4: Vec<Complex64> = (0..n)
            .map(|i| e_full[i] * mhat[i] + h * e_half[i] * n3[i])
            .collect();
        let n4 = self.nonlinear(&s4);
        (0..n)
            .map(|i| {
                e_full[i] * mhat[i]
                    + h / 6.0
                        * (e_full[i] * n1[i]
                            + 2.0 * e_half[i] * n2[i]
                            + 2.0 * e_half[i] * n3[i]
                            + n4[i])
            })
            .collect()
    }

    fn velocity_field(&self, mhat: &[Complex64]) -> GridField {
        let uh = self.uhat(mhat);
        GridField::from_values(self.grid, self.grid_values(&uh)).expect("sizes match")
    }
}

/// Integrates the geodesic equation from `u0` to `t_end`.
///
/// On NaN/Inf the run aborts and the partial trajectory comes back with
/// [`Trajectory::blowup`] set to the failing time. Hopf-family runs are
/// shortened to `0.9 ×` [`hopf_blowup_estimate`] unless
/// [`SolverOptions::hopf_guard`] is cleared; the truncation is recorded.
pub fn simulate(
    config: &EquationConfig,
    u0: &GridField,
    t_end: f64,
    opts: &SolverOptions,
) -> Result<Trajectory> {
    opts.validate()?;
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::InvalidOptions("t_end must be positive and finite"));
    }
    if !u0.is_finite() {
        return Err(Error::InvalidOptions(
            "initial condition contains non-finite samples",
        ));
    }

    let mut horizon = t_end;
    let mut truncation = None;
    if config.is_hopf_like() && opts.hopf_guard {
        let estimate = hopf_blowup_estimate(u0);
        let safe = HOPF_SAFETY * estimate;
        if t_end > safe {
            horizon = safe;
            truncation = Some(Truncation {
                requested_t_end: t_end,
                blowup_estimate: estimate,
                stopped_at: safe,
            });
        }
    }

    let grid = u0.grid();
    let ws = Workspace::new(config, grid, opts, u0.mean());
    let dft = &ws.dft;

    // Initial momentum spectrum.
    let m0 = apply_inertia(config.metric, u0);
    let mut mhat = analyze_with(dft, &m0).coeffs().to_vec();
    ws.mask(&mut mhat);
    if ws.degenerate {
        mhat[0] = Complex64::new(0.0, 0.0);
    }

    // Step layout: whole steps of dt, plus one shorter step if the horizon
    // is not an integer multiple of dt.
    let raw = horizon / opts.dt;
    let rounded = raw.round();
    let (full_steps, tail) = if (raw - rounded).abs() < 1e-9 && rounded >= 1.0 {
        (rounded as usize, None)
    } else {
        let fs = raw.floor() as usize;
        let rem = horizon - fs as f64 * opts.dt;
        if rem > 1e-12 * horizon.max(1.0) {
            (fs, Some(rem))
        } else {
            (fs, None)
        }
    };

    let e_half = ws.propagator(0.5 * opts.dt);
    let e_full = ws.propagator(opts.dt);

    let mut traj = Trajectory {
        config: *config,
        times: Vec::new(),
        snapshots: Vec::new(),
        invariant_log: Vec::new(),
        blowup: None,
        truncation,
    };
    let store = |t: f64, mhat: &[Complex64], traj: &mut Trajectory| {
        let u = ws.velocity_field(mhat);
        traj.invariant_log.push(invariants(config, &u));
        traj.times.push(t);
        traj.snapshots.push(u);
    };
    store(0.0, &mhat, &mut traj);

    let total_steps = full_steps + tail.map_or(0, |_| 1);
    for step_idx in 1..=total_steps {
        let (h, t_now, eh, ef);
        let tail_arrays;
        if step_idx <= full_steps {
            h = opts.dt;
            t_now = step_idx as f64 * opts.dt;
            eh = &e_half;
            ef = &e_full;
        } else {
            let rem = tail.expect("tail step exists");
            h = rem;
            t_now = horizon;
            tail_arrays = (ws.propagator(0.5 * rem), ws.propagator(rem));
            eh = &tail_arrays.0;
            ef = &tail_arrays.1;
        }
        mhat = ws.step(&mhat, h, eh, ef);
        if !mhat.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            traj.blowup = Some(t_now);
            return Ok(traj);
        }
        if step_idx % opts.store_every == 0 || step_idx == total_steps {
            store(t_now, &mhat, &mut traj);
        }
    }
    Ok(traj)
}

/// Max-norm of the momentum-form equation at a stored interior time, with
/// spectral x-derivatives and second-order centered time differences
/// (`u_t` from `u` snapshots, `u_txx` from their spectral `u_xx`).
///
/// Up to overall sign this is each catalog row of the geodesic family.
pub fn residual(config: &EquationConfig, traj: &Trajectory, index: usize) -> Result<f64> {
    if index == 0 || index + 1 >= traj.times.len() {
        return Err(Error::ResidualStencil { index });
    }
    let dt_minus = traj.times[index] - traj.times[index - 1];
    let dt_plus = traj.times[index + 1] - traj.times[index];
    if (dt_minus - dt_plus).abs() > 1e-9 * dt_minus.abs().max(dt_plus.abs()) {
        return Err(Error::ResidualStencil { index });
    }
    let two_dt = dt_minus + dt_plus;
    let (alpha, beta) = (config.metric.alpha(), config.metric.beta());
    let (a2, b2) = (alpha * alpha, beta * beta);

    let u = &traj.snapshots[index];
    let u_prev = &traj.snapshots[index - 1];
    let u_next = &traj.snapshots[index + 1];
    // m_t = α² u_t − β² u_txx, centered differences on u and u_xx.
    let ut = &(u_next - u_prev) * (1.0 / two_dt);
    let uxx_prev = spectral_derivative(u_prev, 2);
    let uxx_next = spectral_derivative(u_next, 2);
    let utxx = &(&uxx_next - &uxx_prev) * (1.0 / two_dt);
    let mt = &ut.scaled(a2) - &utxx.scaled(b2);

    let m = apply_inertia(config.metric, u);
    let ux = spectral_derivative(u, 1);
    let mx = spectral_derivative(&m, 1);
    let quad = &u.product(&mx).expect("same grid") + &ux.product(&m).expect("same grid").scaled(2.0);
    let mut res = &mt + &quad;
    let eps = config.effective_eps();
    if eps != 0.0 {
        res = &res + &spectral_derivative(u, 3).scaled(eps);
    }
    Ok(res.max_norm())
}
