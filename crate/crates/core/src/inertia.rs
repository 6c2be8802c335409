//! Inertia operators of the weak Riemannian metrics on vector fields.
//!
//! The metric `⟨u, v⟩ = ∫ (α² u v + β² u_x v_x) dx` has inertia operator
//! `A = α² Id − β² ∂_xx`, a Fourier multiplier with symbol
//! `a(κ) = α² + β² κ²`. The three named cases are L² `(α,β) = (1,0)`,
//! H¹ `(1,1)` and the homogeneous (degenerate) Ḣ¹ `(0,1)`, whose inverse
//! exists only on zero-mean momenta.


use crate::error::{Error, Result};
use crate::spectral::{analyze, synthesize, GridField};

/// Absolute bound on `|mean(m)|` accepted as "zero mean" when inverting a
/// degenerate inertia operator.
pub const ZERO_MEAN_TOL: f64 = 1e-10;

/// Parameters `(α, β)` of the inertia operator `α² Id − β² ∂_xx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricParams {
    alpha: f64,
    beta: f64,
}

impl MetricParams {
    /// Validates that the parameters are finite and not both zero.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || (alpha == 0.0 && beta == 0.0) {
            return Err(Error::DegenerateMetric);
        }
        Ok(Self { alpha, beta })
    }

    /// The L² metric, `(1, 0)`.
    pub fn l2() -> Self {
        Self {
            alpha: 1.0,
            beta: 0.0,
        }
    }

    /// The H¹ metric, `(1, 1)`.
    pub fn h1() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
        }
    }

    /// The homogeneous Ḣ¹ metric, `(0, 1)`; degenerate on constants.
    pub fn h1_homogeneous() -> Self {
        Self {
            alpha: 0.0,
            beta: 1.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Fourier symbol `a(κ) = α² + β² κ²` of the operator.
    pub fn symbol(&self, kappa: f64) -> f64 {
        self.alpha * self.alpha + self.beta * self.beta * kappa * kappa
    }

    /// True when the operator annihilates constants (`α = 0`).
    pub fn is_degenerate(&self) -> bool {
        self.alpha == 0.0
    }
}

/// Applies `A = α² Id − β² ∂_xx` spectrally: `m = A u`.
pub fn apply_inertia(params: MetricParams, u: &GridField) -> GridField {
    let grid = u.grid();
    let mut s = analyze(u);
    for (slot, c) in s.coeffs_mut().iter_mut().enumerate() {
        let kappa = grid.angular(grid.wavenumber(slot));
        *c *= params.symbol(kappa);
    }
    synthesize(&s)
}

/// Inverts the inertia operator: solves `A u = m`.
///
/// For `α = 0` the symbol vanishes at `k = 0`, so `m` must have zero mean
/// (to [`ZERO_MEAN_TOL`]); the zero-mean solution is returned and the
/// caller is responsible for any constant component of `u`.
pub fn invert_inertia(params: MetricParams, m: &GridField) -> Result<GridField> {
    let grid = m.grid();
    let mut s = analyze(m);
    if params.is_degenerate() {
        let mean = m.mean();
        if mean.abs() > ZERO_MEAN_TOL {
            return Err(Error::NotSolvable { mean });
        }
        s.coeffs_mut()[0] = num_complex::Complex64::new(0.0, 0.0);
    }
    for (slot, c) in s.coeffs_mut().iter_mut().enumerate() {
        if slot == 0 && params.is_degenerate() {
            continue;
        }
        let kappa = grid.angular(grid.wavenumber(slot));
        *c /= params.symbol(kappa);
    }
    Ok(synthesize(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::PeriodicGrid;

    #[test]
    fn rejects_doubly_degenerate_parameters() {
        assert_eq!(MetricParams::new(0.0, 0.0), Err(Error::DegenerateMetric));
        assert!(MetricParams::new(0.0, 1.0).is_ok());
        assert!(MetricParams::new(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn h1_on_sine_doubles_it() {
        let g = PeriodicGrid::two_pi(32).unwrap();
        let u = GridField::from_fn(g, |x| x.sin());
        let m = apply_inertia(MetricParams::h1(), &u);
        let expect = GridField::from_fn(g, |x| 2.0 * x.sin());
        assert!((&m - &expect).max_norm() < 1e-13);
    }

    #[test]
    fn degenerate_inverse_requires_zero_mean() {
        let g = PeriodicGrid::two_pi(32).unwrap();
        let bad = GridField::from_fn(g, |x| 1.0 + x.sin());
        match invert_inertia(MetricParams::h1_homogeneous(), &bad) {
            Err(Error::NotSolvable { mean }) => assert!((mean - 1.0).abs() < 1e-12),
            other => panic!("expected solvability error, got {other:?}"),
        }
        // −u_xx(cos x) = cos x, so the inverse of cos x is cos x.
        let m = GridField::from_fn(g, |x| x.cos());
        let u = invert_inertia(MetricParams::h1_homogeneous(), &m).unwrap();
        assert!((&u - &m).max_norm() < 1e-13);
    }
}
