//! Lie-algebraic structure of `Diff⁺(S¹)` and its Virasoro extension.
//!
//! Vector fields `u ∂x` on the circle form the Lie algebra of the group of
//! orientation-preserving diffeomorphisms, with bracket
//! `ad(u, v) = u v_x − v u_x`. Momenta are quadratic densities `m dx⊗dx`
//! paired by `⟨m, u⟩ = ∫ m u dx`, and the coadjoint operator dual to `ad`
//! is `ad*(u, m) = u m_x + 2 u_x m = (m u)_x + m u_x`.
//!
//! The Virasoro algebra extends this by one central dimension using the
//! Gel'fand–Fuchs 2-cocycle `ω(u, v) = ∫ u_x v_xx dx`:
//!
//! ```text
//! [(u, a), (v, b)] = (ad(u, v), ω(u, v)),
//! ad*((u, a), (m, ε)) = (ad*(u, m) + ε u_xxx, 0).
//! ```
//!
//! At group level this module works with discretized orientation-preserving
//! circle maps ([`CircleDiffeo`]): pushforward of vector fields, coadjoint
//! action with its Schwarzian correction, and the Bott–Thurston group
//! 2-cocycle `B(φ, ψ) = ½ ∫ log(φ_x ∘ ψ) d log ψ_x`, whose infinitesimal
//! shadow (in one slot) is the Schwarzian derivative
//! `S(φ) = φ_xxx/φ_x − (3/2)(φ_xx/φ_x)²`.
//!
//! All compositions and inverses are evaluated through the trigonometric
//! interpolant of the periodic part `φ(x) − x`, so group operations retain
//! spectral accuracy on smooth diffeomorphisms. Quadratic expressions in
//! `ad`/`ad*` are cleaned by the two-thirds rule to keep products of
//! band-limited fields alias-free.

use alloc::vec::Vec;

// Supplies sin/cos/exp/… on f64 in the no_std build. Unused when a test
// build pulls std into the graph (dev-deps unify num-traits/std) and the
// inherent f64 methods shadow the trait ones.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::spectral::{
    analyze, dealias_field, derivative_spectrum, interpolate_spectrum, spectral_derivative,
    synthesize, GridField, PeriodicGrid, Spectrum,
};

/// Below this Jacobian magnitude a diffeomorphism is treated as singular.
pub const JACOBIAN_TOL: f64 = 1e-8;

/// Residual tolerance used by the monotone lift inversion.
pub const INVERSE_TOL: f64 = 1e-12;

/// Element `(u ∂x, a)` of the Virasoro algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct VirasoroVector {
    pub u: GridField,
    pub a: f64,
}

impl VirasoroVector {
    pub fn new(u: GridField, a: f64) -> Self {
        Self { u, a }
    }
}

/// Element `(m dx⊗dx, ε)` of the (regular part of the) Virasoro dual.
#[derive(Debug, Clone, PartialEq)]
pub struct VirasoroMomentum {
    pub m: GridField,
    pub eps: f64,
}

impl VirasoroMomentum {
    pub fn new(m: GridField, eps: f64) -> Self {
        Self { m, eps }
    }
}

// ---------------------------------------------------------------------------
// Algebra-level operators
// ---------------------------------------------------------------------------

/// Adjoint operator `ad(u, v) = u v_x − v u_x` (bracket of vector fields).
pub fn ad(u: &GridField, v: &GridField) -> Result<GridField> {
    u.grid().check_same(&v.grid())?;
    let ux = spectral_derivative(u, 1);
    let vx = spectral_derivative(v, 1);
    let raw = &u.product(&vx)? - &v.product(&ux)?;
    Ok(dealias_field(&raw))
}

/// Coadjoint operator `ad*(u, m) = (m u)_x + m u_x = u m_x + 2 u_x m`.
pub fn ad_star(u: &GridField, m: &GridField) -> Result<GridField> {
    u.grid().check_same(&m.grid())?;
    let ux = spectral_derivative(u, 1);
    let mx = spectral_derivative(m, 1);
    let raw = &u.product(&mx)? + &m.product(&ux)?.scaled(2.0);
    Ok(dealias_field(&raw))
}

/// Duality pairing `⟨m, u⟩ = ∫ m u dx` by uniform quadrature.
pub fn pairing(m: &GridField, u: &GridField) -> Result<f64> {
    m.grid().check_same(&u.grid())?;
    Ok(m.product(u)?.integrate())
}

/// Gel'fand–Fuchs 2-cocycle `ω(u, v) = ∫ u_x v_xx dx`.
pub fn gelfand_fuchs(u: &GridField, v: &GridField) -> Result<f64> {
    u.grid().check_same(&v.grid())?;
    let ux = spectral_derivative(u, 1);
    let vxx = spectral_derivative(v, 2);
    Ok(ux.product(&vxx)?.integrate())
}

/// Virasoro bracket `[(u,a),(v,b)] = (ad(u,v), ω(u,v))`; the central
/// components of the inputs do not enter.
pub fn vir_bracket(lhs: &VirasoroVector, rhs: &VirasoroVector) -> Result<VirasoroVector> {
    Ok(VirasoroVector {
        u: ad(&lhs.u, &rhs.u)?,
        a: gelfand_fuchs(&lhs.u, &rhs.u)?,
    })
}

/// Virasoro coadjoint operator
/// `ad*((u,a), (m,ε)) = (ad*(u,m) + ε u_xxx, 0)`.
///
/// The central coefficient of the result is zero: the ε-slot has no
/// dynamics of its own and acts as a parameter of the regular part.
pub fn vir_ad_star(arg: &VirasoroVector, mom: &VirasoroMomentum) -> Result<VirasoroMomentum> {
    let base = ad_star(&arg.u, &mom.m)?;
    let uxxx = spectral_derivative(&arg.u, 3);
    Ok(VirasoroMomentum {
        m: &base + &uxxx.scaled(mom.eps),
        eps: 0.0,
    })
}

/// Virasoro pairing `⟨(m,ε),(u,a)⟩ = ∫ m u dx + ε a`.
pub fn vir_pairing(mom: &VirasoroMomentum, vec: &VirasoroVector) -> Result<f64> {
    Ok(pairing(&mom.m, &vec.u)? + mom.eps * vec.a)
}

// ---------------------------------------------------------------------------
// Discretized circle diffeomorphisms
// ---------------------------------------------------------------------------

/// Orientation-preserving circle diffeomorphism, stored through samples of
/// a lift `φ: ℝ → ℝ` with `φ(x + L) = φ(x) + L`.
///
/// The periodic part `φ(x) − x` and its derivative are kept in spectral
/// form so that off-grid evaluation, composition and inversion run through
/// the trigonometric interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleDiffeo {
    grid: PeriodicGrid,
    lift: Vec<f64>,
    p_hat: Spectrum,
    px_hat: Spectrum,
}

impl CircleDiffeo {
    /// Builds a diffeomorphism from lift samples `φ(x_j)`, checking strict
    /// monotonicity including across the periodic seam.
    pub fn from_lift(grid: PeriodicGrid, lift: Vec<f64>) -> Result<Self> {
        if lift.len() != grid.n() {
            return Err(Error::ValueCount {
                got: lift.len(),
                expected: grid.n(),
            });
        }
        if lift.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidLift);
        }
        for j in 0..lift.len() - 1 {
            if lift[j + 1] <= lift[j] {
                return Err(Error::NonMonotoneLift { index: j + 1 });
            }
        }
        if lift[0] + grid.length() <= lift[grid.n() - 1] {
            return Err(Error::InvalidLift);
        }
        let p = GridField::from_fn(grid, |x| x);
        let periodic: Vec<f64> = lift
            .iter()
            .zip(p.values())
            .map(|(l, x)| l - x)
            .collect();
        let p_field = GridField::from_values(grid, periodic).expect("length checked");
        let p_hat = analyze(&p_field);
        let px_hat = derivative_spectrum(&p_hat, 1);
        Ok(Self {
            grid,
            lift,
            p_hat,
            px_hat,
        })
    }

    /// Samples a lift function at the grid nodes.
    pub fn from_map(grid: PeriodicGrid, mut phi: impl FnMut(f64) -> f64) -> Result<Self> {
        let lift = (0..grid.n()).map(|j| phi(grid.point(j))).collect();
        Self::from_lift(grid, lift)
    }

    /// The identity map.
    pub fn identity(grid: PeriodicGrid) -> Self {
        Self::from_map(grid, |x| x).expect("identity lift is monotone")
    }

    /// Rigid rotation `φ(x) = x + c`.
    pub fn rotation(grid: PeriodicGrid, c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::InvalidLift);
        }
        Ok(Self::from_map(grid, |x| x + c).expect("rotation lift is monotone"))
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    /// Lift samples `φ(x_j)`.
    pub fn lift(&self) -> &[f64] {
        &self.lift
    }

    /// The periodic part `φ(x) − x` as a field.
    pub fn periodic_part(&self) -> GridField {
        let vals = self
            .lift
            .iter()
            .enumerate()
            .map(|(j, l)| l - self.grid.point(j))
            .collect();
        GridField::from_values(self.grid, vals).expect("length matches grid")
    }

    /// Jacobian `φ_x = 1 + (φ − x)_x` sampled on the grid.
    pub fn jacobian(&self) -> GridField {
        synthesize(&self.px_hat).offset(1.0)
    }

    /// Evaluates the lift at an arbitrary point through the interpolant of
    /// the periodic part; exactly equivariant, `φ(x + L) = φ(x) + L`.
    pub fn eval(&self, x: f64) -> f64 {
        x + interpolate_spectrum(&self.p_hat, self.grid.wrap(x))
    }

    /// Evaluates the Jacobian `φ_x` at an arbitrary point.
    pub fn eval_jacobian(&self, x: f64) -> f64 {
        1.0 + interpolate_spectrum(&self.px_hat, self.grid.wrap(x))
    }

    /// Solves `φ(x) = y` on the monotone lift: bisection to bracket the
    /// root, Newton to polish it to [`INVERSE_TOL`].
    pub fn inverse_at(&self, y: f64) -> f64 {
        let length = self.grid.length();
        let base = self.eval(0.0);
        let wind = ((y - base) / length).floor();
        let yr = y - wind * length;
        // g(x) = φ(x) − yr has g(0) ≤ 0 < g(L).
        let (mut a, mut b) = (0.0f64, length);
        for _ in 0..40 {
            let mid = 0.5 * (a + b);
            if self.eval(mid) - yr <= 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        let tol = INVERSE_TOL * (1.0 + yr.abs());
        let mut x = 0.5 * (a + b);
        for _ in 0..8 {
            let g = self.eval(x) - yr;
            if g.abs() <= tol {
                break;
            }
            let dg = self.eval_jacobian(x);
            if dg.abs() < JACOBIAN_TOL {
                break;
            }
            let step = g / dg;
            let next = x - step;
            x = if next < a || next > b {
                0.5 * (a + b)
            } else {
                next
            };
        }
        x + wind * length
    }

    /// Composition `(self ∘ inner)(x) = self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.grid.check_same(&inner.grid)?;
        let lift = inner.lift.iter().map(|&y| self.eval(y)).collect();
        Self::from_lift(self.grid, lift)
    }

    /// The group inverse, sampled by solving `φ(x) = x_j` at every node.
    pub fn inverse(&self) -> Result<Self> {
        let lift = (0..self.grid.n())
            .map(|j| self.inverse_at(self.grid.point(j)))
            .collect();
        Self::from_lift(self.grid, lift)
    }

    /// Minimum of `|φ_x|` over the nodes, with the attaining index.
    fn min_jacobian(&self) -> (usize, f64) {
        let jac = self.jacobian();
        let mut index = 0;
        let mut min_abs = f64::INFINITY;
        for (j, v) in jac.values().iter().enumerate() {
            if v.abs() < min_abs {
                min_abs = v.abs();
                index = j;
            }
        }
        (index, min_abs)
    }

    fn check_jacobian(&self) -> Result<()> {
        let (index, min_abs) = self.min_jacobian();
        if min_abs < JACOBIAN_TOL {
            Err(Error::NearSingularJacobian { index, min_abs })
        } else {
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Group-level operators
// ---------------------------------------------------------------------------

/// Schwarzian derivative `S(φ) = φ_xxx/φ_x − (3/2)(φ_xx/φ_x)²`, evaluated
/// with spectral derivatives of the periodic part.
pub fn schwarzian(phi: &CircleDiffeo) -> Result<GridField> {
    phi.check_jacobian()?;
    let p1 = synthesize(&phi.px_hat).offset(1.0);
    let p2 = synthesize(&derivative_spectrum(&phi.p_hat, 2));
    let p3 = synthesize(&derivative_spectrum(&phi.p_hat, 3));
    let values = p1
        .values()
        .iter()
        .zip(p2.values())
        .zip(p3.values())
        .map(|((&fx, &fxx), &fxxx)| {
            let r = fxx / fx;
            fxxx / fx - 1.5 * r * r
        })
        .collect();
    GridField::from_values(phi.grid(), values)
}

/// Bott–Thurston group 2-cocycle
/// `B(φ, ψ) = ½ ∫ log(φ_x(ψ(x))) · (ψ_xx/ψ_x)(x) dx`.
pub fn bott_thurston(phi: &CircleDiffeo, psi: &CircleDiffeo) -> Result<f64> {
    phi.grid().check_same(&psi.grid())?;
    phi.check_jacobian()?;
    psi.check_jacobian()?;
    let grid = phi.grid();
    let psi_x = synthesize(&psi.px_hat).offset(1.0);
    let psi_xx = synthesize(&derivative_spectrum(&psi.p_hat, 2));
    let mut acc = 0.0;
    for j in 0..grid.n() {
        let phi_x_at = phi.eval_jacobian(psi.lift[j]);
        if phi_x_at <= JACOBIAN_TOL {
            return Err(Error::NearSingularJacobian {
                index: j,
                min_abs: phi_x_at,
            });
        }
        acc += phi_x_at.ln() * psi_xx.values()[j] / psi_x.values()[j];
    }
    Ok(0.5 * acc * grid.spacing())
}

/// Pushforward (adjoint group action) of a vector field:
/// `(Ad_φ u)(x) = φ_x(φ⁻¹(x)) · u(φ⁻¹(x))`.
pub fn adjoint_group_action(phi: &CircleDiffeo, u: &GridField) -> Result<GridField> {
    phi.grid().check_same(&u.grid())?;
    phi.check_jacobian()?;
    let grid = phi.grid();
    let u_hat = analyze(u);
    let values = (0..grid.n())
        .map(|j| {
            let xi = phi.inverse_at(grid.point(j));
            let xr = grid.wrap(xi);
            phi.eval_jacobian(xr) * interpolate_spectrum(&u_hat, xr)
        })
        .collect();
    GridField::from_values(grid, values)
}

/// Coadjoint group action on a Virasoro momentum:
/// `(m, ε) ↦ (m(φ(x)) φ_x(x)² + ε S(φ)(x), ε)`.
///
/// The regular part is the pullback of the quadratic density along `φ`; it
/// is dual to the pushforward [`adjoint_group_action`] at the same group
/// element: `⟨coadjoint(φ, μ), X⟩ = ⟨μ, adjoint(φ, X)⟩` when `ε = 0`.
pub fn coadjoint_group_action(
    phi: &CircleDiffeo,
    mom: &VirasoroMomentum,
) -> Result<VirasoroMomentum> {
    phi.grid().check_same(&mom.m.grid())?;
    let grid = phi.grid();
    let s = schwarzian(phi)?;
    let jac = phi.jacobian();
    let m_hat = analyze(&mom.m);
    let values = (0..grid.n())
        .map(|j| {
            let y = grid.wrap(phi.lift[j]);
            let mj = interpolate_spectrum(&m_hat, y);
            let fx = jac.values()[j];
            mj * fx * fx + mom.eps * s.values()[j]
        })
        .collect();
    Ok(VirasoroMomentum {
        m: GridField::from_values(grid, values)?,
        eps: mom.eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::PeriodicGrid;
    use core::f64::consts::PI;

    fn grid() -> PeriodicGrid {
        PeriodicGrid::two_pi(64).unwrap()
    }

    #[test]
    fn ad_of_sin_cos_is_minus_one() {
        let g = grid();
        let u = GridField::from_fn(g, |x| x.sin());
        let v = GridField::from_fn(g, |x| x.cos());
        let w = ad(&u, &v).unwrap();
        let expect = GridField::constant(g, -1.0);
        assert!((&w - &expect).max_norm() < 1e-13);
    }

    #[test]
    fn pairing_of_sines_is_pi() {
        let g = grid();
        let s = GridField::from_fn(g, |x| x.sin());
        assert!((pairing(&s, &s).unwrap() - PI).abs() < 1e-13);
        let one = GridField::constant(g, 1.0);
        assert!((pairing(&one, &one).unwrap() - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn lift_validation_catches_non_monotone() {
        let g = PeriodicGrid::two_pi(8).unwrap();
        let mut lift: Vec<f64> = (0..8).map(|j| g.point(j)).collect();
        lift[3] = lift[2] - 0.1;
        match CircleDiffeo::from_lift(g, lift) {
            Err(Error::NonMonotoneLift { index }) => assert_eq!(index, 3),
            other => panic!("expected monotonicity error, got {other:?}"),
        }
    }

    #[test]
    fn inverse_at_round_trips() {
        let g = grid();
        let phi = CircleDiffeo::from_map(g, |x| x + 0.3 * (x + 0.4).sin()).unwrap();
        for &y in &[0.0, 1.3, 4.0, 6.2, -2.0, 9.0] {
            let x = phi.inverse_at(y);
            assert!((phi.eval(x) - y).abs() < 1e-11, "residual at y = {y}");
        }
    }

    #[test]
    fn rotation_pushforward_translates() {
        let g = grid();
        let c = 0.9;
        let phi = CircleDiffeo::rotation(g, c).unwrap();
        let u = GridField::from_fn(g, |x| (2.0 * x).sin());
        let w = adjoint_group_action(&phi, &u).unwrap();
        let expect = GridField::from_fn(g, |x| (2.0 * (x - c)).sin());
        assert!((&w - &expect).max_norm() < 1e-10);
    }

    #[test]
    fn schwarzian_of_rotation_vanishes() {
        let g = grid();
        // (x + c) - x carries ~1e-16 jitter per node, and the third
        // derivative amplifies it by κ_max³ ≈ 3.3e4 at n = 64.
        let phi = CircleDiffeo::rotation(g, 1.1).unwrap();
        assert!(schwarzian(&phi).unwrap().max_norm() < 1e-10);
        let id = CircleDiffeo::identity(g);
        assert_eq!(schwarzian(&id).unwrap().max_norm(), 0.0);
    }
}
