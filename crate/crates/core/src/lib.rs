//! Geodesic flow on the group of orientation-preserving circle
//! diffeomorphisms and its Virasoro extension.
//!
//! The crate provides four layers that build on each other:
//!
//! * [`spectral`] — periodic grids, real fields, Fourier analysis, exact
//!   mode-wise differentiation, trigonometric interpolation and two-thirds
//!   dealiasing;
//! * [`lie`] and [`inertia`] — the bracket, coadjoint operators, cocycles
//!   and group actions of `Diff⁺(S¹)` / Virasoro, together with the inertia
//!   operators of the L², H¹ and homogeneous H¹ metrics;
//! * [`geodesic`] — the Euler–Poincaré equation in momentum form,
//!   `m_t + u m_x + 2 u_x m + ε u_xxx = 0`, integrated pseudospectrally
//!   with classical or integrating-factor RK4; its named instances are the
//!   Hopf, Camassa–Holm, Hunter–Saxton, KdV and dispersive CH/HS equations;
//! * [`jet`] and [`symmetry`] — exact rational jet calculus (prolongation,
//!   invariance checking, algebra closure) for the point symmetries of those
//!   equations, and the numerical harness that exponentiates a symmetry and
//!   compares transformed trajectories against re-simulation.
//!
//! The crate is `no_std` (with `alloc`); everything that touches the
//! filesystem, clocks or random sampling lives in the companion CLI crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod geodesic;
pub mod inertia;
pub mod jet;
pub mod lie;
pub mod spectral;
pub mod symmetry;

pub use error::{Error, Result};
