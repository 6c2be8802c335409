//! Spectral primitives: round trips, derivatives, interpolation and
//! dealiasing across grid sizes, including non-power-of-two node counts.

use core::f64::consts::PI;

use geoflow_core::error::Error;
use geoflow_core::spectral::{
    analyze, dealias_field, dealiased_product, interpolate_spectrum, make_grid, phase_shift,
    spectral_derivative, synthesize, trig_interpolate, GridField, PeriodicGrid,
};

use proptest::prelude::*;

/// Band-limited trig polynomial with frozen coefficients; smooth enough that
/// every operation below should be exact to rounding on all tested grids.
fn test_signal(x: f64) -> f64 {
    0.7 + 1.3 * x.sin() - 0.4 * (2.0 * x).cos() + 0.11 * (3.0 * x + 0.5).sin()
}

fn test_signal_dx(x: f64) -> f64 {
    1.3 * x.cos() + 0.8 * (2.0 * x).sin() + 0.33 * (3.0 * x + 0.5).cos()
}

fn test_signal_dxx(x: f64) -> f64 {
    -1.3 * x.sin() + 1.6 * (2.0 * x).cos() - 0.99 * (3.0 * x + 0.5).sin()
}

#[test]
fn roundtrip_derivative_interpolation_across_sizes() {
    // Mix of powers of two and other even sizes, 8 through 512.
    for &n in &[8usize, 10, 12, 16, 24, 32, 48, 64, 96, 128, 256, 384, 512] {
        let g = PeriodicGrid::two_pi(n).unwrap();
        let f = GridField::from_fn(g, test_signal);

        // Analysis followed by synthesis reproduces the samples.
        let back = synthesize(&analyze(&f));
        assert!(
            (&back - &f).max_norm() < 1e-12,
            "roundtrip at n = {n}: {}",
            (&back - &f).max_norm()
        );

        // First and second spectral derivatives match the closed forms.
        let d1 = spectral_derivative(&f, 1);
        let d1_exact = GridField::from_fn(g, test_signal_dx);
        assert!(
            (&d1 - &d1_exact).max_norm() < 1e-12,
            "derivative at n = {n}"
        );
        // The second derivative amplifies coefficient rounding by κ²,
        // so its floor grows with n; 1e−10 covers the largest grids.
        let d2 = spectral_derivative(&f, 2);
        let d2_exact = GridField::from_fn(g, test_signal_dxx);
        assert!(
            (&d2 - &d2_exact).max_norm() < 1e-10,
            "second derivative at n = {n}"
        );

        // Off-grid interpolation hits the underlying function.
        let targets: Vec<f64> = (0..7).map(|i| 0.123 + 0.83 * i as f64).collect();
        let interp = trig_interpolate(&f, &targets);
        for (&x, &v) in targets.iter().zip(&interp) {
            assert!(
                (v - test_signal(x)).abs() < 1e-12,
                "interpolation at n = {n}, x = {x}"
            );
        }
    }
}

#[test]
fn interpolation_at_nodes_reproduces_samples() {
    let g = PeriodicGrid::new(48, 5.0).unwrap();
    let f = GridField::from_fn(g, |x| (2.0 * PI * x / 5.0).sin() + 0.2);
    let s = analyze(&f);
    for j in 0..g.n() {
        let v = interpolate_spectrum(&s, g.point(j));
        assert!((v - f.values()[j]).abs() < 1e-13);
    }
}

#[test]
fn phase_shift_translates_band_limited_fields_exactly() {
    let g = PeriodicGrid::two_pi(64).unwrap();
    let f = GridField::from_fn(g, test_signal);
    let delta = 0.37;
    let shifted = phase_shift(&f, delta);
    let expect = GridField::from_fn(g, |x| test_signal(x - delta));
    assert!((&shifted - &expect).max_norm() < 1e-12);

    // Shifting by a full period is the identity.
    let full = phase_shift(&f, g.length());
    assert!((&full - &f).max_norm() < 1e-12);
}

#[test]
fn dealiased_product_matches_exact_product_of_low_modes() {
    // sin x · cos x = ½ sin 2x lives at mode 2 ≤ n/3, so dealiasing must
    // not disturb it.
    let g = PeriodicGrid::two_pi(32).unwrap();
    let a = GridField::from_fn(g, |x| x.sin());
    let b = GridField::from_fn(g, |x| x.cos());
    let p = dealiased_product(&a, &b).unwrap();
    let expect = GridField::from_fn(g, |x| 0.5 * (2.0 * x).sin());
    assert!((&p - &expect).max_norm() < 1e-13);
}

#[test]
fn dealias_removes_high_modes_only() {
    let g = PeriodicGrid::two_pi(24).unwrap();
    // Mode 3 survives (3·3 ≤ 24), mode 11 is removed (3·11 > 24).
    let f = GridField::from_fn(g, |x| (3.0 * x).sin() + 0.5 * (11.0 * x).cos());
    let cleaned = dealias_field(&f);
    let expect = GridField::from_fn(g, |x| (3.0 * x).sin());
    assert!((&cleaned - &expect).max_norm() < 1e-13);
}

#[test]
fn quadrature_and_mean_are_exact_on_trig_polynomials() {
    let g = PeriodicGrid::two_pi(32).unwrap();
    let f = GridField::from_fn(g, |x| 2.0 + (3.0 * x).cos());
    assert!((f.integrate() - 4.0 * PI).abs() < 1e-12);
    assert!((f.mean() - 2.0).abs() < 1e-13);
}

#[test]
fn grid_validation_rejects_bad_parameters() {
    assert!(matches!(make_grid(6, 1.0), Err(Error::InvalidGrid { .. })));
    assert!(matches!(make_grid(9, 1.0), Err(Error::InvalidGrid { .. })));
    assert!(matches!(make_grid(16, 0.0), Err(Error::InvalidGrid { .. })));
    assert!(matches!(
        make_grid(16, f64::NAN),
        Err(Error::InvalidGrid { .. })
    ));
    assert!(make_grid(8, 1.0).is_ok());
}

#[test]
fn mismatched_grids_are_rejected() {
    let a = GridField::from_fn(PeriodicGrid::two_pi(16).unwrap(), |x| x.sin());
    let b = GridField::from_fn(PeriodicGrid::two_pi(32).unwrap(), |x| x.sin());
    assert!(matches!(
        dealiased_product(&a, &b),
        Err(Error::GridMismatch { .. })
    ));
}

proptest! {
    /// Round trip is exact (to rounding) for arbitrary bounded samples.
    #[test]
    fn prop_roundtrip_is_identity(values in prop::collection::vec(-10.0f64..10.0, 32)) {
        let g = PeriodicGrid::two_pi(32).unwrap();
        let f = GridField::from_values(g, values).unwrap();
        let back = synthesize(&analyze(&f));
        prop_assert!((&back - &f).max_norm() < 1e-12);
    }

    /// The interpolant of arbitrary samples passes through the nodes.
    #[test]
    fn prop_interpolant_matches_nodes(values in prop::collection::vec(-5.0f64..5.0, 16)) {
        let g = PeriodicGrid::two_pi(16).unwrap();
        let f = GridField::from_values(g, values).unwrap();
        let s = analyze(&f);
        for j in 0..g.n() {
            prop_assert!((interpolate_spectrum(&s, g.point(j)) - f.values()[j]).abs() < 1e-12);
        }
    }

    /// d/dx is linear: D(a f + b g) = a Df + b Dg.
    #[test]
    fn prop_derivative_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let g = PeriodicGrid::two_pi(32).unwrap();
        let f1 = GridField::from_fn(g, |x| (2.0 * x).sin());
        let f2 = GridField::from_fn(g, |x| (3.0 * x).cos());
        let combo = &f1.scaled(a) + &f2.scaled(b);
        let lhs = spectral_derivative(&combo, 1);
        let rhs = &spectral_derivative(&f1, 1).scaled(a) + &spectral_derivative(&f2, 1).scaled(b);
        prop_assert!((&lhs - &rhs).max_norm() < 1e-11);
    }
}
