//! Periodic pseudospectral calculus on a uniform grid.
//!
//! A real field sampled at `n` equispaced nodes of `[0, L)` is identified
//! with its trigonometric interpolant
//!
//! ```text
//! f(x) = Σ_{k=-n/2}^{n/2-1} c_k exp(2πi k x / L),   c_{-k} = conj(c_k),
//! ```
//!
//! so differentiation, off-grid evaluation and translation are exact for
//! band-limited data. Quadrature is the rectangle rule, which integrates
//! every mode except multiples of `n` exactly. Products are formed
//! pointwise and cleaned with the two-thirds rule (`|k| > n/3` zeroed) so
//! that quadratic nonlinearities of band-limited fields stay alias-free.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
// Supplies sin/cos/exp/… on f64 in the no_std build. Unused when a test
// build pulls std into the graph (dev-deps unify num-traits/std) and the
// inherent f64 methods shadow the trait ones.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Smallest admissible grid; below this the two-thirds rule keeps nothing.
pub const MIN_POINTS: usize = 8;

/// Uniform periodic grid: `n` nodes `x_j = j L / n` on `[0, L)`.
///
/// `n` must be even and at least [`MIN_POINTS`]. The grid is `Copy`; fields
/// carry their grid by value and operations insist the grids agree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicGrid {
    n: usize,
    length: f64,
}

/// Builds a grid, validating the node count and period.
pub fn make_grid(n: usize, length: f64) -> Result<PeriodicGrid> {
    PeriodicGrid::new(n, length)
}

impl PeriodicGrid {
    /// Creates a grid with `n` nodes on `[0, length)`.
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < MIN_POINTS || n % 2 != 0 || !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidGrid { n, length });
        }
        Ok(Self { n, length })
    }

    /// Creates the standard grid on `[0, 2π)`.
    pub fn two_pi(n: usize) -> Result<Self> {
        Self::new(n, 2.0 * PI)
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Period of the domain.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Node spacing `L / n`.
    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    /// The `j`-th node `j L / n`.
    pub fn point(&self, j: usize) -> f64 {
        debug_assert!(j < self.n);
        j as f64 * self.length / self.n as f64
    }

    /// All nodes in order.
    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Integer wavenumber stored at FFT slot `i`: `0, 1, …, n/2−1, −n/2, …, −1`.
    pub fn wavenumber(&self, slot: usize) -> i64 {
        debug_assert!(slot < self.n);
        if slot < self.n / 2 {
            slot as i64
        } else {
            slot as i64 - self.n as i64
        }
    }

    /// Physical (angular) wavenumber `2πk/L` of integer mode `k`.
    pub fn angular(&self, k: i64) -> f64 {
        2.0 * PI * k as f64 / self.length
    }

    /// Integer mode beyond which the two-thirds rule zeroes coefficients.
    pub fn dealias_cutoff(&self) -> i64 {
        // |k| > n/3 is removed; with integer arithmetic: 3|k| > n.
        (self.n / 3) as i64
    }

    /// True when both grids have the same node count and period.
    pub fn same_grid(&self, other: &Self) -> bool {
        self.n == other.n && self.length == other.length
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// Reduces `x` to the fundamental period `[0, L)`.
    pub fn wrap(&self, x: f64) -> f64 {
        let w = x - (x / self.length).floor() * self.length;
        // Guard against w == L from rounding when x is a tiny negative number.
        if w >= self.length {
            w - self.length
        } else {
            w
        }
    }
}

/// Real scalar field sampled on a [`PeriodicGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    grid: PeriodicGrid,
    values: Vec<f64>,
}

impl GridField {
    /// Wraps samples, checking the count matches the grid.
    pub fn from_values(grid: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::ValueCount {
                got: values.len(),
                expected: grid.n(),
            });
        }
        Ok(Self { grid, values })
    }

    /// Samples a closure at the grid nodes.
    pub fn from_fn(grid: PeriodicGrid, mut f: impl FnMut(f64) -> f64) -> Self {
        let values = (0..grid.n()).map(|j| f(grid.point(j))).collect();
        Self { grid, values }
    }

    /// The zero field.
    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.n()],
        }
    }

    /// The constant field `c`.
    pub fn constant(grid: PeriodicGrid, c: f64) -> Self {
        Self {
            grid,
            values: vec![c; grid.n()],
        }
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `max_j |f_j|`.
    pub fn max_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// True when every sample is finite.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Rectangle-rule integral `(L/n) Σ f_j`; exact for trigonometric
    /// polynomials of degree below `n`.
    pub fn integrate(&self) -> f64 {
        self.grid.spacing() * self.values.iter().sum::<f64>()
    }

    /// Mean value `(1/L) ∫ f dx`.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.grid.n() as f64
    }

    /// Pointwise product on the shared grid (no dealiasing).
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }

    /// Returns `self + c` pointwise.
    pub fn offset(&self, c: f64) -> Self {
        let values = self.values.iter().map(|v| v + c).collect();
        Self {
            grid: self.grid,
            values,
        }
    }

    /// Returns `s · self`.
    pub fn scaled(&self, s: f64) -> Self {
        let values = self.values.iter().map(|v| s * v).collect();
        Self {
            grid: self.grid,
            values,
        }
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &GridField {
            type Output = GridField;
            /// Pointwise operation. Panics if the grids differ.
            fn $method(self, rhs: &GridField) -> GridField {
                assert!(
                    self.grid.same_grid(&rhs.grid),
                    "field operation on mismatched grids"
                );
                let values = self
                    .values
                    .iter()
                    .zip(&rhs.values)
                    .map(|(a, b)| a $op b)
                    .collect();
                GridField { grid: self.grid, values }
            }
        }
    };
}

field_binop!(Add, add, +);
field_binop!(Sub, sub, -);

impl Mul<f64> for &GridField {
    type Output = GridField;
    fn mul(self, s: f64) -> GridField {
        self.scaled(s)
    }
}

impl Neg for &GridField {
    type Output = GridField;
    fn neg(self) -> GridField {
        self.scaled(-1.0)
    }
}

/// Fourier coefficients of a real field, in FFT slot order
/// (`k = 0, 1, …, n/2−1, −n/2, …, −1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: PeriodicGrid,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    /// Wraps coefficients, checking the count matches the grid.
    pub fn from_coeffs(grid: PeriodicGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n() {
            return Err(Error::ValueCount {
                got: coeffs.len(),
                expected: grid.n(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n()],
        }
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Coefficient of integer mode `k ∈ {−n/2, …, n/2−1}`.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let n = self.grid.n() as i64;
        assert!(k >= -n / 2 && k < n / 2, "mode {k} out of range");
        let slot = if k >= 0 { k } else { k + n } as usize;
        self.coeffs[slot]
    }

    /// Zeroes every mode with `|k| > n/3` (two-thirds rule). The exact
    /// integer criterion `3|k| > n` avoids floating-point edge cases and
    /// always removes the Nyquist mode.
    pub fn dealias(&mut self) {
        let n = self.grid.n() as i64;
        for (slot, c) in self.coeffs.iter_mut().enumerate() {
            let k = if (slot as i64) < n / 2 {
                slot as i64
            } else {
                slot as i64 - n
            };
            if 3 * k.abs() > n {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// True when every mode with `3|k| > n` vanishes.
    pub fn is_dealiased(&self) -> bool {
        let n = self.grid.n() as i64;
        self.coeffs.iter().enumerate().all(|(slot, c)| {
            let k = if (slot as i64) < n / 2 {
                slot as i64
            } else {
                slot as i64 - n
            };
            3 * k.abs() <= n || (c.re == 0.0 && c.im == 0.0)
        })
    }
}

/// Returns a dealiased copy of `s`.
pub fn dealias(s: &Spectrum) -> Spectrum {
    let mut out = s.clone();
    out.dealias();
    out
}

// ---------------------------------------------------------------------------
// Discrete Fourier transform engine
// ---------------------------------------------------------------------------

/// DFT plan: precomputed twiddle table for one transform size. Uses the
/// iterative radix-2 algorithm for powers of two and Bluestein's chirp-z
/// reduction to a power-of-two convolution otherwise.
pub(crate) struct Dft {
    n: usize,
    /// `twiddle[j] = exp(-2πi j / n)` for `j < n` (power-of-two sizes only).
    twiddle: Vec<Complex64>,
    /// Chirp-z plan, present exactly when `n` is not a power of two.
    bluestein: Option<BluesteinPlan>,
}

/// Bluestein chirp-z data: expresses a length-`n` DFT as a circular
/// convolution of length `m = next_power_of_two(2n − 1)`, which the radix-2
/// path evaluates. This keeps FFT-grade rounding error at every size.
struct BluesteinPlan {
    m: usize,
    /// `chirp[j] = exp(−iπ j²/n)`, with `j²` reduced mod `2n` before the
    /// trig call so the argument stays small and fully accurate.
    chirp: Vec<Complex64>,
    /// Forward size-`m` FFT of the symmetric conjugate-chirp kernel.
    kernel_hat: Vec<Complex64>,
    /// Twiddle table for the size-`m` radix-2 stages.
    twiddle_m: Vec<Complex64>,
}

fn twiddle_table(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let th = -2.0 * PI * j as f64 / n as f64;
            Complex64::new(th.cos(), th.sin())
        })
        .collect()
}

/// In-place iterative radix-2 transform; `twiddle.len() == data.len()`,
/// both a power of two.
fn radix2(data: &mut [Complex64], twiddle: &[Complex64], inverse: bool) {
    let n = data.len();
    // Bit-reversal permutation.
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let mut w = twiddle[k * stride];
                if inverse {
                    w = w.conj();
                }
                let a = data[start + k];
                let b = data[start + k + len / 2] * w;
                data[start + k] = a + b;
                data[start + k + len / 2] = a - b;
            }
        }
        len *= 2;
    }
}

impl BluesteinPlan {
    fn new(n: usize) -> Self {
        let m = (2 * n - 1).next_power_of_two();
        let chirp: Vec<Complex64> = (0..n)
            .map(|j| {
                // exp(−iπ j²/n) has period 2n in j²; reduce first.
                let q = (j * j) % (2 * n);
                let th = -PI * q as f64 / n as f64;
                Complex64::new(th.cos(), th.sin())
            })
            .collect();
        let twiddle_m = twiddle_table(m);
        let mut kernel = vec![Complex64::new(0.0, 0.0); m];
        kernel[0] = chirp[0].conj();
        for j in 1..n {
            kernel[j] = chirp[j].conj();
            kernel[m - j] = chirp[j].conj();
        }
        radix2(&mut kernel, &twiddle_m, false);
        Self {
            m,
            chirp,
            kernel_hat: kernel,
            twiddle_m,
        }
    }

    /// Forward DFT `X_k = Σ_j x_j e^{-2πi jk/n}` of `data` (length `n`).
    fn forward(&self, data: &mut [Complex64]) {
        let n = data.len();
        let mut buf = vec![Complex64::new(0.0, 0.0); self.m];
        for j in 0..n {
            buf[j] = data[j] * self.chirp[j];
        }
        radix2(&mut buf, &self.twiddle_m, false);
        for (b, &k) in buf.iter_mut().zip(&self.kernel_hat) {
            *b *= k;
        }
        radix2(&mut buf, &self.twiddle_m, true);
        let scale = 1.0 / self.m as f64;
        for k in 0..n {
            data[k] = buf[k] * self.chirp[k] * scale;
        }
    }
}

impl Dft {
    pub(crate) fn new(n: usize) -> Self {
        if n.is_power_of_two() {
            Self {
                n,
                twiddle: twiddle_table(n),
                bluestein: None,
            }
        } else {
            Self {
                n,
                twiddle: Vec::new(),
                bluestein: Some(BluesteinPlan::new(n)),
            }
        }
    }

    /// Unnormalized forward transform `X_k = Σ_j x_j e^{-2πi jk/n}`, in place.
    pub(crate) fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, false);
    }

    /// Unnormalized inverse transform `x_j = Σ_k X_k e^{+2πi jk/n}`, in place.
    pub(crate) fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, true);
    }

    fn transform(&self, data: &mut [Complex64], inverse: bool) {
        assert_eq!(data.len(), self.n);
        match &self.bluestein {
            None => radix2(data, &self.twiddle, inverse),
            Some(plan) => {
                // Inverse via conjugation: IDFT(x) = conj(DFT(conj(x))).
                if inverse {
                    for d in data.iter_mut() {
                        *d = d.conj();
                    }
                }
                plan.forward(data);
                if inverse {
                    for d in data.iter_mut() {
                        *d = d.conj();
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Public transform operations
// ---------------------------------------------------------------------------

/// Fourier analysis: coefficients of the trigonometric interpolant of `f`.
pub fn analyze(f: &GridField) -> Spectrum {
    let n = f.grid().n();
    let dft = Dft::new(n);
    analyze_with(&dft, f)
}

pub(crate) fn analyze_with(dft: &Dft, f: &GridField) -> Spectrum {
    let n = f.grid().n();
    let mut buf: Vec<Complex64> = f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    dft.forward(&mut buf);
    let scale = 1.0 / n as f64;
    for c in buf.iter_mut() {
        *c *= scale;
    }
    Spectrum {
        grid: f.grid(),
        coeffs: buf,
    }
}

/// Fourier synthesis: samples the interpolant back onto the grid nodes.
/// The imaginary residue of a conjugate-symmetric spectrum is discarded.
pub fn synthesize(s: &Spectrum) -> GridField {
    let dft = Dft::new(s.grid().n());
    synthesize_with(&dft, s)
}

pub(crate) fn synthesize_with(dft: &Dft, s: &Spectrum) -> GridField {
    let mut buf = s.coeffs().to_vec();
    dft.inverse(&mut buf);
    GridField {
        grid: s.grid(),
        values: buf.iter().map(|c| c.re).collect(),
    }
}

/// Multiplies a spectrum by the derivative symbol `(i 2πk/L)^order`,
/// zeroing the Nyquist mode for odd orders (where the symbol would be
/// spurious for real data).
pub fn derivative_spectrum(s: &Spectrum, order: u32) -> Spectrum {
    let grid = s.grid();
    let n = grid.n() as i64;
    let mut coeffs = s.coeffs().to_vec();
    for (slot, c) in coeffs.iter_mut().enumerate() {
        let k = grid.wavenumber(slot);
        if k == -n / 2 && order % 2 == 1 {
            *c = Complex64::new(0.0, 0.0);
            continue;
        }
        let ik = Complex64::new(0.0, grid.angular(k));
        *c *= ik.powu(order);
    }
    Spectrum { grid, coeffs }
}

/// Spectral derivative of integer `order ≥ 0`.
pub fn spectral_derivative(f: &GridField, order: u32) -> GridField {
    let s = analyze(f);
    synthesize(&derivative_spectrum(&s, order))
}

/// Evaluates the trigonometric interpolant of `s` at an arbitrary point.
/// The Nyquist mode contributes `Re c_{-n/2} · cos(κ_{n/2} x)`, the real
/// symmetric completion appropriate for real data.
pub fn interpolate_spectrum(s: &Spectrum, x: f64) -> f64 {
    let grid = s.grid();
    let n = grid.n();
    let mut acc = s.coeffs()[0].re;
    for k in 1..(n / 2) as i64 {
        let c = s.coeffs()[k as usize];
        let th = grid.angular(k) * x;
        acc += 2.0 * (c.re * th.cos() - c.im * th.sin());
    }
    let nyq = s.coeffs()[n / 2];
    acc += nyq.re * (grid.angular((n / 2) as i64) * x).cos();
    acc
}

/// Evaluates the trigonometric interpolant of `f` at each target point.
pub fn trig_interpolate(f: &GridField, targets: &[f64]) -> Vec<f64> {
    let s = analyze(f);
    targets.iter().map(|&x| interpolate_spectrum(&s, x)).collect()
}

/// Exact translation of the interpolant: returns samples of `f(x − delta)`.
/// The Nyquist mode, whose sine partner is invisible on the grid, is
/// attenuated by `cos(κ_{n/2} δ)`; dealiased fields are unaffected.
pub fn phase_shift(f: &GridField, delta: f64) -> GridField {
    let grid = f.grid();
    let n = grid.n();
    let mut s = analyze(f);
    for slot in 0..n {
        let k = grid.wavenumber(slot);
        let th = -grid.angular(k) * delta;
        if slot == n / 2 {
            s.coeffs[slot] *= th.cos();
        } else {
            s.coeffs[slot] *= Complex64::new(th.cos(), th.sin());
        }
    }
    synthesize(&s)
}

/// Pointwise product followed by the two-thirds rule, the standard
/// alias-free quadratic nonlinearity.
pub fn dealiased_product(a: &GridField, b: &GridField) -> Result<GridField> {
    let raw = a.product(b)?;
    Ok(dealias_field(&raw))
}

/// Projects a field onto the two-thirds band (`|k| ≤ n/3`).
pub fn dealias_field(f: &GridField) -> GridField {
    let mut s = analyze(f);
    s.dealias();
    synthesize(&s)
}
