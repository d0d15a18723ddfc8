//! Cell-quadrature weights for the outgoing kernel `Φ_k(x) = (i/4)H₀⁽¹⁾(k|x|)`
//! and their padded FFT for fast convolution application.
//!
//! `Φ_k` splits into a smooth part and the logarithmic singularity,
//!
//! ```text
//! Φ_k(x) = S_k(x) − (1/2π) ln|x|,    S_k(0) = i/4 − (ln(k/2) + γ)/(2π),
//! ```
//!
//! so the weight for a target-to-source cell offset integrates the log part
//! in closed form over the square cell (exactly, via the corner
//! antiderivative below) and takes the smooth part at the cell midpoint. Far
//! cells use the plain midpoint rule. Only the real part is corrected:
//! `Im Φ_k = (1/4)J₀(k|x|)` is entire, and keeping its midpoint value exact
//! at every offset makes the discrete optical-theorem identity hold to
//! solver tolerance (see the tests).

use super::fft2::Fft2;
use super::ScatterError;
use cornerfield_core::specfun;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Euler–Mascheroni constant (pinned against `−digamma(1)` in the tests).
pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Corner antiderivative of `ln √(x²+y²)`: `∂²A/∂x∂y = ln|(x,y)|`, odd in
/// each argument, so `∫_{[a,b]×[c,d]} ln|y| dy = A(b,d)−A(a,d)−A(b,c)+A(a,c)`.
fn log_corner(x: f64, y: f64) -> f64 {
    if x == 0.0 || y == 0.0 {
        return 0.0;
    }
    let r2 = x * x + y * y;
    0.5 * x * y * r2.ln() - 1.5 * x * y
        + 0.5 * x * x * (y / x).atan()
        + 0.5 * y * y * (x / y).atan()
}

/// `∫_cell ln|y| dy` over the square cell of side `delta` centred at
/// `(cx, cy)` (exact).
pub(crate) fn log_integral_over_cell(cx: f64, cy: f64, delta: f64) -> f64 {
    let h = 0.5 * delta;
    log_corner(cx + h, cy + h) - log_corner(cx - h, cy + h) - log_corner(cx + h, cy - h)
        + log_corner(cx - h, cy - h)
}

/// Quadrature weight `≈ ∫_cell Φ_k(x_offset − y) dy` for a source cell of
/// side `delta` at the given center offset from the target point.
fn cell_weight(k: f64, rx: f64, ry: f64, delta: f64) -> Result<Complex64, ScatterError> {
    let cell = delta * delta;
    let dist = (rx * rx + ry * ry).sqrt();
    let smooth0 = Complex64::new(-((0.5 * k).ln() + EULER_GAMMA) / (2.0 * PI), 0.25);
    if dist == 0.0 {
        // S_k(0)·Δ² − (1/2π)·∫ ln|y|.
        return Ok(smooth0 * cell - Complex64::new(log_integral_over_cell(0.0, 0.0, delta) / (2.0 * PI), 0.0));
    }
    let phi = Complex64::new(0.0, 0.25) * specfun::cylinder_hankel0(k * dist)?;
    let near = rx.abs() <= 3.5 * delta && ry.abs() <= 3.5 * delta;
    if near {
        // Replace the midpoint value of the −(1/2π)ln|x| part by its exact
        // cell integral; the smooth remainder keeps its midpoint value. The
        // log of the *scaled* distance k|x| only shifts the smooth part.
        let exact_log = log_integral_over_cell(rx, ry, delta) / (2.0 * PI);
        Ok(phi * cell + Complex64::new(dist.ln() * cell / (2.0 * PI) - exact_log, 0.0))
    } else {
        Ok(phi * cell)
    }
}

/// Padded kernel table on the doubled grid, stored in frequency space.
pub struct KernelTable {
    n: usize,
    k: f64,
    /// FFT of the `(2n)×(2n)` offset table.
    spectrum: Vec<Complex64>,
    fft: Fft2,
}

impl KernelTable {
    /// Builds the weight table for an `n×n` grid of cells of side `delta`.
    pub fn new(n: usize, delta: f64, k: f64) -> Result<Self, ScatterError> {
        if n == 0 || !(delta > 0.0) || !(k > 0.0) {
            return Err(ScatterError::InvalidInput(format!(
                "kernel table needs n ≥ 1, Δ > 0, k > 0 (got n={n}, Δ={delta}, k={k})"
            )));
        }
        let m = 2 * n;
        let mut table = vec![Complex64::new(0.0, 0.0); m * m];
        // Index p encodes the offset r = p (p < n) or p − 2n (p ≥ n); the
        // slot p = n (offset −n) is never touched by the convolution.
        for py in 0..m {
            let ry = if py < n { py as i64 } else { py as i64 - m as i64 };
            for px in 0..m {
                let rx = if px < n { px as i64 } else { px as i64 - m as i64 };
                table[py * m + px] = cell_weight(k, rx as f64 * delta, ry as f64 * delta, delta)?;
            }
        }
        let fft = Fft2::new(m);
        fft.forward(&mut table);
        Ok(KernelTable { n, k, spectrum: table, fft })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    /// Applies `v ↦ (G * v)` restricted to the `n×n` grid, where `G` is the
    /// offset table: `out[p] = Σ_q G[p−q] v[q]`.
    pub fn convolve(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let m = 2 * n;
        debug_assert_eq!(v.len(), n * n);
        let mut pad = vec![Complex64::new(0.0, 0.0); m * m];
        for iy in 0..n {
            pad[iy * m..iy * m + n].copy_from_slice(&v[iy * n..(iy + 1) * n]);
        }
        self.fft.forward(&mut pad);
        for (p, s) in pad.iter_mut().zip(&self.spectrum) {
            *p *= s;
        }
        self.fft.inverse(&mut pad);
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for iy in 0..n {
            out[iy * n..(iy + 1) * n].copy_from_slice(&pad[iy * m..iy * m + n]);
        }
        out
    }
}
