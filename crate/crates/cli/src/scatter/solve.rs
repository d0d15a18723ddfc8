//! Matrix-free Krylov solution of the volume-potential equation and the
//! far-field functionals of the solution.

use super::kernel::KernelTable;
use super::{incident_values, ContrastField, IncidentField, ScatterError};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Total field on the contrast grid together with solver diagnostics.
#[derive(Debug, Clone)]
pub struct TotalField {
    pub n: usize,
    pub half_extent: f64,
    pub k: f64,
    /// Row-major grid of `u` values, co-registered with the contrast cells.
    pub values: Vec<Complex64>,
    /// Final relative residual of the discrete integral equation.
    pub residual: f64,
    pub iterations: usize,
    /// Relative residual after each iteration.
    pub history: Vec<f64>,
}

/// Far-field samples at `M ≥ 64` uniform angles, with the stored L²(S¹) norm.
#[derive(Debug, Clone)]
pub struct FarFieldPattern {
    pub k: f64,
    pub values: Vec<Complex64>,
}

impl FarFieldPattern {
    pub fn angles(&self) -> Vec<f64> {
        let m = self.values.len();
        (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect()
    }

    /// `‖u∞‖_{L²(S¹)}` by the trapezoid rule over the uniform angle grid.
    pub fn l2_norm(&self) -> f64 {
        let m = self.values.len() as f64;
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * 2.0 * PI / m).sqrt()
    }

    pub fn min_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Iteration controls for the Krylov solve.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Target relative residual.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-8, max_iterations: 800 }
    }
}

/// Smallest grid size satisfying the ten-cells-per-wavelength guard
/// `n ≥ 10·(2L)·k/(2π)`.
pub fn min_grid_for(k: f64, half_extent: f64) -> usize {
    (10.0 * 2.0 * half_extent * k / (2.0 * PI)).ceil() as usize
}

/// Solves the volume-potential equation with the resolution guard enforced.
pub fn solve(
    field: &ContrastField,
    k: f64,
    inc: &IncidentField,
) -> Result<TotalField, ScatterError> {
    let needed = min_grid_for(k, field.half_extent());
    if field.n() < needed {
        return Err(ScatterError::Resolution { n: field.n(), needed });
    }
    solve_unchecked(field, k, inc, SolveOptions::default())
}

/// Solves without the resolution guard (used by `--force` and calibration).
pub fn solve_unchecked(
    field: &ContrastField,
    k: f64,
    inc: &IncidentField,
    opts: SolveOptions,
) -> Result<TotalField, ScatterError> {
    if let IncidentField::Point { source } = inc {
        if field.shape().contains(*source) {
            return Err(ScatterError::InvalidInput(format!(
                "point source ({}, {}) lies inside the contrast support",
                source[0], source[1]
            )));
        }
    }
    let n = field.n();
    let b = incident_values(inc, k, &field.centers())?;
    let h = field.contrast();
    if h.iter().all(|v| v.norm_sqr() == 0.0) {
        return Ok(TotalField {
            n,
            half_extent: field.half_extent(),
            k,
            values: b,
            residual: 0.0,
            iterations: 0,
            history: Vec::new(),
        });
    }
    let table = KernelTable::new(n, field.cell_size(), k)?;
    let k2 = k * k;
    let apply = |u: &[Complex64]| -> Vec<Complex64> {
        let hu: Vec<Complex64> = u.iter().zip(&h).map(|(ui, hi)| ui * hi).collect();
        let conv = table.convolve(&hu);
        u.iter().zip(conv).map(|(ui, ci)| ui - k2 * ci).collect()
    };
    let (values, residual, history) = bicgstab(&apply, &b, &b, opts)?;
    Ok(TotalField {
        n,
        half_extent: field.half_extent(),
        k,
        values,
        residual,
        iterations: history.len(),
        history,
    })
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// BiCGStab for `A x = b`; returns `(x, relative residual, history)`.
fn bicgstab(
    apply: &dyn Fn(&[Complex64]) -> Vec<Complex64>,
    b: &[Complex64],
    x0: &[Complex64],
    opts: SolveOptions,
) -> Result<(Vec<Complex64>, f64, Vec<f64>), ScatterError> {
    let nb = norm(b);
    if nb == 0.0 {
        return Ok((vec![Complex64::new(0.0, 0.0); b.len()], 0.0, Vec::new()));
    }
    let mut x = x0.to_vec();
    let ax = apply(&x);
    let mut r: Vec<Complex64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
    let rhat = r.clone();
    let mut history = Vec::new();
    let mut rel = norm(&r) / nb;
    if rel <= opts.tol {
        return Ok((x, rel, history));
    }
    let mut rho = Complex64::new(1.0, 0.0);
    let mut alpha = Complex64::new(1.0, 0.0);
    let mut omega = Complex64::new(1.0, 0.0);
    let mut v = vec![Complex64::new(0.0, 0.0); b.len()];
    let mut p = vec![Complex64::new(0.0, 0.0); b.len()];
    for _ in 0..opts.max_iterations {
        let rho_new = dot(&rhat, &r);
        if rho_new.norm() < 1e-300 || omega.norm() < 1e-300 {
            break; // breakdown
        }
        let beta = (rho_new / rho) * (alpha / omega);
        for i in 0..p.len() {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        v = apply(&p);
        let denom = dot(&rhat, &v);
        if denom.norm() < 1e-300 {
            break;
        }
        alpha = rho_new / denom;
        let s: Vec<Complex64> = r.iter().zip(&v).map(|(ri, vi)| ri - alpha * vi).collect();
        if norm(&s) / nb <= opts.tol {
            for i in 0..x.len() {
                x[i] += alpha * p[i];
            }
            rel = norm(&s) / nb;
            history.push(rel);
            return Ok((x, rel, history));
        }
        let t = apply(&s);
        let tt = dot(&t, &t);
        if tt.norm() < 1e-300 {
            break;
        }
        omega = dot(&t, &s) / tt;
        for i in 0..x.len() {
            x[i] += alpha * p[i] + omega * s[i];
        }
        r = s.iter().zip(&t).map(|(si, ti)| si - omega * ti).collect();
        rho = rho_new;
        rel = norm(&r) / nb;
        history.push(rel);
        if rel <= opts.tol {
            return Ok((x, rel, history));
        }
    }
    Err(ScatterError::SolverFailure {
        iterations: history.len(),
        residual: rel,
        history,
    })
}

/// Far-field constant `c(k) = (e^{iπ/4}/√(8πk))·k²`.
fn far_constant(k: f64) -> Complex64 {
    Complex64::from_polar(k * k / (8.0 * PI * k).sqrt(), PI / 4.0)
}

/// Far-field value in direction `dir` (unit vector):
/// `u∞(x̂) = c(k) Σ_cells e^{−ik x̂·y} (q−1) u Δ²`.
pub fn far_field_at(
    field: &ContrastField,
    total: &TotalField,
    dir: [f64; 2],
) -> Complex64 {
    let k = total.k;
    let cell = field.cell_size() * field.cell_size();
    let h = field.contrast();
    let centers = field.centers();
    let mut s = Complex64::new(0.0, 0.0);
    for ((hi, ui), y) in h.iter().zip(&total.values).zip(&centers) {
        if hi.norm_sqr() == 0.0 {
            continue;
        }
        let phase = -k * (dir[0] * y[0] + dir[1] * y[1]);
        s += Complex64::from_polar(1.0, phase) * hi * ui;
    }
    far_constant(k) * s * cell
}

/// Far-field pattern at `m_angles ≥ 64` uniform angles.
pub fn far_field(
    field: &ContrastField,
    k: f64,
    total: &TotalField,
    m_angles: usize,
) -> Result<FarFieldPattern, ScatterError> {
    if m_angles < 64 {
        return Err(ScatterError::InvalidInput(format!(
            "far field needs at least 64 angular samples, got {m_angles}"
        )));
    }
    if (k - total.k).abs() > 1e-12 * k.max(1.0) {
        return Err(ScatterError::InvalidInput(format!(
            "far-field wavenumber {k} does not match the solved field ({})",
            total.k
        )));
    }
    if total.n != field.n() {
        return Err(ScatterError::InvalidInput(
            "total field and contrast live on different grids".into(),
        ));
    }
    let values = (0..m_angles)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / m_angles as f64;
            far_field_at(field, total, [t.cos(), t.sin()])
        })
        .collect();
    Ok(FarFieldPattern { k, values })
}

/// Relative optical-theorem residual for real contrasts:
/// `‖u∞‖²_{L²(S¹)} = √(8π/k) · Im[e^{−iπ/4} u∞(d)]` where `d` is the incident
/// plane-wave direction. Returns
/// `|‖u∞‖² − √(8π/k)·Im(e^{−iπ/4}u∞(d))| / ‖u∞‖²`.
pub fn optical_residual(far: &FarFieldPattern, forward: Complex64) -> f64 {
    let lhs = far.l2_norm().powi(2);
    let rhs = (8.0 * PI / far.k).sqrt() * (Complex64::from_polar(1.0, -PI / 4.0) * forward).im;
    (lhs - rhs).abs() / lhs.max(f64::MIN_POSITIVE)
}
