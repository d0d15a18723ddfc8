//! Planar transmission scattering by the volume-potential (Lippmann–Schwinger)
//! equation.
//!
//! The medium is described by a refractive index `q` equal to `1` outside a
//! bounded shape `D ⊂ [−L, L]²`. For an incident field `u^in` satisfying
//! `Δu^in + k²u^in = 0`, the total field solves
//!
//! ```text
//! u(x) = u^in(x) + k² ∫ Φ_k(x−y) (q(y) − 1) u(y) dy,
//! Φ_k(x) = (i/4) H₀⁽¹⁾(k|x|),
//! ```
//!
//! which is the outgoing reformulation of `Δu + k²qu = 0`. The contrast
//! `q − 1` is supported in `D`; cells cut by `∂D` carry exact-area fractional
//! weights. The far field is sampled on uniform angles with the constant
//! `u∞(x̂) = (e^{iπ/4}/√(8πk)) k² ∫ e^{−ik x̂·y} (q−1) u dy`, locked against
//! the analytic disk solution in the test suite.

pub mod area;
mod fft2;
mod kernel;
mod oracle;
mod solve;
mod sweep;
mod transmission;


use cornerfield_core::specfun::{self, SpecFunError};
use num_complex::Complex64;
use std::f64::consts::PI;

pub use kernel::KernelTable;
pub use oracle::{disk_n0_ite, disk_n0_mismatch, disk_oracle, DiskOracle};
pub use solve::{
    far_field, far_field_at, min_grid_for, optical_residual, solve, solve_unchecked,
    FarFieldPattern, SolveOptions, TotalField,
};
pub use sweep::{calibrate_floor, k_grid, sweep, sweep_with_options, SweepRow, SweepTable};
pub use transmission::{flat_interface_pair, fornberg_weights, transmission_residual};

/// Errors from the scattering module.
#[derive(Debug, Clone, PartialEq)]
pub enum ScatterError {
    /// Malformed geometry, profile, or parameters.
    InvalidInput(String),
    /// A complex refractive index with negative imaginary part (active medium).
    NegativeAbsorption { cell: usize, im: f64 },
    /// Point source coincides with an evaluation point.
    PointSourceOnTarget { point: [f64; 2] },
    /// Grid too coarse for the requested wavenumber: needs `n ≥ needed`.
    Resolution { n: usize, needed: usize },
    /// Krylov iteration did not reach the target residual.
    SolverFailure {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },
    /// Mode-matching system for the disk solution is near-singular.
    OracleNearSingular { mode: u32 },
    /// Special-function evaluation failed.
    Special(SpecFunError),
}

impl core::fmt::Display for ScatterError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ScatterError::InvalidInput(m) => write!(f, "invalid input: {m}"),
            ScatterError::NegativeAbsorption { cell, im } => {
                write!(f, "cell {cell} has Im(q) = {im} < 0 (active media rejected)")
            }
            ScatterError::PointSourceOnTarget { point } => {
                write!(f, "point source coincides with evaluation point ({}, {})", point[0], point[1])
            }
            ScatterError::Resolution { n, needed } => {
                write!(f, "grid {n}×{n} under-resolves the wavelength; need n ≥ {needed} (≥ 10 cells per wavelength)")
            }
            ScatterError::SolverFailure { iterations, residual, .. } => {
                write!(f, "iterative solver stalled after {iterations} iterations at relative residual {residual:.3e}")
            }
            ScatterError::OracleNearSingular { mode } => {
                write!(f, "disk mode-matching system near-singular at angular mode {mode}")
            }
            ScatterError::Special(e) => write!(f, "special function: {e}"),
        }
    }
}

impl std::error::Error for ScatterError {}

impl From<SpecFunError> for ScatterError {
    fn from(e: SpecFunError) -> Self {
        ScatterError::Special(e)
    }
}

/// Support of the contrast.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// Disk of given center and radius.
    Disk { center: [f64; 2], radius: f64 },
    /// Simple polygon (vertex list, either orientation).
    Polygon { vertices: Vec<[f64; 2]> },
    /// Circular sector `{0 ≤ θ ≤ ω, r ≤ radius}` with vertex at the origin.
    Sector { omega: f64, radius: f64 },
}

impl Shape {
    /// Fraction of the cell `[x0,x1]×[y0,y1]` covered by the shape.
    pub fn cell_fraction(&self, x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
        let cell = (x1 - x0) * (y1 - y0);
        if cell <= 0.0 {
            return 0.0;
        }
        let a = match self {
            Shape::Disk { center, radius } => area::disk_cell_area(*center, *radius, x0, y0, x1, y1),
            Shape::Polygon { vertices } => area::polygon_cell_area(vertices, x0, y0, x1, y1),
            Shape::Sector { omega, radius } => {
                area::sector_cell_area(*omega, *radius, x0, y0, x1, y1)
            }
        };
        (a / cell).clamp(0.0, 1.0)
    }

    /// Point-membership test (closed shape).
    pub fn contains(&self, p: [f64; 2]) -> bool {
        match self {
            Shape::Disk { center, radius } => {
                let dx = p[0] - center[0];
                let dy = p[1] - center[1];
                dx * dx + dy * dy <= radius * radius
            }
            Shape::Polygon { vertices } => {
                // Even-odd ray crossing.
                let mut inside = false;
                let n = vertices.len();
                for i in 0..n {
                    let [xi, yi] = vertices[i];
                    let [xj, yj] = vertices[(i + 1) % n];
                    if (yi > p[1]) != (yj > p[1]) {
                        let xc = xi + (p[1] - yi) / (yj - yi) * (xj - xi);
                        if p[0] < xc {
                            inside = !inside;
                        }
                    }
                }
                inside
            }
            Shape::Sector { omega, radius } => {
                let r2 = p[0] * p[0] + p[1] * p[1];
                if r2 > radius * radius {
                    return false;
                }
                if r2 == 0.0 {
                    return true;
                }
                let mut theta = p[1].atan2(p[0]);
                if theta < 0.0 {
                    theta += 2.0 * PI;
                }
                theta <= *omega
            }
        }
    }

    /// Corner points of the shape boundary (empty for a disk).
    pub fn corners(&self) -> Vec<[f64; 2]> {
        match self {
            Shape::Disk { .. } => Vec::new(),
            Shape::Polygon { vertices } => vertices.clone(),
            Shape::Sector { omega, radius } => vec![
                [0.0, 0.0],
                [*radius, 0.0],
                [radius * omega.cos(), radius * omega.sin()],
            ],
        }
    }

    /// Largest |coordinate| reached by the shape (bounding-box radius).
    fn bound(&self) -> f64 {
        match self {
            Shape::Disk { center, radius } => center[0].abs().max(center[1].abs()) + radius,
            Shape::Polygon { vertices } => vertices
                .iter()
                .map(|v| v[0].abs().max(v[1].abs()))
                .fold(0.0, f64::max),
            Shape::Sector { radius, .. } => *radius,
        }
    }
}

/// Refractive-index profile on the shape interior; `q ≡ 1` outside.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `q = q0` on the shape.
    Constant { q0: Complex64 },
    /// `q(x) = 1 + Σ_j coeffs[j]·r^j` with `r = |x − reference|`; the
    /// reference point is the disk center, the sector vertex, or the polygon
    /// centroid. Captures higher-order-contact contrasts `q − 1 = O(r^l)`.
    Radial { coeffs: Vec<f64> },
    /// `q(x) = 1 + Σ c·x^a·y^b` over the listed monomial terms.
    Expression { terms: Vec<(Complex64, u32, u32)> },
}

impl Profile {
    fn reference(&self, shape: &Shape) -> [f64; 2] {
        match shape {
            Shape::Disk { center, .. } => *center,
            Shape::Sector { .. } => [0.0, 0.0],
            Shape::Polygon { vertices } => {
                let n = vertices.len().max(1) as f64;
                let (sx, sy) = vertices
                    .iter()
                    .fold((0.0, 0.0), |(ax, ay), v| (ax + v[0], ay + v[1]));
                [sx / n, sy / n]
            }
        }
    }

    /// Evaluates `q` at a point of the shape interior.
    pub fn value(&self, p: [f64; 2], shape: &Shape) -> Complex64 {
        match self {
            Profile::Constant { q0 } => *q0,
            Profile::Radial { coeffs } => {
                let c = self.reference(shape);
                let r = ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt();
                let mut q = Complex64::new(1.0, 0.0);
                let mut rp = 1.0;
                for &cj in coeffs {
                    q.re += cj * rp;
                    rp *= r;
                }
                q
            }
            Profile::Expression { terms } => {
                let mut q = Complex64::new(1.0, 0.0);
                for &(c, a, b) in terms {
                    q += c * p[0].powi(a as i32) * p[1].powi(b as i32);
                }
                q
            }
        }
    }
}

/// Contrast recorded at a shape corner (the "non-degenerate corner" witness).
#[derive(Debug, Clone, PartialEq)]
pub struct CornerContrast {
    pub corner: [f64; 2],
    /// `|q − 1|` evaluated at the corner.
    pub contrast: f64,
}

/// Discretised refractive index on a uniform grid over `[−L, L]²`.
///
/// Cell `(ix, iy)` (row-major index `iy·n + ix`) has center
/// `(−L + (ix+½)Δ, −L + (iy+½)Δ)` with `Δ = 2L/n`. Boundary cells store the
/// area-weighted effective value `q = 1 + frac·(q_profile − 1)` so that the
/// piecewise-constant contrast integrates exactly against constants.
#[derive(Debug, Clone)]
pub struct ContrastField {
    half_extent: f64,
    n: usize,
    q: Vec<Complex64>,
    shape: Shape,
    corner_contrast: Vec<CornerContrast>,
}

impl ContrastField {
    pub fn new(
        shape: Shape,
        profile: Profile,
        n: usize,
        half_extent: f64,
    ) -> Result<Self, ScatterError> {
        if n < 2 || half_extent <= 0.0 || !half_extent.is_finite() {
            return Err(ScatterError::InvalidInput(format!(
                "grid needs n ≥ 2 cells and positive half-extent, got n={n}, L={half_extent}"
            )));
        }
        match &shape {
            Shape::Disk { radius, .. } | Shape::Sector { radius, .. } if *radius <= 0.0 => {
                return Err(ScatterError::InvalidInput("shape radius must be positive".into()));
            }
            Shape::Sector { omega, .. } if !(*omega > 0.0 && *omega < 2.0 * PI) => {
                return Err(ScatterError::InvalidInput(format!(
                    "sector opening must lie in (0, 2π), got {omega}"
                )));
            }
            Shape::Polygon { vertices } if vertices.len() < 3 => {
                return Err(ScatterError::InvalidInput(
                    "polygon needs at least 3 vertices".into(),
                ));
            }
            _ => {}
        }
        if shape.bound() > half_extent {
            return Err(ScatterError::InvalidInput(format!(
                "shape extends to {:.3} beyond the computational box [−{half_extent}, {half_extent}]²",
                shape.bound()
            )));
        }
        let delta = 2.0 * half_extent / n as f64;
        let mut q = vec![Complex64::new(1.0, 0.0); n * n];
        for iy in 0..n {
            let y0 = -half_extent + iy as f64 * delta;
            for ix in 0..n {
                let x0 = -half_extent + ix as f64 * delta;
                let frac = shape.cell_fraction(x0, y0, x0 + delta, y0 + delta);
                if frac == 0.0 {
                    continue;
                }
                let center = [x0 + 0.5 * delta, y0 + 0.5 * delta];
                let qc = profile.value(center, &shape);
                let idx = iy * n + ix;
                if qc.im < -1e-12 {
                    return Err(ScatterError::NegativeAbsorption { cell: idx, im: qc.im });
                }
                q[idx] = Complex64::new(1.0, 0.0) + frac * (qc - Complex64::new(1.0, 0.0));
            }
        }
        let corner_contrast = shape
            .corners()
            .into_iter()
            .map(|corner| CornerContrast {
                contrast: (profile.value(corner, &shape) - Complex64::new(1.0, 0.0)).norm(),
                corner,
            })
            .collect();
        Ok(ContrastField { half_extent, n, q, shape, corner_contrast })
    }

    pub fn half_extent(&self) -> f64 {
        self.half_extent
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cell side length `Δ = 2L/n`.
    pub fn cell_size(&self) -> f64 {
        2.0 * self.half_extent / self.n as f64
    }

    /// Effective per-cell refractive index (row-major, `1` outside the shape).
    pub fn q(&self) -> &[Complex64] {
        &self.q
    }

    /// Per-cell contrast `q − 1`.
    pub fn contrast(&self) -> Vec<Complex64> {
        self.q.iter().map(|&v| v - Complex64::new(1.0, 0.0)).collect()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Contrast magnitudes at the shape corners.
    pub fn corner_contrast(&self) -> &[CornerContrast] {
        &self.corner_contrast
    }

    /// True if any cell carries a nonzero imaginary part (absorbing medium).
    pub fn has_complex_contrast(&self) -> bool {
        self.q.iter().any(|v| v.im != 0.0)
    }

    /// Center of cell `(ix, iy)`.
    pub fn cell_center(&self, ix: usize, iy: usize) -> [f64; 2] {
        let d = self.cell_size();
        [
            -self.half_extent + (ix as f64 + 0.5) * d,
            -self.half_extent + (iy as f64 + 0.5) * d,
        ]
    }

    /// All cell centers in row-major order.
    pub fn centers(&self) -> Vec<[f64; 2]> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for iy in 0..self.n {
            for ix in 0..self.n {
                out.push(self.cell_center(ix, iy));
            }
        }
        out
    }
}

/// Incident fields: plane wave, point source, or Herglotz superposition.
#[derive(Debug, Clone, PartialEq)]
pub enum IncidentField {
    /// `e^{ik d·x}` with unit direction `d`.
    Plane { direction: [f64; 2] },
    /// `Φ_k(x − y) = (i/4)H₀⁽¹⁾(k|x−y|)` with source `y` outside the support.
    Point { source: [f64; 2] },
    /// `∫_{S¹} g(d) e^{ik x·d} ds(d)` with `g` sampled at uniform angles;
    /// evaluated by the (spectrally accurate) trapezoid rule.
    Herglotz { density: Vec<Complex64> },
}

impl IncidentField {
    /// Unit plane-wave direction from a polar angle.
    pub fn plane_from_angle(alpha: f64) -> Self {
        IncidentField::Plane { direction: [alpha.cos(), alpha.sin()] }
    }

    fn validate(&self) -> Result<(), ScatterError> {
        match self {
            IncidentField::Plane { direction } => {
                let norm = (direction[0] * direction[0] + direction[1] * direction[1]).sqrt();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(ScatterError::InvalidInput(format!(
                        "plane-wave direction must be unit, |d| = {norm}"
                    )));
                }
            }
            IncidentField::Point { .. } => {}
            IncidentField::Herglotz { density } => {
                if density.is_empty() {
                    return Err(ScatterError::InvalidInput(
                        "herglotz density needs at least one direction sample".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Evaluates the incident field at the given points.
pub fn incident_values(
    inc: &IncidentField,
    k: f64,
    points: &[[f64; 2]],
) -> Result<Vec<Complex64>, ScatterError> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(ScatterError::InvalidInput(format!("wavenumber must be positive, got {k}")));
    }
    inc.validate()?;
    match inc {
        IncidentField::Plane { direction } => Ok(points
            .iter()
            .map(|p| (Complex64::i() * k * (direction[0] * p[0] + direction[1] * p[1])).exp())
            .collect()),
        IncidentField::Point { source } => {
            let mut out = Vec::with_capacity(points.len());
            for p in points {
                let r = ((p[0] - source[0]).powi(2) + (p[1] - source[1]).powi(2)).sqrt();
                if r < 1e-12 {
                    return Err(ScatterError::PointSourceOnTarget { point: *p });
                }
                let h = specfun::cylinder_hankel0(k * r)?;
                out.push(Complex64::new(0.0, 0.25) * h);
            }
            Ok(out)
        }
        IncidentField::Herglotz { density } => {
            let m = density.len();
            let w = 2.0 * PI / m as f64;
            let dirs: Vec<[f64; 2]> = (0..m)
                .map(|j| {
                    let t = 2.0 * PI * j as f64 / m as f64;
                    [t.cos(), t.sin()]
                })
                .collect();
            Ok(points
                .iter()
                .map(|p| {
                    let mut s = Complex64::new(0.0, 0.0);
                    for (g, d) in density.iter().zip(&dirs) {
                        s += g * (Complex64::i() * k * (d[0] * p[0] + d[1] * p[1])).exp();
                    }
                    w * s
                })
                .collect())
        }
    }
}
