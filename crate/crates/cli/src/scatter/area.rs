//! Exact intersection areas between grid cells and the supported shapes.
//!
//! Boundary cells get fractional weights equal to the exact area fraction of
//! the cell covered by the shape:
//! * polygons: Sutherland–Hodgman clipping of the polygon against the cell
//!   rectangle followed by the shoelace formula (exact up to rounding);
//! * disks: inclusion–exclusion of a closed-form "quadrant area" primitive
//!   (area of the disk below-and-left of a corner), again exact;
//! * sector patches (wedge ∩ disk): cells interior to the wedge reuse the
//!   exact disk formula, cells cut by a straight wedge edge but inside the
//!   radius use exact polygon clipping, and only the handful of cells where
//!   the circular arc meets a wedge edge fall back to dense midpoint
//!   sampling.

/// Signed area of a polygon (positive for counter-clockwise vertex order).
pub fn polygon_signed_area(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let [x0, y0] = pts[i];
        let [x1, y1] = pts[(i + 1) % n];
        s += x0 * y1 - x1 * y0;
    }
    0.5 * s
}

/// Clips `pts` against the half-plane `f(p) >= 0`, where `f` is affine.
fn clip_halfplane(pts: &[[f64; 2]], f: impl Fn(&[f64; 2]) -> f64) -> Vec<[f64; 2]> {
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 4);
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let fa = f(&a);
        let fb = f(&b);
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0) {
            let t = fa / (fa - fb);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

/// Clips a polygon against an axis-aligned rectangle.
pub fn clip_polygon_to_rect(
    pts: &[[f64; 2]],
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
) -> Vec<[f64; 2]> {
    let mut p = pts.to_vec();
    p = clip_halfplane(&p, |q| q[0] - x0);
    p = clip_halfplane(&p, |q| x1 - q[0]);
    p = clip_halfplane(&p, |q| q[1] - y0);
    p = clip_halfplane(&p, |q| y1 - q[1]);
    p
}

/// Area of `polygon ∩ [x0,x1]×[y0,y1]`. Vertex order of the input does not
/// matter; the result is always nonnegative.
pub fn polygon_cell_area(pts: &[[f64; 2]], x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    let clipped = clip_polygon_to_rect(pts, x0, y0, x1, y1);
    polygon_signed_area(&clipped).abs()
}

/// Antiderivative of `u ↦ √(R²−u²)` on `[−R, R]`.
fn circle_column(u: f64, r: f64) -> f64 {
    let u = u.clamp(-r, r);
    0.5 * (u * (r * r - u * u).max(0.0).sqrt() + r * r * (u / r).asin())
}

/// Area of `{u² + v² ≤ R²} ∩ {u ≤ x} ∩ {v ≤ y}` for a disk centred at the
/// origin.
fn disk_quadrant_area(x: f64, y: f64, r: f64) -> f64 {
    if y <= -r || x <= -r {
        return 0.0;
    }
    let xc = x.min(r);
    if y >= r {
        // Full columns up to xc.
        return 2.0 * (circle_column(xc, r) - circle_column(-r, r));
    }
    // |y| < r: the chord v = y crosses the circle at u = ±s0.
    let s0 = (r * r - y * y).max(0.0).sqrt();
    let mut a = 0.0;
    if y >= 0.0 {
        // Outside |u| ≤ s0 the full column 2√(R²−u²) lies below the chord.
        let left_hi = xc.min(-s0);
        a += 2.0 * (circle_column(left_hi, r) - circle_column(-r, r));
        if xc > s0 {
            a += 2.0 * (circle_column(xc, r) - circle_column(s0, r));
        }
    }
    if xc > -s0 {
        // Central band: column height y + √(R²−u²).
        let hi = xc.min(s0);
        a += y * (hi + s0) + circle_column(hi, r) - circle_column(-s0, r);
    }
    a.max(0.0)
}

/// Area of `disk(center, radius) ∩ [x0,x1]×[y0,y1]` (exact closed form).
pub fn disk_cell_area(
    center: [f64; 2],
    radius: f64,
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
) -> f64 {
    let (a, b) = (x0 - center[0], x1 - center[0]);
    let (c, d) = (y0 - center[1], y1 - center[1]);
    let j = |x: f64, y: f64| disk_quadrant_area(x, y, radius);
    (j(b, d) - j(a, d) - j(b, c) + j(a, c)).max(0.0)
}

/// Wedge `{0 ≤ θ ≤ ω}` membership test (vertex at the origin).
fn in_wedge(p: [f64; 2], omega: f64) -> bool {
    let [x, y] = p;
    if x == 0.0 && y == 0.0 {
        return true;
    }
    let mut theta = y.atan2(x);
    if theta < 0.0 {
        theta += 2.0 * core::f64::consts::PI;
    }
    theta <= omega
}

/// Area of `cell ∩ wedge(ω)` by exact half-plane clipping. The wedge
/// `{0 ≤ θ ≤ ω}` is convex for ω ≤ π and has a convex complement for ω ≥ π.
fn wedge_cell_area(omega: f64, x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    let cell = [[x0, y0], [x1, y0], [x1, y1], [x0, y1]];
    let (s, c) = omega.sin_cos();
    if omega <= core::f64::consts::PI {
        let mut p = clip_halfplane(&cell, |q| q[1]);
        p = clip_halfplane(&p, |q| q[0] * s - q[1] * c);
        polygon_signed_area(&p).abs()
    } else {
        // Complement wedge {ω ≤ θ ≤ 2π} = {y ≤ 0} ∩ {x sin ω − y cos ω ≤ 0}.
        let mut p = clip_halfplane(&cell, |q| -q[1]);
        p = clip_halfplane(&p, |q| -(q[0] * s - q[1] * c));
        let cell_area = (x1 - x0) * (y1 - y0);
        (cell_area - polygon_signed_area(&p).abs()).max(0.0)
    }
}

/// Area of `sector(ω, R) ∩ [x0,x1]×[y0,y1]` where the sector is
/// `{0 ≤ θ ≤ ω, r ≤ R}` with vertex at the origin.
///
/// Exact except for cells where the circular arc crosses a wedge edge, which
/// are resolved by 128×128 midpoint sampling.
pub fn sector_cell_area(omega: f64, radius: f64, x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    let cell_area = (x1 - x0) * (y1 - y0);
    if cell_area <= 0.0 {
        return 0.0;
    }
    // Distance from the origin to the cell; reject cells clear of the disk.
    let nx = 0.0_f64.clamp(x0, x1);
    let ny = 0.0_f64.clamp(y0, y1);
    if (nx * nx + ny * ny).sqrt() >= radius {
        return 0.0;
    }
    let wedge_area = wedge_cell_area(omega, x0, y0, x1, y1);
    if wedge_area <= 0.0 {
        return 0.0;
    }
    // Farthest corner decides whether the cell is fully inside the radius.
    let fx = if x0.abs() > x1.abs() { x0 } else { x1 };
    let fy = if y0.abs() > y1.abs() { y0 } else { y1 };
    let far_r = (fx * fx + fy * fy).sqrt();
    if far_r <= radius {
        // Entirely inside the disk: the wedge clip is the exact answer.
        return wedge_area;
    }
    if (wedge_area - cell_area).abs() <= 1e-12 * cell_area {
        // Entirely inside the wedge: the disk formula is the exact answer.
        return disk_cell_area([0.0, 0.0], radius, x0, y0, x1, y1);
    }
    // Arc meets a wedge edge inside this cell: dense midpoint sampling.
    const S: usize = 128;
    let dx = (x1 - x0) / S as f64;
    let dy = (y1 - y0) / S as f64;
    let mut hits = 0usize;
    for iy in 0..S {
        let py = y0 + (iy as f64 + 0.5) * dy;
        for ix in 0..S {
            let px = x0 + (ix as f64 + 0.5) * dx;
            if px * px + py * py <= radius * radius && in_wedge([px, py], omega) {
                hits += 1;
            }
        }
    }
    cell_area * hits as f64 / (S * S) as f64
}
