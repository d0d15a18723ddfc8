//! Quadrature rules: Gauss–Legendre on [−1, 1] (and affine images), a
//! full-sphere product rule, and a spherical-cap rule for θ ∈ [0, ω].

use alloc::vec::Vec;

use crate::fmath;

/// Legendre polynomial value and derivative via the three-term recurrence.
fn legendre_poly_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// n-point Gauss–Legendre rule on [−1, 1]; exact for polynomials of degree ≤ 2n−1.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        // Tricomi-style initial guess, then Newton.
        let mut x = fmath::cos(core::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre_poly_pair(n, x);
            let dx = p / dp;
            x -= dx;
            if fmath::abs(dx) < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_poly_pair(n, x);
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|wi| wi * half).collect(),
    )
}

/// Full-sphere product rule: Gauss in t = cos θ times trapezoid in φ.
/// Returns (θ, φ, weight) triples; weights sum to 4π.
pub fn sphere_rule(n_theta: usize, n_phi: usize) -> Vec<(f64, f64, f64)> {
    let (t, wt) = gauss_legendre(n_theta);
    let dphi = 2.0 * core::f64::consts::PI / (n_phi as f64);
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for (ti, wi) in t.iter().zip(wt.iter()) {
        let theta = fmath::atan2(fmath::sqrt(1.0 - ti * ti), *ti);
        for j in 0..n_phi {
            out.push((theta, dphi * j as f64, wi * dphi));
        }
    }
    out
}

/// Spherical-cap rule over {θ ≤ ω}: Gauss in t ∈ [cos ω, 1] times trapezoid
/// in φ. Weights sum to the cap area 2π(1 − cos ω).
pub fn cap_rule(omega: f64, n_theta: usize, n_phi: usize) -> Vec<(f64, f64, f64)> {
    let (t, wt) = gauss_legendre_on(n_theta, fmath::cos(omega), 1.0);
    let dphi = 2.0 * core::f64::consts::PI / (n_phi as f64);
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for (ti, wi) in t.iter().zip(wt.iter()) {
        let theta = fmath::atan2(fmath::sqrt((1.0 - ti * ti).max(0.0)), *ti);
        for j in 0..n_phi {
            out.push((theta, dphi * j as f64, wi * dphi));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_rules_integrate_monomials() {
        for n in [2usize, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n} sum={total}");
            let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
            assert!((m2 - 2.0 / 3.0).abs() < 1e-13, "n={n}");
            // Exactness at degree 2n-2.
            let d = 2 * n - 2;
            let md: f64 = x.iter().zip(&w).map(|(x, w)| w * fmath::powi(*x, d as i32)).sum();
            let exact = 2.0 / (d as f64 + 1.0);
            assert!((md - exact).abs() < 1e-12 * exact.max(1.0), "n={n} deg={d}");
        }
    }

    #[test]
    fn sphere_rule_total_weight() {
        let rule = sphere_rule(24, 48);
        let total: f64 = rule.iter().map(|(_, _, w)| w).sum();
        assert!((total - 4.0 * core::f64::consts::PI).abs() < 1e-10);
        // ∫ cos²θ over the sphere = 4π/3.
        let c2: f64 = rule.iter().map(|(th, _, w)| w * fmath::cos(*th).powi(2)).sum();
        assert!((c2 - 4.0 * core::f64::consts::PI / 3.0).abs() < 1e-10);
    }

    #[test]
    fn cap_rule_area() {
        let omega = 1.1f64;
        let rule = cap_rule(omega, 64, 4);
        let total: f64 = rule.iter().map(|(_, _, w)| w).sum();
        let exact = 2.0 * core::f64::consts::PI * (1.0 - fmath::cos(omega));
        assert!((total - exact).abs() < 1e-12);
    }
}
