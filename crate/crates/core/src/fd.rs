//! Finite-difference weight generation (Fornberg's algorithm).
//!
//! Given arbitrary nodes x_0..x_{n-1} and an expansion point z, produces the
//! weights of the interpolation-exact approximations to derivatives of order
//! 0..=m. Used for transmission-condition residuals along boundary normals and
//! for stencil-based PDE residual checks.

use alloc::vec;
use alloc::vec::Vec;

/// `weights[k][j]` is the coefficient of f(x_j) in the order-k derivative
/// approximation at z. Requires `max_order < nodes.len()`.
pub fn fornberg_weights(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    assert!(max_order < n, "derivative order {} needs more than {} nodes", max_order, n);
    let m = max_order;
    let mut c = vec![vec![0.0f64; n]; m + 1];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * ((k as f64) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - (k as f64) * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_second_derivative() {
        let w = fornberg_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        assert_eq!(w[2], vec![1.0, -2.0, 1.0]);
        assert_eq!(w[1], vec![-0.5, 0.0, 0.5]);
        assert_eq!(w[0], vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn one_sided_exactness_on_polynomials() {
        // 6 one-sided nodes differentiate x^4 exactly at 0 up to order 3.
        let nodes: Vec<f64> = (0..6).map(|i| 0.3 * i as f64).collect();
        let w = fornberg_weights(0.0, &nodes, 3);
        let f = |x: f64| x * x * x * x;
        let d2: f64 = nodes.iter().zip(&w[2]).map(|(x, c)| c * f(*x)).sum();
        let d3: f64 = nodes.iter().zip(&w[3]).map(|(x, c)| c * f(*x)).sum();
        assert!((d2 - 0.0).abs() < 1e-9, "d2={d2}");
        assert!((d3 - 0.0).abs() < 1e-9, "d3={d3}");
        let g = |x: f64| x * x * x;
        let g3: f64 = nodes.iter().zip(&w[3]).map(|(x, c)| c * g(*x)).sum();
        assert!((g3 - 6.0).abs() < 1e-9, "g3={g3}");
    }
}
