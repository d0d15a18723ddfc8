//! One-sided finite-difference diagnostics for higher-order transmission
//! conditions `∂_ν^j(u₁ − u₂) = 0` along an interface arc.
//!
//! Both field traces are sampled on rays through each arc point: the outer
//! trace at distances `0, δ, 2δ, …` along the outward normal `ν`, the inner
//! trace at `0, −δ, −2δ, …`. Derivatives of each trace along `ν` use
//! Fornberg finite-difference weights at the interface point, so the same
//! signed coordinate convention serves both sides. This is a diagnostic —
//! the residual mixes the true jump with the one-sided stencil error.

use super::ScatterError;
use num_complex::Complex64;

/// Finite-difference weights on arbitrary `nodes` for derivatives
/// `0..=max_order` evaluated at `x0` (Fornberg's recurrence).
/// Returns `w[order][node]`.
pub fn fornberg_weights(nodes: &[f64], x0: f64, max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    assert!(n > max_order, "need more nodes than the requested order");
    let mut c = vec![vec![0.0; max_order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for s in (1..=mn).rev() {
                    c[i][s] = c1 * (s as f64 * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for s in (1..=mn).rev() {
                c[j][s] = (c4 * c[j][s] - s as f64 * c[j][s - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    (0..=max_order)
        .map(|s| (0..n).map(|i| c[i][s]).collect())
        .collect()
}

/// Max-over-arc residuals `max_i |∂_ν^j u₁(x_i) − ∂_ν^j u₂(x_i)|` for
/// `j = 0..=max_order`, from one-sided stencils of the sampled traces.
///
/// `outer[i]`/`inner[i]` hold the trace samples of arc point `i` at signed
/// normal coordinates `0, +δ, +2δ, …` and `0, −δ, −2δ, …` respectively.
pub fn transmission_residual(
    outer: &[Vec<Complex64>],
    inner: &[Vec<Complex64>],
    step: f64,
    max_order: usize,
) -> Result<Vec<f64>, ScatterError> {
    if outer.is_empty() || outer.len() != inner.len() {
        return Err(ScatterError::InvalidInput(
            "transmission residual needs co-registered outer/inner traces".into(),
        ));
    }
    if !(step > 0.0) {
        return Err(ScatterError::InvalidInput("step must be positive".into()));
    }
    let depth = outer[0].len();
    if depth < 2
        || outer.iter().any(|t| t.len() != depth)
        || inner.iter().any(|t| t.len() != depth)
    {
        return Err(ScatterError::InvalidInput(
            "all traces must share a depth of at least 2 samples".into(),
        ));
    }
    if max_order >= depth {
        return Err(ScatterError::InvalidInput(format!(
            "derivative order {max_order} exceeds the {depth}-point stencil"
        )));
    }
    let outer_nodes: Vec<f64> = (0..depth).map(|j| j as f64 * step).collect();
    let inner_nodes: Vec<f64> = (0..depth).map(|j| -(j as f64) * step).collect();
    let w_out = fornberg_weights(&outer_nodes, 0.0, max_order);
    let w_in = fornberg_weights(&inner_nodes, 0.0, max_order);
    let mut residuals = vec![0.0_f64; max_order + 1];
    for (to, ti) in outer.iter().zip(inner) {
        for order in 0..=max_order {
            let mut d_out = Complex64::new(0.0, 0.0);
            let mut d_in = Complex64::new(0.0, 0.0);
            for j in 0..depth {
                d_out += w_out[order][j] * to[j];
                d_in += w_in[order][j] * ti[j];
            }
            residuals[order] = residuals[order].max((d_out - d_in).norm());
        }
    }
    Ok(residuals)
}

/// The flat-interface transmission pair on `{x₂ = 0}`:
/// `u₁ = e^{−ikx₂} + ((1−q₀)/(1+q₀))e^{ikx₂}` above,
/// `u₂ = (2/(1+q₀))e^{−ikq₀x₂}` below. Both traces are returned sampled on
/// `n_points` rays to the given stencil `depth`; value and first normal
/// derivative agree across the interface, the second derivatives jump.
pub fn flat_interface_pair(
    q0: f64,
    k: f64,
    n_points: usize,
    step: f64,
    depth: usize,
) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
    let refl = (1.0 - q0) / (1.0 + q0);
    let trans = 2.0 / (1.0 + q0);
    let u1 = |y: f64| -> Complex64 {
        (Complex64::i() * (-k) * y).exp() + refl * (Complex64::i() * k * y).exp()
    };
    let u2 = |y: f64| -> Complex64 { trans * (Complex64::i() * (-k * q0) * y).exp() };
    let outer = (0..n_points)
        .map(|_| (0..depth).map(|j| u1(j as f64 * step)).collect())
        .collect();
    let inner = (0..n_points)
        .map(|_| (0..depth).map(|j| u2(-(j as f64) * step)).collect())
        .collect();
    (outer, inner)
}
