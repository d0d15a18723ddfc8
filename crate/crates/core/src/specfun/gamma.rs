//! Gamma-family helpers: digamma and reciprocal gamma on the real line.

use crate::fmath;

/// Digamma ψ(x) for real non-integer x (and positive integers).
///
/// Negative arguments go through the reflection ψ(x) = ψ(1−x) − π·cot(πx);
/// positive ones are shifted up to ≥ 10 and finished with the asymptotic
/// series. Accuracy ~1e−14 away from the poles at 0, −1, −2, ...
pub fn digamma(x: f64) -> f64 {
    if x <= 0.0 {
        // Reflection; near a pole this correctly blows up via tan(πx) → 0.
        let frac = x - fmath::floor(x);
        return digamma(1.0 - x) - core::f64::consts::PI / fmath::tan(core::f64::consts::PI * frac);
    }
    let mut y = x;
    let mut acc = 0.0;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // ln y − 1/(2y) − Σ B_{2n} / (2n y^{2n})
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    acc + fmath::ln(y) - 0.5 / y - series
}

/// 1/Γ(x); zero at the poles of Γ (non-positive integers).
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && fmath::abs(x - fmath::round(x)) < 1e-300 {
        return 0.0;
    }
    let g = fmath::tgamma(x);
    if g.is_infinite() {
        0.0
    } else {
        1.0 / g
    }
}
