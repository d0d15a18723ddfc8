//! Bracketed scalar root finding: coarse sign-change scan plus a
//! secant-accelerated bisection refiner that never leaves its bracket.

use alloc::vec::Vec;

use crate::fmath;

/// A sign-change bracket [a, b] with the sampled endpoint values.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub a: f64,
    pub b: f64,
    pub fa: f64,
    pub fb: f64,
}

/// A refined root together with the certificate it was found from.
#[derive(Debug, Clone, Copy)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub bracket: Bracket,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootError {
    /// Refinement did not shrink the bracket to tolerance in `max_iter` steps.
    NoConvergence { a: f64, b: f64 },
    /// The supplied bracket has no sign change.
    InvalidBracket { a: f64, b: f64 },
}

impl core::fmt::Display for RootError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RootError::NoConvergence { a, b } => {
                write!(f, "root refinement stalled on [{a}, {b}]")
            }
            RootError::InvalidBracket { a, b } => {
                write!(f, "no sign change over [{a}, {b}]")
            }
        }
    }
}

/// Scan [lo, hi] with the given step and collect every sign-change bracket.
/// Sample points where f is exactly zero become degenerate brackets [x, x].
pub fn scan_brackets<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    step: f64,
) -> Vec<Bracket> {
    let mut out = Vec::new();
    if !(step > 0.0) || hi <= lo {
        return out;
    }
    let n = ((hi - lo) / step) as usize + 1;
    let mut xa = lo;
    let mut fa = f(xa);
    if fa == 0.0 {
        out.push(Bracket { a: xa, b: xa, fa, fb: fa });
    }
    for i in 1..=n + 1 {
        let xb = if lo + (i as f64) * step >= hi { hi } else { lo + (i as f64) * step };
        if xb <= xa {
            break;
        }
        let fb = f(xb);
        if fb == 0.0 {
            out.push(Bracket { a: xb, b: xb, fa: fb, fb });
        } else if fa != 0.0 && (fa < 0.0) != (fb < 0.0) {
            out.push(Bracket { a: xa, b: xb, fa, fb });
        }
        xa = xb;
        fa = fb;
        if xb >= hi {
            break;
        }
    }
    out
}

/// Refine a bracket to width ≤ tol. Each step proposes a secant point; when
/// that point falls outside the current bracket (or fails to move), a
/// bisection step is taken instead, so convergence is guaranteed.
pub fn refine<F: FnMut(f64) -> f64>(
    mut f: F,
    bracket: Bracket,
    tol: f64,
    max_iter: usize,
) -> Result<Root, RootError> {
    let Bracket { mut a, mut b, fa, fb } = bracket;
    if a == b {
        return Ok(Root { x: a, fx: fa, bracket });
    }
    if fa == 0.0 {
        return Ok(Root { x: a, fx: 0.0, bracket });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, fx: 0.0, bracket });
    }
    if (fa < 0.0) == (fb < 0.0) {
        return Err(RootError::InvalidBracket { a, b });
    }
    let (mut va, mut vb) = (fa, fb);
    for _ in 0..max_iter {
        if b - a <= tol {
            // Report the endpoint with the smaller residual.
            let (x, fx) = if fmath::abs(va) <= fmath::abs(vb) { (a, va) } else { (b, vb) };
            return Ok(Root { x, fx, bracket });
        }
        let secant = b - vb * (b - a) / (vb - va);
        let mid = 0.5 * (a + b);
        let x = if secant > a && secant < b { secant } else { mid };
        // Guard against a secant point glued to an endpoint.
        let x = if x - a < 0.01 * (b - a) || b - x < 0.01 * (b - a) { mid } else { x };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(Root { x, fx, bracket });
        }
        if (fx < 0.0) == (va < 0.0) {
            a = x;
            va = fx;
        } else {
            b = x;
            vb = fx;
        }
    }
    Err(RootError::NoConvergence { a, b })
}
