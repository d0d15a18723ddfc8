//! Associated Legendre functions of the first kind with arbitrary real degree
//! λ and integer order m ≥ 0, regular at t = 1.
//!
//! Evaluation is built on the Gauss hypergeometric representation
//!
//! ```text
//! P_λ(t)   = 2F1(−λ, λ+1; 1; (1−t)/2)
//! P_λ^m(t) = (1−t²)^{m/2} · d^m/dt^m P_λ(t)
//!          = (1−t²)^{m/2} · [ Π_{j<m} (λ−j)(λ+j+1) / (2^m m!) ]
//!                         · 2F1(m−λ, λ+m+1; m+1; (1−t)/2)
//! ```
//!
//! The series argument (1−t)/2 vanishes at t = 1, so the main series doubles
//! as the endpoint expansion there; near t = −1 the argument approaches 1 and
//! the evaluation switches to the logarithmic connection formula for
//! c − a − b = −m. Integer degrees λ = n ≥ m make the series terminate, which
//! reproduces the classical associated Legendre polynomials exactly.

use alloc::format;
use alloc::string::String;

use num_complex::Complex64;

use super::gamma::{digamma, recip_gamma};
use crate::fmath;

/// Below this distance from t = −1 the connection formula takes over.
const ENDPOINT_SWITCH: f64 = 1e-3;
/// Relative term size at which series summation stops.
const SERIES_EPS: f64 = 1e-15;
const MAX_TERMS: usize = 600_000;

#[derive(Debug, Clone, PartialEq)]
pub enum SpecFunError {
    Domain(String),
    Convergence(String),
}

impl core::fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SpecFunError::Domain(s) => write!(f, "domain error: {s}"),
            SpecFunError::Convergence(s) => write!(f, "convergence failure: {s}"),
        }
    }
}

/// Argument triple (λ, m, t) with |t| < 1 and m ≥ 0 enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreArg {
    pub degree: f64,
    pub order: u32,
    pub t: f64,
}

impl LegendreArg {
    pub fn new(degree: f64, order: u32, t: f64) -> Result<Self, SpecFunError> {
        if !(t > -1.0 && t < 1.0) {
            return Err(SpecFunError::Domain(format!(
                "argument t must satisfy |t| < 1, got {t}"
            )));
        }
        if !degree.is_finite() {
            return Err(SpecFunError::Domain(format!("degree must be finite, got {degree}")));
        }
        Ok(LegendreArg { degree, order, t })
    }
}

/// Gauss series Σ (a)_k (b)_k / ((c)_k k!) x^k and its x-derivative, with
/// ratio-based stopping. Terminates early when a Pochhammer factor crosses
/// zero (polynomial case).
fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64) -> Result<(f64, f64), SpecFunError> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut dsum = 0.0f64; // Σ k·T_k·x^{k−1}
    let mut scale = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let (fa, fb) = (a + kf, b + kf);
        if fmath::abs(fa) < 1e-12 || fmath::abs(fb) < 1e-12 {
            return Ok((sum, dsum)); // terminating series
        }
        term *= fa * fb / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        dsum += (kf + 1.0) * term / x;
        scale = scale.max(fmath::abs(sum)).max(fmath::abs(term));
        if fmath::abs(term) <= SERIES_EPS * scale && k > 4 {
            return Ok((sum, dsum));
        }
    }
    Err(SpecFunError::Convergence(format!(
        "2F1 series stalled: a={a} b={b} c={c} x={x}"
    )))
}

/// Π_{j=0}^{m−1} (λ−j)(λ+j+1) / (2^m m!), the order-raising prefactor.
fn order_prefactor(lambda: f64, m: u32) -> f64 {
    let mut num = 1.0f64;
    let mut den = 1.0f64;
    for j in 0..m {
        let jf = j as f64;
        num *= (lambda - jf) * (lambda + jf + 1.0);
        den *= 2.0 * (jf + 1.0);
    }
    num / den
}

/// Connection formula for 2F1(a, b; c; z) with c − a − b = −m at z → 1,
/// summed in w = 1 − z; returns (F, dF/dw). Valid away from integer λ (poles
/// cancel only in the limit); callers guard that case.
fn hyp2f1_near_one(a: f64, b: f64, m: u32, w: f64) -> Result<(f64, f64), SpecFunError> {
    let mf = m as f64;
    let c = mf + 1.0;
    let gamma_c = fmath::tgamma(c); // m!
    let mut total = 0.0f64;
    let mut dtotal = 0.0f64;

    if m >= 1 {
        // Finite part: Γ(m)Γ(c)/(Γ(a)Γ(b)) Σ_{n<m} (a−m)_n (b−m)_n / (n!(1−m)_n) w^{n−m}
        let coeff = fmath::tgamma(mf) * gamma_c * recip_gamma(a) * recip_gamma(b);
        if coeff != 0.0 {
            let mut poch_am = 1.0f64; // (a−m)_n
            let mut poch_bm = 1.0f64;
            let mut poch_1m = 1.0f64; // (1−m)_n
            let mut fact = 1.0f64;
            let mut s = 0.0f64;
            let mut ds = 0.0f64;
            for n in 0..m {
                let nf = n as f64;
                if n > 0 {
                    poch_am *= a - mf + nf - 1.0;
                    poch_bm *= b - mf + nf - 1.0;
                    poch_1m *= 1.0 - mf + nf - 1.0;
                    fact *= nf;
                }
                let cn = poch_am * poch_bm / (fact * poch_1m);
                let wpow = fmath::powf(w, nf - mf);
                s += cn * wpow;
                ds += cn * (nf - mf) * wpow / w;
            }
            total += coeff * s;
            dtotal += coeff * ds;
        }
    }

    // Logarithmic part: −(−1)^m Γ(c)/(Γ(a−m)Γ(b−m)) Σ_n (a)_n (b)_n / (n!(n+m)!)
    //                   w^n [ln w − ψ(n+1) − ψ(n+m+1) + ψ(a+n) + ψ(b+n)]
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let coeff = -sign * gamma_c * recip_gamma(a - mf) * recip_gamma(b - mf);
    if coeff != 0.0 {
        let lnw = fmath::ln(w);
        let mut poch_a = 1.0f64;
        let mut poch_b = 1.0f64;
        let mut fact_n = 1.0f64;
        let mut fact_nm = fmath::tgamma(mf + 1.0);
        let mut wpow = 1.0f64;
        let mut psi_n1 = digamma(1.0);
        let mut psi_nm1 = digamma(mf + 1.0);
        let mut psi_a = digamma(a);
        let mut psi_b = digamma(b);
        let mut s = 0.0f64;
        let mut ds = 0.0f64;
        let mut scale = 0.0f64;
        let mut converged = false;
        for n in 0..1000usize {
            let nf = n as f64;
            if n > 0 {
                poch_a *= a + nf - 1.0;
                poch_b *= b + nf - 1.0;
                fact_n *= nf;
                fact_nm *= mf + nf;
                wpow *= w;
                psi_n1 += 1.0 / nf;
                psi_nm1 += 1.0 / (mf + nf);
                psi_a += 1.0 / (a + nf - 1.0);
                psi_b += 1.0 / (b + nf - 1.0);
            }
            let rho = poch_a * poch_b / (fact_n * fact_nm);
            let bracket = lnw - psi_n1 - psi_nm1 + psi_a + psi_b;
            let term = rho * wpow * bracket;
            s += term;
            // d/dw [w^n (ln w + e_n)] = n w^{n−1}(ln w + e_n) + w^{n−1}
            ds += rho * (nf * wpow / w * bracket + wpow / w);
            scale = scale.max(fmath::abs(s)).max(fmath::abs(term));
            if n > 3 && fmath::abs(term) <= SERIES_EPS * scale {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(SpecFunError::Convergence(format!(
                "endpoint series stalled: a={a} b={b} m={m} w={w}"
            )));
        }
        total += coeff * s;
        dtotal += coeff * ds;
    }

    Ok((total, dtotal))
}

fn is_near_integer(x: f64, tol: f64) -> bool {
    fmath::abs(x - fmath::round(x)) < tol
}

/// Hypergeometric factor of P_λ^m at argument t together with its
/// t-derivative, choosing the series or the endpoint connection formula.
/// Exposed within the crate so eigenvalue searches can work with a function
/// whose zeros are exactly the nontrivial ones (the order-raising prefactor
/// and the positive weight are factored out).
pub(crate) fn hyp_factor_with_dt(lambda: f64, m: u32, t: f64) -> Result<(f64, f64), SpecFunError> {
    let mf = m as f64;
    let a = mf - lambda;
    let b = lambda + mf + 1.0;
    let c = mf + 1.0;
    let x = 0.5 * (1.0 - t);
    if t > -1.0 + ENDPOINT_SWITCH || is_near_integer(lambda, 1e-12) {
        // The main series terminates for integer λ, so it stays accurate at
        // any |t| < 1 in that case.
        let (f, dfdx) = hyp2f1_series(a, b, c, x)?;
        return Ok((f, -0.5 * dfdx));
    }
    let w = 0.5 * (1.0 + t);
    if is_near_integer(lambda, 1e-5) {
        // The connection formula has cancelling poles at integer degree;
        // interpolate through safe λ values instead of evaluating inside the
        // cancellation zone. Accuracy here is ~1e−10·|f‴| (documented corner).
        let l0 = fmath::round(lambda);
        let d = 1e-3;
        let (f0, df0) = hyp2f1_series(mf - l0, l0 + mf + 1.0, c, x)?;
        let (fm, dfm) = hyp2f1_near_one(mf - (l0 - d), (l0 - d) + mf + 1.0, m, w)?;
        let (fp, dfp) = hyp2f1_near_one(mf - (l0 + d), (l0 + d) + mf + 1.0, m, w)?;
        let s = (lambda - l0) / d;
        let blend = |v0: f64, vm: f64, vp: f64| {
            v0 * (1.0 - s * s) + 0.5 * s * (s + 1.0) * vp - 0.5 * s * (1.0 - s) * vm
        };
        return Ok((blend(f0, fm, fp), blend(-0.5 * df0, 0.5 * dfm, 0.5 * dfp)));
    }
    let (f, dfdw) = hyp2f1_near_one(a, b, m, w)?;
    Ok((f, 0.5 * dfdw))
}

fn legendre_hyp_factor(lambda: f64, m: u32, t: f64) -> Result<f64, SpecFunError> {
    Ok(hyp_factor_with_dt(lambda, m, t)?.0)
}

/// P_λ^m(t), the associated Legendre function of the first kind.
pub fn legendre_p(arg: &LegendreArg) -> Result<f64, SpecFunError> {
    let LegendreArg { degree: lambda, order: m, t } = *arg;
    let pref = order_prefactor(lambda, m);
    if pref == 0.0 {
        return Ok(0.0);
    }
    let hyp = legendre_hyp_factor(lambda, m, t)?;
    let weight = fmath::powf(1.0 - t * t, 0.5 * m as f64);
    Ok(weight * pref * hyp)
}

/// Shorthand constructor + evaluation.
pub fn eval_p(lambda: f64, m: u32, t: f64) -> Result<f64, SpecFunError> {
    legendre_p(&LegendreArg::new(lambda, m, t)?)
}

/// d/dt P_λ^m(t) through the degree-lowering relation
/// (1−t²)(P_λ^m)'(t) = −λt·P_λ^m(t) + (λ+m)·P_{λ−1}^m(t).
pub fn legendre_p_dt(arg: &LegendreArg) -> Result<f64, SpecFunError> {
    let LegendreArg { degree: lambda, order: m, t } = *arg;
    let p = eval_p(lambda, m, t)?;
    let pm = eval_p(lambda - 1.0, m, t)?;
    Ok((-lambda * t * p + (lambda + m as f64) * pm) / (1.0 - t * t))
}

pub fn eval_p_dt(lambda: f64, m: u32, t: f64) -> Result<f64, SpecFunError> {
    legendre_p_dt(&LegendreArg::new(lambda, m, t)?)
}

/// d²/dt² P_λ^m(t), by differentiating the degree-lowering relation once more.
pub fn legendre_p_d2t(arg: &LegendreArg) -> Result<f64, SpecFunError> {
    let LegendreArg { degree: lambda, order: m, t } = *arg;
    let mf = m as f64;
    let p = eval_p(lambda, m, t)?;
    let dp = eval_p_dt(lambda, m, t)?;
    let dpm = eval_p_dt(lambda - 1.0, m, t)?;
    let pm = eval_p(lambda - 1.0, m, t)?;
    let s = 1.0 - t * t;
    Ok((-lambda * p - lambda * t * dp + (lambda + mf) * dpm) / s
        + 2.0 * t * (-lambda * t * p + (lambda + mf) * pm) / (s * s))
}

/// ∂/∂λ P_λ^m(t) by central differences with step 1e−6·max(1, |λ|).
pub fn legendre_p_dlambda(arg: &LegendreArg) -> Result<f64, SpecFunError> {
    let LegendreArg { degree: lambda, order: m, t } = *arg;
    let h = 1e-6 * fmath::abs(lambda).max(1.0);
    let hi = eval_p(lambda + h, m, t)?;
    let lo = eval_p(lambda - h, m, t)?;
    Ok((hi - lo) / (2.0 * h))
}

/// det [[P_n^m, P_{n−2}^m], [(P_n^m)', (P_{n−2}^m)']] at t, for n−2 ≥ m ≥ 0.
pub fn wronskian_det(n: u32, m: u32, t: f64) -> Result<f64, SpecFunError> {
    if n < 2 || m > n - 2 {
        return Err(SpecFunError::Domain(format!(
            "wronskian needs n ≥ 2 and m ≤ n−2, got n={n} m={m}"
        )));
    }
    let hi = LegendreArg::new(n as f64, m, t)?;
    let lo = LegendreArg::new((n - 2) as f64, m, t)?;
    Ok(legendre_p(&hi)? * legendre_p_dt(&lo)? - legendre_p(&lo)? * legendre_p_dt(&hi)?)
}

/// Index (n, m) with |m| ≤ n for spherical harmonics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphericalHarmonicIndex {
    pub n: u32,
    pub m: i32,
}

impl SphericalHarmonicIndex {
    pub fn new(n: u32, m: i32) -> Result<Self, SpecFunError> {
        if m.unsigned_abs() > n {
            return Err(SpecFunError::Domain(format!(
                "spherical harmonic needs |m| ≤ n, got n={n} m={m}"
            )));
        }
        Ok(SphericalHarmonicIndex { n, m })
    }
}

/// Orthonormal spherical harmonic
/// Y_n^m(θ, φ) = √((2n+1)/(4π) · (n−|m|)!/(n+|m|)!) · P_n^{|m|}(cos θ) e^{imφ}
/// (no Condon–Shortley phase).
pub fn spherical_harmonic(
    idx: SphericalHarmonicIndex,
    theta: f64,
    phi: f64,
) -> Result<Complex64, SpecFunError> {
    let SphericalHarmonicIndex { n, m } = idx;
    let ma = m.unsigned_abs();
    let t = fmath::cos(theta);
    let p = if t <= -1.0 + 1e-14 || t >= 1.0 - 1e-14 {
        // Poles: integer-degree limit values.
        if ma != 0 {
            0.0
        } else if t > 0.0 {
            1.0
        } else if n % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    } else {
        eval_p(n as f64, ma, t)?
    };
    // (n−|m|)!/(n+|m|)! as a product of reciprocals, overflow-free.
    let mut ratio = 1.0f64;
    for j in (n - ma + 1)..=(n + ma) {
        ratio /= j as f64;
    }
    let norm = fmath::sqrt((2.0 * n as f64 + 1.0) / (4.0 * core::f64::consts::PI) * ratio);
    let phase = Complex64::new(0.0, m as f64 * phi).exp();
    Ok(norm * p * phase)
}
