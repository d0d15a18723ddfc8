//! Analytic reference solution for a constant-index disk via cylindrical
//! separation of variables (Fourier–Bessel mode matching).
//!
//! For a disk of radius `a`, index `q0 > 0` (`q0 ≠ 1`), incident plane wave
//! `e^{ik d·x}` with direction angle `α`, write `k₁ = k√q0` and per angular
//! mode `n ≥ 0` match value and normal derivative of
//!
//! ```text
//! exterior:  iⁿ [J_n(kr) + a_n H_n⁽¹⁾(kr)] e^{in(θ−α)}   (+ mirror mode −n)
//! interior:  iⁿ b_n J_n(k₁r) e^{in(θ−α)}
//! ```
//!
//! giving
//! `a_n = (k₁J_n'(k₁a)J_n(ka) − kJ_n'(ka)J_n(k₁a)) / (kH_n'(ka)J_n(k₁a) − k₁J_n'(k₁a)H_n(ka))`.
//! The far field follows from `H_n⁽¹⁾(kr) ≈ √(2/(πkr)) e^{i(kr − nπ/2 − π/4)}`:
//! `u∞(θ) = e^{−iπ/4}√(2/(πk)) [a₀ + 2Σ_{n≥1} a_n cos n(θ−α)]`.

use super::solve::FarFieldPattern;
use super::ScatterError;
use cornerfield_core::specfun;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Scattering (`a_n`) and interior (`b_n`) coefficients of the disk solution.
#[derive(Debug, Clone)]
pub struct DiskOracle {
    pub radius: f64,
    pub q0: f64,
    pub k: f64,
    /// Direction angle of the incident plane wave.
    pub alpha: f64,
    /// Exterior (outgoing Hankel) coefficients, `n = 0..=n_max`.
    pub a: Vec<Complex64>,
    /// Interior (Bessel) coefficients, `n = 0..=n_max`.
    pub b: Vec<Complex64>,
}

fn bessel_with_primes(nmax: u32, x: f64) -> Result<(Vec<f64>, Vec<f64>), ScatterError> {
    debug_assert!(nmax >= 1);
    let j = specfun::bessel_jn_array(nmax, x)?;
    let mut jp = vec![0.0; nmax as usize + 1];
    jp[0] = -j[1];
    for n in 1..=nmax as usize {
        jp[n] = j[n - 1] - n as f64 / x * j[n];
    }
    Ok((j, jp))
}

fn hankel_with_primes(nmax: u32, x: f64) -> Result<(Vec<Complex64>, Vec<Complex64>), ScatterError> {
    let j = specfun::bessel_jn_array(nmax, x)?;
    let y = specfun::bessel_yn_array(nmax, x)?;
    let h: Vec<Complex64> = j.iter().zip(&y).map(|(&a, &b)| Complex64::new(a, b)).collect();
    let mut hp = vec![Complex64::new(0.0, 0.0); nmax as usize + 1];
    if nmax >= 1 {
        hp[0] = -h[1];
        for n in 1..=nmax as usize {
            hp[n] = h[n - 1] - n as f64 / x * h[n];
        }
    }
    Ok((h, hp))
}

fn mode_count(ka: f64) -> u32 {
    (ka + 8.0 * ka.cbrt() + 12.0).ceil() as u32
}

/// Mode-matching solve for the disk transmission problem.
pub fn disk_oracle(
    radius: f64,
    q0: f64,
    k: f64,
    direction: [f64; 2],
) -> Result<DiskOracle, ScatterError> {
    if !(radius > 0.0) || !(k > 0.0) {
        return Err(ScatterError::InvalidInput(format!(
            "disk oracle needs radius > 0 and k > 0, got a={radius}, k={k}"
        )));
    }
    if !(q0 > 0.0) || q0 == 1.0 {
        return Err(ScatterError::InvalidInput(format!(
            "disk oracle needs a real index q0 > 0 with q0 ≠ 1, got {q0}"
        )));
    }
    let norm = (direction[0] * direction[0] + direction[1] * direction[1]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(ScatterError::InvalidInput(format!(
            "incident direction must be unit, |d| = {norm}"
        )));
    }
    let alpha = direction[1].atan2(direction[0]);
    let ka = k * radius;
    let k1 = k * q0.sqrt();
    let k1a = k1 * radius;
    let nmax = mode_count(ka.max(k1a));
    let (j, jp) = bessel_with_primes(nmax, ka)?;
    let (j1, j1p) = bessel_with_primes(nmax, k1a)?;
    let (h, hp) = hankel_with_primes(nmax, ka)?;
    let mut a = Vec::with_capacity(nmax as usize + 1);
    let mut b = Vec::with_capacity(nmax as usize + 1);
    for n in 0..=nmax as usize {
        // 2×2 system for (a_n, b_n): value and radial-derivative continuity.
        let det = k * hp[n] * j1[n] - k1 * j1p[n] * h[n];
        let scale = (k * hp[n] * j1[n]).norm().max((k1 * j1p[n] * h[n]).norm());
        if det.norm() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(ScatterError::OracleNearSingular { mode: n as u32 });
        }
        let an = (k1 * j1p[n] * j[n] - k * jp[n] * j1[n]) / det;
        // Interior coefficient from whichever matching row is better scaled.
        let bn = if j1[n].abs() >= (k1 / k * j1p[n]).abs() {
            (j[n] + an * h[n]) / j1[n]
        } else {
            (k * jp[n] + an * k * hp[n]) / (k1 * j1p[n])
        };
        a.push(an);
        b.push(bn);
    }
    Ok(DiskOracle { radius, q0, k, alpha, a, b })
}

impl DiskOracle {
    /// Far-field value at polar angle `theta`.
    pub fn far_field_at(&self, theta: f64) -> Complex64 {
        let c = Complex64::from_polar((2.0 / (PI * self.k)).sqrt(), -PI / 4.0);
        let dt = theta - self.alpha;
        let mut s = self.a[0];
        for (n, an) in self.a.iter().enumerate().skip(1) {
            s += 2.0 * an * (n as f64 * dt).cos();
        }
        c * s
    }

    /// Far-field pattern at `m_angles` uniform angles.
    pub fn far_field(&self, m_angles: usize) -> Result<FarFieldPattern, ScatterError> {
        if m_angles < 64 {
            return Err(ScatterError::InvalidInput(format!(
                "far field needs at least 64 angular samples, got {m_angles}"
            )));
        }
        let values = (0..m_angles)
            .map(|jj| self.far_field_at(2.0 * PI * jj as f64 / m_angles as f64))
            .collect();
        Ok(FarFieldPattern { k: self.k, values })
    }

    /// Total field at arbitrary points (series evaluation, interior and
    /// exterior).
    pub fn total_at(&self, points: &[[f64; 2]]) -> Result<Vec<Complex64>, ScatterError> {
        let nmax = (self.a.len() - 1) as u32;
        let k1 = self.k * self.q0.sqrt();
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            let theta = p[1].atan2(p[0]);
            let dt = theta - self.alpha;
            let mut u = Complex64::new(0.0, 0.0);
            if r <= self.radius {
                let jr = specfun::bessel_jn_array(nmax, k1 * r)?;
                for n in 0..=nmax as usize {
                    let weight = if n == 0 { 1.0 } else { 2.0 * (n as f64 * dt).cos() };
                    u += Complex64::i().powu(n as u32) * self.b[n] * jr[n] * weight;
                }
            } else {
                let jr = specfun::bessel_jn_array(nmax, self.k * r)?;
                let yr = specfun::bessel_yn_array(nmax, self.k * r)?;
                let dir = [self.alpha.cos(), self.alpha.sin()];
                u = (Complex64::i() * self.k * (dir[0] * p[0] + dir[1] * p[1])).exp();
                for n in 0..=nmax as usize {
                    let hr = Complex64::new(jr[n], yr[n]);
                    let weight = if n == 0 { 1.0 } else { 2.0 * (n as f64 * dt).cos() };
                    u += Complex64::i().powu(n as u32) * self.a[n] * hr * weight;
                }
            }
            out.push(u);
        }
        Ok(out)
    }
}

/// Value of the `n = 0` mode-matching numerator
/// `f(k) = k₁J₀'(k₁a)J₀(ka) − kJ₀'(ka)J₀(k₁a)`; its real roots are the
/// wavenumbers where the disk's monopole scattering coefficient vanishes
/// (radially symmetric interior transmission eigenvalues).
pub fn disk_n0_mismatch(radius: f64, q0: f64, k: f64) -> Result<f64, ScatterError> {
    if !(radius > 0.0) || !(k > 0.0) || !(q0 > 0.0) || q0 == 1.0 {
        return Err(ScatterError::InvalidInput(
            "n=0 mismatch needs radius > 0, k > 0, q0 > 0, q0 ≠ 1".into(),
        ));
    }
    let ka = k * radius;
    let k1 = k * q0.sqrt();
    let k1a = k1 * radius;
    let j0 = specfun::bessel_j0(ka);
    let j1 = specfun::bessel_j1(ka);
    let j0i = specfun::bessel_j0(k1a);
    let j1i = specfun::bessel_j1(k1a);
    Ok(k1 * (-j1i) * j0 - k * (-j1) * j0i)
}

/// Locates a root of the `n = 0` mismatch in `[lo, hi]` by scan + bisection.
pub fn disk_n0_ite(
    radius: f64,
    q0: f64,
    lo: f64,
    hi: f64,
) -> Result<Option<f64>, ScatterError> {
    if !(lo > 0.0) || !(hi > lo) {
        return Err(ScatterError::InvalidInput(format!(
            "need 0 < lo < hi, got [{lo}, {hi}]"
        )));
    }
    let steps = 400;
    let mut prev_k = lo;
    let mut prev_f = disk_n0_mismatch(radius, q0, prev_k)?;
    for i in 1..=steps {
        let kk = lo + (hi - lo) * i as f64 / steps as f64;
        let f = disk_n0_mismatch(radius, q0, kk)?;
        if prev_f == 0.0 {
            return Ok(Some(prev_k));
        }
        if prev_f * f < 0.0 {
            let (mut a, mut b, mut fa) = (prev_k, kk, prev_f);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                let fm = disk_n0_mismatch(radius, q0, m)?;
                if fa * fm <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            return Ok(Some(0.5 * (a + b)));
        }
        prev_k = kk;
        prev_f = f;
    }
    Ok(None)
}
