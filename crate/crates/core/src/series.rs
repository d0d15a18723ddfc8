//! Local series expansions of Helmholtz solutions around the origin.
//!
//! Coefficients are exact complex rationals generated from seed data by the
//! degree-lowering recurrences; evaluation happens in compensated f64 so the
//! finite-difference residual check can resolve values near 1e-9 without
//! being swamped by summation noise.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::exact::ExactField;
use crate::fmath;
use crate::poly::{circle_harmonics, solid_harmonic, CRat, Poly};

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesError {
    InvalidInput(String),
}

impl core::fmt::Display for SeriesError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SeriesError::InvalidInput(s) => write!(f, "invalid input: {s}"),
        }
    }
}

/// Exact rational image of an f64 (every finite f64 is a dyadic rational).
fn rat_f(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

fn crat_f(re: f64, im: f64) -> CRat {
    CRat::new(rat_f(re), rat_f(im))
}

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Double-double helpers (error-free transforms built on two_sum / fma).
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    /// Accumulate a plain f64 without losing its low-order bits.
    fn add_f64(self, x: f64) -> Dd {
        let s = Dd::two_sum(self.hi, x);
        let lo = s.lo + self.lo;
        Dd::two_sum(s.hi, lo)
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        let lo = s.lo + self.lo + o.lo;
        Dd::two_sum(s.hi, lo)
    }

    fn scale(self, x: f64) -> Dd {
        let p = self.hi * x;
        let err = libm::fma(self.hi, x, -p);
        Dd::two_sum(p, err + self.lo * x)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// Complex accumulator with double-double real and imaginary parts.
#[derive(Debug, Clone, Copy)]
struct DdC {
    re: Dd,
    im: Dd,
}

impl DdC {
    const ZERO: DdC = DdC { re: Dd::ZERO, im: Dd::ZERO };

    fn add_c64(self, z: Complex64) -> DdC {
        DdC { re: self.re.add_f64(z.re), im: self.im.add_f64(z.im) }
    }

    fn add(self, o: DdC) -> DdC {
        DdC { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    fn scale(self, x: f64) -> DdC {
        DdC { re: self.re.scale(x), im: self.im.scale(x) }
    }

    fn value(self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

// ---------------------------------------------------------------------------
// 2D expansions: u = Σ_{n+2m ≤ J} r^{n+2m} (c+_{n,m} cos nθ + c−_{n,m} sin nθ)
// ---------------------------------------------------------------------------

/// Truncated 2D series determined by its wavenumber, truncation degree, and
/// exact cos/sin coefficient pairs. All coefficients with the same n follow
/// from the m = 0 seed through
/// c±_{n,m+1} = −k² / (4(m+1)(n+m+1)) · c±_{n,m}.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion2D {
    k: f64,
    k2: BigRational,
    max_degree: u32,
    /// (n, m) → (cos part, sin part); missing entries are zero.
    coeffs: BTreeMap<(u32, u32), (CRat, CRat)>,
}

/// Populate a 2D expansion from m = 0 seeds `(n, cos seed, sin seed)`.
/// Seeds with n > max_degree are ignored; the sin seed at n = 0 is forced to
/// zero (sin 0θ ≡ 0). Later seeds for a repeated n accumulate additively.
pub fn expand_2d(
    seeds: &[(u32, CRat, CRat)],
    k: f64,
    max_degree: u32,
) -> Result<Expansion2D, SeriesError> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(SeriesError::InvalidInput(format!("wavenumber must be positive, got {k}")));
    }
    let k2 = rat_f(k).mul(&rat_f(k));
    let mut coeffs: BTreeMap<(u32, u32), (CRat, CRat)> = BTreeMap::new();
    for (n, cp, cm) in seeds {
        if *n > max_degree {
            continue;
        }
        let cm = if *n == 0 { CRat::zero() } else { cm.clone() };
        let e = coeffs.entry((*n, 0)).or_insert_with(|| (CRat::zero(), CRat::zero()));
        e.0 = e.0.add(cp);
        e.1 = e.1.add(&cm);
    }
    let ns: Vec<u32> = coeffs.keys().map(|&(n, _)| n).collect();
    for n in ns {
        let mut m = 0u32;
        while n + 2 * (m + 1) <= max_degree {
            let cur = coeffs[&(n, m)].clone();
            let denom = rat_i(4 * (m as i64 + 1) * (n as i64 + m as i64 + 1));
            let factor = CRat::new(k2.clone().neg().div(&denom), BigRational::from_integer(BigInt::from(0)));
            coeffs.insert((n, m + 1), (cur.0.mul(&factor), cur.1.mul(&factor)));
            m += 1;
        }
    }
    Ok(Expansion2D { k, k2, max_degree, coeffs })
}

/// Plane-wave seeds for direction angle θ_d: the cylindrical-wave expansion of
/// e^{ik x·d} starts from c±_{n,0} = ε_n i^n (k/2)^n / n! · (cos nθ_d, sin nθ_d)
/// with ε_0 = 1 and ε_n = 2 otherwise.
pub fn plane_wave_seeds(k: f64, theta_d: f64, max_degree: u32) -> Vec<(u32, CRat, CRat)> {
    let mut out = Vec::new();
    let mut amp = 1.0f64; // ε_n (k/2)^n / n!
    for n in 0..=max_degree {
        if n > 0 {
            amp *= k / (2.0 * n as f64);
            if n == 1 {
                amp *= 2.0;
            }
        }
        let (c, s) = (fmath::cos(n as f64 * theta_d), fmath::sin(n as f64 * theta_d));
        // i^n cycles 1, i, −1, −i.
        let (re, im) = match n % 4 {
            0 => (amp, 0.0),
            1 => (0.0, amp),
            2 => (-amp, 0.0),
            _ => (0.0, -amp),
        };
        out.push((n, crat_f(re * c, im * c), crat_f(re * s, im * s)));
    }
    out
}

impl Expansion2D {
    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Exact k² used by the recurrence (square of the rational image of k).
    pub fn k_squared(&self) -> &BigRational {
        &self.k2
    }

    /// (cos, sin) coefficient at (n, m); zero when absent.
    pub fn coefficient(&self, n: u32, m: u32) -> (CRat, CRat) {
        self.coeffs
            .get(&(n, m))
            .cloned()
            .unwrap_or_else(|| (CRat::zero(), CRat::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|(a, b)| a.is_zero() && b.is_zero())
    }

    /// Exact check of the coefficient recurrence on every stored pair,
    /// including that c−_{0,m} vanishes.
    pub fn satisfies_recurrence(&self) -> bool {
        for (&(n, m), c) in &self.coeffs {
            if n == 0 && !c.1.is_zero() {
                return false;
            }
            if n + 2 * (m + 1) <= self.max_degree {
                let next = self.coefficient(n, m + 1);
                let scale = rat_i(4 * (m as i64 + 1) * (n as i64 + m as i64 + 1));
                let lhs0 = next.0.mul(&CRat::new(scale.clone(), rat_i(0)));
                let lhs1 = next.1.mul(&CRat::new(scale, rat_i(0)));
                let neg_k2 = CRat::new(self.k2.clone().neg(), rat_i(0));
                if lhs0 != c.0.mul(&neg_k2) || lhs1 != c.1.mul(&neg_k2) {
                    return false;
                }
            }
        }
        true
    }

    fn eval_polar_dd(&self, r: f64, theta: f64) -> DdC {
        let mut acc = DdC::ZERO;
        for (&(n, m), (cp, cm)) in &self.coeffs {
            let radial = fmath::powi(r, (n + 2 * m) as i32);
            if radial == 0.0 {
                continue;
            }
            let ang_c = fmath::cos(n as f64 * theta);
            let ang_s = fmath::sin(n as f64 * theta);
            let zc = cp.to_c64();
            let zs = cm.to_c64();
            let w = radial * ang_c;
            let v = radial * ang_s;
            acc = acc.add_c64(Complex64::new(zc.re * w, zc.im * w));
            acc = acc.add_c64(Complex64::new(zs.re * v, zs.im * v));
        }
        acc
    }

    /// Series value at polar coordinates (r, θ), r ≥ 0.
    pub fn evaluate(&self, r: f64, theta: f64) -> Complex64 {
        self.eval_polar_dd(r, theta).value()
    }

    fn eval_cart_dd(&self, x: f64, y: f64) -> DdC {
        self.eval_polar_dd(fmath::hypot(x, y), fmath::atan2(y, x))
    }

    /// Value at Cartesian (x, y).
    pub fn evaluate_cartesian(&self, x: f64, y: f64) -> Complex64 {
        self.eval_cart_dd(x, y).value()
    }

    /// α·self + β·other, exact; requires identical wavenumber and truncation.
    pub fn scaled_add(
        &self,
        alpha: &CRat,
        other: &Expansion2D,
        beta: &CRat,
    ) -> Result<Expansion2D, SeriesError> {
        if self.k != other.k || self.max_degree != other.max_degree {
            return Err(SeriesError::InvalidInput(
                "combined expansions must share wavenumber and truncation degree".into(),
            ));
        }
        let mut keys: Vec<(u32, u32)> = self.coeffs.keys().chain(other.coeffs.keys()).cloned().collect();
        keys.sort_unstable();
        keys.dedup();
        let mut coeffs = BTreeMap::new();
        for key in keys {
            let a = self.coefficient(key.0, key.1);
            let b = other.coefficient(key.0, key.1);
            coeffs.insert(
                key,
                (
                    a.0.mul(alpha).add(&b.0.mul(beta)),
                    a.1.mul(alpha).add(&b.1.mul(beta)),
                ),
            );
        }
        Ok(Expansion2D {
            k: self.k,
            k2: self.k2.clone(),
            max_degree: self.max_degree,
            coeffs,
        })
    }

    /// The homogeneous degree-j part as an exact polynomial:
    /// Σ_{n+2m=j} (x²+y²)^m (c+_{n,m} Re + c−_{n,m} Im)(x+iy)^n.
    pub fn homogeneous_part(&self, j: u32) -> Poly<CRat> {
        let mut out = Poly::zero(2, j);
        let mut m = 0u32;
        while 2 * m <= j {
            let n = j - 2 * m;
            let (cp, cm) = self.coefficient(n, m);
            if !(cp.is_zero() && cm.is_zero()) {
                let (re, im) = circle_harmonics::<CRat>(n);
                let ang = re.scale(&cp).add(&im.scale(&cm)).unwrap();
                let term = Poly::<CRat>::r2_power(2, m).mul(&ang).unwrap();
                out = out.add(&term).unwrap();
            }
            m += 1;
        }
        out
    }

    /// The `count` lowest nonvanishing homogeneous Taylor terms, lowest degree
    /// first; fewer are returned if the truncated series has fewer nonzero
    /// degrees (none for the zero expansion).
    pub fn lowest_taylor_terms(&self, count: usize) -> Vec<Poly<CRat>> {
        let mut out = Vec::new();
        for j in 0..=self.max_degree {
            if out.len() == count {
                break;
            }
            let p = self.homogeneous_part(j);
            if !p.is_zero() {
                out.push(p);
            }
        }
        out
    }

    /// JSON document {k, J, coefficients: [{n, m, sign, re, im}]} with f64
    /// projections of the exact coefficients, in (n, m) order, "+" before "−".
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("{{\"k\":{},\"J\":{},\"coefficients\":[", self.k, self.max_degree));
        let mut first = true;
        for (&(n, m), (cp, cm)) in &self.coeffs {
            for (sign, c) in [("+", cp), ("-", cm)] {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    s.push(',');
                }
                first = false;
                let z = c.to_c64();
                s.push_str(&format!(
                    "{{\"n\":{n},\"m\":{m},\"sign\":\"{sign}\",\"re\":{},\"im\":{}}}",
                    z.re, z.im
                ));
            }
        }
        s.push_str("]}");
        s
    }
}

/// Max over sample points of |Δu + k²u| for a 2D expansion, with the
/// Laplacian from the 5-point stencil at step 1e−4. The stencil combination
/// runs in double-double arithmetic so the result resolves residuals near
/// the f64 noise floor.
pub fn helmholtz_residual_2d(exp: &Expansion2D, points: &[[f64; 2]], k: f64) -> f64 {
    const H: f64 = 1e-4;
    let mut worst = 0.0f64;
    for &[x, y] in points {
        let center = exp.eval_cart_dd(x, y);
        let mut acc = exp.eval_cart_dd(x + H, y);
        acc = acc.add(exp.eval_cart_dd(x - H, y));
        acc = acc.add(exp.eval_cart_dd(x, y + H));
        acc = acc.add(exp.eval_cart_dd(x, y - H));
        acc = acc.add(center.scale(-4.0));
        let lap = acc.scale(1.0 / (H * H));
        let total = lap.add(center.scale(k * k)).value();
        let mag = total.norm();
        if mag > worst {
            worst = mag;
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// 3D expansions: u = Σ_{n+2l ≤ J, |m| ≤ n} a^{(l)}_{n,m} r^{n+2l} Y_n^m(θ, φ)
// ---------------------------------------------------------------------------

/// Truncated 3D series over orthonormal spherical harmonics
/// Y_n^m = N_{n,m} P_n^{|m|}(cos θ) e^{imφ} (no Condon–Shortley phase).
/// Radial layers follow a^{(l+1)}_{n,m} = −k²/(2(l+1)(2l+2n+3)) a^{(l)}_{n,m}.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion3D {
    k: f64,
    k2: BigRational,
    max_degree: u32,
    /// (n, l, m) → a^{(l)}_{n,m}; missing entries are zero.
    coeffs: BTreeMap<(u32, u32, i32), CRat>,
}

/// Populate a 3D expansion from l = 0 seeds `((n, m), value)`. Seeds with
/// n > max_degree are ignored; |m| > n is rejected.
pub fn expand_3d(
    seeds: &[((u32, i32), CRat)],
    k: f64,
    max_degree: u32,
) -> Result<Expansion3D, SeriesError> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(SeriesError::InvalidInput(format!("wavenumber must be positive, got {k}")));
    }
    let k2 = rat_f(k).mul(&rat_f(k));
    let mut coeffs: BTreeMap<(u32, u32, i32), CRat> = BTreeMap::new();
    for ((n, m), a) in seeds {
        if m.unsigned_abs() > *n {
            return Err(SeriesError::InvalidInput(format!(
                "seed order |{m}| exceeds degree {n}"
            )));
        }
        if *n > max_degree {
            continue;
        }
        let e = coeffs.entry((*n, 0, *m)).or_insert_with(CRat::zero);
        *e = e.add(a);
    }
    let base: Vec<(u32, i32)> = coeffs.keys().map(|&(n, _, m)| (n, m)).collect();
    for (n, m) in base {
        let mut l = 0u32;
        while n + 2 * (l + 1) <= max_degree {
            let cur = coeffs[&(n, l, m)].clone();
            let denom = rat_i(2 * (l as i64 + 1) * (2 * l as i64 + 2 * n as i64 + 3));
            let factor = CRat::new(k2.clone().neg().div(&denom), rat_i(0));
            coeffs.insert((n, l + 1, m), cur.mul(&factor));
            l += 1;
        }
    }
    Ok(Expansion3D { k, k2, max_degree, coeffs })
}

/// Integer-degree associated Legendre P_n^m(t) without the Condon–Shortley
/// phase, by the classical three-term recurrence (independent of the
/// real-degree hypergeometric evaluator, which tests compare against).
pub(crate) fn assoc_legendre_int(n: u32, m: u32, t: f64) -> f64 {
    if m > n {
        return 0.0;
    }
    let s = fmath::sqrt((1.0 - t * t).max(0.0));
    let mut pmm = 1.0f64;
    for i in 1..=m {
        pmm *= (2 * i - 1) as f64 * s;
    }
    if n == m {
        return pmm;
    }
    let mut pm1 = t * (2 * m + 1) as f64 * pmm;
    if n == m + 1 {
        return pm1;
    }
    let mut p = 0.0;
    for l in (m + 2)..=n {
        p = (t * (2 * l - 1) as f64 * pm1 - (l + m - 1) as f64 * pmm) / (l - m) as f64;
        pmm = pm1;
        pm1 = p;
    }
    p
}

/// L² normalization √((2n+1)/(4π) · (n−|m|)!/(n+|m|)!).
pub(crate) fn sph_norm(n: u32, m: u32) -> f64 {
    let mut ratio = 1.0f64;
    for i in (n - m + 1)..=(n + m) {
        ratio /= i as f64;
    }
    fmath::sqrt((2.0 * n as f64 + 1.0) / (4.0 * core::f64::consts::PI) * ratio)
}

impl Expansion3D {
    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn k_squared(&self) -> &BigRational {
        &self.k2
    }

    /// a^{(l)}_{n,m}; zero when absent.
    pub fn coefficient(&self, n: u32, l: u32, m: i32) -> CRat {
        self.coeffs.get(&(n, l, m)).cloned().unwrap_or_else(CRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|a| a.is_zero())
    }

    /// Exact check of the radial-layer recurrence on every stored entry.
    pub fn satisfies_recurrence(&self) -> bool {
        for (&(n, l, m), a) in &self.coeffs {
            if n + 2 * (l + 1) <= self.max_degree {
                let next = self.coefficient(n, l + 1, m);
                let scale = rat_i(2 * (l as i64 + 1) * (2 * l as i64 + 2 * n as i64 + 3));
                let lhs = next.mul(&CRat::new(scale, rat_i(0)));
                let rhs = a.mul(&CRat::new(self.k2.clone().neg(), rat_i(0)));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn eval_spherical_dd(&self, r: f64, theta: f64, phi: f64) -> DdC {
        let t = fmath::cos(theta);
        let mut acc = DdC::ZERO;
        for (&(n, l, m), a) in &self.coeffs {
            let radial = fmath::powi(r, (n + 2 * l) as i32);
            if radial == 0.0 {
                continue;
            }
            let ma = m.unsigned_abs();
            let scal = radial * sph_norm(n, ma) * assoc_legendre_int(n, ma, t);
            let ang = Complex64::new(0.0, m as f64 * phi).exp();
            let z = a.to_c64() * (ang * scal);
            acc = acc.add_c64(z);
        }
        acc
    }

    /// Series value at spherical coordinates (r, θ, φ), r ≥ 0, θ ∈ [0, π].
    pub fn evaluate(&self, r: f64, theta: f64, phi: f64) -> Complex64 {
        self.eval_spherical_dd(r, theta, phi).value()
    }

    fn eval_cart_dd(&self, x: f64, y: f64, z: f64) -> DdC {
        let r = fmath::sqrt(x * x + y * y + z * z);
        if r == 0.0 {
            return self.eval_spherical_dd(0.0, 0.0, 0.0);
        }
        let t = (z / r).clamp(-1.0, 1.0);
        self.eval_spherical_dd(r, fmath::acos(t), fmath::atan2(y, x))
    }

    /// Value at Cartesian (x, y, z).
    pub fn evaluate_cartesian(&self, x: f64, y: f64, z: f64) -> Complex64 {
        self.eval_cart_dd(x, y, z).value()
    }

    /// α·self + β·other, exact; requires identical wavenumber and truncation.
    pub fn scaled_add(
        &self,
        alpha: &CRat,
        other: &Expansion3D,
        beta: &CRat,
    ) -> Result<Expansion3D, SeriesError> {
        if self.k != other.k || self.max_degree != other.max_degree {
            return Err(SeriesError::InvalidInput(
                "combined expansions must share wavenumber and truncation degree".into(),
            ));
        }
        let mut keys: Vec<(u32, u32, i32)> =
            self.coeffs.keys().chain(other.coeffs.keys()).cloned().collect();
        keys.sort_unstable();
        keys.dedup();
        let mut coeffs = BTreeMap::new();
        for key in keys {
            let a = self.coefficient(key.0, key.1, key.2);
            let b = other.coefficient(key.0, key.1, key.2);
            coeffs.insert(key, a.mul(alpha).add(&b.mul(beta)));
        }
        Ok(Expansion3D {
            k: self.k,
            k2: self.k2.clone(),
            max_degree: self.max_degree,
            coeffs,
        })
    }

    /// The homogeneous degree-j part as an exact polynomial:
    /// Σ_{n+2l=j, m} a^{(l)}_{n,m} N̂_{n,m} |x|^{2l} S_n^m(x) where S_n^m is the
    /// unnormalized solid harmonic and N̂ the exact rational image of the f64
    /// normalization constant (so this matches `evaluate` bit-for-bit in the
    /// normalization factor).
    pub fn homogeneous_part(&self, j: u32) -> Poly<CRat> {
        let mut out = Poly::zero(3, j);
        let mut l = 0u32;
        while 2 * l <= j {
            let n = j - 2 * l;
            for m in -(n as i32)..=(n as i32) {
                let a = self.coefficient(n, l, m);
                if a.is_zero() {
                    continue;
                }
                let norm = CRat::new(rat_f(sph_norm(n, m.unsigned_abs())), rat_i(0));
                let term = Poly::<CRat>::r2_power(3, l)
                    .mul(&solid_harmonic(n, m).scale(&a.mul(&norm)))
                    .unwrap();
                out = out.add(&term).unwrap();
            }
            l += 1;
        }
        out
    }

    /// The `count` lowest nonvanishing homogeneous Taylor terms, lowest degree
    /// first; empty for the zero expansion.
    pub fn lowest_taylor_terms(&self, count: usize) -> Vec<Poly<CRat>> {
        let mut out = Vec::new();
        for j in 0..=self.max_degree {
            if out.len() == count {
                break;
            }
            let p = self.homogeneous_part(j);
            if !p.is_zero() {
                out.push(p);
            }
        }
        out
    }

    /// JSON document {k, J, coefficients: [{n, l, m, re, im}]} in index order.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("{{\"k\":{},\"J\":{},\"coefficients\":[", self.k, self.max_degree));
        let mut first = true;
        for (&(n, l, m), a) in &self.coeffs {
            if a.is_zero() {
                continue;
            }
            if !first {
                s.push(',');
            }
            first = false;
            let z = a.to_c64();
            s.push_str(&format!(
                "{{\"n\":{n},\"l\":{l},\"m\":{m},\"re\":{},\"im\":{}}}",
                z.re, z.im
            ));
        }
        s.push_str("]}");
        s
    }
}

/// Max over sample points of |Δu + k²u| for a 3D expansion, with the
/// Laplacian from the 7-point stencil at step 1e−4 combined in double-double
/// arithmetic.
pub fn helmholtz_residual_3d(exp: &Expansion3D, points: &[[f64; 3]], k: f64) -> f64 {
    const H: f64 = 1e-4;
    let mut worst = 0.0f64;
    for &[x, y, z] in points {
        let center = exp.eval_cart_dd(x, y, z);
        let mut acc = exp.eval_cart_dd(x + H, y, z);
        acc = acc.add(exp.eval_cart_dd(x - H, y, z));
        acc = acc.add(exp.eval_cart_dd(x, y + H, z));
        acc = acc.add(exp.eval_cart_dd(x, y - H, z));
        acc = acc.add(exp.eval_cart_dd(x, y, z + H));
        acc = acc.add(exp.eval_cart_dd(x, y, z - H));
        acc = acc.add(center.scale(-6.0));
        let lap = acc.scale(1.0 / (H * H));
        let total = lap.add(center.scale(k * k)).value();
        let mag = total.norm();
        if mag > worst {
            worst = mag;
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cr(n: i64, d: i64) -> CRat {
        CRat::new(BigRational::new(BigInt::from(n), BigInt::from(d)), rat_i(0))
    }

    #[test]
    fn recurrence_first_steps_2d() {
        let e = expand_2d(&[(0, cr(1, 1), CRat::zero())], 1.0, 4).unwrap();
        assert_eq!(e.coefficient(0, 1).0, cr(-1, 4));
        assert_eq!(e.coefficient(0, 2).0, cr(1, 64));
        let e2 = expand_2d(&[(1, cr(1, 1), cr(3, 1))], 2.0, 5).unwrap();
        assert_eq!(e2.coefficient(1, 1).0, cr(-1, 2));
        assert_eq!(e2.coefficient(1, 2).0, cr(1, 12));
        // Sin chain scales by the same factors.
        assert_eq!(e2.coefficient(1, 1).1, cr(-3, 2));
        assert!(e.satisfies_recurrence());
        assert!(e2.satisfies_recurrence());
    }

    #[test]
    fn zero_and_ignored_seeds() {
        let z = expand_2d(&[], 1.0, 6).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.evaluate(0.3, 1.1), Complex64::new(0.0, 0.0));
        assert!(z.lowest_taylor_terms(3).is_empty());
        assert_eq!(helmholtz_residual_2d(&z, &[[0.1, 0.2]], 1.0), 0.0);
        // Seeds beyond the truncation degree are ignored; the n=0 sin seed is
        // forced to zero.
        let e = expand_2d(&[(9, cr(1, 1), CRat::zero()), (0, CRat::zero(), cr(5, 1))], 1.0, 4)
            .unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn recurrence_first_steps_3d() {
        let e = expand_3d(&[((0, 0), cr(1, 1))], 1.0, 4).unwrap();
        assert_eq!(e.coefficient(0, 1, 0), cr(-1, 6));
        let e2 = expand_3d(&[((1, 1), cr(1, 1))], 1.0, 3).unwrap();
        assert_eq!(e2.coefficient(1, 1, 1), cr(-1, 10));
        assert!(e.satisfies_recurrence());
        assert!(e2.satisfies_recurrence());
        assert!(expand_3d(&[], 2.0, 5).unwrap().is_zero());
        assert!(expand_3d(&[((1, 2), cr(1, 1))], 1.0, 3).is_err());
    }

    #[test]
    fn termwise_laplacian_closes_2d() {
        // Applying Δ termwise to r^{n+2m}(cos/sin nθ) multiplies the (n, m)
        // coefficient by 4m(n+m) and lowers m by one; the resulting series
        // must equal −k² times the original, coefficient by coefficient.
        let e = expand_2d(
            &[(0, cr(2, 3), CRat::zero()), (1, cr(1, 7), cr(-4, 5)), (2, cr(0, 1), cr(1, 2))],
            1.7,
            8,
        )
        .unwrap();
        let neg_k2 = CRat::new(e.k_squared().clone().neg(), rat_i(0));
        for n in 0..=8u32 {
            for m in 0..=4u32 {
                if n + 2 * m > 8 - 2 {
                    continue;
                }
                let up = e.coefficient(n, m + 1);
                let factor = CRat::new(rat_i(4 * (m as i64 + 1) * (n as i64 + m as i64 + 1)), rat_i(0));
                let want = e.coefficient(n, m);
                assert_eq!(up.0.mul(&factor), want.0.mul(&neg_k2), "cos n={n} m={m}");
                assert_eq!(up.1.mul(&factor), want.1.mul(&neg_k2), "sin n={n} m={m}");
            }
        }
    }

    #[test]
    fn termwise_laplacian_closes_3d() {
        // Δ(r^{n+2l} Y_n^m) = 2l(2l+2n+1) r^{n+2l−2} Y_n^m, so the shifted
        // series must equal −k² times the original exactly.
        let e = expand_3d(
            &[((0, 0), cr(1, 3)), ((1, -1), cr(2, 5)), ((2, 1), cr(-1, 4))],
            0.9,
            7,
        )
        .unwrap();
        let neg_k2 = CRat::new(e.k_squared().clone().neg(), rat_i(0));
        for (&(n, l, m), a) in &e.coeffs {
            if n + 2 * (l + 1) > 7 {
                continue;
            }
            let up = e.coefficient(n, l + 1, m);
            let lp = l as i64 + 1;
            let factor = CRat::new(rat_i(2 * lp * (2 * lp + 2 * n as i64 + 1)), rat_i(0));
            assert_eq!(up.mul(&factor), a.mul(&neg_k2), "n={n} l={l} m={m}");
        }
    }

    #[test]
    fn bessel_series_matches_oracle() {
        // c+_{0,0} = 1 generates J₀(kr); frozen high-precision references.
        let e = expand_2d(&[(0, cr(1, 1), CRat::zero())], 1.0, 14).unwrap();
        let at_zero = e.evaluate(0.0, 0.4);
        assert_eq!(at_zero, Complex64::new(1.0, 0.0));
        let oracle = [
            (0.1, 0.997501562066040032281286898475),
            (0.2, 0.990024972239576390817507620083),
            (0.3, 0.977626246538296087569746199722),
        ];
        for &(r, j0) in &oracle {
            let v = e.evaluate(r, 2.2);
            assert!((v.re - j0).abs() < 1e-12, "r={r}: {} vs {j0}", v.re);
            assert!(v.im.abs() < 1e-15);
        }
    }

    #[test]
    fn plane_wave_matches_exponential() {
        let (k, theta_d) = (1.0, 0.4);
        let e = expand_2d(&plane_wave_seeds(k, theta_d, 12), k, 12).unwrap();
        let v = e.evaluate(0.3, 0.7);
        let frozen = Complex64::new(0.959210304924493321060443885594, 0.282693457523623181682650156224);
        assert!((v - frozen).norm() < 1e-9, "{v} vs {frozen}");
        for &(r, th) in &[(0.05, 0.0), (0.2, 2.0), (0.3, -1.3), (0.25, 3.0)] {
            let direct = Complex64::new(0.0, k * r * fmath::cos(th - theta_d)).exp();
            let got = e.evaluate(r, th);
            assert!((got - direct).norm() < 1e-9, "r={r} th={th}");
        }
    }

    #[test]
    fn sinc_series_matches_oracle_3d() {
        // a^{(0)}_{0,0} = 1 generates sin(kr)/(kr) · Y₀⁰.
        let e = expand_3d(&[((0, 0), cr(1, 1))], 1.0, 16).unwrap();
        // a^{(l)} = (−1)^l k^{2l}/(2l+1)! in closed form.
        assert_eq!(e.coefficient(0, 2, 0), cr(1, 120));
        assert_eq!(e.coefficient(0, 3, 0), cr(-1, 5040));
        let v = e.evaluate(0.25, 1.0, 2.0);
        let frozen = 0.27916547347975071322139169505; // sin(0.25)/0.25/√(4π)
        assert!((v.re - frozen).abs() < 1e-13, "{} vs {frozen}", v.re);
        assert!(v.im.abs() < 1e-15);
        let direct = libm::sin(0.25) / 0.25 / libm::sqrt(4.0 * core::f64::consts::PI);
        assert!((v.re - direct).abs() < 1e-13);
    }

    #[test]
    fn residual_small_for_converged_series() {
        let e = expand_2d(&[(0, cr(1, 1), CRat::zero())], 1.0, 14).unwrap();
        let mut pts = Vec::new();
        for i in 0..12 {
            let th = i as f64 * 0.5;
            pts.push([0.3 * fmath::cos(th), 0.3 * fmath::sin(th)]);
            pts.push([0.1 * fmath::cos(th), 0.1 * fmath::sin(th)]);
        }
        let res = helmholtz_residual_2d(&e, &pts, 1.0);
        assert!(res <= 1e-8, "2D residual {res}");
        let e3 = expand_3d(&[((0, 0), cr(1, 1)), ((2, 1), cr(1, 2))], 1.0, 16).unwrap();
        let pts3: Vec<[f64; 3]> = (0..10)
            .map(|i| {
                let a = i as f64;
                [0.2 * fmath::cos(a), 0.2 * fmath::sin(a) * 0.8, 0.1 + 0.01 * a]
            })
            .collect();
        let res3 = helmholtz_residual_3d(&e3, &pts3, 1.0);
        assert!(res3 <= 1e-8, "3D residual {res3}");
    }

    fn ring(r: f64) -> Vec<[f64; 2]> {
        (0..12)
            .map(|i| {
                let th = i as f64 * core::f64::consts::PI / 6.0 + 0.05;
                [r * fmath::cos(th), r * fmath::sin(th)]
            })
            .collect()
    }

    #[test]
    fn residual_decays_at_truncation_rate() {
        // Truncating at J leaves a residual k²(r^{J−1}F_{J−1} + r^J F_J), so
        // halving r should shrink it by about 2^{J−1}. Wavenumbers are chosen
        // large enough that the truncation residual dominates stencil error.
        for &(k, j, r_hi, r_lo) in &[(6.0, 8u32, 0.2, 0.1), (10.0, 12, 0.3, 0.15)] {
            let e = expand_2d(&plane_wave_seeds(k, 0.4, j), k, j).unwrap();
            let hi = helmholtz_residual_2d(&e, &ring(r_hi), k);
            let lo = helmholtz_residual_2d(&e, &ring(r_lo), k);
            let slope = fmath::ln(hi / lo) / fmath::ln(r_hi / r_lo);
            let want = (j - 1) as f64;
            assert!(
                (slope - want).abs() <= 0.3,
                "J={j}: slope {slope} vs {want} (hi={hi}, lo={lo})"
            );
        }
    }

    #[test]
    fn evaluation_is_linear() {
        let a = expand_2d(&plane_wave_seeds(1.3, 0.9, 9), 1.3, 9).unwrap();
        let b = expand_2d(&[(2, cr(1, 3), cr(-2, 7)), (0, cr(1, 2), CRat::zero())], 1.3, 9)
            .unwrap();
        let alpha = CRat::new(rat_f(0.6173), rat_f(-1.25));
        let beta = CRat::new(rat_f(2.5), rat_f(0.375));
        let comb = a.scaled_add(&alpha, &b, &beta).unwrap();
        let (za, zb) = (alpha.to_c64(), beta.to_c64());
        for i in 0..20 {
            let r = 0.02 + 0.02 * i as f64;
            let th = 0.37 * i as f64;
            let lhs = comb.evaluate(r, th);
            let rhs = za * a.evaluate(r, th) + zb * b.evaluate(r, th);
            assert!((lhs - rhs).norm() < 1e-12, "i={i}: {lhs} vs {rhs}");
        }
        // Mismatched truncations are rejected.
        let c = expand_2d(&[(0, cr(1, 1), CRat::zero())], 1.3, 5).unwrap();
        assert!(a.scaled_add(&alpha, &c, &beta).is_err());
    }

    #[test]
    fn taylor_terms_single_seed_degree() {
        // Seeds only at n = M: the lowest term is the harmonic
        // c+ r^M cos Mθ + c− r^M sin Mθ.
        let e = expand_2d(&[(3, cr(2, 1), cr(-1, 3))], 1.0, 9).unwrap();
        let terms = e.lowest_taylor_terms(2);
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].degree(), 3);
        assert!(terms[0].laplacian().is_zero());
        let (re, im) = circle_harmonics::<CRat>(3);
        let want = re.scale(&cr(2, 1)).add(&im.scale(&cr(-1, 3))).unwrap();
        assert_eq!(terms[0], want);
        // The next nonvanishing degree is 5 (degree 4 is absent), and it is
        // not harmonic: Δ(r²·H₃) ≠ 0.
        assert_eq!(terms[1].degree(), 5);
        assert!(!terms[1].laplacian().is_zero());
    }

    #[test]
    fn taylor_terms_constant_seed() {
        // c+_{0,0} = 1: lowest terms are the constant 1 and r²F₂ = −(k²/4)|x|²,
        // which alone is not harmonic (the harmonic pair is degrees M, M+1 with
        // the degree-1 term identically zero here).
        let e = expand_2d(&[(0, cr(1, 1), CRat::zero())], 1.0, 8).unwrap();
        let terms = e.lowest_taylor_terms(2);
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].degree(), 0);
        assert_eq!(terms[0].coeff(&[0, 0, 0]), cr(1, 1));
        assert_eq!(terms[1].degree(), 2);
        assert_eq!(terms[1].coeff(&[2, 0, 0]), cr(-1, 4));
        assert_eq!(terms[1].coeff(&[0, 2, 0]), cr(-1, 4));
        assert!(!terms[1].laplacian().is_zero());
    }

    #[test]
    fn lowest_pair_harmonic_when_low_degrees_vanish() {
        // Random-ish seeds supported on n ≥ M give harmonic slices at degrees
        // M and M+1.
        let m0 = 3u32;
        let seeds: Vec<(u32, CRat, CRat)> = (m0..=6)
            .map(|n| (n, cr(n as i64 * 7 % 5 + 1, 3), cr(-(n as i64 % 4) - 1, 2)))
            .collect();
        let e = expand_2d(&seeds, 2.0, 9).unwrap();
        assert!(e.homogeneous_part(m0).laplacian().is_zero());
        assert!(e.homogeneous_part(m0 + 1).laplacian().is_zero());
        assert!(!e.homogeneous_part(m0 + 2).laplacian().is_zero());
    }

    #[test]
    fn taylor_terms_3d_solid_harmonic() {
        let e = expand_3d(&[((2, 1), cr(1, 1))], 1.0, 6).unwrap();
        let terms = e.lowest_taylor_terms(1);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].degree(), 2);
        assert!(terms[0].laplacian().is_zero());
        // The polynomial slice and the series evaluator agree pointwise.
        let (r, th, ph) = (0.21, 0.8, -1.1);
        let x = [
            r * fmath::sin(th) * fmath::cos(ph),
            r * fmath::sin(th) * fmath::sin(ph),
            r * fmath::cos(th),
        ];
        let poly_sum: Complex64 = (0..=6u32).map(|j| e.homogeneous_part(j).eval_c64(&x)).sum();
        let series = e.evaluate(r, th, ph);
        assert!((poly_sum - series).norm() < 1e-13, "{poly_sum} vs {series}");
    }

    #[test]
    fn integer_legendre_matches_hypergeometric_route() {
        use crate::specfun;
        for n in 0..=10u32 {
            for m in 0..=n {
                let ts = [-0.9, -0.35, 0.0, 0.41, 0.77];
                let pairs: Vec<(f64, f64)> = ts
                    .iter()
                    .map(|&t| {
                        let arg = specfun::LegendreArg { degree: n as f64, order: m, t };
                        (assoc_legendre_int(n, m, t), specfun::legendre_p(&arg).unwrap())
                    })
                    .collect();
                // Compare against the family's sup-norm on the sample set: at
                // parity zeros (e.g. P₉⁶(0) = 0 exactly) the general route
                // carries a small absolute error scaled to the family size.
                let scale = pairs.iter().fold(1.0f64, |a, p| a.max(p.0.abs()));
                for (&t, &(fast, general)) in ts.iter().zip(&pairs) {
                    assert!(
                        (fast - general).abs() <= 2e-9 * scale,
                        "n={n} m={m} t={t}: {fast} vs {general} (scale {scale})"
                    );
                }
            }
        }
    }

    #[test]
    fn json_round_shape() {
        let e = expand_2d(&[(1, cr(1, 2), cr(1, 4))], 2.0, 3).unwrap();
        let j = e.to_json();
        assert!(j.starts_with("{\"k\":2,\"J\":3,"));
        assert!(j.contains("\"sign\":\"+\""));
        assert!(j.contains("\"sign\":\"-\""));
        assert_eq!(j, e.clone().to_json());
        let e3 = expand_3d(&[((1, -1), cr(1, 1))], 1.5, 3).unwrap();
        let j3 = e3.to_json();
        assert!(j3.contains("\"m\":-1"));
    }
}
