//! Exact homogeneous polynomial algebra in 2 or 3 variables: differential
//! operators, harmonic decomposition, and the circle/solid harmonics used to
//! convert angular series terms into polynomial form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;

use crate::exact::ExactField;
use crate::fmath;

/// Complex numbers with exact rational parts.
pub type CRat = Complex<BigRational>;

#[derive(Debug, Clone, PartialEq)]
pub enum PolyError {
    DimensionMismatch(String),
    DegreeMismatch(String),
    BadIndex(String),
}

impl core::fmt::Display for PolyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PolyError::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            PolyError::DegreeMismatch(s) => write!(f, "degree mismatch: {s}"),
            PolyError::BadIndex(s) => write!(f, "bad multi-index: {s}"),
        }
    }
}

/// A homogeneous polynomial with exact coefficients keyed by multi-index
/// [i, j, k] (k = 0 in dimension 2). The zero polynomial has an empty map but
/// still carries its (dimension, degree) signature.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S> {
    dim: u8,
    degree: u32,
    coeffs: BTreeMap<[u8; 3], S>,
}

/// All multi-indices of the given total degree, in the deterministic map
/// order used throughout.
pub fn monomials(dim: u8, degree: u32) -> Vec<[u8; 3]> {
    assert!(dim == 2 || dim == 3);
    let d = degree as u8;
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=(d - i) {
            let k = d - i - j;
            if dim == 2 && k != 0 {
                continue;
            }
            out.push([i, j, k]);
        }
    }
    out.sort_unstable();
    out
}

impl<S: ExactField> Poly<S> {
    pub fn zero(dim: u8, degree: u32) -> Self {
        assert!(dim == 2 || dim == 3);
        Poly { dim, degree, coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = ([u8; 3], S)>>(
        dim: u8,
        degree: u32,
        terms: I,
    ) -> Result<Self, PolyError> {
        let mut p = Poly::zero(dim, degree);
        for (alpha, c) in terms {
            let total = alpha[0] as u32 + alpha[1] as u32 + alpha[2] as u32;
            if total != degree {
                return Err(PolyError::BadIndex(format!(
                    "index {alpha:?} has degree {total}, expected {degree}"
                )));
            }
            if dim == 2 && alpha[2] != 0 {
                return Err(PolyError::BadIndex(format!(
                    "index {alpha:?} uses the third variable in dimension 2"
                )));
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    pub fn monomial(dim: u8, alpha: [u8; 3], c: S) -> Self {
        let degree = alpha[0] as u32 + alpha[1] as u32 + alpha[2] as u32;
        Self::from_terms(dim, degree, [(alpha, c)]).expect("valid monomial index")
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, alpha: &[u8; 3]) -> S {
        self.coeffs.get(alpha).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 3], &S)> {
        self.coeffs.iter()
    }

    /// Coefficient-wise change of scalar field (e.g. rational → quadratic
    /// extension); drops any coefficient the map sends to zero.
    pub fn map_scalars<T: ExactField>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        let mut out = Poly::zero(self.dim, self.degree);
        for (alpha, c) in &self.coeffs {
            let v = f(c);
            if !v.is_zero() {
                out.coeffs.insert(*alpha, v);
            }
        }
        out
    }

    fn add_term(&mut self, alpha: [u8; 3], c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&alpha) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.coeffs.remove(&alpha);
                }
            }
            None => {
                self.coeffs.insert(alpha, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_signature(other)?;
        let mut out = self.clone();
        for (alpha, c) in &other.coeffs {
            out.add_term(*alpha, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Poly::zero(self.dim, self.degree);
        for (alpha, c) in &self.coeffs {
            out.coeffs.insert(*alpha, c.neg());
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Poly::zero(self.dim, self.degree);
        for (alpha, c) in &self.coeffs {
            let v = c.mul(s);
            if !v.is_zero() {
                out.coeffs.insert(*alpha, v);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch(format!(
                "{} vs {}",
                self.dim, other.dim
            )));
        }
        let mut out = Poly::zero(self.dim, self.degree + other.degree);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let alpha = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                out.add_term(alpha, ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// ∂p/∂x_axis, homogeneous of degree − 1 (the zero polynomial of degree 0
    /// when differentiating a constant).
    pub fn derivative(&self, axis: usize) -> Self {
        assert!(axis < self.dim as usize);
        let deg = self.degree.saturating_sub(1);
        let mut out = Poly::zero(self.dim, deg);
        for (alpha, c) in &self.coeffs {
            let e = alpha[axis];
            if e == 0 {
                continue;
            }
            let mut beta = *alpha;
            beta[axis] -= 1;
            out.add_term(beta, c.mul(&S::from_i64(e as i64)));
        }
        out
    }

    /// Exact Laplacian, homogeneous of degree max(degree − 2, 0).
    pub fn laplacian(&self) -> Self {
        let deg = self.degree.saturating_sub(2);
        let mut out = Poly::zero(self.dim, deg);
        for (alpha, c) in &self.coeffs {
            for axis in 0..self.dim as usize {
                let e = alpha[axis] as i64;
                if e < 2 {
                    continue;
                }
                let mut beta = *alpha;
                beta[axis] -= 2;
                out.add_term(beta, c.mul(&S::from_i64(e * (e - 1))));
            }
        }
        out
    }

    /// |x|^{2l} as an exact polynomial.
    pub fn r2_power(dim: u8, l: u32) -> Self {
        let mut r2 = Poly::zero(dim, 2);
        for axis in 0..dim as usize {
            let mut alpha = [0u8; 3];
            alpha[axis] = 2;
            r2.coeffs.insert(alpha, S::one());
        }
        let mut out = Poly::from_terms(dim, 0, [([0, 0, 0], S::one())]).unwrap();
        for _ in 0..l {
            out = out.mul(&r2).unwrap();
        }
        out
    }

    /// Exact evaluation at a point with coordinates in the same field.
    pub fn eval_exact(&self, x: &[S]) -> S {
        assert_eq!(x.len(), self.dim as usize);
        let mut acc = S::zero();
        for (alpha, c) in &self.coeffs {
            let mut term = c.clone();
            for (axis, &e) in alpha.iter().take(self.dim as usize).enumerate() {
                for _ in 0..e {
                    term = term.mul(&x[axis]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Floating evaluation (complex-aware through the scalar's projection).
    pub fn eval_c64(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.dim as usize);
        let mut acc = Complex64::new(0.0, 0.0);
        for (alpha, c) in &self.coeffs {
            let mut mono = 1.0f64;
            for (axis, &e) in alpha.iter().take(self.dim as usize).enumerate() {
                mono *= fmath::powi(x[axis], e as i32);
            }
            acc += c.to_c64() * mono;
        }
        acc
    }

    fn check_signature(&self, other: &Self) -> Result<(), PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch(format!(
                "{} vs {}",
                self.dim, other.dim
            )));
        }
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch(format!(
                "{} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }
}

/// Decompose a homogeneous p of degree n as Σ_l b_l |x|^{2l} H_{n−2l} with
/// every H exactly harmonic. The split scalar/polynomial is normalization
/// free, so b_l is returned as 1 and H carries the coefficients; the list is
/// ordered l = 0, 1, … and always has ⌊n/2⌋ + 1 entries (possibly zero).
///
/// Uses the identity Δ(|x|^{2l} H_m) = 2l(2l + 2m + d − 2)·|x|^{2l−2} H_m:
/// decomposing Δp recursively determines every l ≥ 1 component by exact
/// integer division, and H_n is the remainder.
pub fn harmonic_decompose<S: ExactField>(p: &Poly<S>) -> Vec<(S, Poly<S>)> {
    let n = p.degree();
    let d = p.dim() as i64;
    if n <= 1 {
        return alloc::vec![(S::one(), p.clone())];
    }
    let inner = harmonic_decompose(&p.laplacian());
    // inner[l'] is the |x|^{2l'} component of Δp, matching our l = l' + 1.
    let mut parts: Vec<Poly<S>> = Vec::with_capacity(n as usize / 2 + 1);
    parts.push(Poly::zero(p.dim(), n)); // placeholder for H_n
    for (lp, (_, g)) in inner.iter().enumerate() {
        let l = (lp + 1) as i64;
        let m = n as i64 - 2 * l;
        let c = 2 * l * (2 * l + 2 * m + d - 2);
        debug_assert!(c > 0);
        let inv = S::one().div(&S::from_i64(c));
        parts.push(g.scale(&inv));
    }
    // H_n = p − Σ_{l≥1} |x|^{2l} H_{n−2l}.
    let mut top = p.clone();
    for (l, h) in parts.iter().enumerate().skip(1) {
        let lifted = Poly::<S>::r2_power(p.dim(), l as u32).mul(h).unwrap();
        top = top.sub(&lifted).unwrap();
    }
    parts[0] = top;
    parts.into_iter().map(|h| (S::one(), h)).collect()
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// (Re (x+iy)^n, Im (x+iy)^n): the harmonic pair r^n cos nθ, r^n sin nθ with
/// exact integer coefficients.
pub fn circle_harmonics<S: ExactField>(n: u32) -> (Poly<S>, Poly<S>) {
    let mut re = Poly::zero(2, n);
    let mut im = Poly::zero(2, n);
    for k in 0..=n {
        let b = binomial(n, k);
        let bi = i128::try_from(&b).expect("binomial fits i128") as i64;
        let alpha = [(n - k) as u8, k as u8, 0];
        // i^k cycles 1, i, −1, −i.
        match k % 4 {
            0 => re.add_term(alpha, S::from_i64(bi)),
            1 => im.add_term(alpha, S::from_i64(bi)),
            2 => re.add_term(alpha, S::from_i64(-bi)),
            _ => im.add_term(alpha, S::from_i64(-bi)),
        }
    }
    (re, im)
}

/// Coefficients of the Legendre polynomial P_n as exact rationals
/// (index = power of t).
fn legendre_coeffs(n: u32) -> Vec<BigRational> {
    let mut c = alloc::vec![BigRational::zero(); n as usize + 1];
    let two_n = BigInt::from(2).pow(n);
    for k in 0..=(n / 2) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let num = binomial(n, k) * binomial(2 * n - 2 * k, n) * BigInt::from(sign);
        c[(n - 2 * k) as usize] = BigRational::new(num, two_n.clone());
    }
    c
}

fn crat(re: BigRational, im: BigRational) -> CRat {
    Complex::new(re, im)
}

/// Unnormalized complex solid harmonic r^n P_n^{|m|}(cos θ) e^{imφ} as an
/// exact polynomial in (x, y, z); no Condon–Shortley phase. Harmonic by
/// construction. The L² normalization constant is irrational and left to the
/// caller (any scalar multiple preserves harmonicity).
pub fn solid_harmonic(n: u32, m: i32) -> Poly<CRat> {
    let ma = m.unsigned_abs();
    assert!(ma <= n, "|m| must not exceed n");
    // d^{|m|}/dt^{|m|} P_n(t), exact.
    let mut g = legendre_coeffs(n);
    for _ in 0..ma {
        let mut next = alloc::vec![BigRational::zero(); g.len().saturating_sub(1).max(1)];
        for (j, cj) in g.iter().enumerate().skip(1) {
            next[j - 1] = cj * BigRational::from_integer(BigInt::from(j));
        }
        g = next;
    }
    // (x ± iy)^{|m|} for the e^{imφ} factor.
    let mut xy = Poly::from_terms(3, 0, [([0, 0, 0], CRat::one())]).unwrap();
    let step = if m >= 0 {
        // x + iy
        Poly::from_terms(
            3,
            1,
            [
                ([1, 0, 0], crat(BigRational::one(), BigRational::zero())),
                ([0, 1, 0], crat(BigRational::zero(), BigRational::one())),
            ],
        )
        .unwrap()
    } else {
        Poly::from_terms(
            3,
            1,
            [
                ([1, 0, 0], crat(BigRational::one(), BigRational::zero())),
                ([0, 1, 0], crat(BigRational::zero(), -BigRational::one())),
            ],
        )
        .unwrap()
    };
    for _ in 0..ma {
        xy = xy.mul(&step).unwrap();
    }
    // Σ_j g_j z^j (x²+y²+z²)^{(n−|m|−j)/2} · (x±iy)^{|m|}; parity of g makes
    // every exponent difference even.
    let mut out = Poly::zero(3, n);
    for (j, gj) in g.iter().enumerate() {
        if gj.is_zero() {
            continue;
        }
        let rest = n - ma - j as u32;
        debug_assert!(rest % 2 == 0);
        let zpow = Poly::monomial(3, [0, 0, j as u8], crat(gj.clone(), BigRational::zero()));
        let term = Poly::<CRat>::r2_power(3, rest / 2)
            .mul(&zpow)
            .unwrap()
            .mul(&xy)
            .unwrap();
        out = out.add(&term).unwrap();
    }
    out
}
