//! Symbolic assembly of the corner boundary systems.
//!
//! Every constraint row is a linear functional on the coefficient space of
//! homogeneous polynomials, and every matrix entry is a short trigonometric
//! expression Σ ρ·cosᵃω·sinᵇω in the opening angle ω with exact rational ρ.
//! The same symbolic matrix is instantiated three ways: exactly over a
//! quadratic extension field when ω is a recognized rational multiple of π,
//! in certified interval arithmetic for arbitrary ω, and in plain `f64` as an
//! independent floating cross-check of the exact ranks.
//!
//! Sector rows restrict polynomials to the two boundary rays: on a ray the
//! restriction of a homogeneous polynomial is a single multiple of s^degree,
//! so each boundary condition on each edge is one scalar functional. Cone
//! rows restrict to the surface {θ = ω}: there the restriction is a
//! trigonometric polynomial in the azimuth φ, and each Fourier mode must
//! vanish separately, which reduces the surface condition to finitely many
//! scalar functionals with exact dyadic coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::exact::dyadic::{sin_cos_enclosure, Dyadic, DyadicInterval};
use crate::exact::quadext::{exact_cos_sin, QuadExt, RationalAngle};
use crate::fmath;
use crate::poly::{monomials, Poly};

/// One symbolic matrix entry: Σ coeff·cos^cpow(ω)·sin^spow(ω).
pub type TrigEntry = Vec<(BigRational, u32, u32)>;

/// A constraint matrix whose entries are trigonometric expressions in the
/// opening angle, together with the monomial basis indexing its columns.
#[derive(Debug, Clone)]
pub struct SymbolicMatrix {
    pub rows: Vec<Vec<TrigEntry>>,
    pub cols: Vec<[u8; 3]>,
    pub dim: u8,
    pub degree: u32,
}

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn push_term(entry: &mut TrigEntry, coeff: BigRational, cpow: u32, spow: u32) {
    if coeff.is_zero() {
        return;
    }
    if let Some(t) = entry.iter_mut().find(|t| t.1 == cpow && t.2 == spow) {
        t.0 = &t.0 + &coeff;
        if t.0.is_zero() {
            let cp = cpow;
            let sp = spow;
            entry.retain(|t| !(t.1 == cp && t.2 == sp && t.0.is_zero()));
        }
        return;
    }
    entry.push((coeff, cpow, spow));
}

/// Exact Fourier expansion of cosᵃφ·sinᵇφ: `cos_modes[j]` multiplies cos(jφ)
/// and `sin_modes[j]` multiplies sin(jφ) (index 0 unused for sines). All
/// coefficients are dyadic rationals produced by product-to-sum reduction.
#[derive(Debug, Clone)]
pub(crate) struct PhiFourier {
    pub cos_modes: Vec<BigRational>,
    pub sin_modes: Vec<BigRational>,
}

impl PhiFourier {
    fn one() -> Self {
        PhiFourier { cos_modes: vec![rat_i(1)], sin_modes: vec![rat_i(0)] }
    }

    fn ensure(&mut self, j: usize) {
        while self.cos_modes.len() <= j {
            self.cos_modes.push(rat_i(0));
        }
        while self.sin_modes.len() <= j {
            self.sin_modes.push(rat_i(0));
        }
    }

    fn add_cos(&mut self, j: i64, v: BigRational) {
        let j = j.unsigned_abs() as usize; // cos(−jφ) = cos(jφ)
        self.ensure(j);
        self.cos_modes[j] = &self.cos_modes[j] + &v;
    }

    fn add_sin(&mut self, j: i64, v: BigRational) {
        if j == 0 {
            return; // sin 0 ≡ 0
        }
        let (j, v) = if j < 0 { ((-j) as usize, -v) } else { (j as usize, v) };
        self.ensure(j);
        self.sin_modes[j] = &self.sin_modes[j] + &v;
    }

    fn mul_by_cos(&self) -> Self {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut out = PhiFourier::one();
        out.cos_modes[0] = rat_i(0);
        for (j, c) in self.cos_modes.iter().enumerate() {
            if !c.is_zero() {
                // cos jφ·cos φ = ½cos (j+1)φ + ½cos (j−1)φ
                out.add_cos(j as i64 + 1, c * &half);
                out.add_cos(j as i64 - 1, c * &half);
            }
        }
        for (j, s) in self.sin_modes.iter().enumerate().skip(1) {
            if !s.is_zero() {
                // sin jφ·cos φ = ½sin (j+1)φ + ½sin (j−1)φ
                out.add_sin(j as i64 + 1, s * &half);
                out.add_sin(j as i64 - 1, s * &half);
            }
        }
        out
    }

    fn mul_by_sin(&self) -> Self {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut out = PhiFourier::one();
        out.cos_modes[0] = rat_i(0);
        for (j, c) in self.cos_modes.iter().enumerate() {
            if !c.is_zero() {
                // cos jφ·sin φ = ½sin (j+1)φ − ½sin (j−1)φ
                out.add_sin(j as i64 + 1, c * &half);
                out.add_sin(j as i64 - 1, -(c * &half));
            }
        }
        for (j, s) in self.sin_modes.iter().enumerate().skip(1) {
            if !s.is_zero() {
                // sin jφ·sin φ = ½cos (j−1)φ − ½cos (j+1)φ
                out.add_cos(j as i64 - 1, s * &half);
                out.add_cos(j as i64 + 1, -(s * &half));
            }
        }
        out
    }
}

/// Fourier series of cosᵃφ·sinᵇφ.
pub(crate) fn phi_fourier(a: u32, b: u32) -> PhiFourier {
    let mut f = PhiFourier::one();
    for _ in 0..a {
        f = f.mul_by_cos();
    }
    for _ in 0..b {
        f = f.mul_by_sin();
    }
    f
}

/// Rows expressing that the iterated Laplacian `order` times of the
/// polynomial vanishes identically; empty when the degree is too small for a
/// nontrivial condition.
fn iterated_laplacian_rows(
    dim: u8,
    degree: u32,
    order: u32,
    cols: &[[u8; 3]],
) -> Vec<Vec<TrigEntry>> {
    if degree < 2 * order {
        return Vec::new();
    }
    let targets = monomials(dim, degree - 2 * order);
    let mut rows: Vec<Vec<TrigEntry>> = vec![vec![Vec::new(); cols.len()]; targets.len()];
    for (cidx, alpha) in cols.iter().enumerate() {
        let mut p = Poly::<BigRational>::monomial(dim, *alpha, rat_i(1));
        for _ in 0..order {
            p = p.laplacian();
        }
        for (beta, c) in p.terms() {
            let ridx = targets
                .iter()
                .position(|t| t == beta)
                .expect("laplacian image outside target basis");
            push_term(&mut rows[ridx][cidx], c.clone(), 0, 0);
        }
    }
    rows
}

/// The four scalar boundary rows of a plane sector: trace and normal
/// derivative on the edge θ = 0 and on the edge θ = ω.
fn sector_boundary_rows(degree: u32, cols: &[[u8; 3]]) -> Vec<Vec<TrigEntry>> {
    let d = degree;
    let mut rows: Vec<Vec<TrigEntry>> = vec![vec![Vec::new(); cols.len()]; 4];
    for (cidx, alpha) in cols.iter().enumerate() {
        let (a0, a1) = (alpha[0] as u32, alpha[1] as u32);
        // Trace on θ = 0: p(s, 0) = coeff([d,0])·s^d.
        if a0 == d {
            push_term(&mut rows[0][cidx], rat_i(1), 0, 0);
        }
        // Trace on θ = ω: p(s·cos ω, s·sin ω) = Σ c_α cos^{α₀}ω sin^{α₁}ω·s^d.
        push_term(&mut rows[1][cidx], rat_i(1), a0, a1);
        // Normal derivative on θ = 0, ν = (0, −1): −∂₂p(s, 0).
        if a1 == 1 {
            push_term(&mut rows[2][cidx], rat_i(-1), 0, 0);
        }
        // Normal derivative on θ = ω, ν = (−sin ω, cos ω):
        // (−sin ω·∂₁ + cos ω·∂₂)x^α at (cos ω, sin ω).
        if a0 > 0 {
            push_term(&mut rows[3][cidx], rat_i(-(a0 as i64)), a0 - 1, a1 + 1);
        }
        if a1 > 0 {
            push_term(&mut rows[3][cidx], rat_i(a1 as i64), a0 + 1, a1 - 1);
        }
    }
    rows
}

/// Biharmonic Cauchy system on the sector 0 < θ < ω for homogeneous degree-d
/// polynomials: Δ²p ≡ 0 plus the four boundary rows.
pub fn sector_system(degree: u32) -> SymbolicMatrix {
    let cols = monomials(2, degree);
    let mut rows = iterated_laplacian_rows(2, degree, 2, &cols);
    rows.extend(sector_boundary_rows(degree, &cols));
    SymbolicMatrix { rows, cols, dim: 2, degree }
}

/// Poisson-with-Cauchy-data system on the sector: Δq ≡ rhs (row per degree-
/// (d−2) monomial, in the order of the returned target list) plus the four
/// boundary rows. The right-hand side vector must list the rhs coefficients
/// in target order followed by four zeros.
pub fn sector_wedge_system(degree: u32) -> (SymbolicMatrix, Vec<[u8; 3]>) {
    let cols = monomials(2, degree);
    let targets = if degree >= 2 { monomials(2, degree - 2) } else { Vec::new() };
    let mut rows = iterated_laplacian_rows(2, degree, 1, &cols);
    rows.extend(sector_boundary_rows(degree, &cols));
    (SymbolicMatrix { rows, cols, dim: 2, degree }, targets)
}

/// Biharmonic Cauchy system on the cone {θ < ω} ⊂ ℝ³. Surface conditions are
/// reduced to one row per azimuthal Fourier mode: cos modes 0..=d and sin
/// modes 1..=d for the trace and again for the normal derivative.
pub fn cone_system(degree: u32) -> SymbolicMatrix {
    let d = degree;
    let cols = monomials(3, degree);
    let mut rows = iterated_laplacian_rows(3, degree, 2, &cols);
    let n_modes = 2 * d as usize + 1; // cos 0..=d, sin 1..=d
    let mode_row = |rows: &mut Vec<Vec<TrigEntry>>| -> usize {
        let start = rows.len();
        for _ in 0..n_modes {
            rows.push(vec![Vec::new(); cols.len()]);
        }
        start
    };
    // Row layout per block: cos modes j = 0..=d, then sin modes j = 1..=d.
    let trace0 = mode_row(&mut rows);
    let normal0 = mode_row(&mut rows);
    for (cidx, alpha) in cols.iter().enumerate() {
        let (ax, ay, az) = (alpha[0] as u32, alpha[1] as u32, alpha[2] as u32);
        let f = phi_fourier(ax, ay);
        // Trace: x^α on the surface point s·(sin ω cos φ, sin ω sin φ, cos ω)
        // equals s^d·cos^{az}ω·sin^{ax+ay}ω·cos^{ax}φ·sin^{ay}φ.
        for (j, c) in f.cos_modes.iter().enumerate() {
            push_term(&mut rows[trace0 + j][cidx], c.clone(), az, ax + ay);
        }
        for (j, s) in f.sin_modes.iter().enumerate().skip(1) {
            push_term(&mut rows[trace0 + d as usize + j][cidx], s.clone(), az, ax + ay);
        }
        // Normal derivative, ν = (cos ω cos φ, cos ω sin φ, −sin ω):
        // ν·∇x^α on the surface collapses onto the same azimuthal profile
        // cos^{ax}φ sin^{ay}φ because cos φ·cos^{ax−1}φ = cos^{ax}φ (and
        // likewise for sin), leaving the scalar factor
        //   (ax+ay)·cos^{az+1}ω·sin^{ax+ay−1}ω − az·cos^{az−1}ω·sin^{ax+ay+1}ω.
        let mut scalar: Vec<(BigRational, u32, u32)> = Vec::new();
        if ax + ay > 0 {
            scalar.push((rat_i((ax + ay) as i64), az + 1, ax + ay - 1));
        }
        if az > 0 {
            scalar.push((rat_i(-(az as i64)), az - 1, ax + ay + 1));
        }
        for (rho, cp, sp) in &scalar {
            for (j, c) in f.cos_modes.iter().enumerate() {
                push_term(&mut rows[normal0 + j][cidx], c * rho, *cp, *sp);
            }
            for (j, s) in f.sin_modes.iter().enumerate().skip(1) {
                push_term(&mut rows[normal0 + d as usize + j][cidx], s * rho, *cp, *sp);
            }
        }
    }
    SymbolicMatrix { rows, cols, dim: 3, degree }
}

impl SymbolicMatrix {
    fn max_powers(&self) -> (u32, u32) {
        let mut cmax = 0;
        let mut smax = 0;
        for row in &self.rows {
            for entry in row {
                for (_, cp, sp) in entry {
                    cmax = cmax.max(*cp);
                    smax = smax.max(*sp);
                }
            }
        }
        (cmax, smax)
    }

    /// Exact instantiation at a recognized angle: all entries live in one
    /// quadratic extension of ℚ.
    pub fn instantiate_quadext(&self, angle: RationalAngle) -> Vec<Vec<QuadExt>> {
        let (c, s) = exact_cos_sin(angle);
        self.instantiate_exact(&c, &s)
    }

    /// Exact-arithmetic instantiation at explicitly supplied boundary values
    /// (used for unrecognized angles with rationalized cos ω, sin ω).
    pub fn instantiate_exact(&self, c: &QuadExt, s: &QuadExt) -> Vec<Vec<QuadExt>> {
        let (cmax, smax) = self.max_powers();
        let mut cpows = vec![QuadExt::one()];
        for i in 1..=cmax as usize {
            cpows.push(cpows[i - 1].mul(c));
        }
        let mut spows = vec![QuadExt::one()];
        for i in 1..=smax as usize {
            spows.push(spows[i - 1].mul(s));
        }
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| {
                        let mut v = QuadExt::zero();
                        for (rho, cp, sp) in entry {
                            let t = QuadExt::from_rational(rho.clone())
                                .mul(&cpows[*cp as usize])
                                .mul(&spows[*sp as usize]);
                            v = v.add(&t);
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Certified interval instantiation at working precision `prec` bits.
    /// Returns the matrix and the largest entry width encountered (as f64,
    /// for certification metadata).
    pub fn instantiate_interval(
        &self,
        omega: f64,
        prec: u32,
    ) -> (Vec<Vec<DyadicInterval>>, f64) {
        let x = DyadicInterval::from_f64(omega);
        let (s, c) = sin_cos_enclosure(&x, prec);
        let (cmax, smax) = self.max_powers();
        let mut cpows = vec![DyadicInterval::from_int(1)];
        for i in 1..=cmax as usize {
            cpows.push(cpows[i - 1].mul(&c, prec));
        }
        let mut spows = vec![DyadicInterval::from_int(1)];
        for i in 1..=smax as usize {
            spows.push(spows[i - 1].mul(&s, prec));
        }
        let mut max_width = 0.0f64;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| {
                        let mut v = DyadicInterval::from_int(0);
                        for (rho, cp, sp) in entry {
                            let t = rat_interval(rho, prec)
                                .mul(&cpows[*cp as usize], prec)
                                .mul(&spows[*sp as usize], prec);
                            v = v.add(&t, prec);
                        }
                        let w = v.width().to_f64();
                        if w > max_width {
                            max_width = w;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        (rows, max_width)
    }

    /// Plain floating instantiation: the independent assembly path used to
    /// cross-validate exact ranks.
    pub fn instantiate_f64(&self, omega: f64) -> Vec<Vec<f64>> {
        let c = fmath::cos(omega);
        let s = fmath::sin(omega);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| {
                        entry
                            .iter()
                            .map(|(rho, cp, sp)| {
                                rho.to_f64().unwrap()
                                    * fmath::powi(c, *cp as i32)
                                    * fmath::powi(s, *sp as i32)
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Exact conversion of a rational to a dyadic interval: denominators that are
/// powers of two convert exactly; anything else gets a directed division at
/// the working precision.
fn rat_interval(r: &BigRational, prec: u32) -> DyadicInterval {
    let numer = r.numer().clone();
    let denom = r.denom().clone();
    if let Some(k) = denom.trailing_zeros() {
        if (&denom >> k) == BigInt::from(1) {
            return DyadicInterval::point(Dyadic::new(numer, -(k as i64)));
        }
    }
    let n = DyadicInterval::point(Dyadic::new(numer, 0));
    let d = DyadicInterval::point(Dyadic::new(denom, 0));
    n.div(&d, prec).expect("denominator interval contains zero")
}
