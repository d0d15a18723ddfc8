//! Explicit solutions of Δv = p with one-sided boundary conditions on
//! sectors and cones, for homogeneous polynomial data p of degree κ.
//!
//! On a sector the solution is a homogeneous polynomial of degree m = κ+2:
//! a particular solution of the Poisson equation plus harmonic corrections
//! r^m cos mθ, r^m sin mθ fitted to the boundary condition. When mω/π is an
//! integer the correction system degenerates (the resonant case) and the
//! missing boundary freedom is supplied by the harmonic logarithmic profiles
//!
//! * Dirichlet: r^m (ln r·sin mθ + θ·cos mθ)  (vanishes on θ = 0),
//! * Neumann:  r^m (ln r·cos mθ − θ·sin mθ)  (∂_θ vanishes on θ = 0),
//!
//! the imaginary/real parts of z^m log z. The log coefficient C is fixed by
//! the remaining edge condition; C·ω is an exact field element even though C
//! itself involves 1/ω, so the exact product is what gets stored.
//!
//! On a cone the data is supplied mode-by-mode as p = Σ a·r^κ·Y_n^m with
//! surface spherical harmonics Y_n^m(θ, φ) = N_{n,|m|} P_n^{|m|}(cos θ)
//! e^{imφ}. Each mode receives the interior term ζ·a·r^{κ+2}·Y_n^m with
//! ζ = 1/((κ+2)(κ+3) − n(n+1)) — whose Laplacian reproduces the data term
//! exactly — plus a harmonic boundary-correction multiple of r^{κ+2}Y_{κ+2}^m.
//! The correction denominator is the boundary value (Dirichlet) or normal
//! derivative (Neumann) of Y_{κ+2}^m at θ = ω; when it vanishes the azimuthal
//! mode is resonant and its data is carried instead by a profile
//! r^{κ+2}(c·ln r·Y_{κ+2}^m + ψ): the Laplacian identity
//! Δ(r^{κ+2} ln r·Y_{κ+2}) = (2κ+5) r^κ Y_{κ+2} forces
//! c = Σ a·∫ Y_n conj(Y_{κ+2}) / ((2κ+5)·∫|Y_{κ+2}|²) over the spherical
//! cap. The smooth angular corrector ψ exists by Fredholm solvability but is
//! not constructed; the solution records that omission explicitly, and the
//! polynomial part then satisfies Δ(poly) = p minus the resonant modes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;

use crate::exact::linalg::{exact_solve, ExactField};
use crate::exact::quadext::{multiple_angles, QuadExt};
use crate::fmath;
use crate::geometry::{BoundaryCondition, ConeGeometry, SectorGeometry};
use crate::poly::{circle_harmonics, monomials, solid_harmonic, CRat, Poly};
use crate::quad::cap_rule;
use crate::series;

use super::{sector_boundary_values, CauchyError};

fn rat_f(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn crat_f(z: Complex64) -> CRat {
    Complex::new(rat_f(z.re), rat_f(z.im))
}

fn numerical(e: String) -> CauchyError {
    CauchyError::Numerical(e)
}

/// Resonance threshold on normalized boundary values of Y_{κ+2}^m.
const CONE_RESONANCE_TOL: f64 = 1e-9;

/// d/dt P_n^m(t) from (1−t²)·(P_n^m)′ = −n·t·P_n^m + (n+m)·P_{n−1}^m,
/// with the classical integer-order recurrence underneath.
fn assoc_legendre_dt_int(n: u32, m: u32, t: f64) -> f64 {
    let p = series::assoc_legendre_int(n, m, t);
    let pm = if n == 0 { 0.0 } else { series::assoc_legendre_int(n - 1, m, t) };
    (-(n as f64) * t * p + (n + m) as f64 * pm) / (1.0 - t * t)
}

// ---------------------------------------------------------------------------
// Plane sector
// ---------------------------------------------------------------------------

/// Which harmonic logarithmic profile a resonant sector solution carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogProfile2D {
    /// r^m (ln r·sin mθ + θ·cos mθ), vanishing on the edge θ = 0.
    Dirichlet { m: u32 },
    /// r^m (ln r·cos mθ − θ·sin mθ), with vanishing ∂_θ on the edge θ = 0.
    Neumann { m: u32 },
}

impl LogProfile2D {
    fn order(&self) -> u32 {
        match self {
            LogProfile2D::Dirichlet { m } | LogProfile2D::Neumann { m } => *m,
        }
    }

    /// Profile value at polar (r, θ).
    pub fn value(&self, r: f64, theta: f64) -> f64 {
        let m = self.order() as f64;
        let rm = fmath::powf(r, m);
        let lr = fmath::ln(r);
        match self {
            LogProfile2D::Dirichlet { .. } => {
                rm * (lr * fmath::sin(m * theta) + theta * fmath::cos(m * theta))
            }
            LogProfile2D::Neumann { .. } => {
                rm * (lr * fmath::cos(m * theta) - theta * fmath::sin(m * theta))
            }
        }
    }

    /// ∂/∂θ of the profile at polar (r, θ).
    pub fn dtheta(&self, r: f64, theta: f64) -> f64 {
        let m = self.order() as f64;
        let rm = fmath::powf(r, m);
        let lr = fmath::ln(r);
        let (c, s) = (fmath::cos(m * theta), fmath::sin(m * theta));
        match self {
            LogProfile2D::Dirichlet { .. } => rm * (m * lr * c + c - m * theta * s),
            LogProfile2D::Neumann { .. } => rm * (-m * lr * s - s - m * theta * c),
        }
    }
}

/// One logarithmic term of a resonant sector solution. The coefficient C
/// involves 1/ω, which leaves the exact field; the exactly representable
/// product C·ω is stored instead.
#[derive(Debug, Clone)]
pub struct SectorLogTerm {
    pub c_times_omega: QuadExt,
    pub profile: LogProfile2D,
}

impl SectorLogTerm {
    /// The floating log coefficient C for the sector of opening `omega`.
    pub fn coefficient(&self, omega: f64) -> f64 {
        self.c_times_omega.to_f64() / omega
    }
}

/// Solution of Δv = p on a sector with one boundary condition enforced on
/// both edges: v = polynomial part + Σ C·(log profile).
#[derive(Debug, Clone)]
pub struct SpecialSolution2D {
    /// Homogeneous degree-(κ+2) polynomial with Δ(poly) = p exactly.
    pub polynomial_part: Poly<QuadExt>,
    /// Empty exactly when `resonant` is false.
    pub log_terms: Vec<SectorLogTerm>,
    /// Whether (κ+2)·ω/π is an integer (and p ≠ 0).
    pub resonant: bool,
    /// Whether cos ω, sin ω entered exactly or as rationalized floats.
    pub exact_angle: bool,
    pub omega: f64,
    pub bc: BoundaryCondition,
}

impl SpecialSolution2D {
    /// Value at polar (r, θ), log terms included.
    pub fn evaluate(&self, r: f64, theta: f64) -> f64 {
        let x = [r * fmath::cos(theta), r * fmath::sin(theta)];
        let mut v = self.polynomial_part.eval_c64(&x).re;
        for term in &self.log_terms {
            v += term.coefficient(self.omega) * term.profile.value(r, theta);
        }
        v
    }
}

/// Exact particular solution of Δq = p in homogeneous degree deg(p)+2, with
/// free coefficients set to zero.
fn poisson_particular(p: &Poly<BigRational>) -> Poly<QuadExt> {
    let kappa = p.degree();
    let m = kappa + 2;
    let cols = monomials(2, m);
    let targets = monomials(2, kappa);
    let mut rows = vec![vec![QuadExt::zero(); cols.len()]; targets.len()];
    for (cidx, alpha) in cols.iter().enumerate() {
        let lap = Poly::<BigRational>::monomial(2, *alpha, rat_i(1)).laplacian();
        for (beta, coeff) in lap.terms() {
            let ridx = targets
                .iter()
                .position(|t| t == beta)
                .expect("laplacian stays in the degree-κ basis");
            rows[ridx][cidx] = QuadExt::from_rational(coeff.clone());
        }
    }
    let rhs: Vec<QuadExt> = targets
        .iter()
        .map(|t| QuadExt::from_rational(p.coeff(t)))
        .collect();
    let v = exact_solve(&rows, cols.len(), &rhs)
        .expect("the Laplacian maps degree-(κ+2) polynomials onto degree κ");
    Poly::from_terms(2, m, cols.into_iter().zip(v)).expect("basis-indexed coefficients")
}

/// Solve Δv = p on the sector 0 < θ < ω with `bc` enforced on both edges.
pub fn special_solution_2d(
    p: &Poly<BigRational>,
    geom: SectorGeometry,
    bc: BoundaryCondition,
) -> Result<SpecialSolution2D, CauchyError> {
    if p.dim() != 2 {
        return Err(CauchyError::InvalidInput(String::from(
            "sector data must be a polynomial in two variables",
        )));
    }
    if p.degree() > 253 {
        return Err(CauchyError::InvalidInput(String::from("degree too large")));
    }
    let omega = geom.omega();
    let kappa = p.degree();
    let m = kappa + 2;
    let (cw, sw, angle) = sector_boundary_values(omega);
    let exact_angle = angle.is_some();
    if p.is_zero() {
        return Ok(SpecialSolution2D {
            polynomial_part: Poly::zero(2, m),
            log_terms: Vec::new(),
            resonant: false,
            exact_angle,
            omega,
            bc,
        });
    }
    // cos mω, sin mω and the resonance decision. On the exact path resonance
    // is an integer condition and sin mω is then exactly zero; on the
    // rationalized path a resonant angle snaps sin mω to zero so the same
    // exact formulas apply.
    let (cm, sm, resonant) = match angle {
        Some(a) => {
            let table = multiple_angles(a, m);
            let (cm, sm) = table[m as usize].clone();
            let res = (m as i64 * a.p).rem_euclid(a.q as i64) == 0;
            debug_assert_eq!(res, sm.is_zero());
            (cm, sm, res)
        }
        None => {
            let x = m as f64 * omega / core::f64::consts::PI;
            let k = fmath::round(x);
            if fmath::abs(x - k) < 1e-12 {
                let sign = if (k as i64).rem_euclid(2) == 0 { 1 } else { -1 };
                (QuadExt::from_int(sign), QuadExt::zero(), true)
            } else {
                let mo = m as f64 * omega;
                (
                    QuadExt::from_rational(rat_f(fmath::cos(mo))),
                    QuadExt::from_rational(rat_f(fmath::sin(mo))),
                    false,
                )
            }
        }
    };
    let qt = poisson_particular(p);
    let (re_m, im_m) = circle_harmonics::<QuadExt>(m);
    let m_f = QuadExt::from_int(m as i64);
    let dir = [cw.clone(), sw.clone()];
    let mut poly = qt.clone();
    let mut log_terms = Vec::new();
    match bc {
        BoundaryCondition::Dirichlet => {
            // Trace on θ = 0 fixes a; trace on θ = ω fixes b (non-resonant)
            // or the log coefficient (resonant, where r^m sin mθ vanishes on
            // both edges and b is conventionally zero).
            let a = qt.coeff(&[m as u8, 0, 0]).neg();
            let e2 = qt.eval_exact(&dir);
            let edge = e2.add(&a.mul(&cm));
            poly = poly.add(&re_m.scale(&a)).expect("same degree");
            if resonant {
                let ct = edge.div(&cm).map_err(numerical)?.neg();
                log_terms.push(SectorLogTerm {
                    c_times_omega: ct,
                    profile: LogProfile2D::Dirichlet { m },
                });
            } else {
                let b = edge.div(&sm).map_err(numerical)?.neg();
                poly = poly.add(&im_m.scale(&b)).expect("same degree");
            }
        }
        BoundaryCondition::Neumann => {
            // ∂_ν on θ = 0 fixes b; ∂_ν on θ = ω fixes a (non-resonant) or
            // the log coefficient (resonant, where r^m cos mθ has vanishing
            // normal derivative on both edges and a is conventionally zero).
            let g0 = qt.coeff(&[(m - 1) as u8, 1, 0]);
            let b = g0.div(&m_f).map_err(numerical)?.neg();
            let gw = sw
                .neg()
                .mul(&qt.derivative(0).eval_exact(&dir))
                .add(&cw.mul(&qt.derivative(1).eval_exact(&dir)));
            let edge = gw.add(&b.mul(&m_f).mul(&cm));
            poly = poly.add(&im_m.scale(&b)).expect("same degree");
            if resonant {
                let ct = edge.div(&m_f.mul(&cm)).map_err(numerical)?;
                log_terms.push(SectorLogTerm {
                    c_times_omega: ct,
                    profile: LogProfile2D::Neumann { m },
                });
            } else {
                let a = edge.div(&m_f.mul(&sm)).map_err(numerical)?;
                poly = poly.add(&re_m.scale(&a)).expect("same degree");
            }
        }
    }
    Ok(SpecialSolution2D {
        polynomial_part: poly,
        log_terms,
        resonant,
        exact_angle,
        omega,
        bc,
    })
}

// ---------------------------------------------------------------------------
// Cone
// ---------------------------------------------------------------------------

/// One resonant azimuthal mode of a cone solution: the data in this mode is
/// carried by c·r^{κ+2}(ln r·Y_{κ+2}^{mode} + ψ) with ψ not constructed.
#[derive(Debug, Clone)]
pub struct ConeLogTerm {
    pub coefficient: Complex64,
    pub mode: i32,
}

/// Solution of Δv = p on a cone of half-angle ω for modal data
/// p = Σ a·r^κ·Y_n^m.
#[derive(Debug, Clone)]
pub struct SpecialSolutionCone {
    /// Exact polynomial with Δ(poly) equal to the non-resonant part of p.
    pub polynomial_part: Poly<CRat>,
    /// One term per resonant azimuthal mode; empty iff `resonant` is false.
    pub log_terms: Vec<ConeLogTerm>,
    pub resonant: bool,
    /// The smooth angular corrector ψ of each log term exists (Fredholm) but
    /// is intentionally not constructed; true exactly when log terms exist.
    pub angular_corrector_omitted: bool,
    pub kappa: u32,
}

/// The exact polynomial a·N̂_{n,|m|}·|x|^{2j}·S_n^m(x) with S the unnormalized
/// solid harmonic and N̂ the exact rationalization of the L² normalizer; its
/// restriction to the unit sphere is a·Y_n^m within float accuracy of N̂, and
/// its coefficients are exact so Laplacian identities hold literally.
fn mode_poly(degree: u32, n: u32, m: i32, amplitude: &CRat) -> Poly<CRat> {
    let j = (degree - n) / 2;
    let nhat = Complex::new(rat_f(series::sph_norm(n, m.unsigned_abs())), rat_i(0));
    let solid = solid_harmonic(n, m);
    let lifted = if j == 0 {
        solid
    } else {
        solid
            .mul(&Poly::<CRat>::r2_power(3, j))
            .expect("dimension match")
    };
    lifted.scale(&(amplitude * &nhat))
}

fn cap_log_coefficient(
    kappa: u32,
    m_abs: u32,
    group: &[(u32, Complex64)],
    omega: f64,
    n_theta: usize,
    n_phi: usize,
) -> Complex64 {
    let m2 = kappa + 2;
    let nhat2 = series::sph_norm(m2, m_abs);
    let mut numer = Complex64::new(0.0, 0.0);
    let mut denom = 0.0f64;
    for (theta, _phi, w) in cap_rule(omega, n_theta, n_phi) {
        let t = fmath::cos(theta);
        let y2 = nhat2 * series::assoc_legendre_int(m2, m_abs, t);
        denom += w * y2 * y2;
        let mut val = Complex64::new(0.0, 0.0);
        for (n, a) in group {
            val += a * series::sph_norm(*n, m_abs) * series::assoc_legendre_int(*n, m_abs, t);
        }
        numer += val * y2 * w;
    }
    numer / ((2.0 * kappa as f64 + 5.0) * denom)
}

/// Log coefficient c = Σ a·∫Y_n conj(Y_{κ+2}) / ((2κ+5)∫|Y_{κ+2}|²) by
/// spherical-cap quadrature, cross-checked at two node counts.
fn resonant_log_coefficient(
    kappa: u32,
    m_abs: u32,
    group: &[(u32, Complex64)],
    omega: f64,
) -> Result<Complex64, CauchyError> {
    let coarse = cap_log_coefficient(kappa, m_abs, group, omega, 16, 16);
    let fine = cap_log_coefficient(kappa, m_abs, group, omega, 24, 24);
    let scale = fine.norm().max(1.0);
    if (coarse - fine).norm() > 1e-6 * scale {
        return Err(numerical(format!(
            "cap quadrature for the resonant log coefficient did not stabilize \
             ({coarse} vs {fine})"
        )));
    }
    Ok(fine)
}

/// Normalized boundary value of Y_{κ+2}^{|m|} at the cone surface, in the
/// sense matching the boundary condition: the trace for Dirichlet, the
/// normal derivative factor (−sin ω)·(P′ at cos ω) for Neumann. A vanishing
/// value (below [`CONE_RESONANCE_TOL`]) marks the azimuthal mode resonant.
fn cone_boundary_factor(n: u32, m_abs: u32, omega: f64, bc: BoundaryCondition) -> f64 {
    let t = fmath::cos(omega);
    let nhat = series::sph_norm(n, m_abs);
    match bc {
        BoundaryCondition::Dirichlet => nhat * series::assoc_legendre_int(n, m_abs, t),
        BoundaryCondition::Neumann => {
            nhat * (-fmath::sin(omega)) * assoc_legendre_dt_int(n, m_abs, t)
        }
    }
}

/// Solve Δv = p on the cone {θ < ω} for modal data `modes` = [(n, m, a)]
/// describing p = Σ a·r^κ·Y_n^m, with `bc` enforced on the cone surface.
/// Each mode needs |m| ≤ n ≤ κ and κ − n even.
pub fn special_solution_cone(
    kappa: u32,
    modes: &[(u32, i32, CRat)],
    geom: ConeGeometry,
    bc: BoundaryCondition,
) -> Result<SpecialSolutionCone, CauchyError> {
    if kappa > 253 {
        return Err(CauchyError::InvalidInput(String::from("degree too large")));
    }
    let omega = geom.half_angle();
    let m2 = kappa + 2;
    let mut groups: BTreeMap<i32, Vec<(u32, CRat)>> = BTreeMap::new();
    for (n, m, a) in modes {
        if m.unsigned_abs() > *n {
            return Err(CauchyError::InvalidInput(format!(
                "azimuthal order {m} exceeds harmonic degree {n}"
            )));
        }
        if *n > kappa {
            return Err(CauchyError::InvalidInput(format!(
                "harmonic degree {n} exceeds polynomial degree {kappa}"
            )));
        }
        if (kappa - n) % 2 != 0 {
            return Err(CauchyError::InvalidInput(format!(
                "degree gap {kappa} − {n} must be even for a polynomial mode"
            )));
        }
        if ExactField::is_zero(a) {
            continue;
        }
        groups.entry(*m).or_default().push((*n, a.clone()));
    }
    let mut poly = Poly::<CRat>::zero(3, m2);
    let mut log_terms: Vec<ConeLogTerm> = Vec::new();
    for (m, group) in &groups {
        let m_abs = m.unsigned_abs();
        let boundary2 = cone_boundary_factor(m2, m_abs, omega, bc);
        if fmath::abs(boundary2) < CONE_RESONANCE_TOL {
            // Resonant azimuthal mode: polynomial part receives nothing; the
            // data is carried by the log profile whose coefficient comes from
            // the cap-orthogonality condition.
            let fgroup: Vec<(u32, Complex64)> =
                group.iter().map(|(n, a)| (*n, a.to_c64())).collect();
            let c = resonant_log_coefficient(kappa, m_abs, &fgroup, omega)?;
            log_terms.push(ConeLogTerm { coefficient: c, mode: *m });
            continue;
        }
        // Interior terms ζ·a·r^{κ+2}·Y_n^m; their Laplacians reproduce the
        // data exactly because 2j(2j+2n+1) = (κ+2)(κ+3) − n(n+1) for
        // 2j = κ+2−n.
        let mut trace = Complex64::new(0.0, 0.0);
        for (n, a) in group {
            let denom = (kappa as i64 + 2) * (kappa as i64 + 3) - *n as i64 * (*n as i64 + 1);
            assert!(denom > 0, "ζ denominator must be positive for n ≤ κ");
            let zeta = BigRational::new(BigInt::from(1), BigInt::from(denom));
            let scaled = a * &Complex::new(zeta.clone(), rat_i(0));
            poly = poly
                .add(&mode_poly(m2, *n, *m, &scaled))
                .expect("degree κ+2 throughout");
            trace += a.to_c64() * zeta_f(denom) * cone_boundary_factor(*n, m_abs, omega, bc);
        }
        // Harmonic boundary correction: cancels the surface trace (or normal
        // derivative) mode-by-mode without disturbing the Laplacian.
        let c_corr = -trace / boundary2;
        poly = poly
            .add(&mode_poly(m2, m2, *m, &crat_f(c_corr)))
            .expect("degree κ+2 throughout");
    }
    let resonant = !log_terms.is_empty();
    Ok(SpecialSolutionCone {
        polynomial_part: poly,
        log_terms,
        resonant,
        angular_corrector_omitted: resonant,
        kappa,
    })
}

fn zeta_f(denom: i64) -> f64 {
    1.0 / denom as f64
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Residual report for a constructed special solution. `boundary_value` is
/// the enforced quantity for Dirichlet solutions and `boundary_normal` for
/// Neumann ones; the non-enforced counterpart is reported as measured and is
/// generally not small.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// Δ(polynomial part) equals its target exactly as polynomials. The
    /// target is p itself except for resonant cone modes, whose data is
    /// accounted for by the log-term Laplacian instead.
    pub pde_exact_zero: bool,
    /// Max |Δv − p| over an interior annular grid, with the Laplacian taken
    /// analytically (log profiles are harmonic and contribute nothing).
    pub pde_sampled: f64,
    /// Max |v| over boundary samples.
    pub boundary_value: f64,
    /// Max |∂_ν v| over boundary samples.
    pub boundary_normal: f64,
    /// Max |FD-Δv − p| by central second differences (cone checks only).
    pub pde_fd: Option<f64>,
}

/// Verify a sector solution against its data: exact polynomial identity,
/// sampled PDE residual on the annulus r ∈ [0.1, 0.9], and boundary
/// residuals on both edges with log profiles included in closed form.
pub fn verify_special_solution_2d(
    sol: &SpecialSolution2D,
    p: &Poly<BigRational>,
    geom: SectorGeometry,
    bc: BoundaryCondition,
) -> VerificationReport {
    let omega = geom.omega();
    let pq = p.map_scalars(|c| QuadExt::from_rational(c.clone()));
    let lap = sol.polynomial_part.laplacian();
    let pde_exact_zero = lap.sub(&pq).map(|d| d.is_zero()).unwrap_or(false);

    let radii = [0.1, 0.3, 0.5, 0.7, 0.9];
    let mut pde_sampled = 0.0f64;
    for r in radii {
        for i in 0..10 {
            let theta = omega * (i as f64 + 0.5) / 10.0;
            let x = [r * fmath::cos(theta), r * fmath::sin(theta)];
            let res = fmath::abs(lap.eval_c64(&x).re - p.eval_c64(&x).re);
            pde_sampled = pde_sampled.max(res);
        }
    }

    let dx = sol.polynomial_part.derivative(0);
    let dy = sol.polynomial_part.derivative(1);
    let mut boundary_value = 0.0f64;
    let mut boundary_normal = 0.0f64;
    for i in 0..9 {
        let r = 0.1 + 0.1 * i as f64;
        for (theta, ray_sign) in [(0.0, -1.0), (omega, 1.0)] {
            boundary_value = boundary_value.max(fmath::abs(sol.evaluate(r, theta)));
            // ν·∇ = ∓(1/r)∂_θ on the edges θ = 0 (−) and θ = ω (+).
            let x = [r * fmath::cos(theta), r * fmath::sin(theta)];
            let grad = (dx.eval_c64(&x).re, dy.eval_c64(&x).re);
            let nu = (ray_sign * -fmath::sin(theta), ray_sign * fmath::cos(theta));
            let mut normal = nu.0 * grad.0 + nu.1 * grad.1;
            for term in &sol.log_terms {
                normal +=
                    ray_sign * term.coefficient(sol.omega) * term.profile.dtheta(r, theta) / r;
            }
            boundary_normal = boundary_normal.max(fmath::abs(normal));
        }
    }
    let _ = bc; // report covers both conditions; callers assert the enforced one
    VerificationReport {
        pde_exact_zero,
        pde_sampled,
        boundary_value,
        boundary_normal,
        pde_fd: None,
    }
}

/// Verify a cone solution against its modal data. The polynomial target is p
/// minus the resonant modes (their data lives in the log-term Laplacian);
/// boundary residuals cover the polynomial part, since the log terms'
/// boundary behavior involves the unconstructed corrector ψ. Includes an
/// independent finite-difference PDE residual at 500 interior points.
pub fn verify_special_solution_cone(
    sol: &SpecialSolutionCone,
    modes: &[(u32, i32, CRat)],
    geom: ConeGeometry,
    bc: BoundaryCondition,
) -> VerificationReport {
    let omega = geom.half_angle();
    let resonant_modes: BTreeSet<i32> = sol.log_terms.iter().map(|t| t.mode).collect();
    let mut target = Poly::<CRat>::zero(3, sol.kappa);
    for (n, m, a) in modes {
        if !resonant_modes.contains(m) && !ExactField::is_zero(a) {
            target = target
                .add(&mode_poly(sol.kappa, *n, *m, a))
                .expect("degree κ throughout");
        }
    }
    let lap = sol.polynomial_part.laplacian();
    let pde_exact_zero = lap.sub(&target).map(|d| d.is_zero()).unwrap_or(false);

    let poly = &sol.polynomial_part;
    let h = 1e-3;
    let mut pde_sampled = 0.0f64;
    let mut pde_fd = 0.0f64;
    for (ri, r) in [0.15, 0.3, 0.5, 0.7, 0.85].iter().enumerate() {
        for i in 0..10 {
            let theta = omega * (i as f64 + 0.5) / 10.0;
            for j in 0..10 {
                let phi = 2.0 * core::f64::consts::PI * (j as f64 + 0.3 * ri as f64) / 10.0;
                let x = [
                    r * fmath::sin(theta) * fmath::cos(phi),
                    r * fmath::sin(theta) * fmath::sin(phi),
                    r * fmath::cos(theta),
                ];
                let want = target.eval_c64(&x);
                pde_sampled = pde_sampled.max((lap.eval_c64(&x) - want).norm());
                let mut fd = Complex64::new(0.0, 0.0);
                let center = poly.eval_c64(&x);
                for axis in 0..3 {
                    let mut hi = x;
                    hi[axis] += h;
                    let mut lo = x;
                    lo[axis] -= h;
                    fd += poly.eval_c64(&hi) + poly.eval_c64(&lo) - 2.0 * center;
                }
                pde_fd = pde_fd.max((fd / (h * h) - want).norm());
            }
        }
    }

    let grads = [poly.derivative(0), poly.derivative(1), poly.derivative(2)];
    let mut boundary_value = 0.0f64;
    let mut boundary_normal = 0.0f64;
    for i in 0..5 {
        let r = 0.15 + 0.175 * i as f64;
        for j in 0..12 {
            let phi = 2.0 * core::f64::consts::PI * j as f64 / 12.0;
            let x = [
                r * fmath::sin(omega) * fmath::cos(phi),
                r * fmath::sin(omega) * fmath::sin(phi),
                r * fmath::cos(omega),
            ];
            boundary_value = boundary_value.max(poly.eval_c64(&x).norm());
            let nu = [
                fmath::cos(omega) * fmath::cos(phi),
                fmath::cos(omega) * fmath::sin(phi),
                -fmath::sin(omega),
            ];
            let mut normal = Complex64::new(0.0, 0.0);
            for (axis, g) in grads.iter().enumerate() {
                normal += nu[axis] * g.eval_c64(&x);
            }
            boundary_normal = boundary_normal.max(normal.norm());
        }
    }
    let _ = bc; // report covers both conditions; callers assert the enforced one
    VerificationReport {
        pde_exact_zero,
        pde_sampled,
        boundary_value,
        boundary_normal,
        pde_fd: Some(pde_fd),
    }
}
