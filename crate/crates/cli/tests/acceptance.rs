//! End-to-end verification gate.
//!
//! Ten independently checkable criteria cover the whole stack: special
//! functions, corner/cone spectra, certified null spaces, exact series,
//! special solutions, the volume-potential solver against a mode-matching
//! oracle, physical identities, the non-scattering sweeps, and the
//! flat-interface transmission control. Each criterion prints exactly one
//! verdict line; the process exits nonzero if any fail. Every reference
//! value is produced inside this file by an independent route (closed
//! forms, exact rational arithmetic, classical series solutions), never by
//! the code under test.

use std::f64::consts::{FRAC_PI_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cornerfield::scatter::{
    calibrate_floor, disk_oracle, far_field, far_field_at, flat_interface_pair, k_grid,
    optical_residual, solve, sweep, transmission_residual, ContrastField, IncidentField, Profile,
    Shape,
};
use cornerfield_core::cauchy::{
    cauchy_nullspace, cauchy_nullspace_with_precision, special_solution_2d, special_solution_cone,
    verify_special_solution_2d, verify_special_solution_cone, NullspaceCertificate,
};
use cornerfield_core::geometry::{BoundaryCondition, ConeGeometry, SectorGeometry};
use cornerfield_core::poly::{CRat, Poly};
use cornerfield_core::quad::gauss_legendre_on;
use cornerfield_core::series::{expand_2d, helmholtz_residual_2d};
use cornerfield_core::specfun::{eval_p, wronskian_det};
use cornerfield_core::spectrum::{cone_exponents, Geometry};

type Verdict = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_f(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

// ===========================================================================
// Criterion 1 — Legendre functions against exact closed forms
// ===========================================================================

/// Exact coefficient lists of the classical Legendre polynomials, from the
/// three-term recurrence (n+1)P_{n+1} = (2n+1) t P_n − n P_{n−1} in rational
/// arithmetic. Index: `polys[n][j]` is the t^j coefficient of P_n.
fn legendre_polynomials(n_max: usize) -> Vec<Vec<BigRational>> {
    let mut polys: Vec<Vec<BigRational>> = vec![vec![rat_i(1)], vec![rat_i(0), rat_i(1)]];
    for n in 1..n_max {
        let p_n = polys[n].clone();
        let p_nm1 = polys[n - 1].clone();
        let mut next = vec![BigRational::zero(); n + 2];
        for (j, c) in p_n.iter().enumerate() {
            next[j + 1] += c * rat_i(2 * n as i64 + 1);
        }
        for (j, c) in p_nm1.iter().enumerate() {
            next[j] -= c * rat_i(n as i64);
        }
        let scale = rat_i(n as i64 + 1);
        for c in &mut next {
            *c /= scale.clone();
        }
        polys.push(next);
    }
    polys
}

fn poly_derivative(coeffs: &[BigRational]) -> Vec<BigRational> {
    if coeffs.len() <= 1 {
        return vec![BigRational::zero()];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * rat_i(j as i64))
        .collect()
}

fn poly_eval_exact(coeffs: &[BigRational], t: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// Classical associated Legendre value P_n^m(t) = (1−t²)^{m/2} d^m/dt^m P_n(t)
/// (no Condon–Shortley factor), with the polynomial part evaluated in exact
/// rational arithmetic at the exact rational image of `t`.
fn oracle_assoc_legendre(tables: &[Vec<BigRational>], n: usize, m: usize, t: f64) -> f64 {
    let mut coeffs = tables[n].clone();
    for _ in 0..m {
        coeffs = poly_derivative(&coeffs);
    }
    let exact = poly_eval_exact(&coeffs, &rat_f(t));
    let factor = (1.0 - t * t).powf(m as f64 / 2.0);
    exact.to_f64().expect("rational fits in f64") * factor
}

fn criterion_1_legendre() -> Verdict {
    let tables = legendre_polynomials(12);
    let mut worst_rel = 0.0f64;
    for n in 0..=12usize {
        for m in 0..=n {
            for i in 0..50 {
                let t = -0.98 + 1.96 * i as f64 / 49.0;
                let want = oracle_assoc_legendre(&tables, n, m, t);
                let got = eval_p(n as f64, m as u32, t).map_err(|e| e.to_string())?;
                let rel = (got - want).abs() / want.abs().max(1.0);
                worst_rel = worst_rel.max(rel);
                check(rel <= 1e-12, || {
                    format!("P_{n}^{m}({t}) = {got}, closed form {want}, rel err {rel:.3e}")
                })?;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst_refl = 0.0f64;
    for case in 0..100 {
        let lambda: f64 = rng.gen_range(-5.0..5.0);
        let m = (case % 4) as u32;
        let t: f64 = rng.gen_range(-0.95..0.95);
        let a = eval_p(lambda, m, t).map_err(|e| e.to_string())?;
        let b = eval_p(-lambda - 1.0, m, t).map_err(|e| e.to_string())?;
        let err = (a - b).abs() / a.abs().max(1.0);
        worst_refl = worst_refl.max(err);
        check(err <= 1e-10, || {
            format!("reflection broke at lambda={lambda}, m={m}, t={t}: {a} vs {b}")
        })?;
    }
    Ok(format!(
        "closed forms n<=12 worst rel {worst_rel:.2e} (<=1e-12); reflection worst {worst_refl:.2e} (<=1e-10)"
    ))
}

// ===========================================================================
// Criterion 2 — cone spectra: right-angle oracle, lambda=1 exclusion, closure
// ===========================================================================

fn criterion_2_cone_spectrum() -> Verdict {
    let bc_d = BoundaryCondition::Dirichlet;
    let geom = ConeGeometry::new(FRAC_PI_2).map_err(|e| e.to_string())?;
    let spectrum = cone_exponents(geom, bc_d, 5.5).map_err(|e| e.to_string())?;
    let m0_pos: Vec<f64> = spectrum
        .iter()
        .filter(|e| e.value > 0.0 && e.orders.contains(&0))
        .map(|e| e.value)
        .collect();
    check(m0_pos.len() == 3, || {
        format!("right-angle cone m=0 positive exponents: {m0_pos:?}, expected three")
    })?;
    let mut worst_odd = 0.0f64;
    for (got, want) in m0_pos.iter().zip([1.0, 3.0, 5.0]) {
        worst_odd = worst_odd.max((got - want).abs());
        check((got - want).abs() <= 1e-9, || {
            format!("right-angle cone exponent {got} vs odd-integer oracle {want}")
        })?;
    }

    // lambda = 1 never appears away from the right angle, in either spectrum.
    let mut closest_to_one = f64::INFINITY;
    for i in 0..20 {
        let omega = PI * (i as f64 + 0.7) / 21.0;
        assert!((omega - FRAC_PI_2).abs() > 1e-3, "sample grid must avoid pi/2");
        let geom = ConeGeometry::new(omega).map_err(|e| e.to_string())?;
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            let list = cone_exponents(geom, bc, 2.0).map_err(|e| e.to_string())?;
            for e in &list {
                closest_to_one = closest_to_one.min((e.value - 1.0).abs());
                check((e.value - 1.0).abs() > 1e-7, || {
                    format!("lambda=1 appeared at omega={omega}, bc={bc}: exponent {}", e.value)
                })?;
            }
        }
    }

    // Reflection closure: whenever lambda is in the window, so is −lambda−1.
    let lambda_max = 4.5;
    for omega in [0.4, 1.1, FRAC_PI_2, 2.0, 2.9] {
        let geom = ConeGeometry::new(omega).map_err(|e| e.to_string())?;
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            let list = cone_exponents(geom, bc, lambda_max).map_err(|e| e.to_string())?;
            for e in &list {
                if e.value >= lambda_max - 1e-9 {
                    continue; // reflected partner falls outside the window
                }
                let reflected = -e.value - 1.0;
                let found = list.iter().any(|w| (w.value - reflected).abs() <= 1e-8);
                check(found, || {
                    format!(
                        "no reflection partner for lambda={} (omega={omega}, bc={bc})",
                        e.value
                    )
                })?;
            }
        }
    }
    Ok(format!(
        "right angle -> {{1,3,5}} within {worst_odd:.2e} (<=1e-9); min |lambda-1| = {closest_to_one:.2e} over 20 angles; reflection closed"
    ))
}

// ===========================================================================
// Criterion 3 — Wronskian determinant sign structure
// ===========================================================================

fn criterion_3_wronskian() -> Verdict {
    let mut pairs = 0usize;
    for n in 2..=10u32 {
        for m in 0..=(n - 2) {
            let ts: Vec<f64> = (0..200).map(|i| -0.995 + 0.01 * i as f64).collect();
            let dets: Vec<f64> = ts
                .iter()
                .map(|&t| wronskian_det(n, m, t))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let mut changes = Vec::new();
            for i in 0..dets.len() - 1 {
                check(dets[i] != 0.0, || format!("det(n={n},m={m}) hit exact zero off t=0"))?;
                if dets[i].signum() != dets[i + 1].signum() {
                    changes.push(i);
                }
            }
            check(changes.len() == 1, || {
                format!("det(n={n},m={m}) has {} sign changes, expected 1", changes.len())
            })?;
            let i = changes[0];
            check(ts[i] < 0.0 && ts[i + 1] > 0.0, || {
                format!("det(n={n},m={m}) changes sign on [{}, {}], not at t=0", ts[i], ts[i + 1])
            })?;
            for (t, det) in ts.iter().zip(&dets) {
                if t.abs() >= 0.0099 {
                    check(det.abs() > 0.0, || {
                        format!("det(n={n},m={m}) vanished at |t|={} >= 0.01", t.abs())
                    })?;
                }
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} (n,m) pairs x 200-point grids: exactly one sign change each, straddling t=0"
    ))
}

// ===========================================================================
// Criterion 4 — certified Cauchy null spaces
// ===========================================================================

fn criterion_4_nullspaces() -> Verdict {
    let mut certified = 0usize;
    let sector_angles = [PI / 3.0, FRAC_PI_2, 2.0 * PI / 3.0, 4.0 * PI / 3.0, 3.0 * PI / 2.0];
    for omega in sector_angles {
        let geom = Geometry::Sector(SectorGeometry::new(omega).map_err(|e| e.to_string())?);
        for degree in 2..=10 {
            let interval =
                cauchy_nullspace_with_precision(geom, degree, 200).map_err(|e| e.to_string())?;
            check(
                matches!(interval.certificate, NullspaceCertificate::IntervalRank { .. }),
                || format!("sector omega={omega} deg {degree}: expected interval certificate"),
            )?;
            check(interval.dimension == Some(0), || {
                format!(
                    "sector omega={omega} deg {degree}: dimension {:?}, expected empty",
                    interval.dimension
                )
            })?;
            // Independent exact-arithmetic route must agree.
            let exact = cauchy_nullspace(geom, degree).map_err(|e| e.to_string())?;
            check(exact.dimension == Some(0), || {
                format!("sector omega={omega} deg {degree}: exact route disagrees")
            })?;
            certified += 1;
        }
    }
    let cone_half_angles = [PI / 4.0, PI / 3.0, 2.0 * PI / 3.0];
    for omega in cone_half_angles {
        let geom = Geometry::Cone(ConeGeometry::new(omega).map_err(|e| e.to_string())?);
        for degree in 2..=8 {
            let interval =
                cauchy_nullspace_with_precision(geom, degree, 200).map_err(|e| e.to_string())?;
            check(
                matches!(interval.certificate, NullspaceCertificate::IntervalRank { .. }),
                || format!("cone half-angle {omega} deg {degree}: expected interval certificate"),
            )?;
            check(interval.dimension == Some(0), || {
                format!(
                    "cone half-angle {omega} deg {degree}: dimension {:?}, expected empty",
                    interval.dimension
                )
            })?;
            let exact = cauchy_nullspace(geom, degree).map_err(|e| e.to_string())?;
            check(exact.dimension == Some(0), || {
                format!("cone half-angle {omega} deg {degree}: exact route disagrees")
            })?;
            certified += 1;
        }
    }

    // Half-plane control: dimension 1 at degree 2 with basis x2^2 exactly.
    let half_plane = Geometry::Sector(SectorGeometry::new(PI).map_err(|e| e.to_string())?);
    let ctl = cauchy_nullspace(half_plane, 2).map_err(|e| e.to_string())?;
    check(ctl.dimension >= Some(1), || {
        format!("half-plane control: dimension {:?}, expected >= 1", ctl.dimension)
    })?;
    check(ctl.basis.len() == 1, || {
        format!("half-plane control: {} basis vectors, expected 1", ctl.basis.len())
    })?;
    let basis = &ctl.basis[0];
    // Exact membership of x2^2: the basis polynomial is literally x2^2
    // (single monomial [0,2] with unit coefficient) and is exactly biharmonic.
    let terms: Vec<_> = basis.terms().collect();
    check(terms.len() == 1 && *terms[0].0 == [0, 2, 0], || {
        format!("half-plane basis is not the monomial x2^2: {terms:?}")
    })?;
    check(basis.laplacian().laplacian().is_zero(), || {
        "half-plane basis polynomial is not exactly biharmonic".to_string()
    })?;
    // Every monomial carries x2^2, so the trace and the normal derivative on
    // the boundary line {x2 = 0} vanish identically (exact membership).
    check(
        basis.terms().all(|(alpha, _)| alpha[1] >= 2),
        || "half-plane basis does not vanish to second order on the boundary".to_string(),
    )?;
    Ok(format!(
        "{certified} geometry/degree cases empty with interval certificates (exact route agrees); half-plane control = span{{x2^2}}"
    ))
}

// ===========================================================================
// Criterion 5 — harmonic leading terms and residual decay of exact series
// ===========================================================================

fn random_nonzero_crat(rng: &mut ChaCha8Rng) -> CRat {
    loop {
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=9);
        if num != 0 {
            return CRat::new(BigRational::new(BigInt::from(num), BigInt::from(den)), rat_i(0));
        }
    }
}

fn random_crat(rng: &mut ChaCha8Rng) -> CRat {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=9);
    CRat::new(BigRational::new(BigInt::from(num), BigInt::from(den)), rat_i(0))
}

fn ring_points(r: f64) -> Vec<[f64; 2]> {
    (0..12)
        .map(|j| {
            let theta = 0.05 + 2.0 * PI * j as f64 / 12.0;
            [r * theta.cos(), r * theta.sin()]
        })
        .collect()
}

fn criterion_5_series() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut worst_slope_gap = 0.0f64;
    for case in 0..200 {
        let m_ord: u32 = rng.gen_range(0..=5);
        let k: f64 = rng.gen_range(0.5..5.0);
        let seed_m = (m_ord, random_nonzero_crat(&mut rng), random_crat(&mut rng));
        let seed_m1 = (m_ord + 1, random_nonzero_crat(&mut rng), random_crat(&mut rng));

        // Harmonicity: the two lowest Taylor terms have exactly zero Laplacian.
        let series = expand_2d(&[seed_m.clone(), seed_m1], k, m_ord + 6).map_err(|e| e.to_string())?;
        let lead = series.homogeneous_part(m_ord);
        let next = series.homogeneous_part(m_ord + 1);
        check(!lead.is_zero(), || format!("case {case}: degree-{m_ord} term vanished"))?;
        check(lead.laplacian().is_zero(), || {
            format!("case {case}: degree-{m_ord} term is not exactly harmonic")
        })?;
        check(!next.is_zero(), || format!("case {case}: degree-{} term vanished", m_ord + 1))?;
        check(next.laplacian().is_zero(), || {
            format!("case {case}: degree-{} term is not exactly harmonic", m_ord + 1)
        })?;

        // Decay: a single seed truncated at J = M+3 leaves a pure power
        // residual of degree M+2 = J−1, so the log-log slope across two
        // radii must sit near J−1.
        let j_trunc = m_ord + 3;
        let single = expand_2d(&[seed_m], k, j_trunc).map_err(|e| e.to_string())?;
        let hi = helmholtz_residual_2d(&single, &ring_points(0.2), k);
        let lo = helmholtz_residual_2d(&single, &ring_points(0.1), k);
        check(hi > 0.0 && lo > 0.0, || {
            format!("case {case}: residuals {hi:.3e}/{lo:.3e} not resolvable")
        })?;
        let slope = (hi / lo).ln() / 2.0f64.ln();
        let want = (j_trunc - 1) as f64;
        worst_slope_gap = worst_slope_gap.max((slope - want).abs());
        check((slope - want).abs() <= 0.3, || {
            format!("case {case}: decay slope {slope:.3} vs J-1 = {want} (M = {m_ord}, k = {k:.3})")
        })?;
    }
    Ok(format!(
        "200 randomized expansions: leading terms exactly harmonic; decay slope within {worst_slope_gap:.3} of J-1 (<=0.3)"
    ))
}

// ===========================================================================
// Criterion 6 — special solutions: exactness, resonance flags, cone zeta
// ===========================================================================

/// Extracts the interior radial coefficient zeta of a single-mode cone
/// solution without trusting any library normalization: project both the
/// solution v and its exact Laplacian p = Δv onto the (n, m) spherical
/// harmonic over the full unit sphere; all shared factors cancel in the
/// ratio, which equals zeta exactly (up to quadrature, exact for
/// polynomials at this node count).
fn extract_zeta(
    v: &Poly<CRat>,
    tables: &[Vec<BigRational>],
    n: usize,
    m: i32,
) -> Result<f64, String> {
    let lap = v.laplacian();
    let (nodes, weights) = gauss_legendre_on(40, -1.0, 1.0);
    let n_phi = 64usize;
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = Complex64::new(0.0, 0.0);
    for (t, w) in nodes.iter().zip(&weights) {
        let s = (1.0 - t * t).max(0.0).sqrt();
        let p_nm = oracle_assoc_legendre(tables, n, m.unsigned_abs() as usize, *t);
        for jj in 0..n_phi {
            let phi = 2.0 * PI * jj as f64 / n_phi as f64;
            let x = [s * phi.cos(), s * phi.sin(), *t];
            let weight = w * (2.0 * PI / n_phi as f64) * p_nm;
            let mode = Complex64::from_polar(1.0, -(m as f64) * phi);
            num += weight * mode * v.eval_c64(&x);
            den += weight * mode * lap.eval_c64(&x);
        }
    }
    if den.norm() < 1e-12 {
        return Err(format!("zeta extraction degenerate: projection of data = {den}"));
    }
    let zeta = num / den;
    if zeta.im.abs() > 1e-10 * zeta.re.abs().max(1.0) {
        return Err(format!("zeta extraction not real: {zeta}"));
    }
    Ok(zeta.re)
}

fn criterion_6_special_solutions() -> Verdict {
    // (a) Non-resonant sector constructions: exact PDE identity and the
    // enforced boundary condition on both edges.
    let mut sector_cases = 0usize;
    for omega in [PI / 3.0, FRAC_PI_2, 2.0 * PI / 3.0, 0.9, 2.2] {
        let geom = SectorGeometry::new(omega).map_err(|e| e.to_string())?;
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            for kappa in 0u8..=4 {
                let ratio = (kappa as f64 + 2.0) * omega / PI;
                if (ratio - ratio.round()).abs() < 1e-9 {
                    continue; // resonant pair; flags handled below
                }
                let mut p = Poly::<BigRational>::monomial(2, [kappa, 0, 0], rat_i(1));
                if kappa >= 1 {
                    p = p
                        .add(&Poly::monomial(2, [0, kappa, 0], rat_i(2)))
                        .map_err(|e| format!("{e:?}"))?;
                }
                let sol = special_solution_2d(&p, geom, bc).map_err(|e| e.to_string())?;
                check(!sol.resonant, || {
                    format!("omega={omega}, kappa={kappa}: spurious resonance flag")
                })?;
                let rep = verify_special_solution_2d(&sol, &p, geom, bc);
                check(rep.pde_exact_zero, || {
                    format!("omega={omega}, bc={bc}, kappa={kappa}: Laplace identity not exact")
                })?;
                let enforced = match bc {
                    BoundaryCondition::Dirichlet => rep.boundary_value,
                    BoundaryCondition::Neumann => rep.boundary_normal,
                };
                check(enforced <= 1e-10, || {
                    format!(
                        "omega={omega}, bc={bc}, kappa={kappa}: boundary residual {enforced:.3e}"
                    )
                })?;
                sector_cases += 1;
            }
        }
    }

    // (b) Resonance flags match the arithmetic criterion (kappa+2)*omega/pi
    // in N on a 25 x 20 grid of (kappa, omega).
    let mut flag_cases = 0usize;
    for kappa in 0u8..25 {
        for j in 1u32..=21 {
            if j == 11 {
                continue; // omega = pi is the excluded straight angle
            }
            let omega = PI * j as f64 / 11.0;
            let geom = SectorGeometry::new(omega).map_err(|e| e.to_string())?;
            let expected = ((kappa as u32 + 2) * j) % 11 == 0;
            let p = Poly::<BigRational>::monomial(2, [kappa, 0, 0], rat_i(1));
            let sol =
                special_solution_2d(&p, geom, BoundaryCondition::Dirichlet).map_err(|e| e.to_string())?;
            check(sol.resonant == expected, || {
                format!(
                    "resonance flag mismatch at kappa={kappa}, omega={j}pi/11: got {}, arithmetic says {expected}",
                    sol.resonant
                )
            })?;
            flag_cases += 1;
        }
    }
    check(flag_cases == 500, || format!("resonance grid covered {flag_cases} cases, wanted 500"))?;

    // (c) Cone interior coefficients: zeta = 1/((kappa+2)(kappa+3) − n(n+1)),
    // re-derived here by sphere projection of the exact solution.
    let tables = legendre_polynomials(12);
    let cone = ConeGeometry::new(0.8).map_err(|e| e.to_string())?;
    let mut worst_zeta = 0.0f64;
    let zeta_cases: &[(u32, u32, i32)] =
        &[(2, 0, 0), (3, 1, 0), (3, 1, 1), (4, 2, -2), (5, 3, 2), (6, 4, -1)];
    for &(kappa, n, m) in zeta_cases {
        let amp = CRat::new(BigRational::new(BigInt::from(3), BigInt::from(2)), rat_i(0));
        let modes = vec![(n, m, amp)];
        let sol = special_solution_cone(kappa, &modes, cone, BoundaryCondition::Dirichlet)
            .map_err(|e| e.to_string())?;
        check(!sol.resonant, || format!("cone case ({kappa},{n},{m}) unexpectedly resonant"))?;
        let rep = verify_special_solution_cone(&sol, &modes, cone, BoundaryCondition::Dirichlet);
        check(rep.pde_exact_zero, || {
            format!("cone case ({kappa},{n},{m}): Laplace identity not exact")
        })?;
        let zeta = extract_zeta(&sol.polynomial_part, &tables, n as usize, m)?;
        let want = 1.0
            / ((kappa as f64 + 2.0) * (kappa as f64 + 3.0) - n as f64 * (n as f64 + 1.0));
        worst_zeta = worst_zeta.max((zeta - want).abs());
        check((zeta - want).abs() <= 1e-10, || {
            format!("cone zeta ({kappa},{n},{m}): extracted {zeta}, closed form {want}")
        })?;
    }
    Ok(format!(
        "{sector_cases} sector constructions exact; 500 resonance flags match the arithmetic rule; cone zeta within {worst_zeta:.2e} of 1/((k+2)(k+3)-n(n+1))"
    ))
}

// ===========================================================================
// Criterion 7 — solver versus mode-matching oracle on the reference disk
// ===========================================================================

fn disk_field(n: usize) -> Result<ContrastField, String> {
    ContrastField::new(
        Shape::Disk { center: [0.0, 0.0], radius: 0.5 },
        Profile::Constant { q0: Complex64::new(2.0, 0.0) },
        n,
        0.75,
    )
    .map_err(|e| e.to_string())
}

fn disk_relative_error(n: usize) -> Result<f64, String> {
    let field = disk_field(n)?;
    let k = 3.0;
    let inc = IncidentField::Plane { direction: [1.0, 0.0] };
    let total = solve(&field, k, &inc).map_err(|e| e.to_string())?;
    let far = far_field(&field, k, &total, 256).map_err(|e| e.to_string())?;
    let oracle = disk_oracle(0.5, 2.0, k, [1.0, 0.0]).map_err(|e| e.to_string())?;
    let reference = oracle.far_field(256).map_err(|e| e.to_string())?;
    let mut diff2 = 0.0f64;
    let mut ref2 = 0.0f64;
    for (a, b) in far.values.iter().zip(&reference.values) {
        diff2 += (a - b).norm_sqr();
        ref2 += b.norm_sqr();
    }
    Ok((diff2 / ref2).sqrt())
}

fn criterion_7_solver_oracle() -> Verdict {
    let err_256 = disk_relative_error(256)?;
    check(err_256 <= 1e-3, || {
        format!("relative far-field error {err_256:.3e} at N=256 exceeds 1e-3")
    })?;
    let err_512 = disk_relative_error(512)?;
    check(err_512 <= 0.5 * err_256, || {
        format!("error {err_512:.3e} at N=512 is not half of {err_256:.3e} at N=256")
    })?;
    Ok(format!(
        "relative L2 far-field error {err_256:.2e} at N=256 (<=1e-3), {err_512:.2e} at N=512 ({:.1}x drop)",
        err_256 / err_512
    ))
}

// ===========================================================================
// Criterion 8 — optical theorem and reciprocity on disk and square
// ===========================================================================

fn criterion_8_identities() -> Verdict {
    let square = Shape::Polygon {
        vertices: vec![[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]],
    };
    let disk = Shape::Disk { center: [0.0, 0.0], radius: 0.5 };
    let k = 3.0;
    let mut report = Vec::new();
    for (name, shape) in [("disk", disk), ("square", square)] {
        let field = ContrastField::new(
            shape,
            Profile::Constant { q0: Complex64::new(2.0, 0.0) },
            128,
            0.75,
        )
        .map_err(|e| e.to_string())?;
        let d = [1.0, 0.0];
        let total = solve(&field, k, &IncidentField::Plane { direction: d })
            .map_err(|e| e.to_string())?;
        let far = far_field(&field, k, &total, 256).map_err(|e| e.to_string())?;
        let forward = far_field_at(&field, &total, d);
        let optical = optical_residual(&far, forward);
        check(optical <= 1e-5, || {
            format!("{name}: optical-theorem residual {optical:.3e} exceeds 1e-5")
        })?;

        let t = 2.1f64;
        let xhat = [t.cos(), t.sin()];
        let total_x = solve(&field, k, &IncidentField::Plane { direction: xhat })
            .map_err(|e| e.to_string())?;
        let lhs = far_field_at(&field, &total_x, [-d[0], -d[1]]);
        let rhs = far_field_at(&field, &total, [-xhat[0], -xhat[1]]);
        let recip = (lhs - rhs).norm() / lhs.norm().max(rhs.norm());
        check(recip <= 1e-6, || {
            format!("{name}: reciprocity mismatch {recip:.3e} exceeds 1e-6")
        })?;
        report.push(format!("{name}: optical {optical:.1e}, reciprocity {recip:.1e}"));
    }
    Ok(report.join("; "))
}

// ===========================================================================
// Criterion 9 — corners always scatter; far fields separate shapes
// ===========================================================================

fn criterion_9_witnesses() -> Verdict {
    let square = ContrastField::new(
        Shape::Polygon { vertices: vec![[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]] },
        Profile::Constant { q0: Complex64::new(2.0, 0.0) },
        128,
        0.75,
    )
    .map_err(|e| e.to_string())?;
    let inc = IncidentField::Plane { direction: [1.0, 0.0] };
    let ks = k_grid(1.0, 10.0, 50).map_err(|e| e.to_string())?;
    let table = sweep(&square, &inc, &ks, 256).map_err(|e| e.to_string())?;
    let failed = table.rows.iter().filter(|r| r.failed).count();
    check(failed == 0, || format!("{failed} sweep rows failed to solve"))?;
    let flagged = table.rows.iter().filter(|r| r.flagged).count();
    check(flagged == 0, || {
        format!("{flagged} square sweep rows flagged as non-scattering candidates")
    })?;
    let min_margin = table
        .rows
        .iter()
        .map(|r| r.norm / table.threshold)
        .fold(f64::INFINITY, f64::min);

    // Far fields of different shapes are far apart at k = 5.
    let triangle = ContrastField::new(
        Shape::Polygon { vertices: vec![[-0.5, -0.5], [0.5, -0.5], [0.0, 0.5]] },
        Profile::Constant { q0: Complex64::new(2.0, 0.0) },
        128,
        0.75,
    )
    .map_err(|e| e.to_string())?;
    let k = 5.0;
    let far_sq = {
        let total = solve(&square, k, &inc).map_err(|e| e.to_string())?;
        far_field(&square, k, &total, 256).map_err(|e| e.to_string())?
    };
    let far_tri = {
        let total = solve(&triangle, k, &inc).map_err(|e| e.to_string())?;
        far_field(&triangle, k, &total, 256).map_err(|e| e.to_string())?
    };
    let mut diff2 = 0.0f64;
    for (a, b) in far_sq.values.iter().zip(&far_tri.values) {
        diff2 += (a - b).norm_sqr();
    }
    let diff = (diff2 * 2.0 * PI / far_sq.values.len() as f64).sqrt();
    let floor = calibrate_floor(128, 256).map_err(|e| e.to_string())?;
    check(diff > 10.0 * floor, || {
        format!("square/triangle far fields differ by {diff:.3e} <= 10x floor {floor:.3e}")
    })?;
    Ok(format!(
        "50-step sweep: all norms >= {min_margin:.0}x threshold, none flagged; square-vs-triangle gap {diff:.2e} = {:.0}x floor",
        diff / floor
    ))
}

// ===========================================================================
// Criterion 10 — flat-interface transmission control
// ===========================================================================

fn criterion_10_flat_interface() -> Verdict {
    let (outer, inner) = flat_interface_pair(2.0, 2.0, 5, 1e-3, 5);
    let res = transmission_residual(&outer, &inner, 1e-3, 1).map_err(|e| e.to_string())?;
    check(res[0] <= 1e-6, || format!("order-0 transmission residual {:.3e}", res[0]))?;
    check(res[1] <= 1e-6, || format!("order-1 transmission residual {:.3e}", res[1]))?;
    Ok(format!(
        "matched pair passes orders 0/1 at {:.1e}/{:.1e} (<=1e-6)",
        res[0], res[1]
    ))
}

// ===========================================================================
// Runner
// ===========================================================================

fn main() {
    let criteria: Vec<(&str, fn() -> Verdict)> = vec![
        ("legendre-closed-forms", criterion_1_legendre),
        ("cone-spectrum", criterion_2_cone_spectrum),
        ("wronskian-sign-change", criterion_3_wronskian),
        ("cauchy-null-spaces", criterion_4_nullspaces),
        ("series-harmonicity-decay", criterion_5_series),
        ("special-solutions", criterion_6_special_solutions),
        ("solver-vs-oracle", criterion_7_solver_oracle),
        ("optical-reciprocity", criterion_8_identities),
        ("scattering-witnesses", criterion_9_witnesses),
        ("flat-interface-control", criterion_10_flat_interface),
    ];
    let mut failures = 0usize;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(Ok(detail)) => {
                println!("CRITERION {:02} {name}: PASS ({elapsed:.1}s) — {detail}", i + 1);
            }
            Ok(Err(msg)) => {
                failures += 1;
                println!("CRITERION {:02} {name}: FAIL ({elapsed:.1}s) — {msg}", i + 1);
            }
            Err(panic) => {
                failures += 1;
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".to_string());
                println!("CRITERION {:02} {name}: FAIL ({elapsed:.1}s) — panic: {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
