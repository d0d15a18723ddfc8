//! Cone spectra: λ with P_λ^{|m|}(cos ω) = 0 (Dirichlet) or
//! (P_λ^{|m|})'(cos ω) = 0 (Neumann).
//!
//! The search runs on the prefactor-free hypergeometric factor of P_λ^m: the
//! order-raising prefactor Π(λ−j)(λ+j+1) vanishes at the integers 0..m−1,
//! where the would-be eigenfunction is identically zero, so scanning the full
//! Legendre function would report spurious exponents there. The factored
//! search function has sign changes exactly at the genuine eigenvalues, and
//! for λ < m its series has all-positive terms (Dirichlet case), which is
//! what certifies the order cap m ≤ λ_max + 2.

use alloc::format;
use alloc::vec::Vec;

use super::{SingularExponent, SpectrumError};
use crate::fmath;
use crate::geometry::{BoundaryCondition, ConeGeometry};
use crate::roots;
use crate::specfun::{self, legendre};

const SCAN_STEP: f64 = 0.05;
const REFINE_TOL: f64 = 1e-12;
const MERGE_TOL: f64 = 1e-9;

/// A single root of the angular eigenvalue condition for one order m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeRoot {
    pub lambda: f64,
    pub order: u32,
    /// |P_λ^m(cos ω)| or |(P_λ^m)'(cos ω)| after polishing.
    pub residual: f64,
    /// Final sign-change bracket of the search function.
    pub bracket: (f64, f64),
}

/// Prefactor-free search function whose zeros are the genuine eigenvalues.
fn search_value(
    bc: BoundaryCondition,
    m: u32,
    t0: f64,
    lambda: f64,
) -> Result<f64, specfun::SpecFunError> {
    let (h, ht) = legendre::hyp_factor_with_dt(lambda, m, t0)?;
    Ok(match bc {
        BoundaryCondition::Dirichlet => h,
        // d/dt[(1−t²)^{m/2}·h] ÷ (1−t²)^{m/2} = h_t − m·t/(1−t²)·h
        BoundaryCondition::Neumann => ht - m as f64 * t0 / (1.0 - t0 * t0) * h,
    })
}

/// Certification target: the full Legendre quantity the spectrum is defined by.
fn certification_value(
    bc: BoundaryCondition,
    m: u32,
    t0: f64,
    lambda: f64,
) -> Result<f64, specfun::SpecFunError> {
    match bc {
        BoundaryCondition::Dirichlet => specfun::eval_p(lambda, m, t0),
        BoundaryCondition::Neumann => specfun::eval_p_dt(lambda, m, t0),
    }
}

/// Roots λ ∈ (−1/2, λ_max] of the order-m angular condition.
pub fn cone_exponents_for_order(
    geom: ConeGeometry,
    bc: BoundaryCondition,
    m: u32,
    lambda_max: f64,
) -> Result<Vec<ConeRoot>, SpectrumError> {
    if !(lambda_max > 0.0) {
        return Err(SpectrumError::InvalidInput(format!(
            "lambda_max must be positive, got {lambda_max}"
        )));
    }
    let t0 = fmath::cos(geom.half_angle());
    let err_cell = core::cell::Cell::new(None::<specfun::SpecFunError>);
    let f = |lam: f64| match search_value(bc, m, t0, lam) {
        Ok(v) => v,
        Err(e) => {
            err_cell.set(Some(e));
            f64::NAN
        }
    };
    // Scan one step past λ_max so a root sitting exactly on the closed end
    // of the (−1/2, λ_max] window is still bracketed; the λ filter below
    // drops anything genuinely beyond it.
    let brackets = roots::scan_brackets(&f, -0.5, lambda_max + SCAN_STEP, SCAN_STEP);
    if let Some(e) = err_cell.take() {
        return Err(e.into());
    }
    let mut out: Vec<ConeRoot> = Vec::new();
    for br in brackets {
        let root = roots::refine(&f, br, REFINE_TOL, 200).map_err(|e| {
            SpectrumError::RootFinding {
                order: m,
                bracket: (br.a, br.b),
                message: format!("{e}"),
            }
        })?;
        if let Some(e) = err_cell.take() {
            return Err(e.into());
        }
        let (lambda, residual) = polish_on_certification(bc, m, t0, root.x)?;
        if lambda <= -0.5 + MERGE_TOL || lambda > lambda_max + MERGE_TOL {
            continue;
        }
        // Deduplicate in the rare case two brackets refine to one root.
        if out.iter().any(|r| fmath::abs(r.lambda - lambda) < MERGE_TOL) {
            continue;
        }
        out.push(ConeRoot {
            lambda,
            order: m,
            residual,
            bracket: (root.bracket.a, root.bracket.b),
        });
    }
    out.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).unwrap());
    Ok(out)
}

/// A few guarded secant steps on the defining Legendre quantity, so the
/// recorded residual is measured on the function the spectrum is defined by
/// (not on the internal search function).
fn polish_on_certification(
    bc: BoundaryCondition,
    m: u32,
    t0: f64,
    x0: f64,
) -> Result<(f64, f64), SpectrumError> {
    let g = |lam: f64| certification_value(bc, m, t0, lam);
    let mut a = x0;
    let mut ga = g(a)?;
    let (mut best_x, mut best_g) = (a, fmath::abs(ga));
    let mut b = x0 + 1e-8 * fmath::abs(x0).max(1.0);
    let mut gb = g(b)?;
    if fmath::abs(gb) < best_g {
        best_x = b;
        best_g = fmath::abs(gb);
    }
    for _ in 0..6 {
        if gb == ga || best_g == 0.0 {
            break;
        }
        let c = b - gb * (b - a) / (gb - ga);
        if !c.is_finite() || fmath::abs(c - x0) > 0.01 {
            break;
        }
        let gc = g(c)?;
        a = b;
        ga = gb;
        b = c;
        gb = gc;
        if fmath::abs(gc) < best_g {
            best_x = c;
            best_g = fmath::abs(gc);
        }
    }
    Ok((best_x, best_g))
}

/// Full cone spectrum over all orders, merged, with the reflection λ ↦ −λ−1
/// filling (−λ_max−1, −1/2). Orders are capped at λ_max + 2 after verifying
/// the next order contributes nothing.
pub fn cone_exponents(
    geom: ConeGeometry,
    bc: BoundaryCondition,
    lambda_max: f64,
) -> Result<Vec<SingularExponent>, SpectrumError> {
    let m_cap = fmath::floor(lambda_max + 2.0) as u32;
    let mut roots: Vec<ConeRoot> = Vec::new();
    for m in 0..=m_cap {
        roots.extend(cone_exponents_for_order(geom, bc, m, lambda_max)?);
    }
    let above = cone_exponents_for_order(geom, bc, m_cap + 1, lambda_max)?;
    if !above.is_empty() {
        return Err(SpectrumError::InvalidInput(format!(
            "order cap violated: order {} has a root at λ={}",
            m_cap + 1,
            above[0].lambda
        )));
    }

    // The constant is always a Neumann eigenfunction; the m=0 scan finds the
    // exact zero of the derivative condition at λ=0, but guarantee it.
    if bc == BoundaryCondition::Neumann
        && !roots.iter().any(|r| fmath::abs(r.lambda) < MERGE_TOL)
    {
        let t0 = fmath::cos(geom.half_angle());
        let residual = fmath::abs(certification_value(bc, 0, t0, 0.0)?);
        roots.push(ConeRoot { lambda: 0.0, order: 0, residual, bracket: (0.0, 0.0) });
    }

    roots.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).unwrap());

    // Merge equal λ across distinct orders: ±m pairs count twice for m ≥ 1.
    let mut merged: Vec<SingularExponent> = Vec::new();
    let mut i = 0usize;
    while i < roots.len() {
        let mut j = i + 1;
        while j < roots.len() && roots[j].lambda - roots[i].lambda < MERGE_TOL {
            j += 1;
        }
        let cluster = &roots[i..j];
        let mut orders: Vec<u32> = cluster.iter().map(|r| r.order).collect();
        orders.sort_unstable();
        orders.dedup();
        let multiplicity: u32 = orders.iter().map(|&m| if m == 0 { 1 } else { 2 }).sum();
        let rep = cluster.iter().min_by_key(|r| r.order).unwrap();
        merged.push(SingularExponent {
            value: rep.lambda,
            boundary_condition: bc,
            angular_index: rep.order as i64,
            multiplicity,
            orders,
            residual: cluster.iter().fold(0.0f64, |acc, r| acc.max(r.residual)),
            bracket: Some(rep.bracket),
        });
        i = j;
    }

    // Reflection partners −λ−1 in the open interval (−λ_max−1, −1/2).
    let t0 = fmath::cos(geom.half_angle());
    let mut reflected: Vec<SingularExponent> = Vec::new();
    for e in &merged {
        if e.value >= lambda_max - MERGE_TOL {
            continue; // partner would land on the excluded endpoint
        }
        let m = e.angular_index as u32;
        // The reflected point is a root of the same condition but reached by
        // a different series path; polish it in place so its recorded
        // residual certifies the value actually reported.
        let (lam, residual) = polish_on_certification(bc, m, t0, -e.value - 1.0)?;
        reflected.push(SingularExponent {
            value: lam,
            bracket: e.bracket.map(|(a, b)| (-b - 1.0, -a - 1.0)),
            residual,
            ..e.clone()
        });
    }
    merged.extend(reflected);
    merged.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
    Ok(merged)
}

/// λ = 1 never belongs to either cone spectrum except at ω = π/2.
///
/// The only order-(m ≤ 1) quantities that could vanish at λ = 1 are
/// P_1(cos ω) = cos ω, P_1^1(cos ω) = sin ω, and (P_1^1)'(cos ω) =
/// −cos ω/sin ω; sin ω > 0 throughout (0, π) and (P_1)' ≡ 1, so the decision
/// reduces to cos ω ≠ 0 (tolerance matched to the geometry's exclusion flag).
pub fn no_exponent_equals_one(geom: ConeGeometry) -> bool {
    let c = fmath::cos(geom.half_angle());
    fmath::abs(c) >= 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConeGeometry;

    fn cone(omega: f64) -> ConeGeometry {
        ConeGeometry::new(omega).unwrap()
    }

    /// Closed form P_λ(0) = √π / (Γ((1−λ)/2) Γ(1+λ/2)): an independent
    /// oracle for the half-space cap.
    fn p_at_zero(lambda: f64) -> f64 {
        let pi = core::f64::consts::PI;
        libm::sqrt(pi) / (libm::tgamma((1.0 - lambda) / 2.0) * libm::tgamma(1.0 + lambda / 2.0))
    }

    #[test]
    fn half_space_dirichlet_m0_is_odd_integers() {
        let roots = cone_exponents_for_order(
            cone(core::f64::consts::FRAC_PI_2),
            BoundaryCondition::Dirichlet,
            0,
            6.0,
        )
        .unwrap();
        let got: alloc::vec::Vec<f64> = roots.iter().map(|r| r.lambda).collect();
        assert_eq!(got.len(), 3);
        // Independent oracle: bisection on the Γ closed form.
        let mut oracle = alloc::vec::Vec::new();
        let mut prev = 0.5f64;
        let mut fprev = p_at_zero(prev);
        let mut x = prev;
        while x < 6.0 {
            x += 0.05;
            let fx = p_at_zero(x);
            if fprev * fx < 0.0 {
                let (mut a, mut b) = (prev, x);
                for _ in 0..80 {
                    let mid = 0.5 * (a + b);
                    if p_at_zero(a) * p_at_zero(mid) <= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                oracle.push(0.5 * (a + b));
            }
            prev = x;
            fprev = fx;
        }
        assert_eq!(oracle.len(), 3);
        for (g, o) in got.iter().zip(&oracle) {
            assert!((g - o).abs() < 1e-9, "root {g} vs oracle {o}");
        }
        for (g, expect) in got.iter().zip(&[1.0, 3.0, 5.0]) {
            assert!((g - expect).abs() < 1e-9, "root {g} vs {expect}");
        }
        for r in &roots {
            assert!(r.residual <= 1e-10, "residual {} at λ={}", r.residual, r.lambda);
            assert!(r.bracket.0 <= r.lambda && r.lambda <= r.bracket.1 + 1e-9);
        }
    }

    #[test]
    fn half_space_higher_orders_follow_parity() {
        // P_n^m(0) = 0 iff n+m odd: order 1 → {2, 4, 6}, order 2 → {3, 5}.
        let r1 = cone_exponents_for_order(
            cone(core::f64::consts::FRAC_PI_2),
            BoundaryCondition::Dirichlet,
            1,
            6.0,
        )
        .unwrap();
        let v1: alloc::vec::Vec<f64> = r1.iter().map(|r| r.lambda).collect();
        assert_eq!(v1.len(), 3);
        for (g, e) in v1.iter().zip(&[2.0, 4.0, 6.0]) {
            assert!((g - e).abs() < 1e-9);
        }
        let r2 = cone_exponents_for_order(
            cone(core::f64::consts::FRAC_PI_2),
            BoundaryCondition::Dirichlet,
            2,
            6.0,
        )
        .unwrap();
        let v2: alloc::vec::Vec<f64> = r2.iter().map(|r| r.lambda).collect();
        assert_eq!(v2.len(), 2);
        for (g, e) in v2.iter().zip(&[3.0, 5.0]) {
            assert!((g - e).abs() < 1e-9);
        }
    }

    #[test]
    fn half_space_merged_multiplicities() {
        let list = cone_exponents(
            cone(core::f64::consts::FRAC_PI_2),
            BoundaryCondition::Dirichlet,
            5.5,
        )
        .unwrap();
        let at = |v: f64| {
            list.iter()
                .find(|e| (e.value - v).abs() < 1e-8)
                .unwrap_or_else(|| panic!("no exponent at {v}"))
        };
        assert_eq!(at(1.0).multiplicity, 1);
        assert_eq!(at(2.0).multiplicity, 2); // m = ±1
        assert_eq!(at(3.0).multiplicity, 3); // m = 0 and ±2
        assert_eq!(at(3.0).orders, alloc::vec![0, 2]);
        assert_eq!(at(4.0).multiplicity, 4); // m = ±1, ±3
        assert_eq!(at(5.0).multiplicity, 5); // m = 0, ±2, ±4
        // Reflection partners carry the same multiplicity.
        assert_eq!(at(-4.0).multiplicity, 3);
        assert_eq!(at(-2.0).multiplicity, 1);
    }

    #[test]
    fn neumann_always_contains_zero_and_minus_one() {
        for &omega in &[0.6, 1.2, core::f64::consts::FRAC_PI_2, 2.2, 2.9] {
            let list = cone_exponents(cone(omega), BoundaryCondition::Neumann, 3.0).unwrap();
            assert!(
                list.iter().any(|e| e.value.abs() < 1e-10),
                "λ=0 missing for ω={omega}"
            );
            assert!(
                list.iter().any(|e| (e.value + 1.0).abs() < 1e-10),
                "λ=−1 missing for ω={omega}"
            );
        }
    }

    #[test]
    fn reflection_closure_holds() {
        for &omega in &[0.8, 1.9, 2.6] {
            for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
                let list = cone_exponents(cone(omega), bc, 4.0).unwrap();
                for e in &list {
                    if e.value >= 4.0 - 1e-9 {
                        continue;
                    }
                    let partner = -e.value - 1.0;
                    assert!(
                        list.iter().any(|o| (o.value - partner).abs() < 1e-9),
                        "ω={omega} {bc:?}: partner of {} missing",
                        e.value
                    );
                }
            }
        }
    }

    #[test]
    fn smallest_dirichlet_exponent_is_positive() {
        for &omega in &[0.4, 1.0, 1.8, 2.7, 3.0] {
            let list = cone_exponents(cone(omega), BoundaryCondition::Dirichlet, 4.0).unwrap();
            let smallest_positive_side = list
                .iter()
                .filter(|e| e.value > -0.5)
                .map(|e| e.value)
                .fold(f64::INFINITY, f64::min);
            assert!(
                smallest_positive_side > 0.0,
                "ω={omega}: λ_D,1 = {smallest_positive_side}"
            );
        }
    }

    #[test]
    fn lambda_one_membership() {
        assert!(!no_exponent_equals_one(cone(core::f64::consts::FRAC_PI_2)));
        assert!(no_exponent_equals_one(cone(core::f64::consts::FRAC_PI_3)));
        assert!(no_exponent_equals_one(cone(2.0)));
        // 20 pseudo-random angles away from π/2: λ=1 is never a root.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut checked = 0;
        while checked < 20 {
            let omega = 0.2 + 2.7 * next();
            if (omega - core::f64::consts::FRAC_PI_2).abs() < 1e-3 {
                continue;
            }
            for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
                let list = cone_exponents(cone(omega), bc, 2.5).unwrap();
                assert!(
                    !list.iter().any(|e| (e.value - 1.0).abs() < 1e-9),
                    "λ=1 appeared for ω={omega} {bc:?}"
                );
            }
            assert!(no_exponent_equals_one(cone(omega)));
            checked += 1;
        }
    }

    #[test]
    fn lambda_two_in_both_spectra_only_at_half_space() {
        // At ω = π/2, λ = 2 is Dirichlet (order 1) and Neumann (order 2).
        let omega = core::f64::consts::FRAC_PI_2;
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            let list = cone_exponents(cone(omega), bc, 3.0).unwrap();
            assert!(
                list.iter().any(|e| (e.value - 2.0).abs() < 1e-9),
                "λ=2 missing from {bc:?} at π/2"
            );
        }
        // At cos²ω = 1/3 (the P_2 root), λ = 2 is Dirichlet-only: the Neumann
        // conditions (P_2)' = 3t, (P_2^1)' ∝ 1−2t², (P_2^2)' = −6t all need
        // t² ∈ {0, 1/2}, not 1/3.
        let omega = libm::acos(1.0 / libm::sqrt(3.0));
        let d = cone_exponents(cone(omega), BoundaryCondition::Dirichlet, 3.0).unwrap();
        assert!(d.iter().any(|e| (e.value - 2.0).abs() < 1e-9));
        let n = cone_exponents(cone(omega), BoundaryCondition::Neumann, 3.0).unwrap();
        assert!(!n.iter().any(|e| (e.value - 2.0).abs() < 1e-9));
    }

    #[test]
    fn residuals_certify_roots() {
        for &omega in &[0.9, 1.7, 2.4] {
            for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
                let list = cone_exponents(cone(omega), bc, 5.0).unwrap();
                assert!(!list.is_empty());
                for e in &list {
                    assert!(
                        e.residual <= 1e-10,
                        "ω={omega} {bc:?} λ={}: residual {}",
                        e.value,
                        e.residual
                    );
                }
            }
        }
    }
}
