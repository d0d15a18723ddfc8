//! Weighted-space solvability predicates: an r^β-weighted problem on a sector
//! or cone is uniquely solvable exactly when the associated weight line misses
//! the singular exponents of the corner.

use alloc::format;
use alloc::vec::Vec;

use super::cone::cone_exponents;
use super::{AngularDomain, AngularEigenfunction, SingularExponent, SpectrumError};
use crate::fmath;
use crate::geometry::{BoundaryCondition, ConeGeometry, SectorGeometry};

const AVOID_TOL: f64 = 1e-9;

/// Corner geometry for the solvability predicates: a plane sector or a
/// rotationally symmetric cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Sector(SectorGeometry),
    Cone(ConeGeometry),
}

impl Geometry {
    pub fn opening(&self) -> f64 {
        match self {
            Geometry::Sector(s) => s.omega(),
            Geometry::Cone(c) => c.half_angle(),
        }
    }
}

/// One term of a corner asymptotic expansion: a singular exponent together
/// with its angular eigenfunction.
#[derive(Debug, Clone)]
pub struct AsymptoticTerm {
    pub exponent: SingularExponent,
    pub eigenfunction: AngularEigenfunction,
}

/// Does s avoid the sector exponent grid {jπ/ω}? Dirichlet excludes j = 0
/// (the constant is not a Dirichlet eigenfunction); Neumann includes it.
fn sector_avoids(omega: f64, bc: BoundaryCondition, s: f64) -> bool {
    let j = fmath::round(s * omega / core::f64::consts::PI);
    if j == 0.0 {
        // Nearest grid point is 0; only the Neumann grid contains it.
        return !(bc == BoundaryCondition::Neumann && fmath::abs(s) <= AVOID_TOL);
    }
    fmath::abs(s - j * core::f64::consts::PI / omega) > AVOID_TOL
}

fn cone_avoids(
    geom: ConeGeometry,
    bc: BoundaryCondition,
    s: f64,
) -> Result<bool, SpectrumError> {
    let lambda_max = fmath::abs(s) + 1.0;
    let list = cone_exponents(geom, bc, lambda_max)?;
    Ok(list.iter().all(|e| fmath::abs(s - e.value) > AVOID_TOL))
}

/// Unique solvability in the r^β-weighted L² scale: true iff the line
/// Re λ = 1 − β (sector) or Re λ = 1/2 − β (cone) is free of exponents.
pub fn sobolev_isomorphism(
    geom: Geometry,
    bc: BoundaryCondition,
    beta: f64,
) -> Result<bool, SpectrumError> {
    match geom {
        Geometry::Sector(s) => Ok(sector_avoids(s.omega(), bc, 1.0 - beta)),
        Geometry::Cone(c) => cone_avoids(c, bc, 0.5 - beta),
    }
}

/// Unique solvability in the r^β-weighted Hölder scale with smoothness
/// index α: the relevant line is Re λ = 2 + α − β.
pub fn holder_isomorphism(
    geom: Geometry,
    bc: BoundaryCondition,
    beta: f64,
    alpha: f64,
) -> Result<bool, SpectrumError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(SpectrumError::InvalidInput(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    match geom {
        Geometry::Sector(s) => Ok(sector_avoids(s.omega(), bc, 2.0 + alpha - beta)),
        Geometry::Cone(c) => cone_avoids(c, bc, 2.0 + alpha - beta),
    }
}

/// Terms a solution picks up when relaxing the weight from γ to γ₁ < γ:
/// the exponents in the open window (2+α−γ, 2+α−γ₁), each with its angular
/// eigenfunction. Both weights must themselves be off the spectrum.
pub fn asymptotic_terms(
    geom: Geometry,
    bc: BoundaryCondition,
    gamma: f64,
    gamma1: f64,
    alpha: f64,
) -> Result<Vec<AsymptoticTerm>, SpectrumError> {
    if !(gamma1 < gamma && gamma <= 2.0) {
        return Err(SpectrumError::InvalidInput(format!(
            "weights must satisfy gamma1 < gamma <= 2, got gamma={gamma}, gamma1={gamma1}"
        )));
    }
    if !holder_isomorphism(geom, bc, gamma, alpha)? {
        return Err(SpectrumError::InvalidInput(format!(
            "weight gamma={gamma} hits the spectrum"
        )));
    }
    if !holder_isomorphism(geom, bc, gamma1, alpha)? {
        return Err(SpectrumError::InvalidInput(format!(
            "weight gamma1={gamma1} hits the spectrum"
        )));
    }
    let lo = 2.0 + alpha - gamma; // > 0 because gamma <= 2 and alpha > 0
    let hi = 2.0 + alpha - gamma1;
    let omega = geom.opening();
    let mut out = Vec::new();
    match geom {
        Geometry::Sector(s) => {
            let step = core::f64::consts::PI / s.omega();
            let mut j = 1i64;
            while (j as f64) * step < hi {
                let value = j as f64 * step;
                if value > lo {
                    let exponent = SingularExponent {
                        value,
                        boundary_condition: bc,
                        angular_index: j,
                        multiplicity: 1,
                        orders: Vec::new(),
                        residual: 0.0,
                        bracket: None,
                    };
                    out.push(AsymptoticTerm {
                        eigenfunction: AngularEigenfunction {
                            exponent: exponent.clone(),
                            omega,
                            domain: AngularDomain::Sector,
                        },
                        exponent,
                    });
                }
                j += 1;
            }
        }
        Geometry::Cone(c) => {
            let list = cone_exponents(c, bc, hi + 1.0)?;
            for e in list {
                if e.value > lo && e.value < hi {
                    out.push(AsymptoticTerm {
                        eigenfunction: AngularEigenfunction {
                            exponent: e.clone(),
                            omega,
                            domain: AngularDomain::Cone,
                        },
                        exponent: e,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Largest safe Hölder index: half the gap from 2 to the nearest exponent
/// strictly above it, capped below 1/2, so the window (2, 2+α] stays free of
/// the spectrum.
pub fn suggested_alpha(geom: Geometry, bc: BoundaryCondition) -> Result<f64, SpectrumError> {
    let nearest_above_two = match geom {
        Geometry::Sector(s) => {
            let step = core::f64::consts::PI / s.omega();
            let mut j = fmath::floor(2.0 / step).max(0.0) as i64;
            while j as f64 * step <= 2.0 + AVOID_TOL {
                j += 1;
            }
            j as f64 * step
        }
        Geometry::Cone(c) => {
            let mut lambda_max = 4.0;
            loop {
                let list = cone_exponents(c, bc, lambda_max)?;
                if let Some(v) = list
                    .iter()
                    .map(|e| e.value)
                    .filter(|&v| v > 2.0 + AVOID_TOL)
                    .fold(None::<f64>, |acc, v| Some(acc.map_or(v, |a| a.min(v))))
                {
                    break v;
                }
                lambda_max *= 2.0;
                if lambda_max > 64.0 {
                    return Err(SpectrumError::InvalidInput(
                        "no exponent above 2 found within search window".into(),
                    ));
                }
            }
        }
    };
    Ok((0.5 * (nearest_above_two - 2.0)).min(0.49))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConeGeometry, SectorGeometry};
    use num_complex::Complex64;

    fn sector(omega: f64) -> Geometry {
        Geometry::Sector(SectorGeometry::new(omega).unwrap())
    }

    fn cone(omega: f64) -> Geometry {
        Geometry::Cone(ConeGeometry::new(omega).unwrap())
    }

    #[test]
    fn sobolev_examples() {
        let pi = core::f64::consts::PI;
        assert!(sobolev_isomorphism(sector(pi / 2.0), BoundaryCondition::Dirichlet, 0.0).unwrap());
        // 1 − β = 0 is on the Neumann grid (j = 0).
        assert!(!sobolev_isomorphism(sector(pi / 2.0), BoundaryCondition::Neumann, 1.0).unwrap());
        // 1/2 − β = 1 never meets a cone spectrum (λ = 1 is never a root).
        for &omega in &[0.7, 1.3, 2.1, 2.8] {
            for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
                assert!(
                    sobolev_isomorphism(cone(omega), bc, -0.5).unwrap(),
                    "ω={omega} {bc:?}"
                );
            }
        }
        // Hitting an exponent exactly: sector π/2 Dirichlet has 1−β = 2 at β = −1.
        assert!(!sobolev_isomorphism(sector(pi / 2.0), BoundaryCondition::Dirichlet, -1.0).unwrap());
    }

    #[test]
    fn holder_examples() {
        let pi = core::f64::consts::PI;
        // 2 + 0.1 − 1 = 1.1 vs grid {1.5 j}.
        assert!(
            holder_isomorphism(sector(2.0 * pi / 3.0), BoundaryCondition::Dirichlet, 1.0, 0.1)
                .unwrap()
        );
        // 1 + α vs grid {2, 4, …}: clear for every α ∈ (0, 1).
        for &alpha in &[0.1, 0.5, 0.9] {
            assert!(
                holder_isomorphism(sector(pi / 2.0), BoundaryCondition::Dirichlet, 1.0, alpha)
                    .unwrap()
            );
        }
        // Constructed failure: α chosen so 2 + α lands on a computed cone root.
        let geom = ConeGeometry::new(2.0).unwrap();
        let list = cone_exponents(geom, BoundaryCondition::Dirichlet, 3.0).unwrap();
        let hit = list
            .iter()
            .map(|e| e.value)
            .find(|&v| v > 2.05 && v < 2.95)
            .expect("expected a Dirichlet exponent in (2.05, 2.95) at ω=2");
        assert!(
            !holder_isomorphism(cone(2.0), BoundaryCondition::Dirichlet, 0.0, hit - 2.0).unwrap()
        );
        assert!(holder_isomorphism(cone(2.0), BoundaryCondition::Dirichlet, 0.0, hit - 2.0 + 1e-4)
            .unwrap());
        assert!(holder_isomorphism(sector(pi / 2.0), BoundaryCondition::Dirichlet, 0.0, 1.5).is_err());
    }

    #[test]
    fn asymptotic_window_reentrant_sector() {
        let pi = core::f64::consts::PI;
        let terms = asymptotic_terms(
            sector(3.0 * pi / 2.0),
            BoundaryCondition::Dirichlet,
            1.0,
            0.0,
            0.1,
        )
        .unwrap();
        let values: alloc::vec::Vec<f64> = terms.iter().map(|t| t.exponent.value).collect();
        assert_eq!(values.len(), 2);
        assert!((values[0] - 4.0 / 3.0).abs() < 1e-12);
        assert!((values[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_window_right_angle() {
        let pi = core::f64::consts::PI;
        let terms =
            asymptotic_terms(sector(pi / 2.0), BoundaryCondition::Dirichlet, 1.0, 0.0, 0.1)
                .unwrap();
        assert_eq!(terms.len(), 1);
        assert!((terms[0].exponent.value - 2.0).abs() < 1e-12);
        // Dirichlet eigenfunction vanishes on both sector edges.
        let f = &terms[0].eigenfunction;
        assert!(f.eval_sector(0.0).abs() < 1e-12);
        assert!(f.eval_sector(pi / 2.0).abs() < 1e-12);
    }

    #[test]
    fn equal_weights_rejected() {
        let pi = core::f64::consts::PI;
        assert!(asymptotic_terms(
            sector(pi / 2.0),
            BoundaryCondition::Dirichlet,
            1.0,
            1.0,
            0.1
        )
        .is_err());
        // A weight sitting on the spectrum is rejected: 2 + α − γ = 2 at γ = α.
        let err = asymptotic_terms(
            sector(pi / 2.0),
            BoundaryCondition::Dirichlet,
            0.1,
            0.0,
            0.1,
        );
        assert!(err.is_err());
    }

    #[test]
    fn cone_asymptotic_terms_with_eigenfunction_residual() {
        // Half-space Dirichlet: window (1.2−γ… ) chosen to capture λ = 2, 3.
        let geom = ConeGeometry::new(core::f64::consts::FRAC_PI_2).unwrap();
        let terms = asymptotic_terms(
            Geometry::Cone(geom),
            BoundaryCondition::Dirichlet,
            0.6,
            -1.4,
            0.1,
        )
        .unwrap();
        let values: alloc::vec::Vec<f64> = terms.iter().map(|t| t.exponent.value).collect();
        assert_eq!(values.len(), 2, "window (1.5, 3.5) should hold λ = 2, 3; got {values:?}");
        assert!((values[0] - 2.0).abs() < 1e-9);
        assert!((values[1] - 3.0).abs() < 1e-9);
        for t in &terms {
            let r = beltrami_residual(&t.eigenfunction, geom.half_angle());
            assert!(r <= 1e-8, "λ={} residual {r}", t.exponent.value);
        }
    }

    /// Max relative residual of u_θθ + cot θ·u_θ + u_φφ/sin²θ + λ(λ+1)u on a
    /// 50×50 interior grid, derivatives by five-point central differences.
    fn beltrami_residual(f: &AngularEigenfunction, omega: f64) -> f64 {
        let lambda = f.exponent.value;
        let h = 1e-3;
        let mut worst = 0.0f64;
        let mut scale = 1.0f64;
        for i in 0..50 {
            let theta = omega * (0.08 + 0.84 * i as f64 / 49.0);
            for j in 0..50 {
                let phi = 2.0 * core::f64::consts::PI * j as f64 / 50.0;
                let u = |dt: f64, dp: f64| f.eval_cone(theta + dt, phi + dp).unwrap();
                let c = u(0.0, 0.0);
                let five = |g: &dyn Fn(f64) -> Complex64| {
                    let (m2, m1, p1, p2) = (g(-2.0 * h), g(-h), g(h), g(2.0 * h));
                    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
                    let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
                    (d1, d2)
                };
                let (ut, utt) = five(&|d| u(d, 0.0));
                let (_, upp) = five(&|d| u(0.0, d));
                let st = libm::sin(theta);
                let res = utt + libm::cos(theta) / st * ut + upp / (st * st)
                    + lambda * (lambda + 1.0) * c;
                worst = worst.max(res.norm());
                scale = scale.max((lambda * (lambda + 1.0) * c).norm());
            }
        }
        worst / scale
    }

    #[test]
    fn suggested_alpha_values() {
        let pi = core::f64::consts::PI;
        // Sector π/2: next exponent above 2 is 4 → capped at 0.49.
        let a = suggested_alpha(sector(pi / 2.0), BoundaryCondition::Dirichlet).unwrap();
        assert!((a - 0.49).abs() < 1e-12);
        // Sector 3π/4: grid {4j/3}; above 2 sits 8/3 → α = 1/3.
        let a = suggested_alpha(sector(3.0 * pi / 4.0), BoundaryCondition::Dirichlet).unwrap();
        assert!((a - 1.0 / 3.0).abs() < 1e-12);
        // Cone π/2 Dirichlet: above 2 sits 3 → gap/2 = 0.5 → capped at 0.49.
        let a = suggested_alpha(cone(pi / 2.0), BoundaryCondition::Dirichlet).unwrap();
        assert!((a - 0.49).abs() < 1e-9);
        // The suggestion always certifies: (2, 2+α] misses the spectrum.
        for &omega in &[0.9, 1.8, 2.5] {
            for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
                let a = suggested_alpha(cone(omega), bc).unwrap();
                assert!(a > 0.0 && a < 0.5);
                assert!(holder_isomorphism(cone(omega), bc, 2.0, a).unwrap());
            }
        }
    }
}
