//! Sector and cone geometries, with the flat/half-space cases tracked explicitly.
//!
//! A planar sector K_ω = {0 < θ < ω} is admissible for the scattering results
//! only when ω ≠ π; a circular cone C_ω = {0 < θ < ω} (half-angle ω) only when
//! ω ≠ π/2. Both excluded values are still constructible — they serve as
//! negative controls for the null-space computations — but carry a flag.

use core::fmt;

pub const EXCLUSION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryCondition::Dirichlet => write!(f, "dirichlet"),
            BoundaryCondition::Neumann => write!(f, "neumann"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorGeometry {
    omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeGeometry {
    half_angle: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// Opening angle outside the admissible open interval.
    OutOfRange { omega: f64, lo: f64, hi: f64 },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::OutOfRange { omega, lo, hi } => {
                write!(f, "opening angle {omega} outside ({lo}, {hi})")
            }
        }
    }
}

impl SectorGeometry {
    /// Sector opening ω ∈ (0, 2π). ω = π is allowed but flagged (`is_excluded`).
    pub fn new(omega: f64) -> Result<Self, GeometryError> {
        if !(omega > 0.0 && omega < 2.0 * core::f64::consts::PI) || !omega.is_finite() {
            return Err(GeometryError::OutOfRange {
                omega,
                lo: 0.0,
                hi: 2.0 * core::f64::consts::PI,
            });
        }
        Ok(SectorGeometry { omega })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// True for the flat (half-plane) case ω = π, where the scattering
    /// theorems do not apply and the Cauchy null space is nontrivial.
    pub fn is_excluded(&self) -> bool {
        crate::fmath::abs(self.omega - core::f64::consts::PI) < EXCLUSION_TOL
    }
}

impl ConeGeometry {
    /// Cone half-angle ω ∈ (0, π). ω = π/2 is allowed but flagged.
    pub fn new(half_angle: f64) -> Result<Self, GeometryError> {
        if !(half_angle > 0.0 && half_angle < core::f64::consts::PI) || !half_angle.is_finite() {
            return Err(GeometryError::OutOfRange {
                omega: half_angle,
                lo: 0.0,
                hi: core::f64::consts::PI,
            });
        }
        Ok(ConeGeometry { half_angle })
    }

    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    /// True for the half-space case ω = π/2 (opening angle 2ω = π).
    pub fn is_excluded(&self) -> bool {
        crate::fmath::abs(self.half_angle - core::f64::consts::FRAC_PI_2) < EXCLUSION_TOL
    }
}
