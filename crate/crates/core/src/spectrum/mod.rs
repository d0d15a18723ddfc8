//! Singular exponents (Mellin spectra) of the Dirichlet/Neumann Laplacian on
//! plane sectors and circular cones, together with the weighted-space
//! solvability predicates and leading asymptotic terms built from them.

pub mod cone;
pub mod sector;
pub mod solvability;

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::fmath;
use crate::geometry::BoundaryCondition;
use crate::specfun::{self, SpecFunError};

pub use cone::{cone_exponents, cone_exponents_for_order, no_exponent_equals_one, ConeRoot};
pub use sector::sector_exponents;
pub use solvability::{
    asymptotic_terms, holder_isomorphism, sobolev_isomorphism, suggested_alpha, AsymptoticTerm,
    Geometry,
};

/// One point of a Mellin spectrum.
///
/// For sectors, `angular_index` is the harmonic index j and the value is
/// jπ/ω. For cones it is the smallest contributing order |m|; when one λ
/// solves the Legendre condition for several orders the records merge, with
/// `orders` retaining every contributing |m| and `multiplicity` counting ±m
/// pairs separately for m ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularExponent {
    pub value: f64,
    pub boundary_condition: BoundaryCondition,
    pub angular_index: i64,
    pub multiplicity: u32,
    pub orders: Vec<u32>,
    /// |P_λ^{|m|}(cos ω)| (Dirichlet) or |(P_λ^{|m|})'(cos ω)| (Neumann) at
    /// the computed root; 0 for sector exponents (exact by construction).
    pub residual: f64,
    /// Sign-change bracket from the root search, when applicable.
    pub bracket: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumError {
    InvalidInput(String),
    RootFinding { order: u32, bracket: (f64, f64), message: String },
    Special(SpecFunError),
}

impl From<SpecFunError> for SpectrumError {
    fn from(e: SpecFunError) -> Self {
        SpectrumError::Special(e)
    }
}

impl core::fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SpectrumError::InvalidInput(s) => write!(f, "invalid input: {s}"),
            SpectrumError::RootFinding { order, bracket, message } => write!(
                f,
                "root refinement failed for order m={order} in [{}, {}]: {message}",
                bracket.0, bracket.1
            ),
            SpectrumError::Special(e) => write!(f, "{e}"),
        }
    }
}

/// Which angular domain an eigenfunction lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularDomain {
    Sector,
    Cone,
}

/// Angular part of a separated singular solution: sin/cos of jπθ/ω on the
/// sector arc, or P_λ^{|m|}(cos θ)e^{imφ} on the spherical cap.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularEigenfunction {
    pub exponent: SingularExponent,
    pub omega: f64,
    pub domain: AngularDomain,
}

impl AngularEigenfunction {
    /// Sector trace: Dirichlet sin((jπ/ω)θ), Neumann cos((jπ/ω)θ).
    pub fn eval_sector(&self, theta: f64) -> f64 {
        debug_assert_eq!(self.domain, AngularDomain::Sector);
        let nu = self.exponent.value;
        match self.exponent.boundary_condition {
            BoundaryCondition::Dirichlet => fmath::sin(nu * theta),
            BoundaryCondition::Neumann => fmath::cos(nu * theta),
        }
    }

    /// Cap trace P_λ^{|m|}(cos θ)e^{imφ} with the representative order.
    pub fn eval_cone(&self, theta: f64, phi: f64) -> Result<Complex64, SpecFunError> {
        debug_assert_eq!(self.domain, AngularDomain::Cone);
        let m = self.exponent.angular_index;
        let t = fmath::cos(theta);
        let p = if t >= 1.0 - 1e-14 || t <= -1.0 + 1e-14 {
            // Eigenfunction axis limit: nonzero only for m = 0.
            if m == 0 {
                specfun::eval_p(self.exponent.value, 0, t.clamp(-1.0 + 1e-12, 1.0 - 1e-12))?
            } else {
                0.0
            }
        } else {
            specfun::eval_p(self.exponent.value, m.unsigned_abs() as u32, t)?
        };
        Ok(Complex64::new(0.0, m as f64 * phi).exp() * p)
    }
}
