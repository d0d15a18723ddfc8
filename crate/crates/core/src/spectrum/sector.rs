//! Sector spectra: the exponents are exactly jπ/ω.

use alloc::vec::Vec;

use super::{SingularExponent, SpectrumError};
use crate::geometry::{BoundaryCondition, SectorGeometry};

/// All exponents jπ/ω in (−λ_max, λ_max], sorted ascending. Dirichlet runs
/// over j ∈ ℤ∖{0}, Neumann over j ∈ ℤ (so 0 is included).
pub fn sector_exponents(
    geom: SectorGeometry,
    bc: BoundaryCondition,
    lambda_max: f64,
) -> Result<Vec<SingularExponent>, SpectrumError> {
    if !(lambda_max > 0.0) {
        return Err(SpectrumError::InvalidInput(alloc::format!(
            "lambda_max must be positive, got {lambda_max}"
        )));
    }
    let omega = geom.omega();
    // Generous index range; membership is decided on the computed value so
    // the (−λ_max, λ_max] window is honoured exactly as evaluated.
    let jmax = crate::fmath::ceil(lambda_max * omega / core::f64::consts::PI) as i64 + 1;
    let mut out = Vec::new();
    for j in -jmax..=jmax {
        if j == 0 && bc == BoundaryCondition::Dirichlet {
            continue;
        }
        let value = j as f64 * core::f64::consts::PI / omega;
        if value > -lambda_max && value <= lambda_max {
            out.push(SingularExponent {
                value,
                boundary_condition: bc,
                angular_index: j,
                multiplicity: 1,
                orders: Vec::new(),
                residual: 0.0,
                bracket: None,
            });
        }
    }
    out.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
    Ok(out)
}
