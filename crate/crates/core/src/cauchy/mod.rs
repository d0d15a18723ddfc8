//! Cauchy problems for homogeneous polynomials on plane sectors and
//! rotationally symmetric cones.
//!
//! The central object is the null space
//! {p homogeneous of degree d : Δ²p = 0, p = ∂_ν p = 0 on the corner
//! boundary}. For every sector opening except the flat angle π, and every
//! cone half-angle except the half-space value π/2, this space is trivial;
//! at the flat angles it contains the square of the distance to the boundary
//! plane. The computation certifies one of the two outcomes:
//!
//! * at angles recognized as small rational multiples of π the boundary
//!   values cos ω, sin ω lie in a quadratic extension of ℚ, and the null
//!   space is computed by exact elimination (an exact basis, certificate
//!   [`NullspaceCertificate::Exact`]);
//! * at arbitrary angles the constraint matrix is assembled in certified
//!   interval arithmetic and emptiness is certified by interval Gaussian
//!   elimination establishing full column rank
//!   ([`NullspaceCertificate::IntervalRank`]). When the intervals cannot
//!   decide — in particular whenever the null space is genuinely nontrivial —
//!   the result is [`NullspaceCertificate::Inconclusive`] rather than a
//!   silent wrong answer.
//!
//! [`wedge_nullspace_2d_family`] solves the inhomogeneous companion problem
//! {Δq = rhs, q = ∂_ν q = 0}: its solution set (a particular solution plus
//! the harmonic Cauchy kernel) is what forces polynomial right-hand sides to
//! vanish in the wedge reduction arguments.
//!
//! The module also constructs explicit solutions of Δv = p with one-sided
//! boundary conditions ([`special_solution_2d`], [`special_solution_cone`]),
//! including the logarithmic profiles that appear at resonant angles; see
//! `special` for the conventions.
//!
//! The cone axis θ = 0 carries no boundary condition: polynomials are smooth
//! there, so no regularity constraint is imposed on the axis.

pub mod assemble;
mod special;

pub use special::{
    special_solution_2d, special_solution_cone, verify_special_solution_2d,
    verify_special_solution_cone, ConeLogTerm, LogProfile2D, SectorLogTerm, SpecialSolution2D,
    SpecialSolutionCone, VerificationReport,
};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::exact::linalg::{
    exact_nullspace, exact_solve, interval_full_column_rank, RankCertificate,
};
use crate::exact::quadext::{exact_cos_sin, recognize_angle, QuadExt, RationalAngle};
use crate::geometry::SectorGeometry;
use crate::poly::Poly;
use crate::spectrum::Geometry;

use assemble::SymbolicMatrix;

/// Default working precision (bits) for interval-certified rank computations.
pub const NULLSPACE_PRECISION_BITS: u32 = 200;

#[derive(Debug, Clone, PartialEq)]
pub enum CauchyError {
    /// A precondition on the inputs was violated.
    InvalidInput(String),
    /// A numerical subroutine failed to reach its required accuracy.
    Numerical(String),
}

impl core::fmt::Display for CauchyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CauchyError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            CauchyError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

/// How a null-space result was certified.
#[derive(Debug, Clone, PartialEq)]
pub enum NullspaceCertificate {
    /// Exact elimination over a quadratic extension field; the basis is an
    /// exact answer.
    Exact,
    /// Interval Gaussian elimination proved the constraint matrix has full
    /// column rank, so the null space is certainly empty. `max_interval_width`
    /// is the widest assembled matrix entry.
    IntervalRank { precision_bits: u32, max_interval_width: f64 },
    /// The intervals could not certify full column rank (which is the only
    /// statement interval elimination can make). No dimension is reported.
    Inconclusive { precision_bits: u32 },
}

/// Result of a corner Cauchy null-space computation.
#[derive(Debug, Clone)]
pub struct CauchyNullspace {
    pub geometry: Geometry,
    pub degree: u32,
    /// `Some(dim)` when certified; `None` when inconclusive.
    pub dimension: Option<usize>,
    /// Exact basis (empty unless the exact path found a nontrivial space).
    pub basis: Vec<Poly<QuadExt>>,
    pub certificate: NullspaceCertificate,
}

fn validate_degree(degree: u32) -> Result<(), CauchyError> {
    if degree < 2 {
        return Err(CauchyError::InvalidInput(format!(
            "degree must be at least 2, got {degree}"
        )));
    }
    Ok(())
}

/// The symbolic biharmonic Cauchy system for a geometry and degree.
pub fn symbolic_system(geom: Geometry, degree: u32) -> Result<SymbolicMatrix, CauchyError> {
    validate_degree(degree)?;
    Ok(match geom {
        Geometry::Sector(_) => assemble::sector_system(degree),
        Geometry::Cone(_) => assemble::cone_system(degree),
    })
}

/// Floating-point instantiation of the constraint matrix (the independent
/// assembly path used to cross-validate exact ranks), with the monomial
/// basis indexing the columns.
pub fn constraint_matrix_f64(
    geom: Geometry,
    degree: u32,
) -> Result<(Vec<Vec<f64>>, Vec<[u8; 3]>), CauchyError> {
    let system = symbolic_system(geom, degree)?;
    let rows = system.instantiate_f64(geom.opening());
    Ok((rows, system.cols))
}

/// Exact instantiation of the constraint matrix when the opening angle is a
/// recognized rational multiple of π; `None` otherwise.
pub fn constraint_matrix_quadext(
    geom: Geometry,
    degree: u32,
) -> Result<Option<(Vec<Vec<QuadExt>>, Vec<[u8; 3]>)>, CauchyError> {
    let system = symbolic_system(geom, degree)?;
    Ok(recognize_angle(geom.opening())
        .map(|angle| (system.instantiate_quadext(angle), system.cols.clone())))
}

fn vector_to_poly(system: &SymbolicMatrix, v: Vec<QuadExt>) -> Poly<QuadExt> {
    Poly::from_terms(
        system.dim,
        system.degree,
        system.cols.iter().cloned().zip(v),
    )
    .expect("nullspace vector indexed by the column monomial basis")
}

fn interval_path(
    geom: Geometry,
    degree: u32,
    system: &SymbolicMatrix,
    precision_bits: u32,
) -> CauchyNullspace {
    let (rows, max_width) = system.instantiate_interval(geom.opening(), precision_bits);
    match interval_full_column_rank(&rows, system.cols.len(), precision_bits) {
        RankCertificate::FullColumnRank => CauchyNullspace {
            geometry: geom,
            degree,
            dimension: Some(0),
            basis: Vec::new(),
            certificate: NullspaceCertificate::IntervalRank {
                precision_bits,
                max_interval_width: max_width,
            },
        },
        RankCertificate::Uncertain => CauchyNullspace {
            geometry: geom,
            degree,
            dimension: None,
            basis: Vec::new(),
            certificate: NullspaceCertificate::Inconclusive { precision_bits },
        },
    }
}

/// Basis of {p ∈ P_degree : Δ²p = 0, p = ∂_ν p = 0 on the boundary}.
///
/// Recognized angles take the exact field path; all other angles fall back
/// to interval certification at [`NULLSPACE_PRECISION_BITS`] bits.
pub fn cauchy_nullspace(geom: Geometry, degree: u32) -> Result<CauchyNullspace, CauchyError> {
    let system = symbolic_system(geom, degree)?;
    if let Some(angle) = recognize_angle(geom.opening()) {
        let rows = system.instantiate_quadext(angle);
        let vectors = exact_nullspace(&rows, system.cols.len());
        let basis: Vec<Poly<QuadExt>> = vectors
            .into_iter()
            .map(|v| vector_to_poly(&system, v))
            .collect();
        Ok(CauchyNullspace {
            geometry: geom,
            degree,
            dimension: Some(basis.len()),
            basis,
            certificate: NullspaceCertificate::Exact,
        })
    } else {
        Ok(interval_path(geom, degree, &system, NULLSPACE_PRECISION_BITS))
    }
}

/// Interval-certified null-space computation at an explicit precision, used
/// when certification must not depend on the angle being recognized.
///
/// The certificate refers to the dyadic angle that the `f64` opening denotes
/// exactly. Intervals can certify an empty kernel, never a nonzero kernel
/// vector: near an angle whose ideal kernel is nontrivial the result is
/// either `Inconclusive` (when the precision cannot separate the
/// near-singular entries from zero) or a certified empty kernel at the
/// perturbed dyadic angle (when it can) — never a silently wrong dimension.
pub fn cauchy_nullspace_with_precision(
    geom: Geometry,
    degree: u32,
    precision_bits: u32,
) -> Result<CauchyNullspace, CauchyError> {
    let system = symbolic_system(geom, degree)?;
    Ok(interval_path(geom, degree, &system, precision_bits))
}

/// The solution set of {Δq = rhs, q = ∂_ν q = 0 on the sector boundary} in
/// homogeneous degree `degree`: a particular solution (when one exists) plus
/// a basis of the corresponding homogeneous (harmonic Cauchy) kernel.
#[derive(Debug, Clone)]
pub struct WedgeSolutionFamily {
    /// `None` when the constraints are inconsistent — the solution set is
    /// empty, which is exactly the conclusion that forces harmonic
    /// right-hand sides to vanish in the wedge reduction.
    pub particular: Option<Poly<QuadExt>>,
    pub homogeneous_basis: Vec<Poly<QuadExt>>,
    /// Whether cos ω, sin ω entered exactly (recognized angle) or as exact
    /// rationalizations of their floating values.
    pub exact_angle: bool,
}

/// Exact boundary direction values for a sector: the recognized-angle field
/// values when available, otherwise exact rationalizations of the floating
/// cosine and sine (flagged by the returned `Option`).
pub(crate) fn sector_boundary_values(omega: f64) -> (QuadExt, QuadExt, Option<RationalAngle>) {
    match recognize_angle(omega) {
        Some(angle) => {
            let (c, s) = exact_cos_sin(angle);
            (c, s, Some(angle))
        }
        None => {
            let c = BigRational::from_float(crate::fmath::cos(omega)).unwrap_or_default();
            let s = BigRational::from_float(crate::fmath::sin(omega)).unwrap_or_default();
            (QuadExt::from_rational(c), QuadExt::from_rational(s), None)
        }
    }
}

/// Solve {Δq = rhs, q|_∂ = ∂_ν q|_∂ = 0} over homogeneous degree-`degree`
/// polynomials on the sector. The right-hand side must be exactly harmonic
/// of degree `degree − 2`.
pub fn wedge_nullspace_2d_family(
    geom: SectorGeometry,
    degree: u32,
    rhs: &Poly<BigRational>,
) -> Result<WedgeSolutionFamily, CauchyError> {
    validate_degree(degree)?;
    if rhs.dim() != 2 {
        return Err(CauchyError::InvalidInput(String::from(
            "right-hand side must be a polynomial in two variables",
        )));
    }
    if rhs.degree() != degree - 2 {
        return Err(CauchyError::InvalidInput(format!(
            "right-hand side degree {} does not match solution degree {} minus 2",
            rhs.degree(),
            degree
        )));
    }
    if !rhs.laplacian().is_zero() {
        return Err(CauchyError::InvalidInput(String::from(
            "right-hand side must be exactly harmonic",
        )));
    }
    let (system, targets) = assemble::sector_wedge_system(degree);
    let (c, s, angle) = sector_boundary_values(geom.omega());
    let rows = system.instantiate_exact(&c, &s);
    let mut rhs_vec: Vec<QuadExt> = targets
        .iter()
        .map(|t| QuadExt::from_rational(rhs.coeff(t)))
        .collect();
    rhs_vec.resize(rows.len(), QuadExt::zero());
    let particular = exact_solve(&rows, system.cols.len(), &rhs_vec)
        .map(|v| vector_to_poly(&system, v));
    let homogeneous_basis: Vec<Poly<QuadExt>> = exact_nullspace(&rows, system.cols.len())
        .into_iter()
        .map(|v| vector_to_poly(&system, v))
        .collect();
    Ok(WedgeSolutionFamily { particular, homogeneous_basis, exact_angle: angle.is_some() })
}

/// JSON for one exact-field polynomial: multi-indices with exact numerators
/// and denominators; coefficients with an irrational part carry additional
/// `root_num`/`root_den`/`radicand` fields for the √-component.
pub fn poly_json_quadext(p: &Poly<QuadExt>) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (alpha, c) in p.terms() {
        let idx: Vec<String> = alpha[..p.dim() as usize]
            .iter()
            .map(|a| format!("{a}"))
            .collect();
        let mut fields = format!(
            "\"alpha\":[{}],\"num\":\"{}\",\"den\":\"{}\"",
            idx.join(","),
            c.a.numer(),
            c.a.denom()
        );
        if !num_traits::Zero::is_zero(&c.b) {
            fields.push_str(&format!(
                ",\"root_num\":\"{}\",\"root_den\":\"{}\",\"radicand\":{}",
                c.b.numer(),
                c.b.denom(),
                c.radicand
            ));
        }
        terms.push(format!("{{{fields}}}"));
    }
    format!(
        "{{\"dimension\":{},\"degree\":{},\"terms\":[{}]}}",
        p.dim(),
        p.degree(),
        terms.join(",")
    )
}

impl CauchyNullspace {
    /// Versioned JSON report with certification metadata.
    pub fn to_json(&self) -> String {
        let (kind, opening) = match self.geometry {
            Geometry::Sector(s) => ("sector", s.omega()),
            Geometry::Cone(c) => ("cone", c.half_angle()),
        };
        let dimension = match self.dimension {
            Some(d) => format!("{d}"),
            None => String::from("null"),
        };
        let certificate = match &self.certificate {
            NullspaceCertificate::Exact => String::from("{\"kind\":\"exact\"}"),
            NullspaceCertificate::IntervalRank { precision_bits, max_interval_width } => format!(
                "{{\"kind\":\"interval-rank\",\"precision_bits\":{precision_bits},\"max_interval_width\":{max_interval_width:e}}}"
            ),
            NullspaceCertificate::Inconclusive { precision_bits } => format!(
                "{{\"kind\":\"inconclusive\",\"precision_bits\":{precision_bits}}}"
            ),
        };
        let basis: Vec<String> = self.basis.iter().map(poly_json_quadext).collect();
        format!(
            "{{\"schema\":\"cauchy-nullspace/1\",\"geometry\":{{\"kind\":\"{kind}\",\"opening\":{opening}}},\"degree\":{},\"dimension\":{dimension},\"certificate\":{certificate},\"basis\":[{}]}}",
            self.degree,
            basis.join(",")
        )
    }
}
