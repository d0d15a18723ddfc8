//! Exact and certified arithmetic: quadratic number fields for special
//! angles, arbitrary-precision dyadic intervals with outward rounding, and
//! elimination routines in exact, interval, and f64 regimes.

pub mod dyadic;
pub mod linalg;
pub mod quadext;

pub use dyadic::{pi_interval, sin_cos_enclosure, Dyadic, DyadicInterval, DEFAULT_PREC};
pub use linalg::{
    exact_nullspace, exact_rref, exact_solve, f64_nullspace, f64_rank,
    interval_full_column_rank, ExactField, RankCertificate,
};
pub use quadext::{exact_cos_sin, multiple_angles, recognize_angle, QuadExt, RationalAngle};
