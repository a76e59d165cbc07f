//! Exact slope calculus for graph knots.
//!
//! A graph knot is built from unknots and torus knots by mirroring,
//! connected sum and cabling. For such an expression the engine computes
//! upper sets for the Jones slopes, a generated set of boundary slopes, the
//! Condition-δ status, and whether every Jones slope lands in the generated
//! boundary slopes. Degrees of colored Jones polynomials are cross-checked
//! against an exact Laurent-polynomial oracle for torus knots and their sums.

pub mod error;
pub mod explain;
pub mod expr;
pub mod generate;
pub mod homology;
pub mod laurent;
pub mod oracle;
pub mod qpoly;
pub mod rational;
pub mod report;
pub mod slope;

pub use error::Error;
pub use expr::{normalize_mirrors, parse, validate, validate_with, Bounds, KnotExpr};
pub use laurent::LaurentPoly;
pub use qpoly::{fit_from_samples, torus_delta, QuasiPoly};
pub use rational::Q;
pub use slope::{
    cable_transform, check_condition_delta, profile, profile_with, sum_slopes,
    verify_conjecture, verify_conjecture_with, ConditionStatus, ProfileOptions, Slope,
    SlopeProfile, SlopeSet, Verdict,
};
