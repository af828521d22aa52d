//! Central numeric tolerances.
//!
//! All thresholds used for comparisons live here so that acceptance criteria
//! are pinned to one place. They are deliberately spread over three orders of
//! magnitude: geometric identities are checked much tighter than anything
//! that has passed through an interior-point solve.

/// Exact-arithmetic identities evaluated in floating point: vertex validity
/// of an inequality, zero crossings of closed-form thresholds, clamping of
/// probabilities.
pub const GEOMETRY: f64 = 1e-9;

/// Certificates extracted from an LP (convex decompositions, violation
/// thresholds of the separation program).
pub const CERTIFICATE: f64 = 1e-7;

/// Primal/dual feasibility targets handed to the interior-point backend.
pub const SOLVER_FEASIBILITY: f64 = 1e-8;

/// Optimal values reported by LP/SDP solves, and the feasibility margin used
/// by the bisection oracles.
pub const VALUE: f64 = 1e-6;

/// Default width of the final bisection bracket for efficiency bounds.
pub const BISECTION_DEFAULT: f64 = 1e-3;

/// Coarsest bisection width callers may request.
pub const BISECTION_MIN: f64 = 1e-4;
