//! Classicality decision and inequality synthesis by linear-programming
//! separation from the classical correlation polytope.
//!
//! Two linear programs answer the same membership question from opposite
//! sides. The *separation* program searches for a functional that is
//! nonpositive on every deterministic vertex yet positive on the observed
//! behavior — a violated Bell inequality, maximized so the reported violation
//! is as strong as the [-1, 1] coefficient box allows. The *decomposition*
//! program searches for convex weights over the vertices that reproduce the
//! behavior exactly — an explicit local model. Strong duality makes the two
//! verdicts agree on any behavior that is a valid probability assignment;
//! both are exposed so each result carries a checkable certificate of its own
//! kind.

use crate::error::{Error, Result};
use crate::scenario::{
    evaluate_inequality, vertex_dot, vertex_flat, BehaviorVector, BellInequality,
    ClassicalityCertificate, Scenario,
};
use crate::solver::{LinearProgram, Relation, SolveStatus};
use crate::tolerances;

/// Verdict of the separation search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationStatus {
    /// A valid inequality with `h·P` above the violation tolerance was found.
    Violated,
    /// The behavior is a convex mixture of deterministic vertices.
    Classical,
    /// Neither certificate exists: the separation optimum is below tolerance
    /// but no convex decomposition was found. This only happens for behaviors
    /// that are not valid probability assignments (e.g. joints exceeding
    /// singles), which lie in the cone spanned by the vertices without lying
    /// in their convex hull.
    Inconclusive,
}

/// Outcome of [`find_violated_inequality`]: a verdict plus whichever
/// certificate backs it.
#[derive(Debug, Clone)]
pub struct SeparationResult {
    pub status: SeparationStatus,
    /// The separating inequality, present iff `status == Violated`.
    pub inequality: Option<BellInequality>,
    /// `h·P` for the returned inequality, present iff `status == Violated`.
    pub quantum_value: Option<f64>,
    /// Convex decomposition of the behavior, present iff `status == Classical`.
    pub certificate: Option<ClassicalityCertificate>,
}

/// Searches for a Bell inequality violated by `behavior`, with the default
/// violation tolerance.
pub fn find_violated_inequality(behavior: &BehaviorVector) -> Result<SeparationResult> {
    find_violated_inequality_with(behavior, tolerances::CERTIFICATE)
}

/// Searches for a Bell inequality violated by `behavior`.
///
/// Maximizes `h·P` subject to `h·v_k ≤ 0` on all deterministic vertices and
/// `-1 ≤ h_l ≤ 1`. An optimum above `violation_tolerance` yields `Violated`
/// together with the maximizing inequality (repaired so the vertex
/// constraints hold exactly, see below); otherwise the decomposition program
/// decides between `Classical` (with certificate) and `Inconclusive`.
pub fn find_violated_inequality_with(
    behavior: &BehaviorVector,
    violation_tolerance: f64,
) -> Result<SeparationResult> {
    if let Some((inequality, quantum_value)) = violated_arm(behavior, violation_tolerance)? {
        return Ok(SeparationResult {
            status: SeparationStatus::Violated,
            inequality: Some(inequality),
            quantum_value: Some(quantum_value),
            certificate: None,
        });
    }
    match is_classical(behavior)? {
        Some(certificate) => Ok(SeparationResult {
            status: SeparationStatus::Classical,
            inequality: None,
            quantum_value: None,
            certificate: Some(certificate),
        }),
        None => Ok(SeparationResult {
            status: SeparationStatus::Inconclusive,
            inequality: None,
            quantum_value: None,
            certificate: None,
        }),
    }
}

/// The separation arm alone: solves the separation program and, on a
/// super-tolerance optimum, repairs the functional and re-evaluates it.
/// Returns the surviving inequality and its value, or `None` when no
/// violation above tolerance exists.
fn violated_arm(
    behavior: &BehaviorVector,
    violation_tolerance: f64,
) -> Result<Option<(BellInequality, f64)>> {
    let scenario = behavior.scenario();
    let report = separation_program(behavior)?.solve()?;
    // The program is always feasible (h = 0) and bounded (the box), so
    // anything but an optimum is a backend failure.
    if report.status != SolveStatus::Optimal {
        return Err(Error::SolverFailure(format!(
            "separation program ended with {:?}",
            report.status
        )));
    }
    if report.value > violation_tolerance {
        let mut h = report.x.clone();
        repair_vertex_constraints(scenario, &mut h)?;
        let inequality = BellInequality::from_flat(scenario, &h)?;
        let quantum_value = evaluate_inequality(&inequality, behavior)?;
        if quantum_value > violation_tolerance {
            return Ok(Some((inequality, quantum_value)));
        }
        // The repair consumed the whole margin — the violation was pure
        // solver residual.
    }
    Ok(None)
}

/// Decides only whether some valid Bell inequality is violated, without
/// constructing the classicality certificate for the negative case.
///
/// Agrees with `find_violated_inequality(..)?.status == Violated` (same
/// separation program, same repair) at roughly half the cost on classical
/// inputs — the right query for large ensembles that only count violations.
pub fn violates_classicality(behavior: &BehaviorVector) -> Result<bool> {
    Ok(violated_arm(behavior, tolerances::CERTIFICATE)?.is_some())
}

/// Attempts a convex decomposition of `behavior` over the deterministic
/// vertices; `None` means no local model exists.
///
/// Solved in phase-1 form: minimize `t` over weights `λ_k ≥ 0` with
/// `Σ λ_k = 1` and `|Σ λ_k v_k − P| ≤ t` coordinatewise. This program is
/// always strictly feasible, so the solver never has to distinguish a
/// borderline-infeasible system from a numerical stall — membership is read
/// off the optimal gap instead: classical iff `t* ≤` the certificate
/// tolerance (an exact mixture reaches machine-level `t*`).
pub fn is_classical(behavior: &BehaviorVector) -> Result<Option<ClassicalityCertificate>> {
    let count = behavior.scenario().vertex_count()?;
    let report = decomposition_program(behavior)?.solve()?;
    if report.status != SolveStatus::Optimal {
        return Err(Error::SolverFailure(format!(
            "decomposition program ended with {:?}",
            report.status
        )));
    }
    let gap = report.x[count].max(-report.value);
    if gap > tolerances::CERTIFICATE {
        return Ok(None);
    }
    let weights = report
        .x
        .iter()
        .take(count)
        .enumerate()
        .filter(|&(_, &w)| w > 1e-12)
        .map(|(k, &w)| (k, w))
        .collect();
    Ok(Some(ClassicalityCertificate { weights }))
}

/// The separation program for `behavior`, exposed at the [`LinearProgram`]
/// level so tests can cross-check it against an independent solver.
pub(crate) fn separation_program(behavior: &BehaviorVector) -> Result<LinearProgram> {
    let scenario = behavior.scenario();
    let count = scenario.vertex_count()?;
    let d = scenario.dimension();
    let mut lp = LinearProgram::new(d);
    lp.set_objective(behavior.flatten());
    for var in 0..d {
        lp.set_bounds(var, -1.0, 1.0);
    }
    for k in 1..count {
        // vertex 0 is the zero vector; its constraint 0 ≤ 0 is vacuous
        let coeffs: Vec<(usize, f64)> = vertex_flat(scenario, k)
            .into_iter()
            .enumerate()
            .filter(|&(_, x)| x != 0.0)
            .map(|(l, x)| (l, x))
            .collect();
        lp.add_constraint(coeffs, Relation::Le, 0.0);
    }
    Ok(lp)
}

/// Phase-1 decomposition program: variables `(λ_0..λ_{K−1}, t)`, maximize
/// `−t` subject to `λ ≥ 0`, `t ≥ 0`, `Σ λ_k = 1`, and
/// `−t ≤ Σ λ_k v_k[l] − P[l] ≤ t` for every coordinate `l`.
pub(crate) fn decomposition_program(behavior: &BehaviorVector) -> Result<LinearProgram> {
    let scenario = behavior.scenario();
    let count = scenario.vertex_count()?;
    let d = scenario.dimension();
    let t = count;
    let mut lp = LinearProgram::new(count + 1);
    for k in 0..=count {
        lp.set_bounds(k, 0.0, f64::INFINITY);
    }
    let mut objective = vec![0.0; count + 1];
    objective[t] = -1.0;
    lp.set_objective(objective);
    lp.add_constraint((0..count).map(|k| (k, 1.0)).collect(), Relation::Eq, 1.0);
    let mut coordinate_rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); d];
    for k in 0..count {
        for (l, x) in vertex_flat(scenario, k).into_iter().enumerate() {
            if x != 0.0 {
                coordinate_rows[l].push((k, 1.0));
            }
        }
    }
    for (row, target) in coordinate_rows.into_iter().zip(behavior.flatten()) {
        let mut upper = row.clone();
        upper.push((t, -1.0));
        lp.add_constraint(upper, Relation::Le, target);
        let mut lower = row;
        lower.push((t, 1.0));
        lp.add_constraint(lower, Relation::Ge, target);
    }
    Ok(lp)
}

/// Restores `h·v_k ≤ 0` exactly on every vertex.
///
/// An interior-point optimum can sit a residual ε above some vertex
/// constraints. Shrinking only the positive coefficients by the worst
/// violation ratio `δ = max_k (h·v_k) / (h⁺·v_k)` fixes every constraint:
/// vertices are entrywise nonnegative, so `h⁺·v ≥ h·v` term by term (and in
/// the same summation order, so also in floating point), making the ratio
/// well-defined and the shrunk value `h·v − δ·(h⁺·v) ≤ 0`. The coefficient
/// box `[-1, 1]` is preserved because positive entries only move toward zero.
fn repair_vertex_constraints(scenario: Scenario, h: &mut [f64]) -> Result<()> {
    let count = scenario.vertex_count()?;
    let h_plus: Vec<f64> = h.iter().map(|&x| x.max(0.0)).collect();
    let mut delta = 0.0f64;
    for k in 0..count {
        let hv = vertex_dot(scenario, h, k);
        if hv > 0.0 {
            delta = delta.max(hv / vertex_dot(scenario, &h_plus, k));
        }
    }
    if delta > 0.0 {
        for (x, p) in h.iter_mut().zip(&h_plus) {
            *x -= delta * p;
        }
    }
    Ok(())
}
