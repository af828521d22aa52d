//! Semidefinite relaxations over the moment structure: feasibility of a
//! behavior at a hierarchy level, and maximization of an inequality over all
//! level-feasible behaviors.
//!
//! Feasibility is decided through a margin program — maximize `t` such that
//! `M - t·1 ⪰ 0` with the behavior-backed entries pinned — which is always
//! strictly feasible, so the solver never has to certify infeasibility; the
//! sign of the optimal margin is the verdict. Maximization treats the
//! behavior-backed moments as free variables weighted by the inequality. Its
//! feasible set is compact (every moment is squeezed by principal minors
//! against the pinned identity entry), so an unbounded verdict can only mean
//! a modeling bug and is reported as such.

use super::moment::{MomentStructure, NpaLevel, WordRole};
use crate::error::{Error, Result};
use crate::scenario::{BehaviorVector, BellInequality, Scenario};
use crate::solver::{SemidefiniteProgram, SolveStatus};
use crate::tolerances;

/// Outcome of the feasibility margin program for one behavior.
#[derive(Debug, Clone)]
pub struct NpaCertificate {
    /// Optimal `t` in `M - t·1 ⪰ 0`: the most positive semidefinite the
    /// completed moment matrix can be made. Nonnegative (up to tolerance)
    /// iff the behavior admits a level-`k` certificate.
    pub feasibility_margin: f64,
    /// The completed moment matrix at the optimum, row-major.
    pub matrix: Vec<f64>,
    pub dimension: usize,
}

impl NpaCertificate {
    pub fn is_feasible(&self) -> bool {
        self.feasibility_margin >= -tolerances::CERTIFICATE
    }
}

/// Whether `behavior` admits a level-`level` moment certificate.
pub fn npa_feasible(behavior: &BehaviorVector, level: NpaLevel) -> Result<bool> {
    Ok(npa_certificate(behavior, level)?.is_feasible())
}

/// Runs the feasibility margin program and returns the completed matrix.
pub fn npa_certificate(behavior: &BehaviorVector, level: NpaLevel) -> Result<NpaCertificate> {
    let structure = MomentStructure::build(behavior.scenario(), level)?;
    let dim = structure.dimension();
    // one variable per free word, plus the margin variable last
    let mut var_of = vec![None; structure.distinct_words().len()];
    let mut n_vars = 0;
    for (id, role) in structure.roles().iter().enumerate() {
        if matches!(role, WordRole::Free) {
            var_of[id] = Some(n_vars);
            n_vars += 1;
        }
    }
    let margin = n_vars;
    let mut sdp = SemidefiniteProgram::new(dim, n_vars + 1);
    for c in 0..dim {
        for r in 0..=c {
            let id = structure.entry_word_id(r, c);
            let constant = match structure.roles()[id] {
                WordRole::Identity => 1.0,
                WordRole::SingleA(i) => behavior.p_a()[i],
                WordRole::SingleB(j) => behavior.p_b()[j],
                WordRole::Joint(i, j) => behavior.p_ab(i, j),
                WordRole::Free => 0.0,
            };
            let mut terms: Vec<(usize, f64)> = Vec::with_capacity(2);
            if let Some(v) = var_of[id] {
                terms.push((v, 1.0));
            }
            if r == c {
                terms.push((margin, -1.0));
            }
            sdp.set_entry(r, c, constant, &terms);
        }
    }
    let mut objective = vec![0.0; n_vars + 1];
    objective[margin] = 1.0;
    sdp.set_objective(objective, 0.0);
    let (report, shifted) = sdp.solve()?;
    if report.status != SolveStatus::Optimal {
        // the margin program is strictly feasible and bounded by the pinned
        // identity entry, so anything else is a backend failure
        return Err(Error::SolverFailure(format!(
            "feasibility margin program ended with {:?}",
            report.status
        )));
    }
    let t = report.x[margin];
    let mut matrix = shifted;
    for r in 0..dim {
        matrix[r * dim + r] += t;
    }
    Ok(NpaCertificate {
        feasibility_margin: t,
        matrix,
        dimension: dim,
    })
}

/// Upper-bounds the quantum maximum of `ineq`: maximizes `h·P` over all
/// behaviors (probability vectors in `[0, 1]`) admitting a level-`level`
/// certificate.
pub fn npa_max_value(ineq: &BellInequality, level: NpaLevel) -> Result<f64> {
    npa_max_with_behavior(ineq, level).map(|(value, _)| value)
}

/// [`npa_max_value`] together with the maximizing behavior (the fixed-word
/// part of the optimal moment matrix).
pub fn npa_max_with_behavior(
    ineq: &BellInequality,
    level: NpaLevel,
) -> Result<(f64, BehaviorVector)> {
    let structure = MomentStructure::build(ineq.scenario(), level)?;
    let dim = structure.dimension();
    // every non-identity word is a variable; behavior-backed ones carry the
    // objective weight of their probability
    let distinct = structure.distinct_words().len();
    let mut var_of = vec![None; distinct];
    let mut objective = Vec::new();
    for (id, role) in structure.roles().iter().enumerate() {
        if matches!(role, WordRole::Identity) {
            continue;
        }
        var_of[id] = Some(objective.len());
        objective.push(match *role {
            WordRole::SingleA(i) => ineq.h_a()[i],
            WordRole::SingleB(j) => ineq.h_b()[j],
            WordRole::Joint(i, j) => ineq.h_ab(i, j),
            WordRole::Free => 0.0,
            WordRole::Identity => unreachable!(),
        });
    }
    let n_vars = objective.len();
    let mut sdp = SemidefiniteProgram::new(dim, n_vars);
    for c in 0..dim {
        for r in 0..=c {
            let id = structure.entry_word_id(r, c);
            match var_of[id] {
                None => sdp.set_entry(r, c, 1.0, &[]),
                Some(v) => sdp.set_entry(r, c, 0.0, &[(v, 1.0)]),
            }
        }
    }
    // the maximization ranges over probability vectors, so behavior-backed
    // moments carry an explicit [0, 1] box. From level 2 upward the box is
    // implied by the matrix itself (each such word then sits on a diagonal),
    // but at level 1 the joint moments appear only off-diagonal and the PSD
    // cone alone would admit negative "probabilities".
    for (id, role) in structure.roles().iter().enumerate() {
        if let (
            Some(v),
            WordRole::SingleA(_) | WordRole::SingleB(_) | WordRole::Joint(_, _),
        ) = (var_of[id], role)
        {
            sdp.set_variable_range(v, 0.0, 1.0);
        }
    }
    sdp.set_objective(objective, 0.0);
    let (report, _) = sdp.solve()?;
    match report.status {
        SolveStatus::Optimal => {
            let behavior = extract_behavior(ineq.scenario(), &structure, &var_of, &report.x)?;
            Ok((report.value, behavior))
        }
        SolveStatus::Unbounded => Err(Error::Unbounded),
        other => Err(Error::SolverFailure(format!(
            "moment maximization ended with {other:?}"
        ))),
    }
}

/// Reads the behavior coordinates out of a maximization solution. Solver
/// iterates can sit a residual outside `[0, 1]`; the readback clamps them —
/// this is a reporting aid, the certified quantity is the objective value.
fn extract_behavior(
    scenario: Scenario,
    structure: &MomentStructure,
    var_of: &[Option<usize>],
    x: &[f64],
) -> Result<BehaviorVector> {
    let (n, m) = (scenario.n(), scenario.m());
    let mut p_a = vec![0.0; n];
    let mut p_b = vec![0.0; m];
    let mut p_ab = vec![vec![0.0; m]; n];
    for (id, role) in structure.roles().iter().enumerate() {
        let Some(v) = var_of[id] else { continue };
        let value = x[v].clamp(0.0, 1.0);
        match *role {
            WordRole::SingleA(i) => p_a[i] = value,
            WordRole::SingleB(j) => p_b[j] = value,
            WordRole::Joint(i, j) => p_ab[i][j] = value,
            WordRole::Identity | WordRole::Free => {}
        }
    }
    BehaviorVector::new(scenario, p_a, p_b, p_ab)
}
