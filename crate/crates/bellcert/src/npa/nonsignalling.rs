//! The nonsignalling polytope as the zeroth hierarchy level.
//!
//! Rather than approximating it with Fréchet-style inequalities on the
//! recorded +1 probabilities, the polytope is modelled exactly: one
//! conditional four-outcome table per setting pair, normalized per context,
//! with each party's marginal forced to be the same in every context — which
//! is literally the no-signalling statement. The recorded behavior is the
//! `(marginal, marginal, ++)` slice of the table.

use crate::error::{Error, Result};
use crate::scenario::{BehaviorVector, BellInequality, Scenario};
use crate::solver::{LinearProgram, Relation, SolveStatus};

/// Variable layout for the nonsignalling LP: the four outcomes of every
/// context, then Alice's marginals, then Bob's.
struct Layout {
    n: usize,
    m: usize,
}

impl Layout {
    fn new(scenario: Scenario) -> Self {
        Layout {
            n: scenario.n(),
            m: scenario.m(),
        }
    }

    /// `p(a b | i j)` with outcomes `0 = +`, `1 = -`.
    fn table(&self, i: usize, j: usize, a: usize, b: usize) -> usize {
        ((i * self.m + j) * 2 + a) * 2 + b
    }

    fn marginal_a(&self, i: usize) -> usize {
        4 * self.n * self.m + i
    }

    fn marginal_b(&self, j: usize) -> usize {
        4 * self.n * self.m + self.n + j
    }

    fn n_vars(&self) -> usize {
        4 * self.n * self.m + self.n + self.m
    }
}

/// The constraint system shared by all nonsignalling operations.
fn nonsignalling_program(scenario: Scenario) -> (LinearProgram, Layout) {
    let layout = Layout::new(scenario);
    let mut lp = LinearProgram::new(layout.n_vars());
    for v in 0..layout.n_vars() {
        lp.set_bounds(v, 0.0, 1.0);
    }
    for i in 0..layout.n {
        for j in 0..layout.m {
            // per-context normalization
            lp.add_constraint(
                (0..2)
                    .flat_map(|a| (0..2).map(move |b| (a, b)))
                    .map(|(a, b)| (layout.table(i, j, a, b), 1.0))
                    .collect(),
                Relation::Eq,
                1.0,
            );
            // Alice's +1 marginal is independent of Bob's setting…
            lp.add_constraint(
                vec![
                    (layout.table(i, j, 0, 0), 1.0),
                    (layout.table(i, j, 0, 1), 1.0),
                    (layout.marginal_a(i), -1.0),
                ],
                Relation::Eq,
                0.0,
            );
            // …and vice versa
            lp.add_constraint(
                vec![
                    (layout.table(i, j, 0, 0), 1.0),
                    (layout.table(i, j, 1, 0), 1.0),
                    (layout.marginal_b(j), -1.0),
                ],
                Relation::Eq,
                0.0,
            );
        }
    }
    (lp, layout)
}

/// The largest value of `ineq` over the nonsignalling polytope.
pub fn nonsignalling_max_value(ineq: &BellInequality) -> Result<f64> {
    nonsignalling_max_with_behavior(ineq).map(|(value, _)| value)
}

/// [`nonsignalling_max_value`] together with a maximizing behavior.
pub fn nonsignalling_max_with_behavior(
    ineq: &BellInequality,
) -> Result<(f64, BehaviorVector)> {
    let scenario = ineq.scenario();
    let (mut lp, layout) = nonsignalling_program(scenario);
    for i in 0..layout.n {
        lp.set_objective_coeff(layout.marginal_a(i), ineq.h_a()[i]);
        for j in 0..layout.m {
            lp.set_objective_coeff(layout.table(i, j, 0, 0), ineq.h_ab(i, j));
        }
    }
    for j in 0..layout.m {
        lp.set_objective_coeff(layout.marginal_b(j), ineq.h_b()[j]);
    }
    let report = lp.solve()?;
    if report.status != SolveStatus::Optimal {
        // the polytope is nonempty (uniform tables) and bounded
        return Err(Error::SolverFailure(format!(
            "nonsignalling maximization ended with {:?}",
            report.status
        )));
    }
    let clamp = |v: usize| report.x[v].clamp(0.0, 1.0);
    let behavior = BehaviorVector::new(
        scenario,
        (0..layout.n).map(|i| clamp(layout.marginal_a(i))).collect(),
        (0..layout.m).map(|j| clamp(layout.marginal_b(j))).collect(),
        (0..layout.n)
            .map(|i| (0..layout.m).map(|j| clamp(layout.table(i, j, 0, 0))).collect())
            .collect(),
    )?;
    Ok((report.value, behavior))
}

/// Whether `behavior` extends to a full nonsignalling table family.
pub fn nonsignalling_feasible(behavior: &BehaviorVector) -> Result<bool> {
    let scenario = behavior.scenario();
    let (mut lp, layout) = nonsignalling_program(scenario);
    for i in 0..layout.n {
        lp.set_bounds(layout.marginal_a(i), behavior.p_a()[i], behavior.p_a()[i]);
        for j in 0..layout.m {
            let p = behavior.p_ab(i, j);
            lp.set_bounds(layout.table(i, j, 0, 0), p, p);
        }
    }
    for j in 0..layout.m {
        lp.set_bounds(layout.marginal_b(j), behavior.p_b()[j], behavior.p_b()[j]);
    }
    let report = lp.solve()?;
    match report.status {
        SolveStatus::Optimal => Ok(true),
        SolveStatus::Infeasible => Ok(false),
        other => Err(Error::SolverFailure(format!(
            "nonsignalling feasibility ended with {other:?}"
        ))),
    }
}
