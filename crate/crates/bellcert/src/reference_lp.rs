//! A deliberately simple dense two-phase simplex, used only by tests.
//!
//! This is the independent reference route for every linear program in the
//! crate: it shares no code with the interior-point backend (do not "fix"
//! one by calling into the other). Bland's rule guarantees termination;
//! performance is irrelevant at test sizes.

use crate::solver::{LinearProgram, Relation, SolveStatus};

const EPS: f64 = 1e-9;

pub struct ReferenceReport {
    pub status: SolveStatus,
    pub value: f64,
    pub x: Vec<f64>,
}

/// Solves `lp` (maximize sense) by dense tableau simplex.
pub fn solve_reference(lp: &LinearProgram) -> ReferenceReport {
    // Standard form: every original variable is split x_j = u_j - w_j with
    // u, w ≥ 0; finite bounds become ordinary rows; all rows become
    // equalities with slack; artificials complete the starting basis.
    let n = lp.n_vars();
    let objective = lp.objective_dense();
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new(); // (dense coeffs over x, rhs), sense ≤
    let mut eq_rows: Vec<(Vec<f64>, f64)> = Vec::new();

    for (coeffs, rel, rhs) in lp.rows_iter() {
        let mut dense = vec![0.0; n];
        for &(j, a) in coeffs {
            dense[j] += a;
        }
        match rel {
            Relation::Le => rows.push((dense, *rhs)),
            Relation::Ge => {
                rows.push((dense.iter().map(|a| -a).collect(), -rhs));
            }
            Relation::Eq => eq_rows.push((dense, *rhs)),
        }
    }
    for (j, &(lo, hi)) in lp.bounds_iter().iter().enumerate() {
        if hi.is_finite() {
            let mut dense = vec![0.0; n];
            dense[j] = 1.0;
            rows.push((dense, hi));
        }
        if lo.is_finite() {
            let mut dense = vec![0.0; n];
            dense[j] = -1.0;
            rows.push((dense, -lo));
        }
    }

    let n_le = rows.len();
    let n_eq = eq_rows.len();
    let n_rows = n_le + n_eq;
    let n_split = 2 * n; // u_j at column 2j, w_j at 2j+1
    let n_slack = n_le;
    let n_cols = n_split + n_slack + n_rows; // artificials for every row

    // tableau[r] = coefficients row, rhs in a separate vector
    let mut t = vec![vec![0.0; n_cols]; n_rows];
    let mut rhs = vec![0.0; n_rows];
    let mut basis = vec![0usize; n_rows];

    let all_rows = rows.iter().chain(eq_rows.iter());
    for (r, (dense, b)) in all_rows.enumerate() {
        for j in 0..n {
            t[r][2 * j] = dense[j];
            t[r][2 * j + 1] = -dense[j];
        }
        if r < n_le {
            t[r][n_split + r] = 1.0; // slack
        }
        rhs[r] = *b;
        if rhs[r] < 0.0 {
            for v in t[r].iter_mut() {
                *v = -*v;
            }
            rhs[r] = -rhs[r];
        }
        // A slack with +1 coefficient and nonnegative rhs could serve as the
        // basis column, but rows may have been negated; artificials for all
        // rows keep the bookkeeping uniform.
        t[r][n_split + n_slack + r] = 1.0;
        basis[r] = n_split + n_slack + r;
    }

    // Phase 1: minimize sum of artificials ⇔ maximize -Σ artificials.
    let mut phase1 = vec![0.0; n_cols];
    for c in (n_split + n_slack)..n_cols {
        phase1[c] = -1.0;
    }
    if !run_simplex(&mut t, &mut rhs, &mut basis, &phase1) {
        // Phase-1 objective is bounded (≤ 0); unboundedness cannot happen.
        unreachable!("phase-1 simplex cannot be unbounded");
    }
    let infeas: f64 = basis
        .iter()
        .enumerate()
        .filter(|(_, &c)| c >= n_split + n_slack)
        .map(|(r, _)| rhs[r])
        .sum();
    if infeas > 1e-7 {
        return ReferenceReport {
            status: SolveStatus::Infeasible,
            value: f64::NAN,
            x: Vec::new(),
        };
    }
    // Pivot any residual (degenerate) artificials out of the basis if
    // possible; rows where that fails are redundant and harmless.
    for r in 0..n_rows {
        if basis[r] >= n_split + n_slack {
            if let Some(c) = (0..n_split + n_slack).find(|&c| t[r][c].abs() > EPS) {
                pivot(&mut t, &mut rhs, &mut basis, r, c);
                rhs[r] = rhs[r].max(0.0); // the row's rhs was ≈0; keep it clean
            }
        }
    }
    // Forbid artificials from re-entering.
    for row in t.iter_mut() {
        for c in (n_split + n_slack)..n_cols {
            row[c] = 0.0;
        }
    }

    // Phase 2: the real objective over the split variables.
    let mut phase2 = vec![0.0; n_cols];
    for j in 0..n {
        phase2[2 * j] = objective[j];
        phase2[2 * j + 1] = -objective[j];
    }
    if !run_simplex(&mut t, &mut rhs, &mut basis, &phase2) {
        return ReferenceReport {
            status: SolveStatus::Unbounded,
            value: f64::NAN,
            x: Vec::new(),
        };
    }

    let mut split = vec![0.0; n_cols];
    for (r, &c) in basis.iter().enumerate() {
        split[c] = rhs[r];
    }
    let x: Vec<f64> = (0..n).map(|j| split[2 * j] - split[2 * j + 1]).collect();
    let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    ReferenceReport {
        status: SolveStatus::Optimal,
        value,
        x,
    }
}

/// Maximizes `obj` over the current tableau. Returns false on unboundedness.
fn run_simplex(
    t: &mut [Vec<f64>],
    rhs: &mut [f64],
    basis: &mut [usize],
    obj: &[f64],
) -> bool {
    let n_rows = t.len();
    let n_cols = obj.len();
    loop {
        // reduced costs: z_c = obj_c - Σ_r obj_{basis r} * t[r][c]
        let mut entering = None;
        for c in 0..n_cols {
            if basis.contains(&c) {
                continue;
            }
            let mut z = obj[c];
            for r in 0..n_rows {
                z -= obj[basis[r]] * t[r][c];
            }
            if z > EPS {
                entering = Some(c); // Bland: smallest improving index
                break;
            }
        }
        let Some(c) = entering else {
            return true; // optimal
        };
        let mut leaving: Option<(usize, f64)> = None;
        for r in 0..n_rows {
            if t[r][c] > EPS {
                let ratio = rhs[r] / t[r][c];
                let better = match leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - EPS || (ratio < lratio + EPS && basis[r] < basis[lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leaving else {
            return false; // unbounded direction
        };
        pivot(t, rhs, basis, r, c);
    }
}

fn pivot(t: &mut [Vec<f64>], rhs: &mut [f64], basis: &mut [usize], r: usize, c: usize) {
    let p = t[r][c];
    for v in t[r].iter_mut() {
        *v /= p;
    }
    rhs[r] /= p;
    for rr in 0..t.len() {
        if rr == r {
            continue;
        }
        let f = t[rr][c];
        if f != 0.0 {
            for j in 0..t[rr].len() {
                t[rr][j] -= f * t[r][j];
            }
            rhs[rr] -= f * rhs[r];
        }
    }
    basis[r] = c;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{LinearProgram, Relation};
    use approx::assert_abs_diff_eq;

    #[test]
    fn reference_simplex_solves_a_textbook_instance() {
        // maximize 3x + 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18, x,y ≥ 0 → 36
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![3.0, 5.0]);
        lp.add_constraint(vec![(0, 1.0)], Relation::Le, 4.0);
        lp.add_constraint(vec![(1, 2.0)], Relation::Le, 12.0);
        lp.add_constraint(vec![(0, 3.0), (1, 2.0)], Relation::Le, 18.0);
        lp.set_bounds(0, 0.0, f64::INFINITY);
        lp.set_bounds(1, 0.0, f64::INFINITY);
        let r = solve_reference(&lp);
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(r.value, 36.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.x[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.x[1], 6.0, epsilon = 1e-9);
    }

    #[test]
    fn reference_simplex_detects_infeasibility_and_unboundedness() {
        let mut lp = LinearProgram::new(1);
        lp.set_objective(vec![1.0]);
        lp.add_constraint(vec![(0, 1.0)], Relation::Le, -2.0);
        lp.set_bounds(0, 0.0, f64::INFINITY);
        assert_eq!(solve_reference(&lp).status, SolveStatus::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.set_objective(vec![1.0]);
        lp.set_bounds(0, 0.0, f64::INFINITY);
        assert_eq!(solve_reference(&lp).status, SolveStatus::Unbounded);
    }

    #[test]
    fn reference_simplex_handles_equalities_and_free_variables() {
        // maximize x + y s.t. x + y = 1, x - y ≤ 0.5 (x, y free) → 1
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![1.0, 1.0]);
        lp.add_constraint(vec![(0, 1.0), (1, 1.0)], Relation::Eq, 1.0);
        lp.add_constraint(vec![(0, 1.0), (1, -1.0)], Relation::Le, 0.5);
        let r = solve_reference(&lp);
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-9);
    }
}
