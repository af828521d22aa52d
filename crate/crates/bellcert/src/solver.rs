//! Backend-agnostic linear and semidefinite programming.
//!
//! Every optimization in this crate — vertex separation, convex
//! decomposition, nonsignalling maximization, moment-matrix relaxations —
//! goes through the two problem types here, so the rest of the code never
//! touches solver-specific data structures. The single backend is Clarabel,
//! an interior-point conic solver; problems are translated into its
//! `min ½xᵀPx + qᵀx  s.t.  Ax + s = b, s ∈ K` form with zero, nonnegative,
//! and PSD-triangle cones.
//!
//! Conventions:
//! * Both problem types **maximize** their objective; the sign flip happens
//!   once, here.
//! * Symmetric matrices cross the PSD cone in scaled upper-triangle
//!   column-major layout ("svec"): entry `(i, j)` with `i ≤ j` sits at index
//!   `j(j+1)/2 + i`, off-diagonal entries multiplied by √2 so that inner
//!   products are preserved.

use crate::error::{Error, Result};
use crate::tolerances;
use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettingsBuilder, DefaultSolver, IPSolver, SolverStatus,
    SupportedConeT::{self, NonnegativeConeT, PSDTriangleConeT, ZeroConeT},
};

/// Outcome classification of a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    NumericalFailure,
}

/// Result of a solve, in maximize sense.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// Objective value when `status == Optimal` (maximize sense), NaN otherwise.
    pub value: f64,
    /// Primal solution (empty unless `Optimal`).
    pub x: Vec<f64>,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: u32,
}

/// Constraint sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// A linear program `maximize c·x` over sparse constraint rows and per-variable
/// bounds (`±f64::INFINITY` for unbounded sides).
#[derive(Debug, Clone)]
pub struct LinearProgram {
    n_vars: usize,
    objective: Vec<f64>,
    rows: Vec<(Vec<(usize, f64)>, Relation, f64)>,
    bounds: Vec<(f64, f64)>,
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram {
            n_vars,
            objective: vec![0.0; n_vars],
            rows: Vec::new(),
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY); n_vars],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Sets the (maximize) objective vector.
    pub fn set_objective(&mut self, c: Vec<f64>) {
        assert_eq!(c.len(), self.n_vars, "objective length mismatch");
        self.objective = c;
    }

    pub fn set_objective_coeff(&mut self, var: usize, c: f64) {
        self.objective[var] = c;
    }

    /// Adds a sparse constraint row `Σ coeff·x rel rhs`.
    pub fn add_constraint(&mut self, coeffs: Vec<(usize, f64)>, rel: Relation, rhs: f64) {
        debug_assert!(coeffs.iter().all(|&(j, _)| j < self.n_vars));
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) {
        self.bounds[var] = (lo, hi);
    }

    pub fn objective_dense(&self) -> &[f64] {
        &self.objective
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &(Vec<(usize, f64)>, Relation, f64)> {
        self.rows.iter()
    }

    pub fn bounds_iter(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Solves the program. `Optimal` reports the maximum; infeasibility and
    /// unboundedness are classified faithfully.
    pub fn solve(&self) -> Result<SolveReport> {
        // Assemble rows in cone order: equalities first (zero cone), then all
        // inequalities normalized to `a·x ≤ rhs` (nonnegative slack cone),
        // with finite bounds appended as inequality rows.
        let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
        let mut b: Vec<f64> = Vec::new();
        let mut row_idx = 0usize;

        for (coeffs, rel, rhs) in self.rows.iter().filter(|(_, rel, _)| *rel == Relation::Eq) {
            debug_assert_eq!(*rel, Relation::Eq);
            for &(j, a) in coeffs {
                triplets.push((row_idx, j, a));
            }
            b.push(*rhs);
            row_idx += 1;
        }
        let n_eq = row_idx;

        for (coeffs, rel, rhs) in &self.rows {
            let sign = match rel {
                Relation::Le => 1.0,
                Relation::Ge => -1.0,
                Relation::Eq => continue,
            };
            for &(j, a) in coeffs {
                triplets.push((row_idx, j, sign * a));
            }
            b.push(sign * rhs);
            row_idx += 1;
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if hi.is_finite() {
                triplets.push((row_idx, j, 1.0));
                b.push(hi);
                row_idx += 1;
            }
            if lo.is_finite() {
                triplets.push((row_idx, j, -1.0));
                b.push(-lo);
                row_idx += 1;
            }
        }
        let n_ineq = row_idx - n_eq;

        let a = csc_from_triplets(row_idx, self.n_vars, triplets);
        let p = csc_zero(self.n_vars);
        let q: Vec<f64> = self.objective.iter().map(|c| -c).collect();
        let mut cones: Vec<SupportedConeT<f64>> = Vec::new();
        if n_eq > 0 {
            cones.push(ZeroConeT(n_eq));
        }
        if n_ineq > 0 {
            cones.push(NonnegativeConeT(n_ineq));
        }
        run_clarabel(&p, &q, &a, &b, &cones)
    }
}

/// A semidefinite program over one symmetric `dim × dim` matrix variable `M`
/// and `n_vars` scalar variables `x`.
///
/// Every upper-triangle entry of `M` must be declared as an affine expression
/// `constant + Σ coeff·x_v`; sharing a variable between entries expresses
/// equality constraints, and using a variable in several entries with
/// different coefficients expresses general affine couplings (such as the
/// feasibility margin `M - t·I ⪰ 0`). The objective `c₀ + Σ c_v x_v` is
/// maximized subject to `M ⪰ 0` and any linear side constraints added with
/// [`SemidefiniteProgram::add_inequality`].
#[derive(Debug, Clone)]
pub struct SemidefiniteProgram {
    dim: usize,
    n_vars: usize,
    // upper triangle, svec-indexed: (constant, linear terms)
    entries: Vec<Option<(f64, Vec<(usize, f64)>)>>,
    // Σ coeff·x_v ≤ rhs rows, enforced through a nonnegative cone
    inequalities: Vec<(Vec<(usize, f64)>, f64)>,
    objective: Vec<f64>,
    objective_constant: f64,
}

impl SemidefiniteProgram {
    pub fn new(dim: usize, n_vars: usize) -> Self {
        SemidefiniteProgram {
            dim,
            n_vars,
            entries: vec![None; dim * (dim + 1) / 2],
            inequalities: Vec::new(),
            objective: vec![0.0; n_vars],
            objective_constant: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Declares entry `(r, c)` (order irrelevant; the matrix is symmetric)
    /// as `constant + Σ coeff·x_v`.
    pub fn set_entry(&mut self, r: usize, c: usize, constant: f64, terms: &[(usize, f64)]) {
        let (i, j) = if r <= c { (r, c) } else { (c, r) };
        debug_assert!(j < self.dim);
        debug_assert!(terms.iter().all(|&(v, _)| v < self.n_vars));
        self.entries[svec_index(i, j)] = Some((constant, terms.to_vec()));
    }

    /// Adds the linear side constraint `Σ coeff·x_v ≤ rhs`.
    pub fn add_inequality(&mut self, terms: &[(usize, f64)], rhs: f64) {
        debug_assert!(terms.iter().all(|&(v, _)| v < self.n_vars));
        self.inequalities.push((terms.to_vec(), rhs));
    }

    /// Constrains `lo ≤ x_v ≤ hi` through a pair of inequality rows.
    pub fn set_variable_range(&mut self, var: usize, lo: f64, hi: f64) {
        self.add_inequality(&[(var, -1.0)], -lo);
        self.add_inequality(&[(var, 1.0)], hi);
    }

    /// Sets the maximize objective over the scalar variables.
    pub fn set_objective(&mut self, c: Vec<f64>, constant: f64) {
        assert_eq!(c.len(), self.n_vars, "objective length mismatch");
        self.objective = c;
        self.objective_constant = constant;
    }

    /// Solves the program. On `Optimal`, also returns the dense matrix `M`
    /// reconstructed from the solution.
    pub fn solve(&self) -> Result<(SolveReport, Vec<f64>)> {
        let n_ineq = self.inequalities.len();
        let svec_len = self.dim * (self.dim + 1) / 2;
        let mut b = vec![0.0; n_ineq + svec_len];
        let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
        // slack of row r is rhs - Σ coeff·x, required nonnegative
        for (r, (terms, rhs)) in self.inequalities.iter().enumerate() {
            b[r] = *rhs;
            for &(v, coeff) in terms {
                triplets.push((r, v, coeff));
            }
        }
        for j in 0..self.dim {
            for i in 0..=j {
                let idx = svec_index(i, j);
                let Some((constant, terms)) = &self.entries[idx] else {
                    return Err(Error::InvalidInput(format!(
                        "SDP entry ({i}, {j}) was never declared"
                    )));
                };
                let scale = if i == j { 1.0 } else { std::f64::consts::SQRT_2 };
                b[n_ineq + idx] = scale * constant;
                for &(v, coeff) in terms {
                    triplets.push((n_ineq + idx, v, -scale * coeff));
                }
            }
        }
        let a = csc_from_triplets(n_ineq + svec_len, self.n_vars, triplets);
        let p = csc_zero(self.n_vars);
        let q: Vec<f64> = self.objective.iter().map(|c| -c).collect();
        let mut cones = Vec::new();
        if n_ineq > 0 {
            cones.push(NonnegativeConeT(n_ineq));
        }
        cones.push(PSDTriangleConeT(self.dim));
        let mut report = run_clarabel(&p, &q, &a, &b, &cones)?;
        let mut matrix = Vec::new();
        if report.status == SolveStatus::Optimal {
            report.value += self.objective_constant;
            matrix = self.dense_matrix(&report.x);
        }
        Ok((report, matrix))
    }

    /// Dense row-major `M(x)`.
    fn dense_matrix(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut m = vec![0.0; d * d];
        for j in 0..d {
            for i in 0..=j {
                let (constant, terms) = self.entries[svec_index(i, j)]
                    .as_ref()
                    .expect("checked in solve");
                let val = constant + terms.iter().map(|&(v, c)| c * x[v]).sum::<f64>();
                m[i * d + j] = val;
                m[j * d + i] = val;
            }
        }
        m
    }
}

/// svec position of upper-triangle entry `(i, j)`, `i ≤ j` (column-major).
pub fn svec_index(i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    j * (j + 1) / 2 + i
}

fn csc_zero(n: usize) -> CscMatrix<f64> {
    CscMatrix::new(n, n, vec![0; n + 1], vec![], vec![])
}

fn csc_from_triplets(
    nrows: usize,
    ncols: usize,
    mut triplets: Vec<(usize, usize, f64)>,
) -> CscMatrix<f64> {
    triplets.retain(|&(_, _, v)| v != 0.0);
    triplets.sort_unstable_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
    let mut colptr = Vec::with_capacity(ncols + 1);
    let mut rowval = Vec::with_capacity(triplets.len());
    let mut nzval = Vec::with_capacity(triplets.len());
    let mut t = 0usize;
    for c in 0..ncols {
        let col_start = rowval.len();
        colptr.push(col_start);
        while t < triplets.len() && triplets[t].1 == c {
            let (r, _, v) = triplets[t];
            // coalesce duplicate (row, col) pairs
            if rowval.len() > col_start && *rowval.last().unwrap() == r {
                *nzval.last_mut().unwrap() += v;
            } else {
                rowval.push(r);
                nzval.push(v);
            }
            t += 1;
        }
    }
    colptr.push(rowval.len());
    CscMatrix::new(nrows, ncols, colptr, rowval, nzval)
}

fn run_clarabel(
    p: &CscMatrix<f64>,
    q: &[f64],
    a: &CscMatrix<f64>,
    b: &[f64],
    cones: &[SupportedConeT<f64>],
) -> Result<SolveReport> {
    let settings = DefaultSettingsBuilder::default()
        .verbose(std::env::var_os("BELLCERT_SOLVER_VERBOSE").is_some())
        .tol_feas(tolerances::SOLVER_FEASIBILITY)
        // "auto" keeps QDLDL for sparse KKT systems (the polytope LPs) and
        // switches to faer's supernodal factorization when fill-in makes the
        // system effectively dense, as the larger moment-matrix relaxations do
        .direct_solve_method("auto".into())
        .build()
        .map_err(|e| Error::SolverFailure(format!("settings: {e}")))?;
    let mut solver = DefaultSolver::new(p, &q.to_vec(), a, &b.to_vec(), cones, settings)
        .map_err(|e| Error::SolverFailure(format!("problem assembly: {e:?}")))?;
    solver.solve();
    let status = match solver.solution.status {
        SolverStatus::Solved | SolverStatus::AlmostSolved => SolveStatus::Optimal,
        SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => {
            SolveStatus::Infeasible
        }
        SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => SolveStatus::Unbounded,
        _ => SolveStatus::NumericalFailure,
    };
    Ok(SolveReport {
        status,
        value: if status == SolveStatus::Optimal {
            -solver.solution.obj_val
        } else {
            f64::NAN
        },
        x: if status == SolveStatus::Optimal {
            solver.solution.x.clone()
        } else {
            Vec::new()
        },
        primal_residual: solver.info.res_primal,
        dual_residual: solver.info.res_dual,
        iterations: solver.info.iterations,
    })
}
