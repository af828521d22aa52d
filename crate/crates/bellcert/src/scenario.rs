//! Measurement scenarios, behavior vectors, Bell inequalities with classical
//! bound zero, and the deterministic vertices of the classical correlation
//! polytope.
//!
//! A *behavior* collects the +1-outcome probabilities of a bipartite
//! experiment with `n` dichotomic settings on Alice's side and `m` on Bob's:
//! the singles `p(A_i^+)`, `p(B_j^+)` and the joints `p(A_i^+ B_j^+)`.
//! Classically admissible behaviors form the convex hull of the `2^(n+m)`
//! deterministic assignments; a Bell inequality here is a linear functional
//! `h` that is nonpositive on every such assignment, so any behavior with
//! `h·P > 0` is nonclassical. Keeping the classical bound at zero is what
//! makes the whole construction immune to unknown normalization: the
//! inequality can be evaluated on raw counts, because the total number of
//! events cancels.

use crate::error::{Error, Result};
use crate::tolerances;
use serde::{Deserialize, Serialize};

/// Hard cap on `n + m` for vertex enumeration (2^20 vertices).
pub const VERTEX_CAP_LOG2: u32 = 20;

/// A bipartite scenario with `n` dichotomic observables for Alice and `m`
/// for Bob.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scenario {
    n: usize,
    m: usize,
}

impl Scenario {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidInput(format!(
                "scenario requires at least one observable per party, got n={n}, m={m}"
            )));
        }
        Ok(Scenario { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Length of the flattened probability vector: `n + m + n*m`.
    pub fn dimension(&self) -> usize {
        self.n + self.m + self.n * self.m
    }

    /// Number of deterministic vertices, `2^(n+m)`, or an error beyond the cap.
    pub fn vertex_count(&self) -> Result<usize> {
        let settings = self.n + self.m;
        if settings > VERTEX_CAP_LOG2 as usize {
            return Err(Error::CapExceeded {
                settings,
                cap_log2: VERTEX_CAP_LOG2,
            });
        }
        Ok(1usize << settings)
    }

    /// Position of `pAB_ij` within the flattened vector (row-major over
    /// `(i, j)`, after the `n` Alice singles and `m` Bob singles).
    pub fn joint_index(&self, i: usize, j: usize) -> usize {
        self.n + self.m + i * self.m + j
    }
}

/// The vector of +1-outcome probabilities `(P_A, P_B, P_AB)`.
///
/// The flattening order is fixed once and for all as
/// `(pA_1..pA_n, pB_1..pB_m, pAB_11, pAB_12, .., pAB_1m, pAB_21, .., pAB_nm)`
/// — Alice singles, Bob singles, then joints row-major over `(i, j)`.
/// All file formats and solver interfaces use this order.
#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorVector {
    scenario: Scenario,
    p_a: Vec<f64>,
    p_b: Vec<f64>,
    p_ab: Vec<f64>, // row-major n×m
}

impl BehaviorVector {
    /// Builds a behavior, checking every entry lies in `[0, 1]` within the
    /// geometric tolerance. Entries within tolerance of the boundary (as
    /// produced by finite-sample frequencies or floating-point trace
    /// evaluation) are clamped onto it.
    pub fn new(
        scenario: Scenario,
        p_a: Vec<f64>,
        p_b: Vec<f64>,
        p_ab: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if p_a.len() != scenario.n()
            || p_b.len() != scenario.m()
            || p_ab.len() != scenario.n()
            || p_ab.iter().any(|row| row.len() != scenario.m())
        {
            return Err(Error::DimensionMismatch(format!(
                "behavior must have |pA|={}, |pB|={}, pAB {}×{}",
                scenario.n(),
                scenario.m(),
                scenario.n(),
                scenario.m()
            )));
        }
        let flat_ab: Vec<f64> = p_ab.into_iter().flatten().collect();
        for (label, entries) in [("pA", &p_a), ("pB", &p_b), ("pAB", &flat_ab)] {
            if let Some(bad) = entries
                .iter()
                .find(|&&x| !x.is_finite() || x < -tolerances::GEOMETRY || x > 1.0 + tolerances::GEOMETRY)
            {
                return Err(Error::InvalidInput(format!(
                    "{label} entry {bad} outside [0, 1]"
                )));
            }
        }
        let clamp = |v: Vec<f64>| v.into_iter().map(|x| x.clamp(0.0, 1.0)).collect();
        Ok(BehaviorVector {
            scenario,
            p_a: clamp(p_a),
            p_b: clamp(p_b),
            p_ab: clamp(flat_ab),
        })
    }

    /// Rebuilds a behavior from its flattened coordinates.
    pub fn from_flat(scenario: Scenario, flat: &[f64]) -> Result<Self> {
        if flat.len() != scenario.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} flattened entries, got {}",
                scenario.dimension(),
                flat.len()
            )));
        }
        let (n, m) = (scenario.n(), scenario.m());
        BehaviorVector::new(
            scenario,
            flat[..n].to_vec(),
            flat[n..n + m].to_vec(),
            (0..n)
                .map(|i| flat[n + m + i * m..n + m + (i + 1) * m].to_vec())
                .collect(),
        )
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn p_a(&self) -> &[f64] {
        &self.p_a
    }

    pub fn p_b(&self) -> &[f64] {
        &self.p_b
    }

    pub fn p_ab(&self, i: usize, j: usize) -> f64 {
        self.p_ab[i * self.scenario.m() + j]
    }

    /// Joint probabilities in row-major order.
    pub fn p_ab_flat(&self) -> &[f64] {
        &self.p_ab
    }

    /// The fixed flattening `(pA, pB, pAB row-major)`.
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.scenario.dimension());
        out.extend_from_slice(&self.p_a);
        out.extend_from_slice(&self.p_b);
        out.extend_from_slice(&self.p_ab);
        out
    }

    /// Entrywise convex mixture `alpha·self + (1-alpha)·other`.
    pub fn mix(&self, other: &BehaviorVector, alpha: f64) -> Result<BehaviorVector> {
        if self.scenario != other.scenario {
            return Err(Error::DimensionMismatch(
                "cannot mix behaviors from different scenarios".into(),
            ));
        }
        let blend = |x: &[f64], y: &[f64]| -> Vec<f64> {
            x.iter()
                .zip(y)
                .map(|(a, b)| alpha * a + (1.0 - alpha) * b)
                .collect()
        };
        Ok(BehaviorVector {
            scenario: self.scenario,
            p_a: blend(&self.p_a, &other.p_a),
            p_b: blend(&self.p_b, &other.p_b),
            p_ab: blend(&self.p_ab, &other.p_ab),
        })
    }
}

/// A Bell inequality `h·P ≤ 0` in the fixed flattening order.
///
/// Inequalities synthesized by the separation program carry coefficients in
/// `[-1, 1]` (the scale constraint that keeps the program bounded);
/// user-supplied inequalities may use any finite coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BellInequality {
    scenario: Scenario,
    h_a: Vec<f64>,
    h_b: Vec<f64>,
    h_ab: Vec<f64>, // row-major n×m
}

impl BellInequality {
    pub fn new(
        scenario: Scenario,
        h_a: Vec<f64>,
        h_b: Vec<f64>,
        h_ab: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if h_a.len() != scenario.n()
            || h_b.len() != scenario.m()
            || h_ab.len() != scenario.n()
            || h_ab.iter().any(|row| row.len() != scenario.m())
        {
            return Err(Error::DimensionMismatch(format!(
                "inequality must have |hA|={}, |hB|={}, hAB {}×{}",
                scenario.n(),
                scenario.m(),
                scenario.n(),
                scenario.m()
            )));
        }
        let flat_ab: Vec<f64> = h_ab.into_iter().flatten().collect();
        if h_a
            .iter()
            .chain(&h_b)
            .chain(&flat_ab)
            .any(|x| !x.is_finite())
        {
            return Err(Error::InvalidInput(
                "inequality coefficients must be finite".into(),
            ));
        }
        Ok(BellInequality {
            scenario,
            h_a,
            h_b,
            h_ab: flat_ab,
        })
    }

    pub fn from_flat(scenario: Scenario, flat: &[f64]) -> Result<Self> {
        if flat.len() != scenario.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} flattened coefficients, got {}",
                scenario.dimension(),
                flat.len()
            )));
        }
        let (n, m) = (scenario.n(), scenario.m());
        BellInequality::new(
            scenario,
            flat[..n].to_vec(),
            flat[n..n + m].to_vec(),
            (0..n)
                .map(|i| flat[n + m + i * m..n + m + (i + 1) * m].to_vec())
                .collect(),
        )
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn h_a(&self) -> &[f64] {
        &self.h_a
    }

    pub fn h_b(&self) -> &[f64] {
        &self.h_b
    }

    pub fn h_ab(&self, i: usize, j: usize) -> f64 {
        self.h_ab[i * self.scenario.m() + j]
    }

    pub fn h_ab_flat(&self) -> &[f64] {
        &self.h_ab
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.scenario.dimension());
        out.extend_from_slice(&self.h_a);
        out.extend_from_slice(&self.h_b);
        out.extend_from_slice(&self.h_ab);
        out
    }

    /// Swaps the roles of the two parties: `h'_B = h_A`, `h'_AB = h_AB^T`.
    /// Useful to rephrase one-sided efficiency statements with the parties
    /// exchanged.
    pub fn transposed(&self) -> BellInequality {
        let (n, m) = (self.scenario.n(), self.scenario.m());
        let swapped = Scenario::new(m, n).expect("valid scenario transposes");
        let mut h_ab = vec![0.0; n * m];
        for i in 0..n {
            for j in 0..m {
                h_ab[j * n + i] = self.h_ab[i * m + j];
            }
        }
        BellInequality {
            scenario: swapped,
            h_a: self.h_b.clone(),
            h_b: self.h_a.clone(),
            h_ab,
        }
    }
}

/// Raw +1-outcome counts, with a fixed number of trials per setting pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRecord {
    scenario: Scenario,
    n_a: Vec<u64>,
    n_b: Vec<u64>,
    n_ab: Vec<u64>, // row-major n×m
    trials_per_context: u64,
}

impl CountRecord {
    pub fn new(
        scenario: Scenario,
        n_a: Vec<u64>,
        n_b: Vec<u64>,
        n_ab: Vec<Vec<u64>>,
        trials_per_context: u64,
    ) -> Result<Self> {
        if n_a.len() != scenario.n()
            || n_b.len() != scenario.m()
            || n_ab.len() != scenario.n()
            || n_ab.iter().any(|row| row.len() != scenario.m())
        {
            return Err(Error::DimensionMismatch(format!(
                "counts must have |nA|={}, |nB|={}, nAB {}×{}",
                scenario.n(),
                scenario.m(),
                scenario.n(),
                scenario.m()
            )));
        }
        let flat_ab: Vec<u64> = n_ab.into_iter().flatten().collect();
        if n_a
            .iter()
            .chain(&n_b)
            .chain(&flat_ab)
            .any(|&c| c > trials_per_context)
        {
            return Err(Error::InvalidInput(
                "a count exceeds the number of trials in its context".into(),
            ));
        }
        Ok(CountRecord {
            scenario,
            n_a,
            n_b,
            n_ab: flat_ab,
            trials_per_context,
        })
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn n_a(&self) -> &[u64] {
        &self.n_a
    }

    pub fn n_b(&self) -> &[u64] {
        &self.n_b
    }

    pub fn n_ab(&self, i: usize, j: usize) -> u64 {
        self.n_ab[i * self.scenario.m() + j]
    }

    pub fn n_ab_flat(&self) -> &[u64] {
        &self.n_ab
    }

    pub fn trials_per_context(&self) -> u64 {
        self.trials_per_context
    }
}

/// An explicit convex decomposition of a behavior into deterministic
/// vertices: nonnegative weights, summing to one, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalityCertificate {
    /// `(vertex index, weight)` pairs with strictly positive weights.
    pub weights: Vec<(usize, f64)>,
}

impl ClassicalityCertificate {
    /// Sums the weighted vertices back into a behavior.
    pub fn reconstruct(&self, scenario: Scenario) -> Result<BehaviorVector> {
        scenario.vertex_count()?;
        let d = scenario.dimension();
        let mut acc = vec![0.0; d];
        for &(k, w) in &self.weights {
            let v = vertex_flat(scenario, k);
            for (a, b) in acc.iter_mut().zip(&v) {
                *a += w * b;
            }
        }
        BehaviorVector::from_flat(scenario, &acc)
    }

    /// Checks the decomposition reproduces `behavior` entrywise within `tol`
    /// and that the weights form a probability distribution within `tol`.
    pub fn verifies(&self, behavior: &BehaviorVector, tol: f64) -> bool {
        if self.weights.iter().any(|&(_, w)| w < -tol) {
            return false;
        }
        let total: f64 = self.weights.iter().map(|&(_, w)| w).sum();
        if (total - 1.0).abs() > tol {
            return false;
        }
        match self.reconstruct(behavior.scenario()) {
            Ok(rec) => rec
                .flatten()
                .iter()
                .zip(behavior.flatten())
                .all(|(a, b)| (a - b).abs() <= tol),
            Err(_) => false,
        }
    }
}

/// Flattened coordinates of vertex `k`.
///
/// Vertex `k` is read off the binary expansion of `k` over `n + m` bits with
/// Alice's bits in the high-order block: bit `i` (from the top) is `a_i`,
/// bit `n + j` is `b_j`, and the joints follow the product rule
/// `pAB_ij = a_i·b_j` — a joint +1 outcome is certain exactly when both
/// singles are.
pub fn vertex_flat(scenario: Scenario, k: usize) -> Vec<f64> {
    let (n, m) = (scenario.n(), scenario.m());
    let bit = |t: usize| ((k >> (n + m - 1 - t)) & 1) as f64;
    let mut v = Vec::with_capacity(scenario.dimension());
    for i in 0..n {
        v.push(bit(i));
    }
    for j in 0..m {
        v.push(bit(n + j));
    }
    for i in 0..n {
        for j in 0..m {
            v.push(bit(i) * bit(n + j));
        }
    }
    v
}

/// All `2^(n+m)` deterministic vertices in ascending index order.
pub fn enumerate_vertices(scenario: Scenario) -> Result<Vec<BehaviorVector>> {
    let count = scenario.vertex_count()?;
    (0..count)
        .map(|k| BehaviorVector::from_flat(scenario, &vertex_flat(scenario, k)))
        .collect()
}

/// Converts observed counts into a behavior by dividing every entry by
/// `base_rate`.
///
/// No clamping is applied before validation: an entry exceeding 1 signals
/// that the base rate underestimates the event total and is rejected.
pub fn behavior_from_counts(counts: &CountRecord, base_rate: u64) -> Result<BehaviorVector> {
    if base_rate == 0 {
        return Err(Error::InvalidInput("base rate must be positive".into()));
    }
    let (n, m) = (counts.scenario().n(), counts.scenario().m());
    let to_prob = |label: &str, idx: String, c: u64| -> Result<f64> {
        let value = c as f64 / base_rate as f64;
        if value > 1.0 + tolerances::GEOMETRY {
            return Err(Error::InvalidBaseRate {
                entry: format!("{label}{idx}"),
                count: c,
                base_rate,
                value,
            });
        }
        Ok(value)
    };
    let p_a = (0..n)
        .map(|i| to_prob("nA", format!("[{i}]"), counts.n_a()[i]))
        .collect::<Result<Vec<_>>>()?;
    let p_b = (0..m)
        .map(|j| to_prob("nB", format!("[{j}]"), counts.n_b()[j]))
        .collect::<Result<Vec<_>>>()?;
    let p_ab = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| to_prob("nAB", format!("[{i}][{j}]"), counts.n_ab(i, j)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    BehaviorVector::new(counts.scenario(), p_a, p_b, p_ab)
}

/// The value `Q = h·P`. A positive value witnesses nonclassicality (for a
/// valid inequality).
pub fn evaluate_inequality(ineq: &BellInequality, behavior: &BehaviorVector) -> Result<f64> {
    if ineq.scenario() != behavior.scenario() {
        return Err(Error::DimensionMismatch(format!(
            "inequality is for ({}, {}), behavior for ({}, {})",
            ineq.scenario().n(),
            ineq.scenario().m(),
            behavior.scenario().n(),
            behavior.scenario().m()
        )));
    }
    let dot = |x: &[f64], y: &[f64]| -> f64 { x.iter().zip(y).map(|(a, b)| a * b).sum() };
    Ok(dot(ineq.h_a(), behavior.p_a())
        + dot(ineq.h_b(), behavior.p_b())
        + dot(ineq.h_ab_flat(), behavior.p_ab_flat()))
}

/// Largest value of `h·v` over all deterministic vertices. Nonpositive for a
/// valid inequality.
pub fn max_vertex_value(ineq: &BellInequality) -> Result<f64> {
    let count = ineq.scenario().vertex_count()?;
    let h = ineq.flatten();
    let scenario = ineq.scenario();
    let mut best = f64::NEG_INFINITY;
    for k in 0..count {
        best = best.max(vertex_dot(scenario, &h, k));
    }
    Ok(best)
}

/// `h·v_k` without materializing the vertex.
pub(crate) fn vertex_dot(scenario: Scenario, h_flat: &[f64], k: usize) -> f64 {
    let (n, m) = (scenario.n(), scenario.m());
    let bit = |t: usize| (k >> (n + m - 1 - t)) & 1;
    let mut acc = 0.0;
    for i in 0..n {
        if bit(i) == 1 {
            acc += h_flat[i];
            for j in 0..m {
                if bit(n + j) == 1 {
                    acc += h_flat[n + m + i * m + j];
                }
            }
        }
    }
    for j in 0..m {
        if bit(n + j) == 1 {
            acc += h_flat[n + j];
        }
    }
    acc
}

/// True iff `h·v ≤ tol` on every vertex, i.e. the functional really is a
/// Bell inequality with classical bound zero. Checked by direct enumeration,
/// independently of any solver.
pub fn validate_inequality(ineq: &BellInequality) -> Result<bool> {
    Ok(max_vertex_value(ineq)? <= tolerances::GEOMETRY)
}

/// The Clauser–Horne inequality for the 2×2 scenario:
/// `hA = (-1, 0)`, `hB = (-1, 0)`, `hAB = ((1, 1), (1, -1))`, bound 0.
pub fn ch_inequality() -> BellInequality {
    let scenario = Scenario::new(2, 2).expect("2×2 is valid");
    BellInequality::new(
        scenario,
        vec![-1.0, 0.0],
        vec![-1.0, 0.0],
        vec![vec![1.0, 1.0], vec![1.0, -1.0]],
    )
    .expect("CH coefficients are well-formed")
}

/// A 6×5 inequality with integer coefficients and strong detection-efficiency
/// thresholds, used throughout the test and reproduction suites as the
/// standard wide-scenario workload.
///
/// Unlike LP-synthesized inequalities its coefficients are not confined to
/// `[-1, 1]`; the zero classical bound is all that matters.
pub fn i6522_inequality() -> BellInequality {
    let scenario = Scenario::new(6, 5).expect("6×5 is valid");
    let rows: [[f64; 5]; 6] = [
        [6.0, 0.0, 2.0, 2.0, -2.0],
        [-6.0, 6.0, 6.0, 2.0, 4.0],
        [0.0, 3.0, -2.0, 5.0, 5.0],
        [0.0, -3.0, -2.0, 6.0, 6.0],
        [6.0, 6.0, 0.0, -6.0, 6.0],
        [-2.0, 0.0, 4.0, 4.0, -6.0],
    ];
    BellInequality::new(
        scenario,
        vec![-4.0, -6.0, -6.0, -4.0, -6.0, 0.0],
        vec![-2.0, -6.0, -4.0, -6.0, -6.0],
        rows.iter().map(|r| r.to_vec()).collect(),
    )
    .expect("coefficients are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn scenario_dimension_counts_singles_and_joints() {
        let s = Scenario::new(2, 2).unwrap();
        assert_eq!(s.dimension(), 8);
        assert_eq!(Scenario::new(6, 5).unwrap().dimension(), 41);
        assert!(Scenario::new(0, 1).is_err());
    }

    #[test]
    fn vertex_enumeration_of_smallest_scenario_lists_all_assignments() {
        let s = Scenario::new(1, 1).unwrap();
        let verts = enumerate_vertices(s).unwrap();
        let flat: Vec<Vec<f64>> = verts.iter().map(|v| v.flatten()).collect();
        assert_eq!(
            flat,
            vec![
                vec![0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![1.0, 0.0, 0.0],
                vec![1.0, 1.0, 1.0],
            ]
        );
    }

    #[test]
    fn vertex_count_and_product_rule() {
        let s = Scenario::new(2, 2).unwrap();
        let verts = enumerate_vertices(s).unwrap();
        assert_eq!(verts.len(), 16);
        // all-ones assignment is the last vertex
        assert_eq!(verts[15].flatten(), vec![1.0; 8]);
        // a = (1,0), b = (0,1) → k = 0b1001 = 9
        assert_eq!(
            verts[9].flatten(),
            vec![1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0]
        );
        for v in &verts {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(v.p_ab(i, j), v.p_a()[i] * v.p_b()[j]);
                }
            }
        }
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let s = Scenario::new(15, 6).unwrap();
        assert!(matches!(
            enumerate_vertices(s),
            Err(Error::CapExceeded { settings: 21, .. })
        ));
    }

    #[test]
    fn counts_divide_by_base_rate() {
        let s = Scenario::new(1, 1).unwrap();
        let counts = CountRecord::new(s, vec![50], vec![50], vec![vec![25]], 100).unwrap();
        let b = behavior_from_counts(&counts, 100).unwrap();
        assert_eq!(b.flatten(), vec![0.5, 0.5, 0.25]);

        let zero = CountRecord::new(s, vec![0], vec![0], vec![vec![0]], 100).unwrap();
        assert_eq!(
            behavior_from_counts(&zero, 100).unwrap().flatten(),
            vec![0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn underestimated_base_rate_is_rejected() {
        let s = Scenario::new(1, 1).unwrap();
        let counts = CountRecord::new(s, vec![150], vec![100], vec![vec![150]], 200).unwrap();
        assert!(matches!(
            behavior_from_counts(&counts, 100),
            Err(Error::InvalidBaseRate { .. })
        ));
    }

    #[test]
    fn count_scaling_leaves_behavior_unchanged() {
        let s = Scenario::new(2, 1).unwrap();
        for k in 1..=5u64 {
            let counts =
                CountRecord::new(s, vec![30, 40], vec![50], vec![vec![20], vec![10]], 100).unwrap();
            let scaled = CountRecord::new(
                s,
                vec![30 * k, 40 * k],
                vec![50 * k],
                vec![vec![20 * k], vec![10 * k]],
                100 * k,
            )
            .unwrap();
            assert_eq!(
                behavior_from_counts(&counts, 100).unwrap(),
                behavior_from_counts(&scaled, 100 * k).unwrap()
            );
        }
    }

    #[test]
    fn ch_on_uniform_behavior_is_minus_half() {
        let s = Scenario::new(2, 2).unwrap();
        let uniform = BehaviorVector::new(
            s,
            vec![0.5, 0.5],
            vec![0.5, 0.5],
            vec![vec![0.25, 0.25], vec![0.25, 0.25]],
        )
        .unwrap();
        let q = evaluate_inequality(&ch_inequality(), &uniform).unwrap();
        assert_abs_diff_eq!(q, -0.5, epsilon = 1e-12);
    }

    #[test]
    fn any_inequality_vanishes_on_zero_behavior() {
        let s = Scenario::new(2, 2).unwrap();
        let zero = BehaviorVector::from_flat(s, &vec![0.0; 8]).unwrap();
        assert_eq!(evaluate_inequality(&ch_inequality(), &zero).unwrap(), 0.0);
    }

    #[test]
    fn ch_flattening_matches_documented_vector() {
        assert_eq!(
            ch_inequality().flatten(),
            vec![-1.0, 0.0, -1.0, 0.0, 1.0, 1.0, 1.0, -1.0]
        );
    }

    #[test]
    fn ch_is_valid_and_touches_the_polytope() {
        let ch = ch_inequality();
        assert!(validate_inequality(&ch).unwrap());
        // evaluated on two specific vertices (hand computation)
        let s = ch.scenario();
        let all_ones = BehaviorVector::from_flat(s, &vertex_flat(s, 0b1111)).unwrap();
        assert_eq!(evaluate_inequality(&ch, &all_ones).unwrap(), 0.0);
        let v = BehaviorVector::from_flat(s, &vertex_flat(s, 0b1010)).unwrap();
        assert_eq!(evaluate_inequality(&ch, &v).unwrap(), -1.0);
    }

    #[test]
    fn wide_inequality_is_valid_with_the_documented_coefficients() {
        let ineq = i6522_inequality();
        assert_eq!(ineq.scenario().n(), 6);
        assert_eq!(ineq.scenario().m(), 5);
        assert_eq!(ineq.h_a(), &[-4.0, -6.0, -6.0, -4.0, -6.0, 0.0]);
        assert_eq!(ineq.h_b(), &[-2.0, -6.0, -4.0, -6.0, -6.0]);
        let fifth_row: Vec<f64> = (0..5).map(|j| ineq.h_ab(4, j)).collect();
        assert_eq!(fifth_row, vec![6.0, 6.0, 0.0, -6.0, 6.0]);
        // nonpositive on all 2^11 deterministic vertices
        assert!(validate_inequality(&ineq).unwrap());
        assert_eq!(max_vertex_value(&ineq).unwrap(), 0.0);
    }

    #[test]
    fn invalid_functional_is_detected() {
        let s = Scenario::new(1, 1).unwrap();
        let bad = BellInequality::new(s, vec![1.0], vec![0.0], vec![vec![0.0]]).unwrap();
        assert!(!validate_inequality(&bad).unwrap());
        let zero = BellInequality::new(s, vec![0.0], vec![0.0], vec![vec![0.0]]).unwrap();
        assert!(validate_inequality(&zero).unwrap());
    }

    #[test]
    fn evaluation_is_linear_in_the_behavior() {
        let s = Scenario::new(2, 2).unwrap();
        let ch = ch_inequality();
        let p1 = BehaviorVector::from_flat(s, &[0.3, 0.7, 0.2, 0.9, 0.1, 0.25, 0.15, 0.6]).unwrap();
        let p2 = BehaviorVector::from_flat(s, &[0.5, 0.5, 0.5, 0.5, 0.25, 0.3, 0.2, 0.45]).unwrap();
        for alpha in [0.0, 0.25, 0.5, 0.8, 1.0] {
            let mixed = p1.mix(&p2, alpha).unwrap();
            let lhs = evaluate_inequality(&ch, &mixed).unwrap();
            let rhs = alpha * evaluate_inequality(&ch, &p1).unwrap()
                + (1.0 - alpha) * evaluate_inequality(&ch, &p2).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
        }
    }

    #[test]
    fn certificate_reconstruction_roundtrip() {
        let s = Scenario::new(2, 2).unwrap();
        let cert = ClassicalityCertificate {
            weights: vec![(0, 0.25), (0b1111, 0.25), (0b1010, 0.5)],
        };
        let b = cert.reconstruct(s).unwrap();
        assert!(cert.verifies(&b, 1e-12));
        // perturbed behavior must fail verification
        let mut flat = b.flatten();
        flat[0] += 1e-3;
        let b2 = BehaviorVector::from_flat(s, &flat).unwrap();
        assert!(!cert.verifies(&b2, 1e-7));
    }

    #[test]
    fn transpose_swaps_parties() {
        let s = Scenario::new(2, 1).unwrap();
        let ineq =
            BellInequality::new(s, vec![1.0, 2.0], vec![3.0], vec![vec![4.0], vec![5.0]]).unwrap();
        let t = ineq.transposed();
        assert_eq!(t.scenario().n(), 1);
        assert_eq!(t.scenario().m(), 2);
        assert_eq!(t.h_a(), &[3.0]);
        assert_eq!(t.h_b(), &[1.0, 2.0]);
        assert_eq!(t.h_ab(0, 0), 4.0);
        assert_eq!(t.h_ab(0, 1), 5.0);
        assert_eq!(t.transposed(), ineq);
    }
}
