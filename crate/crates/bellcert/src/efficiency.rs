//! Critical detection efficiencies and certified lower bounds on them.
//!
//! Two routes to a threshold live here. The closed forms
//! ([`eta_crit_symmetric`], [`eta_crit_one_sided`]) answer "at which
//! efficiency does *this particular* behavior stop violating?" — they follow
//! from the scaling adjoint: degrading a behavior by detector efficiencies
//! `(ηA, ηB)` changes the inequality value exactly as if the coefficients had
//! been scaled instead ([`scaled_inequality`]), so the value is a polynomial
//! in η whose root is explicit.
//!
//! The bisection route ([`bound_via_bisection`], [`certify_from_observation`])
//! answers the device-independent question: given that *some* behavior of a
//! model class produced the observed value, how efficient must the detectors
//! have been? At a trial efficiency η the oracle maximizes the η-scaled
//! inequality over the whole class; if even the class maximum falls short of
//! the observed value, detectors at efficiency η could not have produced the
//! data, so the true efficiency lies above η. Every class handled here is
//! closed under detection losses — the degraded behavior is the convex
//! mixture `ηAηB·P + ηA(1-ηB)·(pA,0,0) + (1-ηA)ηB·(0,pB,0) + …·0`, and the
//! one-party restrictions are classical, hence members of every class — so
//! the oracle value is nondecreasing in η and bisection is sound.

use crate::error::{Error, Result};
use crate::npa::{
    nonsignalling_max_value, nonsignalling_max_with_behavior, npa_max_value,
    npa_max_with_behavior, NpaLevel,
};
use crate::scenario::{
    max_vertex_value, validate_inequality, vertex_dot, vertex_flat, BehaviorVector, BellInequality,
};
use crate::separation::{find_violated_inequality, SeparationStatus};
use crate::tolerances;

/// Behavior families the bisection oracle can range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelClass {
    /// Mixtures of local deterministic strategies; maximized exactly by
    /// vertex enumeration.
    Classical,
    /// Nonsignalling behaviors (the level-0 linear relaxation).
    Nonsignalling,
    /// Behaviors admitting a moment certificate at the given hierarchy level.
    QuantumNpa(NpaLevel),
}

impl std::fmt::Display for ModelClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelClass::Classical => write!(f, "classical"),
            ModelClass::Nonsignalling => write!(f, "nonsignalling"),
            ModelClass::QuantumNpa(level) => write!(f, "npa-{level}"),
        }
    }
}

/// Which detector efficiencies the bisection varies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BisectionMode {
    /// Both detectors share the bisected efficiency.
    Symmetric,
    /// One detector is trusted at `known_eta`; the other side's efficiency is
    /// bisected. The known detector sits on Bob's side — transpose the
    /// inequality to swap parties.
    OneSided { known_eta: f64 },
}

/// A certified lower bound on detection efficiency.
#[derive(Debug, Clone)]
pub struct EfficiencyBound {
    /// Lower end of the final bisection bracket. The oracle is infeasible
    /// here, so the true efficiency provably lies above.
    pub eta_lower: f64,
    pub model_class: ModelClass,
    /// Final bracket width.
    pub tolerance: f64,
    /// The observed value the oracle had to beat, when the bound was anchored
    /// to one (`None` for plain violation thresholds, i.e. required value 0).
    pub used_quantum_value: Option<f64>,
}

/// One sample of the bound-versus-known-detector trade-off.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub known_eta: f64,
    /// Certified lower bound on the unknown detector's efficiency.
    pub bound: f64,
    /// Required value the oracle had to beat.
    pub q: f64,
}

/// The inequality whose value on a behavior equals the value of `ineq` on the
/// efficiency-degraded behavior: singles coefficients scale by their party's
/// efficiency, joint coefficients by the product.
pub fn scaled_inequality(ineq: &BellInequality, eta_a: f64, eta_b: f64) -> BellInequality {
    let s = ineq.scenario();
    let h_a = ineq.h_a().iter().map(|h| eta_a * h).collect();
    let h_b = ineq.h_b().iter().map(|h| eta_b * h).collect();
    let h_ab = (0..s.n())
        .map(|i| (0..s.m()).map(|j| eta_a * eta_b * ineq.h_ab(i, j)).collect())
        .collect();
    BellInequality::new(s, h_a, h_b, h_ab).expect("scaling preserves shape and finiteness")
}

/// The three inner products `(Σ hA·pA, Σ hB·pB, Σ hAB·pAB)` the thresholds
/// are built from.
fn weighted_parts(ineq: &BellInequality, behavior: &BehaviorVector) -> Result<(f64, f64, f64)> {
    let s = ineq.scenario();
    if s != behavior.scenario() {
        return Err(Error::DimensionMismatch(format!(
            "inequality is over a {}×{} scenario, behavior over {}×{}",
            s.n(),
            s.m(),
            behavior.scenario().n(),
            behavior.scenario().m()
        )));
    }
    let sa = ineq
        .h_a()
        .iter()
        .zip(behavior.p_a())
        .map(|(h, p)| h * p)
        .sum();
    let sb = ineq
        .h_b()
        .iter()
        .zip(behavior.p_b())
        .map(|(h, p)| h * p)
        .sum();
    let mut joint = 0.0;
    for i in 0..s.n() {
        for j in 0..s.m() {
            joint += ineq.h_ab(i, j) * behavior.p_ab(i, j);
        }
    }
    Ok((sa, sb, joint))
}

fn threshold_from_ratio(numerator: f64, denominator: f64, what: &str) -> Result<f64> {
    if denominator <= 1e-12 {
        return Err(Error::NoThreshold(format!(
            "{what}: the efficiency-quadratic part {denominator:.3e} is not positive, so no \
             scaling reaches a violation"
        )));
    }
    let eta = numerator / denominator;
    if eta > 1.0 + tolerances::GEOMETRY {
        return Err(Error::NoThreshold(format!(
            "{what}: the crossing sits at η = {eta:.6}, beyond perfect detectors"
        )));
    }
    Ok(eta.clamp(0.0, 1.0))
}

/// The symmetric efficiency at which the value of `ineq` on the degraded
/// `behavior` crosses zero: with both detectors at η the value is
/// `η·(SA+SB) + η²·J`, so the nonzero root is `-(SA+SB)/J`.
///
/// Errors with [`Error::NoThreshold`] when `J ≤ 1e-12` (the value can never
/// turn positive by scaling) or when the root exceeds 1 (the behavior does
/// not violate even with perfect detectors).
pub fn eta_crit_symmetric(ineq: &BellInequality, behavior: &BehaviorVector) -> Result<f64> {
    let (sa, sb, joint) = weighted_parts(ineq, behavior)?;
    threshold_from_ratio(-(sa + sb), joint, "symmetric threshold")
}

/// The efficiency Alice's detector needs for the degraded value to reach `q`
/// when Bob's detector is perfect: with `ηB = 1` the value is
/// `ηA·(SA+J) + SB`, so the crossing is `(q - SB)/(J + SA)`.
///
/// Same error conditions as [`eta_crit_symmetric`], with denominator
/// `J + SA`.
pub fn eta_crit_one_sided(ineq: &BellInequality, behavior: &BehaviorVector, q: f64) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::InvalidInput(format!("required value q = {q}")));
    }
    let (sa, sb, joint) = weighted_parts(ineq, behavior)?;
    threshold_from_ratio(q - sb, joint + sa, "one-sided threshold")
}

/// Maximum of `ineq` over all behaviors of `class`.
pub fn class_max_value(ineq: &BellInequality, class: ModelClass) -> Result<f64> {
    match class {
        ModelClass::Classical => max_vertex_value(ineq),
        ModelClass::Nonsignalling => nonsignalling_max_value(ineq),
        ModelClass::QuantumNpa(level) => npa_max_value(ineq, level),
    }
}

/// [`class_max_value`] together with a maximizing behavior of the class.
pub fn class_max_with_behavior(
    ineq: &BellInequality,
    class: ModelClass,
) -> Result<(f64, BehaviorVector)> {
    match class {
        ModelClass::Classical => {
            let scenario = ineq.scenario();
            let count = scenario.vertex_count()?;
            let h = ineq.flatten();
            let (mut best, mut arg) = (f64::NEG_INFINITY, 0);
            for k in 0..count {
                let value = vertex_dot(scenario, &h, k);
                if value > best {
                    (best, arg) = (value, k);
                }
            }
            let behavior = BehaviorVector::from_flat(scenario, &vertex_flat(scenario, arg))?;
            Ok((best, behavior))
        }
        ModelClass::Nonsignalling => nonsignalling_max_with_behavior(ineq),
        ModelClass::QuantumNpa(level) => npa_max_with_behavior(ineq, level),
    }
}

/// Where the value of `behavior` under the `mode`-scaled inequality reaches
/// `q`, if a crossing exists inside `(0, 1]`. Used only to place bisection
/// probes — soundness never depends on it.
fn predicted_crossing(
    ineq: &BellInequality,
    behavior: &BehaviorVector,
    mode: BisectionMode,
    q: f64,
) -> Option<f64> {
    let (sa, sb, joint) = weighted_parts(ineq, behavior).ok()?;
    let eta = match mode {
        // solve J·η² + (SA+SB)·η = q for the largest real root
        BisectionMode::Symmetric => {
            let s = sa + sb;
            if joint.abs() <= 1e-12 {
                if s.abs() <= 1e-12 {
                    return None;
                }
                q / s
            } else {
                let disc = s * s + 4.0 * joint * q;
                if disc < 0.0 {
                    return None;
                }
                let r1 = (-s + disc.sqrt()) / (2.0 * joint);
                let r2 = (-s - disc.sqrt()) / (2.0 * joint);
                r1.max(r2)
            }
        }
        // solve η·(SA + ηB·J) + ηB·SB = q
        BisectionMode::OneSided { known_eta } => {
            let den = sa + known_eta * joint;
            if den.abs() <= 1e-12 {
                return None;
            }
            (q - known_eta * sb) / den
        }
    };
    (eta.is_finite() && eta > 0.0 && eta <= 1.0).then_some(eta)
}

fn scaled_for_mode(ineq: &BellInequality, mode: BisectionMode, eta: f64) -> BellInequality {
    match mode {
        BisectionMode::Symmetric => scaled_inequality(ineq, eta, eta),
        BisectionMode::OneSided { known_eta } => scaled_inequality(ineq, eta, known_eta),
    }
}

/// Certifies a lower bound on detection efficiency by bisecting over the
/// class oracle.
///
/// At each trial η the oracle maximizes the η-scaled `ineq` over `class`; the
/// step is feasible when the maximum exceeds `required_value` (beyond the
/// value tolerance). Feasible steps shrink the bracket from above, infeasible
/// ones from below, and the returned bound is the lower bracket end, where
/// the oracle provably cannot reproduce the observation.
///
/// Errors: [`Error::NeverViolated`] when even η = 1 is infeasible (the
/// observation, or a violation at all for `required_value = 0`, is outside
/// the class and an efficiency bound would be vacuous); `InvalidInput` for a
/// classically invalid inequality, `tolerance` below the supported floor, a
/// negative `required_value`, or a known efficiency outside `(0, 1]`.
pub fn bound_via_bisection(
    ineq: &BellInequality,
    class: ModelClass,
    mode: BisectionMode,
    required_value: f64,
    tolerance: f64,
) -> Result<EfficiencyBound> {
    if !(tolerance.is_finite() && tolerance >= tolerances::BISECTION_MIN) {
        return Err(Error::InvalidInput(format!(
            "bisection tolerance {tolerance} is below the supported floor {}",
            tolerances::BISECTION_MIN
        )));
    }
    if !(required_value.is_finite() && required_value >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "required value {required_value} must be finite and nonnegative"
        )));
    }
    if let BisectionMode::OneSided { known_eta } = mode {
        if !(known_eta > 0.0 && known_eta <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "known efficiency {known_eta} must lie in (0, 1]"
            )));
        }
    }
    if !validate_inequality(ineq)? {
        return Err(Error::InvalidInput(
            "the inequality has positive value on some deterministic vertex; efficiency \
             thresholds are defined for classically valid inequalities"
                .into(),
        ));
    }
    // feasible ⟺ some behavior of the class reproduces the required value at
    // this efficiency; the maximizer is kept to predict where the crossing is
    let probe_oracle = |eta: f64| -> Result<(bool, BehaviorVector)> {
        let (value, maximizer) = class_max_with_behavior(&scaled_for_mode(ineq, mode, eta), class)?;
        Ok((value > required_value + tolerances::VALUE, maximizer))
    };
    if !probe_oracle(1.0)?.0 {
        return Err(Error::NeverViolated);
    }
    let bound = |eta_lower: f64| EfficiencyBound {
        eta_lower,
        model_class: class,
        tolerance,
        used_quantum_value: (required_value > 0.0).then_some(required_value),
    };
    // In one-sided mode the known detector alone can clear a small required
    // value even with the bisected detector dead; the honest answer is the
    // vacuous bound 0 (the bracket invariant would not survive lo = 0
    // feasible). Symmetric scaling by 0 zeroes every coefficient, so there
    // η = 0 is infeasible without asking the oracle.
    if matches!(mode, BisectionMode::OneSided { .. }) && probe_oracle(0.0)?.0 {
        return Ok(bound(0.0));
    }
    // Bracket shrinking: lo stays infeasible (or 0), hi stays feasible, and
    // every update comes from an actual oracle evaluation, so the invariant
    // of plain bisection is untouched. Probe *placement* is smarter than
    // midpoints where it pays: after a feasible solve, the maximizer's
    // predicted crossing `c` estimates the true threshold from above, so
    // probing just below `c` pins the certified bound tight against the
    // threshold instead of on a midpoint grid point, and if that probe is
    // infeasible, one more probe a tolerance higher closes the bracket.
    // Guided probes alternate with midpoints, so the worst case stays
    // logarithmic even under useless predictions.
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut guided: std::collections::VecDeque<f64> = std::collections::VecDeque::new();
    let mut allow_guided = false;
    while hi - lo > tolerance {
        let margin = 0.05 * tolerance;
        let mut probe = None;
        if allow_guided {
            while let Some(p) = guided.pop_front() {
                if lo + margin < p && p < hi - margin {
                    probe = Some(p);
                    break;
                }
            }
        }
        allow_guided = probe.is_none();
        let probe = probe.unwrap_or_else(|| 0.5 * (lo + hi));
        let (ok, maximizer) = probe_oracle(probe)?;
        if ok {
            hi = probe;
            if let Some(c) = predicted_crossing(ineq, &maximizer, mode, required_value) {
                guided.clear();
                guided.push_back(c - 0.1 * tolerance);
                guided.push_back(c + 0.9 * tolerance);
            }
        } else {
            lo = probe;
        }
    }
    Ok(bound(lo))
}

/// The device-independent pipeline: synthesize a violated inequality from the
/// observed behavior, record its observed value `Q`, and certify the
/// symmetric efficiency the model class would have needed to produce `Q`.
/// Returns the bound together with the inequality that anchors it.
///
/// Errors with [`Error::NotViolated`] when the observed behavior admits a
/// classical model — nothing can be certified from it.
pub fn certify_from_observation(
    observed: &BehaviorVector,
    class: ModelClass,
    tolerance: f64,
) -> Result<(EfficiencyBound, BellInequality)> {
    let separation = find_violated_inequality(observed)?;
    if separation.status != SeparationStatus::Violated {
        return Err(Error::NotViolated);
    }
    let ineq = separation
        .inequality
        .expect("a violated separation carries its inequality");
    let q = separation
        .quantum_value
        .expect("a violated separation carries its value");
    let bound = bound_via_bisection(&ineq, class, BisectionMode::Symmetric, q, tolerance)?;
    Ok((bound, ineq))
}

/// Sweeps the one-sided bound across known-detector efficiencies at a fixed
/// required value `q > 0`: each point certifies the unknown detector given
/// that the pair produced `q` while the known side ran at `known_eta`.
pub fn unknown_vs_known_curve(
    ineq: &BellInequality,
    known_etas: &[f64],
    q: f64,
    class: ModelClass,
    tolerance: f64,
) -> Result<Vec<CurvePoint>> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::InvalidInput(format!(
            "the known-detector curve needs a positive required value, got {q}"
        )));
    }
    known_etas
        .iter()
        .map(|&known_eta| {
            let bound = bound_via_bisection(
                ineq,
                class,
                BisectionMode::OneSided { known_eta },
                q,
                tolerance,
            )?;
            Ok(CurvePoint {
                known_eta,
                bound: bound.eta_lower,
                q,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::npa::nonsignalling_max_with_behavior;
    use crate::quantum::{apply_detection_efficiency, tsirelson_behavior, DetectionModel};
    use crate::scenario::{ch_inequality, evaluate_inequality, i6522_inequality, Scenario};
    use approx::assert_abs_diff_eq;

    #[test]
    fn ch_symmetric_threshold_at_the_tsirelson_point() {
        let eta = eta_crit_symmetric(&ch_inequality(), &tsirelson_behavior()).unwrap();
        assert_abs_diff_eq!(eta, 2.0 * (2f64.sqrt() - 1.0), epsilon = 1e-9);
    }

    #[test]
    fn scaling_adjoint_matches_degraded_behaviors() {
        let ineq = ch_inequality();
        let behavior = tsirelson_behavior();
        for (ea, eb) in [(1.0, 1.0), (0.9, 0.9), (0.8, 0.55), (0.0, 0.7)] {
            let direct = evaluate_inequality(
                &ineq,
                &apply_detection_efficiency(&behavior, DetectionModel::new(ea, eb).unwrap()),
            )
            .unwrap();
            let adjoint =
                evaluate_inequality(&scaled_inequality(&ineq, ea, eb), &behavior).unwrap();
            assert_abs_diff_eq!(direct, adjoint, epsilon = 1e-12);
        }
    }

    #[test]
    fn thresholds_are_actual_zero_crossings() {
        // at η_crit the degraded value is 0; a step above it is positive
        let cases = [
            (ch_inequality(), tsirelson_behavior()),
            (
                i6522_inequality(),
                nonsignalling_max_with_behavior(&i6522_inequality())
                    .unwrap()
                    .1,
            ),
        ];
        for (ineq, behavior) in &cases {
            let (_, _, joint) = weighted_parts(ineq, behavior).unwrap();
            assert!(joint > 0.0, "fixture must have a positive joint part");
            let eta = eta_crit_symmetric(ineq, behavior).unwrap();
            let at = |e: f64| {
                evaluate_inequality(
                    ineq,
                    &apply_detection_efficiency(behavior, DetectionModel::symmetric(e).unwrap()),
                )
                .unwrap()
            };
            assert_abs_diff_eq!(at(eta), 0.0, epsilon = 1e-9);
            if eta + 0.01 <= 1.0 {
                assert!(at(eta + 0.01) > 0.0);
            }
        }
    }

    #[test]
    fn one_sided_threshold_hits_one_exactly_when_q_is_the_perfect_value() {
        let ineq = ch_inequality();
        let behavior = tsirelson_behavior();
        let q = evaluate_inequality(&ineq, &behavior).unwrap();
        let eta = eta_crit_one_sided(&ineq, &behavior, q).unwrap();
        assert_abs_diff_eq!(eta, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn one_sided_threshold_vanishes_without_marginal_weight_on_the_known_side() {
        // with hB ≡ 0 and q = 0, the value scales linearly in ηA, so any
        // positive efficiency already violates
        let s = Scenario::new(2, 2).unwrap();
        let ineq = BellInequality::new(
            s,
            vec![-1.0, 0.0],
            vec![0.0, 0.0],
            vec![vec![1.0, 1.0], vec![1.0, -1.0]],
        )
        .unwrap();
        let eta = eta_crit_one_sided(&ineq, &tsirelson_behavior(), 0.0).unwrap();
        assert_abs_diff_eq!(eta, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn classical_behaviors_have_no_threshold() {
        let s = Scenario::new(2, 2).unwrap();
        let uniform = BehaviorVector::new(
            s,
            vec![0.5, 0.5],
            vec![0.5, 0.5],
            vec![vec![0.25, 0.25], vec![0.25, 0.25]],
        )
        .unwrap();
        // CH value here is -0.5; the crossing would need η > 1
        assert!(matches!(
            eta_crit_symmetric(&ch_inequality(), &uniform),
            Err(Error::NoThreshold(_))
        ));
    }

    #[test]
    fn mismatched_scenarios_are_rejected() {
        assert!(matches!(
            eta_crit_symmetric(&i6522_inequality(), &tsirelson_behavior()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn ch_nonsignalling_threshold_is_two_thirds() {
        // frozen from an independent LP formulation of the same bisection
        let bound = bound_via_bisection(
            &ch_inequality(),
            ModelClass::Nonsignalling,
            BisectionMode::Symmetric,
            0.0,
            1e-3,
        )
        .unwrap();
        assert_abs_diff_eq!(bound.eta_lower, 2.0 / 3.0, epsilon = 2e-3);
        assert!(bound.used_quantum_value.is_none());
    }

    #[test]
    fn ch_one_sided_nonsignalling_thresholds() {
        // frozen from an independent LP formulation: 0.5 at q = 0, 0.7 at q = 0.2
        let at_q = |q: f64| {
            bound_via_bisection(
                &ch_inequality(),
                ModelClass::Nonsignalling,
                BisectionMode::OneSided { known_eta: 1.0 },
                q,
                1e-3,
            )
            .unwrap()
            .eta_lower
        };
        assert_abs_diff_eq!(at_q(0.0), 0.5, epsilon = 2e-3);
        assert_abs_diff_eq!(at_q(0.2), 0.7, epsilon = 2e-3);
    }

    #[test]
    fn wide_inequality_nonsignalling_thresholds() {
        // frozen from an independent LP formulation: symmetric 0.6329,
        // one-sided with a perfect known detector 0.4528
        let ineq = i6522_inequality();
        let symmetric = bound_via_bisection(
            &ineq,
            ModelClass::Nonsignalling,
            BisectionMode::Symmetric,
            0.0,
            1e-3,
        )
        .unwrap();
        assert_abs_diff_eq!(symmetric.eta_lower, 0.6329, epsilon = 2e-3);
        let one_sided = bound_via_bisection(
            &ineq,
            ModelClass::Nonsignalling,
            BisectionMode::OneSided { known_eta: 1.0 },
            0.0,
            1e-3,
        )
        .unwrap();
        assert_abs_diff_eq!(one_sided.eta_lower, 0.4528, epsilon = 2e-3);
    }

    #[test]
    fn bisection_bracket_is_sound() {
        let ineq = ch_inequality();
        let tolerance = 1e-3;
        let bound = bound_via_bisection(
            &ineq,
            ModelClass::Nonsignalling,
            BisectionMode::Symmetric,
            0.0,
            tolerance,
        )
        .unwrap();
        let oracle = |eta: f64| {
            class_max_value(
                &scaled_inequality(&ineq, eta, eta),
                ModelClass::Nonsignalling,
            )
            .unwrap()
        };
        assert!(oracle(bound.eta_lower) <= tolerances::VALUE);
        assert!(oracle(bound.eta_lower + tolerance) > tolerances::VALUE);
    }

    #[test]
    fn larger_required_values_certify_more() {
        let mut previous = 0.0;
        for q in [0.0, 0.1, 0.2, 0.3] {
            let bound = bound_via_bisection(
                &ch_inequality(),
                ModelClass::Nonsignalling,
                BisectionMode::Symmetric,
                q,
                1e-3,
            )
            .unwrap()
            .eta_lower;
            assert!(
                bound >= previous - 1e-3,
                "bound at q = {q} regressed: {bound} < {previous}"
            );
            previous = bound;
        }
    }

    #[test]
    fn wider_model_classes_certify_less() {
        // nonsignalling ⊇ quantum, so its oracle is feasible earlier and the
        // certified bound is smaller
        let at = |class: ModelClass| {
            bound_via_bisection(
                &ch_inequality(),
                class,
                BisectionMode::Symmetric,
                0.0,
                1e-3,
            )
            .unwrap()
            .eta_lower
        };
        let ns = at(ModelClass::Nonsignalling);
        let npa2 = at(ModelClass::QuantumNpa(NpaLevel::Level(2)));
        assert!(ns <= npa2 + 1e-3);
        // the quantum threshold for this inequality coincides with the
        // nonsignalling one
        assert_abs_diff_eq!(npa2, 2.0 / 3.0, epsilon = 0.01);
    }

    #[test]
    fn vacuous_certificates_are_refused() {
        // a valid inequality never exceeds 0 on classical behaviors at any
        // efficiency (losses keep classical behaviors classical)
        assert!(matches!(
            bound_via_bisection(
                &ch_inequality(),
                ModelClass::Classical,
                BisectionMode::Symmetric,
                0.0,
                1e-3,
            ),
            Err(Error::NeverViolated)
        ));
        // a required value above the nonsignalling maximum 0.5 is unreachable
        assert!(matches!(
            bound_via_bisection(
                &ch_inequality(),
                ModelClass::Nonsignalling,
                BisectionMode::Symmetric,
                0.8,
                1e-3,
            ),
            Err(Error::NeverViolated)
        ));
    }

    #[test]
    fn tolerance_floor_is_enforced() {
        assert!(matches!(
            bound_via_bisection(
                &ch_inequality(),
                ModelClass::Nonsignalling,
                BisectionMode::Symmetric,
                0.0,
                1e-5,
            ),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn curve_endpoint_matches_the_closed_form_on_the_oracle_optimizer() {
        // at the crossing the oracle optimum equals q, so feeding the
        // optimizing behavior back into the one-sided closed form must
        // reproduce the bisected efficiency
        let ineq = ch_inequality();
        let q = 0.2;
        let bound = bound_via_bisection(
            &ineq,
            ModelClass::Nonsignalling,
            BisectionMode::OneSided { known_eta: 1.0 },
            q,
            1e-3,
        )
        .unwrap()
        .eta_lower;
        let scaled = scaled_inequality(&ineq, bound, 1.0);
        let (value, maximizer) = nonsignalling_max_with_behavior(&scaled).unwrap();
        assert_abs_diff_eq!(value, q, epsilon = 5e-3);
        let closed_form = eta_crit_one_sided(&ineq, &maximizer, q).unwrap();
        assert_abs_diff_eq!(closed_form, bound, epsilon = 5e-3);
    }

    #[test]
    fn curves_order_by_required_value_and_fall_with_known_efficiency() {
        let knowns = [0.75, 0.85, 0.95, 1.0];
        let curve = |q: f64| {
            unknown_vs_known_curve(
                &ch_inequality(),
                &knowns,
                q,
                ModelClass::Nonsignalling,
                1e-3,
            )
            .unwrap()
        };
        let low = curve(0.1);
        let high = curve(0.2);
        // frozen from an independent LP formulation of the q = 0.2 sweep
        for (point, expected) in high.iter().zip([0.92, 0.8065, 0.7297, 0.7]) {
            assert_abs_diff_eq!(point.bound, expected, epsilon = 3e-3);
        }
        for pair in high.windows(2) {
            assert!(pair[0].bound >= pair[1].bound - 1e-3);
        }
        for (l, h) in low.iter().zip(&high) {
            assert!(l.bound <= h.bound + 1e-3);
        }
    }

    #[test]
    fn certification_pipeline_runs_end_to_end() {
        let (bound, ineq) = certify_from_observation(
            &tsirelson_behavior(),
            ModelClass::Nonsignalling,
            1e-3,
        )
        .unwrap();
        let q = bound.used_quantum_value.expect("anchored to an observation");
        assert_abs_diff_eq!(q, (2f64.sqrt() - 1.0) / 2.0, epsilon = 1e-6);
        assert!(validate_inequality(&ineq).unwrap());
        // a positive observed value certifies strictly more than bare violation
        assert!(bound.eta_lower >= 2.0 / 3.0 - 2e-3);
        assert!(bound.eta_lower < 1.0);
    }

    #[test]
    fn certification_refuses_classical_observations() {
        let s = Scenario::new(2, 2).unwrap();
        let uniform = BehaviorVector::new(
            s,
            vec![0.5, 0.5],
            vec![0.5, 0.5],
            vec![vec![0.25, 0.25], vec![0.25, 0.25]],
        )
        .unwrap();
        assert!(matches!(
            certify_from_observation(&uniform, ModelClass::Nonsignalling, 1e-3),
            Err(Error::NotViolated)
        ));
    }
}
