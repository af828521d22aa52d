//! Bundled reproduction cases: each one re-derives a headline number or a
//! qualitative shape from the methods in this crate and reports PASS/FAIL
//! against a frozen expectation.
//!
//! Expectations carry a provenance tag: `analytic` for exactly known values,
//! `reference` for values frozen from independent computations of the same
//! quantity, and `statistical` for windows around the mean of a seeded trial
//! ensemble (trial counts are sized for desk hardware, with windows widened
//! accordingly).

use crate::efficiency::{
    bound_via_bisection, certify_from_observation, unknown_vs_known_curve, BisectionMode,
    CurvePoint, ModelClass,
};
use crate::error::{Error, Result};
use crate::npa::{npa_max_value, NpaLevel};
use crate::quantum::{
    apply_detection_efficiency, maximally_entangled_state, quantum_behavior, random_directions,
    DetectionModel, TwoQubitState,
};
use crate::scenario::{ch_inequality, i6522_inequality};
use crate::separation::{find_violated_inequality, SeparationStatus};
use crate::tolerances;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use std::time::Instant;

/// All case names, in the order they are listed to users.
pub const CASE_NAMES: [&str; 8] = [
    "ch-eta",
    "i6522-q2",
    "i6522-eta",
    "i6522-onesided",
    "random-success",
    "eta-recon-quantum",
    "eta-recon-ns",
    "known-detector-curve",
];

/// Machine-readable outcome of one reproduction case.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub pass: bool,
    /// What this run measured (shape is case-specific).
    pub observed: serde_json::Value,
    /// Human-readable statement of the acceptance window.
    pub expected: String,
    /// `analytic`, `reference`, or `statistical`.
    pub provenance: &'static str,
    #[serde(rename = "elapsedSeconds")]
    pub elapsed_seconds: f64,
    /// Curve points for cases that emit a CSV artifact.
    #[serde(skip)]
    pub curve: Option<Vec<CurvePoint>>,
}

/// Default base seed for the trial-ensemble cases. Any seed gives a valid
/// ensemble; this one is fixed so the shipped numbers are reproducible.
pub const DEFAULT_ENSEMBLE_SEED: u64 = 11;

const RANDOM_SUCCESS_TRIALS: u64 = 10_000;
const RECONSTRUCTION_TRIALS: u64 = 100;
const RECONSTRUCTION_MAX_ATTEMPTS: u64 = 256;

/// Runs one case by name. `seed` overrides the ensemble seed, `level` the
/// case's hierarchy level, `tolerance` the bisection width.
pub fn run_case(
    name: &str,
    seed: Option<u64>,
    level: Option<NpaLevel>,
    tolerance: Option<f64>,
) -> Result<CaseReport> {
    let seed = seed.unwrap_or(DEFAULT_ENSEMBLE_SEED);
    let level = level.unwrap_or(NpaLevel::Level(2));
    let tolerance = tolerance.unwrap_or(tolerances::BISECTION_DEFAULT);
    let started = Instant::now();
    let mut report = match name {
        "ch-eta" => ch_eta(tolerance),
        "i6522-q2" => i6522_q2(level),
        "i6522-eta" => i6522_eta(level, tolerance),
        "i6522-onesided" => i6522_onesided(level, tolerance),
        "random-success" => random_success(seed),
        "eta-recon-quantum" => reconstruction(seed, ModelClass::QuantumNpa(level), tolerance),
        "eta-recon-ns" => reconstruction(seed, ModelClass::Nonsignalling, tolerance),
        "known-detector-curve" => known_detector_curve(tolerance),
        other => Err(Error::InvalidInput(format!(
            "unknown case {other:?}; available: {}",
            CASE_NAMES.join(", ")
        ))),
    }?;
    report.elapsed_seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

fn report(
    case: &str,
    pass: bool,
    observed: serde_json::Value,
    expected: impl Into<String>,
    provenance: &'static str,
) -> CaseReport {
    CaseReport {
        case: case.to_string(),
        pass,
        observed,
        expected: expected.into(),
        provenance,
        elapsed_seconds: 0.0,
        curve: None,
    }
}

/// Symmetric nonsignalling threshold of the CH inequality; the exact value
/// is 2/3.
fn ch_eta(tolerance: f64) -> Result<CaseReport> {
    let bound = bound_via_bisection(
        &ch_inequality(),
        ModelClass::Nonsignalling,
        BisectionMode::Symmetric,
        0.0,
        tolerance,
    )?;
    let pass = (bound.eta_lower - 2.0 / 3.0).abs() <= 0.002;
    Ok(report(
        "ch-eta",
        pass,
        json!({ "etaLower": bound.eta_lower }),
        "0.6667 ± 0.002",
        "analytic",
    ))
}

/// Level-2 maximum of the wide 6×5 inequality.
fn i6522_q2(level: NpaLevel) -> Result<CaseReport> {
    let value = npa_max_value(&i6522_inequality(), level)?;
    let pass = (value - 3.6791).abs() <= 0.005;
    Ok(report(
        "i6522-q2",
        pass,
        json!({ "value": value, "level": level.to_string() }),
        "3.6791 ± 0.005",
        "reference",
    ))
}

/// Symmetric efficiency threshold of the wide inequality under the level-2
/// relaxation.
fn i6522_eta(level: NpaLevel, tolerance: f64) -> Result<CaseReport> {
    let bound = bound_via_bisection(
        &i6522_inequality(),
        ModelClass::QuantumNpa(level),
        BisectionMode::Symmetric,
        0.0,
        tolerance,
    )?;
    let pass = bound.eta_lower > 0.86 && bound.eta_lower < 0.95;
    Ok(report(
        "i6522-eta",
        pass,
        json!({ "etaLower": bound.eta_lower, "level": level.to_string() }),
        "in (0.86, 0.95)",
        "reference",
    ))
}

/// One-sided thresholds of the wide inequality with a perfect known detector:
/// plain violation (q = 0) and anchored to an observed value of 1.971.
fn i6522_onesided(level: NpaLevel, tolerance: f64) -> Result<CaseReport> {
    let at_q = |q: f64| {
        bound_via_bisection(
            &i6522_inequality(),
            ModelClass::QuantumNpa(level),
            BisectionMode::OneSided { known_eta: 1.0 },
            q,
            tolerance,
        )
        .map(|b| b.eta_lower)
    };
    let plain = at_q(0.0)?;
    let anchored = at_q(1.971)?;
    let pass = plain > 0.751 - 0.005 && anchored > 0.886 - 0.005;
    Ok(report(
        "i6522-onesided",
        pass,
        json!({ "q0": plain, "q1.971": anchored, "level": level.to_string() }),
        "q0 > 0.746 and q1.971 > 0.881",
        "reference",
    ))
}

fn phi_plus() -> TwoQubitState {
    maximally_entangled_state()
}

/// One random-direction instance: does the ideal behavior of `n`×`m`
/// uniformly random measurements on the maximally entangled state violate
/// some inequality?
fn random_instance_violates(n: usize, m: usize, seed: u64) -> Result<bool> {
    let dirs = random_directions(n + m, seed);
    let (a_dirs, b_dirs) = dirs.split_at(n);
    let behavior = quantum_behavior(&phi_plus(), a_dirs, b_dirs)?;
    Ok(find_violated_inequality(&behavior)?.status == SeparationStatus::Violated)
}

/// Fraction of random-direction instances that violate, at 3×3 and 6×6
/// settings with unit efficiency.
fn random_success(seed: u64) -> Result<CaseReport> {
    let fraction = |n: usize, m: usize, stream: u64| -> Result<f64> {
        let hits = (0..RANDOM_SUCCESS_TRIALS)
            .into_par_iter()
            .map(|t| random_instance_violates(n, m, stream.wrapping_add(t)).map(u64::from))
            .try_reduce(|| 0u64, |acc, hit| Ok(acc + hit))?;
        Ok(hits as f64 / RANDOM_SUCCESS_TRIALS as f64)
    };
    // disjoint seed streams per scenario
    let three = fraction(3, 3, seed.wrapping_mul(1_000_003))?;
    let six = fraction(6, 6, seed.wrapping_mul(1_000_003).wrapping_add(RANDOM_SUCCESS_TRIALS))?;
    let pass = three > 0.50 && six > 0.97;
    Ok(report(
        "random-success",
        pass,
        json!({
            "three": three,
            "six": six,
            "trials": RANDOM_SUCCESS_TRIALS,
        }),
        "fraction > 0.50 at 3×3 and > 0.97 at 6×6",
        "statistical",
    ))
}

/// One reconstruction trial: redraw random 2×2 measurements on the
/// maximally entangled state, degrade them by symmetric η = 0.9, and retry
/// until the degraded behavior violates; then certify the efficiency from
/// that observation alone.
fn reconstruct_trial(base: u64, trial: u64, class: ModelClass, tolerance: f64) -> Result<f64> {
    for attempt in 0..RECONSTRUCTION_MAX_ATTEMPTS {
        let stream = base
            .wrapping_add(trial.wrapping_mul(RECONSTRUCTION_MAX_ATTEMPTS))
            .wrapping_add(attempt);
        let dirs = random_directions(4, stream);
        let (a_dirs, b_dirs) = dirs.split_at(2);
        let ideal = quantum_behavior(&phi_plus(), a_dirs, b_dirs)?;
        let degraded =
            apply_detection_efficiency(&ideal, DetectionModel::symmetric(0.9).expect("0.9 valid"));
        match certify_from_observation(&degraded, class, tolerance) {
            Ok((bound, _)) => return Ok(bound.eta_lower),
            Err(Error::NotViolated) => continue,
            Err(other) => return Err(other),
        }
    }
    Err(Error::InvalidInput(format!(
        "no violating direction draw within {RECONSTRUCTION_MAX_ATTEMPTS} attempts (trial {trial})"
    )))
}

/// Mean certified efficiency bound over the seeded reconstruction ensemble.
/// The quantum and nonsignalling variants share the seed layout, so they
/// certify the same simulated experiments under the two model classes.
fn reconstruction(seed: u64, class: ModelClass, tolerance: f64) -> Result<CaseReport> {
    let bounds: Vec<f64> = (0..RECONSTRUCTION_TRIALS)
        .into_par_iter()
        .map(|t| reconstruct_trial(seed, t, class, tolerance))
        .collect::<Result<_>>()?;
    let mean = bounds.iter().sum::<f64>() / bounds.len() as f64;
    let spread = (bounds.iter().map(|b| (b - mean).powi(2)).sum::<f64>()
        / (bounds.len().saturating_sub(1).max(1)) as f64)
        .sqrt();
    let (case, window) = match class {
        ModelClass::Nonsignalling => ("eta-recon-ns", (0.663, 0.703)),
        _ => ("eta-recon-quantum", (0.765, 0.805)),
    };
    let pass = mean >= window.0 && mean <= window.1;
    Ok(report(
        case,
        pass,
        json!({
            "mean": mean,
            "sampleStdDev": spread,
            "trials": RECONSTRUCTION_TRIALS,
            "eta": 0.9,
        }),
        format!("mean in [{}, {}]", window.0, window.1),
        "statistical",
    ))
}

/// One-sided nonsignalling bounds for the CH inequality across known-detector
/// efficiencies and required values; checks the qualitative shape (each curve
/// non-increasing in the known efficiency, curves ordered by q).
fn known_detector_curve(tolerance: f64) -> Result<CaseReport> {
    let known_etas: Vec<f64> = (0..6).map(|k| 0.75 + 0.05 * k as f64).collect();
    let qs = [0.04, 0.08, 0.12, 0.16, 0.2];
    let mut curves: Vec<Vec<CurvePoint>> = Vec::new();
    for &q in &qs {
        curves.push(unknown_vs_known_curve(
            &ch_inequality(),
            &known_etas,
            q,
            ModelClass::Nonsignalling,
            tolerance,
        )?);
    }
    let slack = 2.0 * tolerance;
    let non_increasing = curves.iter().all(|curve| {
        curve
            .windows(2)
            .all(|pair| pair[0].bound >= pair[1].bound - slack)
    });
    let q_ordered = curves.windows(2).all(|pair| {
        pair[0]
            .iter()
            .zip(&pair[1])
            .all(|(low, high)| low.bound <= high.bound + slack)
    });
    let pass = non_increasing && q_ordered;
    let flat: Vec<CurvePoint> = curves.into_iter().flatten().collect();
    let mut case_report = report(
        "known-detector-curve",
        pass,
        json!({
            "points": flat.len(),
            "nonIncreasingInKnownEta": non_increasing,
            "orderedInQ": q_ordered,
        }),
        "curves non-increasing in known η and pointwise ordered in q",
        "statistical",
    );
    case_report.curve = Some(flat);
    Ok(case_report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_case_names_are_rejected_with_the_available_list() {
        let err = run_case("not-a-case", None, None, None).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("ch-eta") && text.contains("known-detector-curve"));
    }

    #[test]
    fn ch_eta_case_passes_quickly() {
        let report = run_case("ch-eta", None, None, None).unwrap();
        assert!(report.pass, "observed: {}", report.observed);
        assert_eq!(report.provenance, "analytic");
    }
}
