//! Acceptance gate: every headline capability at its stated tolerance, one
//! printed PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines
//! for passing criteria too (the harness prints captured output only on
//! failure).

use bellcert::efficiency::{
    bound_via_bisection, eta_crit_symmetric, scaled_inequality, BisectionMode, ModelClass,
};
use bellcert::npa::{npa_max_value, NpaLevel};
use bellcert::quantum::{maximally_entangled_state, quantum_behavior, random_directions};
use bellcert::reproduce::run_case;
use bellcert::scenario::{
    ch_inequality, evaluate_inequality, validate_inequality, vertex_flat, BehaviorVector,
    BellInequality, Scenario,
};
use bellcert::separation::{find_violated_inequality, SeparationStatus};
use bellcert::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

struct Criterion {
    label: &'static str,
    pass: bool,
    detail: String,
}

fn record(results: &mut Vec<Criterion>, label: &'static str, pass: bool, detail: String) {
    println!("criterion {label}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    results.push(Criterion {
        label,
        pass,
        detail,
    });
}

#[test]
fn acceptance_criteria() -> Result<()> {
    let mut results = Vec::new();

    // 1: CH nonsignalling efficiency bound, 0.6667 ± 0.002, under 10 s.
    let report = run_case("ch-eta", None, None, None)?;
    let bound = report.observed["etaLower"].as_f64().unwrap();
    record(
        &mut results,
        "1  (CH nonsignalling bound)",
        (bound - 2.0 / 3.0).abs() <= 0.002 && report.elapsed_seconds < 10.0,
        format!(
            "eta > {bound:.4}, want 0.6667 +- 0.002 in < 10 s, took {:.1} s",
            report.elapsed_seconds
        ),
    );

    // 2: the same bound against a quantum adversary (level-2 relaxation),
    // 0.6667 ± 0.01 — restricting the model class does not loosen it, and
    // for this inequality it does not tighten it either — under 2 min.
    let started = Instant::now();
    let ch_quantum = bound_via_bisection(
        &ch_inequality(),
        ModelClass::QuantumNpa(NpaLevel::Level(2)),
        BisectionMode::Symmetric,
        0.0,
        1e-3,
    )?;
    let elapsed = started.elapsed().as_secs_f64();
    record(
        &mut results,
        "2  (CH quantum bound)",
        (ch_quantum.eta_lower - 2.0 / 3.0).abs() <= 0.01 && elapsed < 120.0,
        format!(
            "eta > {:.4}, want 0.6667 +- 0.01 in < 2 min, took {elapsed:.1} s",
            ch_quantum.eta_lower
        ),
    );

    // 3: level-2 maximum of the built-in 6x5 inequality, 3.6791 ± 0.005,
    // under 5 min for the 92-dimensional moment matrix.
    let report = run_case("i6522-q2", None, None, None)?;
    let value = report.observed["value"].as_f64().unwrap();
    record(
        &mut results,
        "3  (6x5 level-2 maximum)",
        (value - 3.6791).abs() <= 0.005 && report.elapsed_seconds < 300.0,
        format!(
            "value {value:.5}, want 3.6791 +- 0.005 in < 5 min, took {:.0} s",
            report.elapsed_seconds
        ),
    );

    // 4: symmetric efficiency bound for the 6x5 inequality at level 2,
    // in (0.86, 0.95) at bisection tolerance 1e-3.
    let report = run_case("i6522-eta", None, None, None)?;
    let bound = report.observed["etaLower"].as_f64().unwrap();
    record(
        &mut results,
        "4  (6x5 symmetric bound)",
        bound > 0.86 && bound < 0.95,
        format!("eta > {bound:.5}, want in (0.86, 0.95)"),
    );

    // 5 and 6: one-sided bounds for the 6x5 inequality at level 2 with the
    // known detector perfect — any violation (q=0) needs 0.751 − 0.005, and
    // reproducing the observed value 1.971 needs 0.886 − 0.005.
    let report = run_case("i6522-onesided", None, None, None)?;
    let at_zero = report.observed["q0"].as_f64().unwrap();
    let at_observed = report.observed["q1.971"].as_f64().unwrap();
    record(
        &mut results,
        "5  (6x5 one-sided bound)",
        at_zero > 0.751 - 0.005,
        format!("eta > {at_zero:.5}, want > 0.746"),
    );
    record(
        &mut results,
        "6  (6x5 one-sided at q=1.971)",
        at_observed > 0.886 - 0.005,
        format!("eta > {at_observed:.5}, want > 0.881"),
    );

    // 7: random-measurement success rates on the maximally entangled state,
    // 10^4 seeded trials per size, under 30 min.
    let report = run_case("random-success", None, None, None)?;
    let three = report.observed["three"].as_f64().unwrap();
    let six = report.observed["six"].as_f64().unwrap();
    record(
        &mut results,
        "7  (random-direction success rates)",
        three > 0.50 && six > 0.97 && report.elapsed_seconds < 1800.0,
        format!(
            "3x3 fraction {three:.3} (want > 0.50), 6x6 fraction {six:.3} (want > 0.97), \
             took {:.0} s of < 30 min",
            report.elapsed_seconds
        ),
    );

    // 8 and 9: mean certified efficiency over 100 simulated experiments at
    // true efficiency 0.9, quantum and nonsignalling adversaries.
    let report = run_case("eta-recon-quantum", None, None, None)?;
    let mean = report.observed["mean"].as_f64().unwrap();
    record(
        &mut results,
        "8  (reconstruction, quantum)",
        (0.765..=0.805).contains(&mean),
        format!("mean bound {mean:.4}, want in [0.765, 0.805]"),
    );
    let report = run_case("eta-recon-ns", None, None, None)?;
    let mean = report.observed["mean"].as_f64().unwrap();
    record(
        &mut results,
        "9  (reconstruction, nonsignalling)",
        (0.663..=0.703).contains(&mean),
        format!("mean bound {mean:.4}, want in [0.663, 0.703]"),
    );

    // 10: structural properties with no target numbers.
    let (pass, detail) = classical_mixtures_never_violate()?;
    record(&mut results, "10a (mixtures stay classical)", pass, detail);
    let (pass, detail) = separation_and_decomposition_agree()?;
    record(&mut results, "10b (dual certificates agree)", pass, detail);
    let (pass, detail) = zero_crossing_identity()?;
    record(&mut results, "10c (threshold zero crossing)", pass, detail);
    let (pass, detail) = hierarchy_levels_are_monotone()?;
    record(&mut results, "10d (hierarchy monotone)", pass, detail);
    let report = run_case("known-detector-curve", None, None, None)?;
    record(
        &mut results,
        "10e (curve family shape)",
        report.pass,
        "curves non-increasing in known eta and ordered in q".into(),
    );

    let failed: Vec<&Criterion> = results.iter().filter(|c| !c.pass).collect();
    assert!(
        failed.is_empty(),
        "{} of {} acceptance criteria failed:\n{}",
        failed.len(),
        results.len(),
        failed
            .iter()
            .map(|c| format!("  criterion {}: {}", c.label, c.detail))
            .collect::<Vec<_>>()
            .join("\n")
    );
    Ok(())
}

/// Draws a random convex mixture of deterministic strategies.
fn random_vertex_mixture(scenario: Scenario, rng: &mut ChaCha8Rng) -> Result<BehaviorVector> {
    let vertex_count = scenario.vertex_count()?;
    let terms = rng.gen_range(2..=4);
    let mut weights = vec![0.0; terms];
    for w in weights.iter_mut() {
        *w = rng.gen_range(0.01..1.0);
    }
    let total: f64 = weights.iter().sum();
    let mut flat = vec![0.0; scenario.dimension()];
    for w in weights {
        let k = rng.gen_range(0..vertex_count);
        for (acc, v) in flat.iter_mut().zip(vertex_flat(scenario, k)) {
            *acc += w / total * v;
        }
    }
    BehaviorVector::from_flat(scenario, &flat)
}

/// 10a: 10^3 random mixtures of deterministic strategies are never reported
/// as violating — the separation program has no false positives on the
/// classical set.
fn classical_mixtures_never_violate() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let scenarios = [Scenario::new(2, 2)?, Scenario::new(3, 3)?];
    let mut violated = 0;
    for t in 0..1000 {
        let behavior = random_vertex_mixture(scenarios[t % 2], &mut rng)?;
        if find_violated_inequality(&behavior)?.status == SeparationStatus::Violated {
            violated += 1;
        }
    }
    Ok((
        violated == 0,
        format!("{violated} of 1000 classical mixtures flagged as violating (want 0)"),
    ))
}

/// 10b: on 10^3 inputs straddling the classical boundary, the separation and
/// decomposition programs return exactly one mutually consistent verdict:
/// either a classically-valid violated inequality or a decomposition that
/// reconstructs the input.
fn separation_and_decomposition_agree() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let scenario = Scenario::new(2, 2)?;
    let tsirelson = bellcert::quantum::tsirelson_behavior();
    let uniform = BehaviorVector::new(
        scenario,
        vec![0.5; 2],
        vec![0.5; 2],
        vec![vec![0.25; 2], vec![0.25; 2]],
    )?;
    let mut bad = 0;
    let mut violated = 0;
    for t in 0..1000 {
        let behavior = if t % 2 == 0 {
            random_vertex_mixture(scenario, &mut rng)?
        } else {
            // noisy quantum point, quantum above ~0.586 on the mixing weight
            tsirelson.mix(&uniform, rng.gen_range(0.0..1.0))?
        };
        let result = find_violated_inequality(&behavior)?;
        match result.status {
            SeparationStatus::Violated => {
                violated += 1;
                let ineq = result.inequality.unwrap();
                let consistent = validate_inequality(&ineq)?
                    && evaluate_inequality(&ineq, &behavior)? > 0.0
                    && result.certificate.is_none();
                if !consistent {
                    bad += 1;
                }
            }
            SeparationStatus::Classical => {
                let rebuilt = result.certificate.unwrap().reconstruct(scenario)?;
                let gap = behavior
                    .flatten()
                    .iter()
                    .zip(rebuilt.flatten())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                if gap > 1e-8 {
                    bad += 1;
                }
            }
            SeparationStatus::Inconclusive => bad += 1,
        }
    }
    Ok((
        bad == 0 && violated > 0,
        format!("{bad} of 1000 verdicts inconsistent (want 0), {violated} violated"),
    ))
}

/// 10c: on 100 random violated instances the closed-form symmetric threshold
/// is an exact zero of the scaled inequality value, to 1e-9.
fn zero_crossing_identity() -> Result<(bool, String)> {
    let mut checked = 0;
    let mut worst = 0.0f64;
    let mut seed = 0;
    while checked < 100 {
        seed += 1;
        let dirs = random_directions(4, 90_000 + seed);
        let (a_dirs, b_dirs) = dirs.split_at(2);
        let behavior = quantum_behavior(&maximally_entangled_state(), a_dirs, b_dirs)?;
        let result = find_violated_inequality(&behavior)?;
        if result.status != SeparationStatus::Violated {
            continue;
        }
        let ineq = result.inequality.unwrap();
        let eta = eta_crit_symmetric(&ineq, &behavior)?;
        let residual = evaluate_inequality(&scaled_inequality(&ineq, eta, eta), &behavior)?;
        worst = worst.max(residual.abs());
        checked += 1;
    }
    Ok((
        worst <= 1e-9,
        format!("largest |value at threshold| = {worst:.2e} over 100 instances (want <= 1e-9)"),
    ))
}

/// 10d: lower hierarchy levels are outer approximations — level-1 maxima
/// dominate level-2 maxima on random functionals.
fn hierarchy_levels_are_monotone() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let scenario = Scenario::new(2, 2)?;
    let mut bad = 0;
    for _ in 0..20 {
        let coeff = |rng: &mut ChaCha8Rng| rng.gen_range(-1.0..1.0);
        let ineq = BellInequality::new(
            scenario,
            (0..2).map(|_| coeff(&mut rng)).collect(),
            (0..2).map(|_| coeff(&mut rng)).collect(),
            (0..2)
                .map(|_| (0..2).map(|_| coeff(&mut rng)).collect())
                .collect(),
        )?;
        let loose = npa_max_value(&ineq, NpaLevel::Level(1))?;
        let tight = npa_max_value(&ineq, NpaLevel::Level(2))?;
        if loose < tight - 1e-6 {
            bad += 1;
        }
    }
    Ok((
        bad == 0,
        format!("{bad} of 20 random functionals broke level-1 >= level-2 (want 0)"),
    ))
}
