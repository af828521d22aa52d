//! Synthesize a Bell inequality directly from observed statistics.
//!
//! The separation program takes a behavior (singles and joint outcome
//! probabilities) and either returns a linear functional that is nonpositive
//! on every local-realistic strategy yet positive on the observation — a
//! Bell inequality tailored to the data, violated by construction — or a
//! convex decomposition into deterministic strategies proving the data is
//! classical.
//!
//! Run with `cargo run --example synthesize_inequality`.

use bellcert::quantum::tsirelson_behavior;
use bellcert::scenario::{evaluate_inequality, BehaviorVector, Scenario};
use bellcert::separation::{find_violated_inequality, SeparationStatus};

fn main() -> bellcert::Result<()> {
    // The quantum-optimal statistics for the 2x2 two-outcome scenario:
    // measurements on a maximally entangled pair at the Tsirelson point.
    let observed = tsirelson_behavior();
    let result = find_violated_inequality(&observed)?;
    assert_eq!(result.status, SeparationStatus::Violated);

    let ineq = result.inequality.unwrap();
    println!("synthesized inequality (classical bound 0):");
    println!("  marginal coefficients A: {:?}", ineq.h_a());
    println!("  marginal coefficients B: {:?}", ineq.h_b());
    for i in 0..2 {
        for j in 0..2 {
            println!("  joint coefficient ({i},{j}): {:+.4}", ineq.h_ab(i, j));
        }
    }
    println!("  violation: {:.6}", result.quantum_value.unwrap());
    println!("  (the quantum-optimal violation of this form is (sqrt(2)-1)/2 = 0.207107)");

    // White noise, by contrast, is classical: instead of an inequality we
    // get an explicit mixture of deterministic strategies reproducing it.
    let scenario = Scenario::new(2, 2)?;
    let uniform = BehaviorVector::new(
        scenario,
        vec![0.5; 2],
        vec![0.5; 2],
        vec![vec![0.25; 2], vec![0.25; 2]],
    )?;
    let result = find_violated_inequality(&uniform)?;
    assert_eq!(result.status, SeparationStatus::Classical);

    let certificate = result.certificate.unwrap();
    println!("\nwhite noise is classical; decomposition over deterministic strategies:");
    for (vertex, weight) in &certificate.weights {
        println!("  strategy {vertex:2}: weight {weight:.4}");
    }
    let rebuilt = certificate.reconstruct(scenario)?;
    let gap: f64 = uniform
        .flatten()
        .iter()
        .zip(rebuilt.flatten())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("  reconstruction error: {gap:.2e}");

    // The synthesized inequality itself treats the noise correctly: it is
    // nonpositive there, as on every classical behavior.
    println!(
        "\nsynthesized inequality on white noise: {:+.4}",
        evaluate_inequality(&ineq, &uniform)?
    );
    Ok(())
}
