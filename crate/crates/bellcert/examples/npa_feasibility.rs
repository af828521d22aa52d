//! Test whether observed statistics admit a quantum model.
//!
//! Instead of maximizing a functional, the moment relaxation can be run as a
//! feasibility problem on a fixed behavior: if no moment matrix of the given
//! level is compatible with the statistics, no quantum state and measurements
//! can produce them. The certificate reports a feasibility margin — the
//! amount by which the moment matrix can be pushed into the positive cone —
//! so "how infeasible" is visible, not just a boolean.
//!
//! Run with `cargo run --example npa_feasibility`.

use bellcert::npa::{npa_certificate, NpaLevel};
use bellcert::quantum::tsirelson_behavior;
use bellcert::scenario::{BehaviorVector, Scenario};

fn main() -> bellcert::Result<()> {
    let level = NpaLevel::Level(2);

    // Quantum-realizable statistics pass, with a nonnegative margin.
    let tsirelson = tsirelson_behavior();
    let cert = npa_certificate(&tsirelson, level)?;
    println!(
        "Tsirelson-point statistics at level {level}: feasible = {}, margin = {:+.2e}",
        cert.is_feasible(),
        cert.feasibility_margin
    );

    // The PR box is nonsignalling but not quantum: it wins the CH game with
    // probability 1/2 over the classical bound, beyond what any entangled
    // state allows. The moment relaxation refuses it with a strictly
    // negative margin.
    let scenario = Scenario::new(2, 2)?;
    let pr_box = BehaviorVector::new(
        scenario,
        vec![0.5; 2],
        vec![0.5; 2],
        vec![vec![0.5, 0.5], vec![0.5, 0.0]],
    )?;
    let cert = npa_certificate(&pr_box, level)?;
    println!(
        "PR-box statistics at level {level}:          feasible = {}, margin = {:+.2e}",
        cert.is_feasible(),
        cert.feasibility_margin
    );

    // A mixture of the PR box with white noise re-enters the quantum set
    // once the noise is strong enough; scanning the weight makes the
    // boundary visible.
    let uniform = BehaviorVector::new(
        scenario,
        vec![0.5; 2],
        vec![0.5; 2],
        vec![vec![0.25; 2], vec![0.25; 2]],
    )?;
    println!("\nPR box mixed with white noise:");
    for percent in [60, 70, 75, 80, 90] {
        let alpha = percent as f64 / 100.0;
        let mixed = pr_box.mix(&uniform, alpha)?;
        let cert = npa_certificate(&mixed, level)?;
        println!(
            "  weight {alpha:.2} on the PR box: feasible = {:5}, margin = {:+.3e}",
            cert.is_feasible(),
            cert.feasibility_margin
        );
    }
    println!("(the level-1 boundary sits at weight 1/sqrt(2) = 0.7071)");
    Ok(())
}
