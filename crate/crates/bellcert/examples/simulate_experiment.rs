//! Simulate a Bell experiment with lossy detectors.
//!
//! Draws uniformly random measurement directions for both parties, computes
//! the exact outcome statistics on the maximally entangled state, degrades
//! them by finite detection efficiency, and finally samples finite counts —
//! the same pipeline an experiment produces, with the exact behavior
//! available for comparison.
//!
//! Run with `cargo run --example simulate_experiment`.

use bellcert::quantum::{
    apply_detection_efficiency, maximally_entangled_state, quantum_behavior, random_directions,
    sample_counts, DetectionModel,
};

fn main() -> bellcert::Result<()> {
    let (n, m) = (3, 3);
    let seed = 2024;

    // One shared stream of directions, split between the parties.
    let dirs = random_directions(n + m, seed);
    let (a_dirs, b_dirs) = dirs.split_at(n);
    for (party, party_dirs) in [("A", a_dirs), ("B", b_dirs)] {
        for (i, d) in party_dirs.iter().enumerate() {
            let [x, y, z] = d.bloch();
            println!("direction {party}{i}: ({x:+.3}, {y:+.3}, {z:+.3})");
        }
    }

    let ideal = quantum_behavior(&maximally_entangled_state(), a_dirs, b_dirs)?;
    println!("\nideal singles A: {:?}", ideal.p_a());

    // 90% efficient detectors on both sides: singles scale by eta, joints
    // by eta^2, exactly as undetected particles are discarded.
    let degraded = apply_detection_efficiency(&ideal, DetectionModel::symmetric(0.9)?);
    println!("degraded singles A: {:?}", degraded.p_a());

    // Finite statistics: every measurement context is run the same number
    // of times and detections are counted.
    let trials = 100_000;
    let counts = sample_counts(&degraded, trials, seed.wrapping_add(1))?;
    println!("\n{trials} trials per context:");
    println!("  detections nA: {:?}", counts.n_a());
    println!("  detections nB: {:?}", counts.n_b());

    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..m {
            let freq = counts.n_ab(i, j) as f64 / trials as f64;
            worst = worst.max((freq - degraded.p_ab(i, j)).abs());
        }
    }
    println!("  largest |joint frequency - exact probability|: {worst:.5}");
    println!("  (expected statistical fluctuation is of order 1/sqrt(trials) = 0.003)");
    Ok(())
}
