//! Trade-off between a characterized detector and an uncertified one.
//!
//! When one side of the experiment uses a detector with a known efficiency,
//! the device-independent bound on the other side tightens as the known
//! efficiency drops: the less the trusted detector can have faked, the more
//! the untrusted one must have delivered. Sweeping the known efficiency for
//! several observed violation strengths gives the familiar family of
//! monotone curves.
//!
//! Run with `cargo run --example known_detector_curve`.
//! Pass a path to also write the points as CSV: `... -- curve.csv`.

use bellcert::efficiency::{unknown_vs_known_curve, ModelClass};
use bellcert::formats::write_curve_csv;
use bellcert::scenario::ch_inequality;
use std::path::PathBuf;

fn main() -> bellcert::Result<()> {
    let ch = ch_inequality();
    // Below roughly 0.72 a CH value of 0.2 cannot be produced at all and
    // the sweep would report the observation as inconsistent, so start
    // where every (known eta, q) pair is realizable.
    let known_etas: Vec<f64> = (0..=5).map(|k| 0.75 + 0.05 * k as f64).collect();

    let mut all_points = Vec::new();
    println!("lower bound on the unknown detector (nonsignalling adversary):");
    print!("known eta:");
    for known in &known_etas {
        print!(" {known:6.2}");
    }
    println!();
    for q in [0.04, 0.08, 0.12, 0.16, 0.20] {
        let points = unknown_vs_known_curve(&ch, &known_etas, q, ModelClass::Nonsignalling, 1e-3)?;
        print!("  q = {q:.2}:");
        for p in &points {
            print!(" {:6.4}", p.bound);
        }
        println!();
        all_points.extend(points);
    }

    if let Some(path) = std::env::args().nth(1).map(PathBuf::from) {
        write_curve_csv(&path, &all_points)?;
        println!("\nwrote {} points to {}", all_points.len(), path.display());
    }
    Ok(())
}
