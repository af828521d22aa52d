//! Bound the quantum maximum of a Bell inequality from above.
//!
//! The maximal quantum value of a Bell inequality is not directly computable,
//! but semidefinite relaxations squeeze it from outside: each hierarchy level
//! optimizes over moment matrices of operator words of bounded length, and
//! higher levels are tighter. Level 0 of the same picture is the
//! nonsignalling polytope, a plain linear program.
//!
//! Run with `cargo run --example npa_maximum`.

use bellcert::npa::{nonsignalling_max_value, npa_max_value, NpaLevel};
use bellcert::scenario::{ch_inequality, max_vertex_value};

fn main() -> bellcert::Result<()> {
    let ch = ch_inequality();

    // The hierarchy of upper bounds for the Clauser-Horne inequality, from
    // the loosest (nonsignalling) down. The PR box reaches 1/2; quantum
    // mechanics cannot exceed (sqrt(2)-1)/2 = 0.207107 (the Tsirelson
    // point), and the level-2 relaxation already certifies that.
    println!("upper bounds on the Clauser-Horne inequality (classical bound 0):");
    println!(
        "  nonsignalling (level 0): {:.6}",
        nonsignalling_max_value(&ch)?
    );
    for level in [NpaLevel::Level(1), NpaLevel::OnePlusAb, NpaLevel::Level(2)] {
        let value = npa_max_value(&ch, level)?;
        println!("  moment level {level:>4}: {value:.6}");
    }
    println!("  Tsirelson value: {:.6}", (2f64.sqrt() - 1.0) / 2.0);

    // Sanity anchor: the classical maximum over deterministic strategies.
    println!(
        "\nclassical maximum (vertex enumeration): {:.6}",
        max_vertex_value(&ch)?
    );
    Ok(())
}
