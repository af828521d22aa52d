//! Critical detection efficiencies, with and without an adversary.
//!
//! Finite detection efficiency scales a behavior's singles by eta and its
//! joints by the product of the two efficiencies. For a fixed behavior the
//! inequality value is then an explicit polynomial in eta and the efficiency
//! at which the violation dies has a closed form. A device-independent bound
//! must be pessimistic instead: over every behavior in a model class that
//! reaches the observed value, take the one that survives the most loss.
//! That minimum is found by bisecting over a feasibility oracle.
//!
//! Run with `cargo run --example efficiency_thresholds`.

use bellcert::efficiency::{
    bound_via_bisection, eta_crit_one_sided, eta_crit_symmetric, scaled_inequality, BisectionMode,
    ModelClass,
};
use bellcert::quantum::tsirelson_behavior;
use bellcert::scenario::{ch_inequality, evaluate_inequality};

fn main() -> bellcert::Result<()> {
    let ch = ch_inequality();
    let tsirelson = tsirelson_behavior();

    // Closed form for this specific behavior: both detectors at eta, the
    // value crosses zero at 2(sqrt(2)-1) = 0.8284 — the textbook threshold
    // for the maximally entangled state.
    let eta = eta_crit_symmetric(&ch, &tsirelson)?;
    println!("Tsirelson point, both detectors unknown: eta_crit = {eta:.6}");

    // The crossing really is a crossing: scaling the inequality by eta is
    // adjoint to degrading the behavior, so the value at eta_crit vanishes.
    let at_crit = evaluate_inequality(&scaled_inequality(&ch, eta, eta), &tsirelson)?;
    println!("  inequality value at eta_crit: {at_crit:+.2e}");

    // One perfect detector helps: bounding only Alice's side, the threshold
    // drops. q is the value the behavior must still deliver (0 = any
    // violation at all).
    let one_sided = eta_crit_one_sided(&ch, &tsirelson, 0.0)?;
    println!("Tsirelson point, Bob's detector perfect: eta_crit = {one_sided:.6}");

    // Device-independent version: nothing is assumed about the behavior
    // beyond the model class and the observed value. Any nonsignalling
    // behavior violating CH at all needs two-thirds efficiency...
    let bound = bound_via_bisection(
        &ch,
        ModelClass::Nonsignalling,
        BisectionMode::Symmetric,
        0.0,
        1e-4,
    )?;
    println!(
        "\nany nonsignalling violation of CH: eta > {:.4} (analytic: 2/3)",
        bound.eta_lower
    );

    // ...and the bound grows with the observed violation, climbing to full
    // efficiency as the observation approaches the nonsignalling maximum 1/2
    // (only the undegraded PR box reaches that value).
    println!("\nrequired efficiency vs observed CH value (nonsignalling adversary):");
    for q in [0.1, 0.2, 0.3, 0.4, 0.45, 0.49] {
        let bound = bound_via_bisection(
            &ch,
            ModelClass::Nonsignalling,
            BisectionMode::Symmetric,
            q,
            1e-4,
        )?;
        println!("  observed {q:.2}: eta > {:.4}", bound.eta_lower);
    }

    // At exactly q = 1/2 no nonsignalling behavior strictly exceeds the
    // observation, so there is nothing to bound and the query says so.
    match bound_via_bisection(
        &ch,
        ModelClass::Nonsignalling,
        BisectionMode::Symmetric,
        0.5,
        1e-4,
    ) {
        Err(bellcert::Error::NeverViolated) => {
            println!("  observed 0.50: no model-class behavior exceeds this value");
        }
        other => {
            let status = other.map(|b| b.eta_lower);
            println!("  observed 0.50: unexpected result {status:?}");
        }
    }

    // Restricting the adversary to quantum behaviors (moment relaxation,
    // level 2) cannot loosen the bound; for CH at q=0 it lands at the same
    // two-thirds. The quantum violation dies off quadratically near the
    // threshold, so at this tolerance the certified bound sits a hair above
    // the analytic value.
    let bound = bound_via_bisection(
        &ch,
        ModelClass::QuantumNpa(bellcert::npa::NpaLevel::Level(2)),
        BisectionMode::Symmetric,
        0.0,
        1e-3,
    )?;
    println!(
        "\nany quantum violation of CH: eta > {:.4} (matches the 2/3 within tolerance)",
        bound.eta_lower
    );
    Ok(())
}
