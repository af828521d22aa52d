//! Loophole-free Bell inequality synthesis and device-independent
//! detector-efficiency certification.
//!
//! The input throughout is a *behavior*: the observed statistics of a
//! bipartite experiment where one party chooses among `n` binary observables,
//! the other among `m`, and only "+" outcomes are tracked —
//! `(p(Aᵢ⁺), p(Bⱼ⁺), p(Aᵢ⁺Bⱼ⁺))`. Three capabilities build on that:
//!
//! - **Synthesis** ([`separation`]): a linear program over the classical
//!   correlation polytope either produces a Bell inequality violated by the
//!   behavior, or a convex decomposition into deterministic strategies
//!   proving the behavior classical. No inequality catalogue is consulted;
//!   the functional comes from the data.
//! - **Model-class maxima** ([`npa`]): upper bounds on a Bell functional over
//!   all nonsignalling behaviors (LP) and over all quantum behaviors
//!   (moment-matrix semidefinite relaxations at level 1, 1+AB, 2, …), plus
//!   membership tests for a given behavior.
//! - **Detector certification** ([`efficiency`]): finite detection efficiency
//!   η rescales singles by η and joints by η², so a violation that survives
//!   loss lower-bounds the efficiency of *any* explanation of the data within
//!   a model class. Closed forms for fixed behaviors; guided bisection over
//!   feasibility oracles for the device-independent bounds.
//!
//! # Quick start
//!
//! ```
//! use bellcert::quantum::tsirelson_behavior;
//! use bellcert::separation::{find_violated_inequality, SeparationStatus};
//! use bellcert::efficiency::eta_crit_symmetric;
//!
//! # fn main() -> bellcert::Result<()> {
//! // maximally entangled state measured at the optimal CHSH angles
//! let observed = tsirelson_behavior();
//!
//! // synthesize an inequality from the statistics alone
//! let found = find_violated_inequality(&observed)?;
//! assert_eq!(found.status, SeparationStatus::Violated);
//! let inequality = found.inequality.unwrap();
//!
//! // the violation dies when both detectors drop to 2(√2 − 1) ≈ 0.828
//! let eta = eta_crit_symmetric(&inequality, &observed)?;
//! assert!((eta - 0.8284).abs() < 1e-3);
//! # Ok(())
//! # }
//! ```
//!
//! The runnable programs under `examples/` walk through each capability;
//! [`cli`] exposes the same operations on JSON/CSV files, and [`reproduce`]
//! holds the pinned end-to-end studies the acceptance tests check.

pub mod cli;
pub mod efficiency;
pub mod error;
pub mod formats;
pub mod npa;
pub mod quantum;
pub mod reproduce;
pub mod scenario;
pub mod separation;
pub mod solver;
pub mod tolerances;

#[cfg(test)]
pub(crate) mod reference_lp;

pub use error::{Error, Result};
