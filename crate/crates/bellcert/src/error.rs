use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Domain-level "negative but valid" answers (a behavior being classical, a
/// decomposition not existing) are *not* errors; they are encoded in result
/// enums. Errors are reserved for violated preconditions, solver breakdowns,
/// and vacuous certificates that must not be mistaken for strong ones.
#[derive(Debug, Error)]
pub enum Error {
    /// Vertex enumeration over 2^(n+m) deterministic assignments would exceed
    /// the configured cap.
    #[error("scenario has n+m = {settings} settings; 2^{settings} vertices exceeds the cap of 2^{cap_log2}")]
    CapExceeded { settings: usize, cap_log2: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A count divided by the base rate exceeded 1, signalling inconsistent
    /// normalization of the observed data.
    #[error("invalid base rate: {entry} = {count} / {base_rate} = {value} exceeds 1")]
    InvalidBaseRate {
        entry: String,
        count: u64,
        base_rate: u64,
        value: f64,
    },

    /// The LP/SDP backend did not converge or reported an unexpected status.
    #[error("solver failure: {0}")]
    SolverFailure(String),

    /// A moment matrix would be larger than the configured dimension cap.
    #[error("moment matrix dimension {dim} exceeds the cap of {cap}")]
    SizeExceeded { dim: usize, cap: usize },

    /// An optimization that must be bounded (the relaxed correlation sets are
    /// compact) reported an unbounded ray; this signals a modeling bug.
    #[error("optimization reported unbounded; the feasible set should be compact")]
    Unbounded,

    /// The behavior admits no four-outcome probability table, e.g. a joint
    /// probability exceeding one of its marginals.
    #[error("behavior admits no joint outcome distribution: {0}")]
    InvalidBehavior(String),

    /// No detection efficiency makes the scaled inequality value cross zero.
    #[error("no efficiency threshold exists: {0}")]
    NoThreshold(String),

    /// Even perfect detectors cannot violate the inequality under the chosen
    /// model class; an efficiency bound would be vacuous.
    #[error("no violation even at unit efficiency; the efficiency bound would be vacuous")]
    NeverViolated,

    /// Certification from observation requires a violated inequality, but the
    /// observed behavior is classical.
    #[error("observed behavior admits a classical model; nothing can be certified")]
    NotViolated,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
