//! Two-qubit states, projective dichotomic measurements, detector-efficiency
//! scaling, and finite-sample count simulation.
//!
//! Everything here feeds behaviors into the separation and certification
//! machinery: ideal behaviors from a density matrix and Bloch-vector
//! measurement directions, lossy behaviors from per-party detector
//! efficiencies (a missed detection is simply a non-event, so singles scale
//! by `η` and joints by the product of efficiencies), and integer counts from
//! seeded sampling of the four-outcome distribution of each setting pair.

use crate::error::{Error, Result};
use crate::scenario::{BehaviorVector, CountRecord, Scenario};
use nalgebra::{Complex, Matrix2, Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, UnitSphere};

type C64 = Complex<f64>;

/// A two-qubit density matrix: 4×4, Hermitian, positive semidefinite, unit
/// trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    density: Matrix4<C64>,
}

impl TwoQubitState {
    /// Validates Hermiticity (1e-12), unit trace (1e-12), and positive
    /// semidefiniteness (eigenvalues ≥ -1e-10).
    pub fn new(density: Matrix4<C64>) -> Result<Self> {
        let deviation = (density - density.adjoint()).norm();
        if deviation > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "density matrix is not Hermitian (deviation {deviation:.3e})"
            )));
        }
        let trace = density.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        let eigenvalues = nalgebra::linalg::SymmetricEigen::new(density).eigenvalues;
        if let Some(bad) = eigenvalues.iter().find(|&&lambda| lambda < -1e-10) {
            return Err(Error::InvalidInput(format!(
                "density matrix has negative eigenvalue {bad:.3e}"
            )));
        }
        Ok(TwoQubitState { density })
    }

    /// Builds the pure state `|ψ⟩⟨ψ|`, normalizing `psi`.
    pub fn from_state_vector(psi: Vector4<C64>) -> Result<Self> {
        let norm_sq = psi.norm_squared();
        if norm_sq < 1e-12 {
            return Err(Error::InvalidInput("state vector is zero".into()));
        }
        TwoQubitState::new(psi * psi.adjoint() / Complex::new(norm_sq, 0.0))
    }

    pub fn density(&self) -> &Matrix4<C64> {
        &self.density
    }
}

/// A projective dichotomic measurement, identified by the Bloch vector of its
/// +1 eigenspace: the projector is `(1 + n̂·σ)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDirection {
    bloch: [f64; 3],
}

impl MeasurementDirection {
    /// Validates unit norm within 1e-12.
    pub fn new(bloch: [f64; 3]) -> Result<Self> {
        let norm = (bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "Bloch vector must be unit length, got norm {norm}"
            )));
        }
        Ok(MeasurementDirection { bloch })
    }

    /// Rescales an arbitrary nonzero vector onto the sphere.
    pub fn from_unnormalized(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(Error::InvalidInput(
                "cannot normalize a (near-)zero direction".into(),
            ));
        }
        MeasurementDirection::new([v[0] / norm, v[1] / norm, v[2] / norm])
    }

    /// Draws a rotation-invariant direction from `rng`.
    pub fn random(rng: &mut impl Rng) -> Self {
        let bloch: [f64; 3] = UnitSphere.sample(rng);
        MeasurementDirection { bloch }
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.bloch
    }

    /// The projector onto the +1 eigenspace, `(1 + n̂·σ)/2`.
    pub fn projector(&self) -> Matrix2<C64> {
        let [x, y, z] = self.bloch;
        let r = |v: f64| Complex::new(v, 0.0);
        Matrix2::new(
            r((1.0 + z) / 2.0),
            Complex::new(x / 2.0, -y / 2.0),
            Complex::new(x / 2.0, y / 2.0),
            r((1.0 - z) / 2.0),
        )
    }
}

/// Per-party detector efficiencies: the probability that a detector registers
/// an arriving particle, assumed independent of the chosen setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionModel {
    eta_a: f64,
    eta_b: f64,
}

impl DetectionModel {
    pub fn new(eta_a: f64, eta_b: f64) -> Result<Self> {
        for (label, eta) in [("etaA", eta_a), ("etaB", eta_b)] {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::InvalidInput(format!(
                    "{label} must lie in [0, 1], got {eta}"
                )));
            }
        }
        Ok(DetectionModel { eta_a, eta_b })
    }

    /// Both detectors at the same efficiency.
    pub fn symmetric(eta: f64) -> Result<Self> {
        DetectionModel::new(eta, eta)
    }

    pub fn eta_a(&self) -> f64 {
        self.eta_a
    }

    pub fn eta_b(&self) -> f64 {
        self.eta_b
    }
}

/// The maximally entangled state `|Φ⁺⟩⟨Φ⁺|` with `|Φ⁺⟩ = (|00⟩ + |11⟩)/√2`.
pub fn maximally_entangled_state() -> TwoQubitState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi = Vector4::new(
        Complex::new(h, 0.0),
        Complex::new(0.0, 0.0),
        Complex::new(0.0, 0.0),
        Complex::new(h, 0.0),
    );
    TwoQubitState::from_state_vector(psi).expect("|Φ⁺⟩ is a valid state")
}

/// `visibility·|Φ⁺⟩⟨Φ⁺| + (1 - visibility)·1/4`: the standard one-parameter
/// noise family for robustness tests.
pub fn depolarized_entangled_state(visibility: f64) -> Result<TwoQubitState> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::InvalidInput(format!(
            "visibility must lie in [0, 1], got {visibility}"
        )));
    }
    let pure = maximally_entangled_state();
    let mixed = pure.density * Complex::new(visibility, 0.0)
        + Matrix4::identity() * Complex::new((1.0 - visibility) / 4.0, 0.0);
    TwoQubitState::new(mixed)
}

/// One rotation-invariant direction from a fresh seeded generator.
pub fn random_direction(seed: u64) -> MeasurementDirection {
    random_directions(1, seed)[0]
}

/// `count` independent rotation-invariant directions from one seeded stream.
pub fn random_directions(count: usize, seed: u64) -> Vec<MeasurementDirection> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| MeasurementDirection::random(&mut rng))
        .collect()
}

/// The ideal (unit-efficiency) behavior of `state` under the given projective
/// measurements: `pA_i = Tr[ρ(Π_{a_i}⊗1)]`, `pB_j = Tr[ρ(1⊗Π_{b_j})]`,
/// `pAB_ij = Tr[ρ(Π_{a_i}⊗Π_{b_j})]`.
pub fn quantum_behavior(
    state: &TwoQubitState,
    a_dirs: &[MeasurementDirection],
    b_dirs: &[MeasurementDirection],
) -> Result<BehaviorVector> {
    let scenario = Scenario::new(a_dirs.len(), b_dirs.len())?;
    let identity = Matrix2::<C64>::identity();
    let trace_with = |op: Matrix4<C64>| -> f64 { (state.density * op).trace().re };
    let p_a: Vec<f64> = a_dirs
        .iter()
        .map(|a| trace_with(a.projector().kronecker(&identity)))
        .collect();
    let p_b: Vec<f64> = b_dirs
        .iter()
        .map(|b| trace_with(identity.kronecker(&b.projector())))
        .collect();
    let p_ab: Vec<Vec<f64>> = a_dirs
        .iter()
        .map(|a| {
            b_dirs
                .iter()
                .map(|b| trace_with(a.projector().kronecker(&b.projector())))
                .collect()
        })
        .collect();
    BehaviorVector::new(scenario, p_a, p_b, p_ab)
}

/// Scales a behavior by detector efficiencies: `pA → ηA·pA`, `pB → ηB·pB`,
/// `pAB → ηA·ηB·pAB`. Non-detections are non-events in the +1-outcome
/// bookkeeping, so no redistribution of probability is needed.
pub fn apply_detection_efficiency(
    behavior: &BehaviorVector,
    model: DetectionModel,
) -> BehaviorVector {
    let scenario = behavior.scenario();
    let p_a = behavior.p_a().iter().map(|p| model.eta_a * p).collect();
    let p_b = behavior.p_b().iter().map(|p| model.eta_b * p).collect();
    let p_ab = (0..scenario.n())
        .map(|i| {
            (0..scenario.m())
                .map(|j| model.eta_a * model.eta_b * behavior.p_ab(i, j))
                .collect()
        })
        .collect();
    BehaviorVector::new(scenario, p_a, p_b, p_ab)
        .expect("scaling by probabilities preserves [0, 1]")
}

/// Which setting pair supplies each singles count.
///
/// A +1 outcome for `A_i` occurs in every context `(i, j)`; counting it in
/// all of them would double-count events, so each singles count is read off
/// one designated context. The choice is a convention — any fixed context
/// gives an unbiased frequency — and defaults to the first setting of the
/// other party.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SinglesConvention {
    /// Bob setting `j` whose contexts `(i, j)` supply the `nA_i` counts.
    pub b_setting_for_a: usize,
    /// Alice setting `i` whose contexts `(i, j)` supply the `nB_j` counts.
    pub a_setting_for_b: usize,
}

impl Default for SinglesConvention {
    fn default() -> Self {
        SinglesConvention {
            b_setting_for_a: 0,
            a_setting_for_b: 0,
        }
    }
}

/// Simulates `trials_per_context` runs of every setting pair and aggregates
/// +1 counts, with singles taken from the default designated contexts.
pub fn sample_counts(
    behavior: &BehaviorVector,
    trials_per_context: u64,
    seed: u64,
) -> Result<CountRecord> {
    sample_counts_with(behavior, trials_per_context, seed, SinglesConvention::default())
}

/// [`sample_counts`] with an explicit singles convention.
///
/// Each context `(i, j)` is an independent multinomial over the four
/// outcomes `(++, +-, -+, --)` with probabilities
/// `(pAB, pA-pAB, pB-pAB, 1-pA-pB+pAB)` — the unique two-detector
/// distribution consistent with the recorded +1 probabilities. Sampling is
/// deterministic in `seed`.
pub fn sample_counts_with(
    behavior: &BehaviorVector,
    trials_per_context: u64,
    seed: u64,
    convention: SinglesConvention,
) -> Result<CountRecord> {
    if trials_per_context == 0 {
        return Err(Error::InvalidInput(
            "at least one trial per context is required".into(),
        ));
    }
    let scenario = behavior.scenario();
    let (n, m) = (scenario.n(), scenario.m());
    if convention.b_setting_for_a >= m || convention.a_setting_for_b >= n {
        return Err(Error::InvalidInput(format!(
            "singles convention ({}, {}) out of range for a {n}×{m} scenario",
            convention.b_setting_for_a, convention.a_setting_for_b
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n_a = vec![0u64; n];
    let mut n_b = vec![0u64; m];
    let mut n_ab = vec![vec![0u64; m]; n];
    for i in 0..n {
        for j in 0..m {
            let outcome = sample_context(
                &mut rng,
                trials_per_context,
                behavior.p_a()[i],
                behavior.p_b()[j],
                behavior.p_ab(i, j),
            )
            .map_err(|e| match e {
                Error::InvalidBehavior(msg) => {
                    Error::InvalidBehavior(format!("context ({i}, {j}): {msg}"))
                }
                other => other,
            })?;
            n_ab[i][j] = outcome.both;
            if j == convention.b_setting_for_a {
                n_a[i] = outcome.both + outcome.alice_only;
            }
            if i == convention.a_setting_for_b {
                n_b[j] = outcome.both + outcome.bob_only;
            }
        }
    }
    CountRecord::new(scenario, n_a, n_b, n_ab, trials_per_context)
}

struct ContextOutcome {
    both: u64,
    alice_only: u64,
    bob_only: u64,
}

/// Draws the four-outcome multinomial of one context as a chain of
/// conditional binomials.
fn sample_context(
    rng: &mut ChaCha8Rng,
    trials: u64,
    p_a: f64,
    p_b: f64,
    p_ab: f64,
) -> Result<ContextOutcome> {
    let [pp, pm, mp, _mm] = four_outcome_probabilities(p_a, p_b, p_ab)?;
    let both = draw_binomial(rng, trials, pp);
    let rest = trials - both;
    let alice_only = draw_binomial(rng, rest, conditional(pm, 1.0 - pp));
    let bob_only = draw_binomial(rng, rest - alice_only, conditional(mp, 1.0 - pp - pm));
    Ok(ContextOutcome {
        both,
        alice_only,
        bob_only,
    })
}

/// `(p(++), p(+-), p(-+), p(--))` for one context, rejecting behaviors that
/// admit no joint two-detector distribution.
fn four_outcome_probabilities(p_a: f64, p_b: f64, p_ab: f64) -> Result<[f64; 4]> {
    let raw = [
        ("p(++)", p_ab),
        ("p(+-)", p_a - p_ab),
        ("p(-+)", p_b - p_ab),
        ("p(--)", 1.0 - p_a - p_b + p_ab),
    ];
    for (label, value) in raw {
        if value < -1e-9 {
            return Err(Error::InvalidBehavior(format!(
                "{label} = {value:.3e} with pA={p_a}, pB={p_b}, pAB={p_ab}"
            )));
        }
    }
    Ok(raw.map(|(_, v)| v.clamp(0.0, 1.0)))
}

fn conditional(p: f64, remaining: f64) -> f64 {
    if remaining <= 1e-12 {
        0.0
    } else {
        (p / remaining).clamp(0.0, 1.0)
    }
}

fn draw_binomial(rng: &mut ChaCha8Rng, trials: u64, p: f64) -> u64 {
    if trials == 0 {
        return 0;
    }
    Binomial::new(trials, p)
        .expect("probability is clamped to [0, 1]")
        .sample(rng)
}

/// The measurement directions that maximize the CH functional on `|Φ⁺⟩`:
/// Alice along `ẑ` and `x̂`, Bob along `(ẑ ± x̂)/√2`.
pub fn tsirelson_directions() -> (Vec<MeasurementDirection>, Vec<MeasurementDirection>) {
    let dir = |v: [f64; 3]| MeasurementDirection::from_unnormalized(v).expect("nonzero");
    (
        vec![dir([0.0, 0.0, 1.0]), dir([1.0, 0.0, 0.0])],
        vec![dir([1.0, 0.0, 1.0]), dir([-1.0, 0.0, 1.0])],
    )
}

/// The quantum-optimal CH behavior: singles 1/2, joints `(1 ± 1/√2)/4`.
pub fn tsirelson_behavior() -> BehaviorVector {
    let (a_dirs, b_dirs) = tsirelson_directions();
    quantum_behavior(&maximally_entangled_state(), &a_dirs, &b_dirs)
        .expect("measurement of a valid state")
}
