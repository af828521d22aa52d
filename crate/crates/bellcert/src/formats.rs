//! On-disk JSON and CSV formats.
//!
//! The structs here are the stable file contract — their field names
//! (`pA`, `hAB`, `trialsPerContext`, …) are what other tools parse — while
//! the domain types stay free to evolve separately. All numbers are plain
//! decimals; NaN and infinities are rejected on read (JSON cannot carry them
//! literally, but overflowing decimals like `1e999` deserialize to infinity)
//! and cannot be produced on write. Writes go through a temp-file-then-rename
//! so readers never observe a half-written artifact.

use crate::error::{Error, Result};
use crate::scenario::{BehaviorVector, BellInequality, CountRecord, Scenario};
use crate::efficiency::CurvePoint;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

/// Behavior file: `{"n", "m", "pA", "pB", "pAB"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BehaviorFile {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "pA")]
    pub p_a: Vec<f64>,
    #[serde(rename = "pB")]
    pub p_b: Vec<f64>,
    #[serde(rename = "pAB")]
    pub p_ab: Vec<Vec<f64>>,
}

impl BehaviorFile {
    pub fn from_behavior(behavior: &BehaviorVector) -> Self {
        let s = behavior.scenario();
        BehaviorFile {
            n: s.n(),
            m: s.m(),
            p_a: behavior.p_a().to_vec(),
            p_b: behavior.p_b().to_vec(),
            p_ab: (0..s.n())
                .map(|i| (0..s.m()).map(|j| behavior.p_ab(i, j)).collect())
                .collect(),
        }
    }

    pub fn into_behavior(self) -> Result<BehaviorVector> {
        ensure_finite("pA", self.p_a.iter())?;
        ensure_finite("pB", self.p_b.iter())?;
        ensure_finite("pAB", self.p_ab.iter().flatten())?;
        let scenario = Scenario::new(self.n, self.m)?;
        BehaviorVector::new(scenario, self.p_a, self.p_b, self.p_ab)
    }
}

/// Inequality file: `{"n", "m", "hA", "hB", "hAB"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalityFile {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "hA")]
    pub h_a: Vec<f64>,
    #[serde(rename = "hB")]
    pub h_b: Vec<f64>,
    #[serde(rename = "hAB")]
    pub h_ab: Vec<Vec<f64>>,
}

impl InequalityFile {
    pub fn from_inequality(ineq: &BellInequality) -> Self {
        let s = ineq.scenario();
        InequalityFile {
            n: s.n(),
            m: s.m(),
            h_a: ineq.h_a().to_vec(),
            h_b: ineq.h_b().to_vec(),
            h_ab: (0..s.n())
                .map(|i| (0..s.m()).map(|j| ineq.h_ab(i, j)).collect())
                .collect(),
        }
    }

    pub fn into_inequality(self) -> Result<BellInequality> {
        ensure_finite("hA", self.h_a.iter())?;
        ensure_finite("hB", self.h_b.iter())?;
        ensure_finite("hAB", self.h_ab.iter().flatten())?;
        let scenario = Scenario::new(self.n, self.m)?;
        BellInequality::new(scenario, self.h_a, self.h_b, self.h_ab)
    }
}

/// Counts file: `{"n", "m", "nA", "nB", "nAB", "trialsPerContext"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountsFile {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "nA")]
    pub n_a: Vec<u64>,
    #[serde(rename = "nB")]
    pub n_b: Vec<u64>,
    #[serde(rename = "nAB")]
    pub n_ab: Vec<Vec<u64>>,
    #[serde(rename = "trialsPerContext")]
    pub trials_per_context: u64,
}

impl CountsFile {
    pub fn from_counts(counts: &CountRecord) -> Self {
        let s = counts.scenario();
        CountsFile {
            n: s.n(),
            m: s.m(),
            n_a: counts.n_a().to_vec(),
            n_b: counts.n_b().to_vec(),
            n_ab: (0..s.n())
                .map(|i| (0..s.m()).map(|j| counts.n_ab(i, j)).collect())
                .collect(),
            trials_per_context: counts.trials_per_context(),
        }
    }

    pub fn into_counts(self) -> Result<CountRecord> {
        let scenario = Scenario::new(self.n, self.m)?;
        CountRecord::new(
            scenario,
            self.n_a,
            self.n_b,
            self.n_ab,
            self.trials_per_context,
        )
    }
}

/// Scalar result report: `{"value", "status"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValueReport {
    pub value: f64,
    pub status: String,
}

/// Efficiency bound report: `{"etaLower", "modelClass", "q"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EtaBoundReport {
    #[serde(rename = "etaLower")]
    pub eta_lower: f64,
    #[serde(rename = "modelClass")]
    pub model_class: String,
    pub q: f64,
}

fn ensure_finite<'a>(field: &str, values: impl Iterator<Item = &'a f64>) -> Result<()> {
    for (idx, value) in values.enumerate() {
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!(
                "{field}[{idx}] is {value}; file numbers must be finite"
            )));
        }
    }
    Ok(())
}

/// Serializes `value` as pretty JSON and writes it atomically.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_behavior(path: &Path) -> Result<BehaviorVector> {
    read_json::<BehaviorFile>(path)?.into_behavior()
}

pub fn write_behavior(path: &Path, behavior: &BehaviorVector) -> Result<()> {
    write_json(path, &BehaviorFile::from_behavior(behavior))
}

pub fn read_inequality(path: &Path) -> Result<BellInequality> {
    read_json::<InequalityFile>(path)?.into_inequality()
}

pub fn write_inequality(path: &Path, ineq: &BellInequality) -> Result<()> {
    write_json(path, &InequalityFile::from_inequality(ineq))
}

pub fn read_counts(path: &Path) -> Result<CountRecord> {
    read_json::<CountsFile>(path)?.into_counts()
}

pub fn write_counts(path: &Path, counts: &CountRecord) -> Result<()> {
    write_json(path, &CountsFile::from_counts(counts))
}

/// Renders curve points as CSV with the `known_eta,bound,q` header.
pub fn curve_csv_string(points: &[CurvePoint]) -> String {
    let mut text = String::from("known_eta,bound,q\n");
    for p in points {
        text.push_str(&format!("{},{},{}\n", p.known_eta, p.bound, p.q));
    }
    text
}

/// Writes curve points as CSV with the `known_eta,bound,q` header.
pub fn write_curve_csv(path: &Path, points: &[CurvePoint]) -> Result<()> {
    write_atomic(path, curve_csv_string(points).as_bytes())
}

/// Writes via a temp file in the destination directory plus rename, so a
/// crash mid-write leaves either the old file or the new one, never a mix.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|persist| persist.error)?;
    Ok(())
}
