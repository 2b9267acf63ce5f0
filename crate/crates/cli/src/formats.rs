//! File schemas: self-describing JSON for instances, bounds, and solve
//! results, plus CSV for traces and benchmark tables.
//!
//! Floats serialize through serde_json's shortest-round-trip formatting,
//! so `parse(write(x)) == x` bit-for-bit, and identical inputs always
//! produce byte-identical files (struct fields serialize in declaration
//! order; nothing time- or address-dependent is recorded).

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use grades_core::{
    MeasurementMatrix, ProblemInstance, Provenance, RipBounds, SignalVector, SolveStatus,
};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixData {
    pub rows: usize,
    pub cols: usize,
    /// Row-major nested arrays, one inner array per row.
    pub entries: Vec<Vec<f64>>,
}

impl MatrixData {
    pub fn from_matrix(m: &MeasurementMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|r| m.row(r).to_vec()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<MeasurementMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(CliError::Usage(format!(
                "matrix data is not {}x{}",
                self.rows, self.cols
            )));
        }
        let flat: Vec<f64> = self.entries.iter().flatten().copied().collect();
        Ok(MeasurementMatrix::new(self.rows, self.cols, flat)?)
    }
}

/// Provenance recorded when an instance comes from the generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenMeta {
    pub generator: String,
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub seed: u64,
    pub amplitude: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub kind: String,
    pub phi: MatrixData,
    pub y: Vec<f64>,
    pub truth: Option<Vec<f64>>,
    pub sparsity: Option<usize>,
    pub meta: Option<GenMeta>,
}

impl InstanceFile {
    pub fn from_instance(inst: &ProblemInstance, meta: Option<GenMeta>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "instance".into(),
            phi: MatrixData::from_matrix(inst.phi()),
            y: inst.y().to_vec(),
            truth: inst.truth().map(|t| t.as_slice().to_vec()),
            sparsity: inst.sparsity(),
            meta,
        }
    }

    pub fn to_instance(&self) -> Result<ProblemInstance> {
        check_kind(&self.kind, "instance", self.schema_version)?;
        let phi = self.phi.to_matrix()?;
        let inst = ProblemInstance::new(phi, self.y.clone())?;
        match &self.truth {
            Some(t) => {
                let truth = SignalVector::new(t.clone())?;
                Ok(inst.with_truth(truth, self.sparsity)?)
            }
            None => Ok(inst),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProvenanceData {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundsFile {
    pub schema_version: u32,
    pub kind: String,
    pub level: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Classical isometry constant implied by the pair.
    pub delta: f64,
    /// Whether `beta < 2 * alpha`.
    pub condition_ok: bool,
    pub provenance: ProvenanceData,
    /// `||y||^2` of the instance the bounds were computed for.
    pub y_norm_sq: f64,
    /// Epsilon the predicted bound below refers to.
    pub reference_eps: f64,
    /// Predicted iterations to reach `reference_eps`; absent when the
    /// convergence condition fails.
    pub predicted_iterations: Option<u64>,
}

impl BoundsFile {
    pub fn from_bounds(bounds: &RipBounds, y_norm_sq: f64, reference_eps: f64) -> Self {
        let provenance = match bounds.provenance() {
            Provenance::Exact => ProvenanceData { mode: "exact".into(), trials: None, seed: None },
            Provenance::Sampled { trials, seed } => ProvenanceData {
                mode: "sampled".into(),
                trials: Some(trials),
                seed: Some(seed),
            },
        };
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "bounds".into(),
            level: bounds.sparsity(),
            alpha: bounds.alpha(),
            beta: bounds.beta(),
            delta: bounds.delta(),
            condition_ok: bounds.condition_ok(),
            provenance,
            y_norm_sq,
            reference_eps,
            predicted_iterations: bounds.iteration_bound(y_norm_sq, reference_eps).ok(),
        }
    }

    pub fn to_bounds(&self) -> Result<RipBounds> {
        check_kind(&self.kind, "bounds", self.schema_version)?;
        let provenance = match self.provenance.mode.as_str() {
            "exact" => Provenance::Exact,
            "sampled" => Provenance::Sampled {
                trials: self.provenance.trials.unwrap_or(0),
                seed: self.provenance.seed.unwrap_or(0),
            },
            other => return Err(CliError::Usage(format!("unknown provenance mode '{other}'"))),
        };
        Ok(RipBounds::new(self.alpha, self.beta, self.level, provenance)?)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ResultFile {
    pub schema_version: u32,
    pub kind: String,
    pub x: Vec<f64>,
    pub status: String,
    pub iterations: usize,
    pub final_objective: f64,
    pub gamma: f64,
    pub eps: f64,
    /// "certified" (exact bounds), "heuristic" (sampled bounds), or
    /// "manual" (caller-chosen gamma).
    pub mode: String,
    pub predicted_iterations: Option<u64>,
    pub recovery_error: Option<f64>,
}

pub fn status_str(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Converged => "converged",
        SolveStatus::IterationCapReached => "iteration_cap_reached",
        SolveStatus::ConditionViolated => "condition_violated",
    }
}

fn check_kind(kind: &str, expected: &str, version: u32) -> Result<()> {
    if kind != expected {
        return Err(CliError::Usage(format!("expected a {expected} file, found kind '{kind}'")));
    }
    if version != SCHEMA_VERSION {
        return Err(CliError::Usage(format!(
            "unsupported schema_version {version} (supported: {SCHEMA_VERSION})"
        )));
    }
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut buf = serde_json::to_vec_pretty(value)
        .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))?;
    buf.push(b'\n');
    fs::write(path, buf).map_err(CliError::io(path))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let data = fs::read(path).map_err(CliError::io(path))?;
    serde_json::from_slice(&data)
        .map_err(|e| CliError::Usage(format!("{}: invalid file: {e}", path.display())))
}

/// Objective trace as `iteration,objective` CSV with LF line endings.
pub fn write_trace(path: &Path, trace: &[f64]) -> Result<()> {
    let mut out = String::from("iteration,objective\n");
    for (t, f) in trace.iter().enumerate() {
        out.push_str(&format!("{t},{f}\n"));
    }
    let mut file = fs::File::create(path).map_err(CliError::io(path))?;
    file.write_all(out.as_bytes()).map_err(CliError::io(path))
}
