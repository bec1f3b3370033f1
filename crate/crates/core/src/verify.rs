//! Closing the loop: compile, simulate and compare against the
//! Clebsch-Gordan reference, label by label or across a whole basis.

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::compiler::{compile_setup, CompileError};
use crate::simulator::{simulate, success_probability_of, SimError};
use crate::spin::{build_reference_state, enumerate_coupled_basis, CoupledLabel, SpinError};
use crate::state::{StateError, StateVector};

/// Default per-amplitude tolerance for `exact_match`.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Largest basis [`sweep_basis`] accepts.
pub const MAX_SWEEP_QUBITS: usize = 8;

pub const CSV_HEADER: [&str; 6] = ["history", "two_m", "fidelity", "success_prob", "exact", "null"];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Simulate(#[from] SimError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("sweep size {n} outside 1..={max}")]
    SweepSize { n: usize, max: usize },
    #[error("report serialization failed: {0}")]
    Report(String),
}

/// `|⟨a|b⟩|²` for normalized states.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64, StateError> {
    Ok(a.inner(b)?.norm_sqr())
}

/// True when `candidate` equals `reference` amplitude-wise after rotating
/// the candidate's global phase so that, at the first nonzero reference
/// amplitude, both share the same phase.
pub fn matches_up_to_global_phase(
    candidate: &StateVector,
    reference: &StateVector,
    tol: f64,
) -> Result<bool, StateError> {
    let Some(k) = reference.amplitudes().iter().position(|a| a.norm() > tol) else {
        return Ok(candidate.amplitudes().iter().all(|a| a.norm() <= tol));
    };
    let c = candidate.amplitudes()[k];
    if c.norm() <= tol {
        return Ok(false);
    }
    let r = reference.amplitudes()[k];
    let rotation: Complex64 = (r / r.norm()) * (c / c.norm()).conj();
    Ok(candidate.scaled(rotation).max_abs_diff(reference)? <= tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub label: CoupledLabel,
    pub fidelity: f64,
    pub exact_match: bool,
    pub success_probability: f64,
    pub null_projection: bool,
    /// Normalized simulated state (zero vector on a null projection).
    pub simulated: StateVector,
}

impl VerificationReport {
    pub fn csv_record(&self) -> [String; 6] {
        [
            self.label.history().doubled_string(),
            self.label.m().twice().to_string(),
            self.fidelity.to_string(),
            self.success_probability.to_string(),
            self.exact_match.to_string(),
            self.null_projection.to_string(),
        ]
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "label": self.label.to_string(),
            "history": self.label.history().spins().iter().map(|s| s.twice()).collect::<Vec<_>>(),
            "two_m": self.label.m().twice(),
            "fidelity": self.fidelity,
            "exact_match": self.exact_match,
            "success_probability": self.success_probability,
            "null_projection": self.null_projection,
        })
    }
}

pub fn verify_label(label: &CoupledLabel) -> Result<VerificationReport, VerifyError> {
    verify_label_with_tolerance(label, DEFAULT_TOLERANCE)
}

pub fn verify_label_with_tolerance(label: &CoupledLabel, tol: f64) -> Result<VerificationReport, VerifyError> {
    let reference = build_reference_state(label)?;
    let (setup, _) = compile_setup(label)?;
    let sim = simulate(&setup)?;
    let success_probability = success_probability_of(&sim.projection, &setup, 1.0)?;
    let (fid, exact_match) = if sim.null_postselection {
        (0.0, false)
    } else {
        (fidelity(&sim.state, &reference)?, matches_up_to_global_phase(&sim.state, &reference, tol)?)
    };
    Ok(VerificationReport {
        label: label.clone(),
        fidelity: fid,
        exact_match,
        success_probability,
        null_projection: sim.null_postselection,
        simulated: sim.state,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub n: usize,
    pub labels: usize,
    pub exact_matches: usize,
    pub min_fidelity: f64,
    pub min_success_probability: f64,
    pub max_success_probability: f64,
}

impl SweepSummary {
    pub fn all_exact(&self) -> bool {
        self.exact_matches == self.labels
    }
}

#[derive(Clone, Debug)]
pub struct Sweep {
    pub reports: Vec<VerificationReport>,
    pub summary: SweepSummary,
}

impl Sweep {
    pub fn to_csv(&self) -> Result<String, VerifyError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| VerifyError::Report(e.to_string());
        w.write_record(CSV_HEADER).map_err(err)?;
        for r in &self.reports {
            w.write_record(r.csv_record()).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| VerifyError::Report(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| VerifyError::Report(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let s = &self.summary;
        let doc = json!({
            "n": s.n,
            "reports": self.reports.iter().map(VerificationReport::to_json_value).collect::<Vec<_>>(),
            "summary": {
                "labels": s.labels,
                "exact_matches": s.exact_matches,
                "min_fidelity": s.min_fidelity,
                "min_success_probability": s.min_success_probability,
                "max_success_probability": s.max_success_probability,
            },
        });
        serde_json::to_string_pretty(&doc).expect("sweep serializes") + "\n"
    }
}

/// Verifies every coupled-basis label of `n` qubits, in enumeration order.
pub fn sweep_basis(n: usize) -> Result<Sweep, VerifyError> {
    sweep_basis_with_tolerance(n, DEFAULT_TOLERANCE)
}

pub fn sweep_basis_with_tolerance(n: usize, tol: f64) -> Result<Sweep, VerifyError> {
    if n == 0 || n > MAX_SWEEP_QUBITS {
        return Err(VerifyError::SweepSize { n, max: MAX_SWEEP_QUBITS });
    }
    let labels = enumerate_coupled_basis(n)?;
    let reports = labels.par_iter().map(|l| verify_label_with_tolerance(l, tol)).collect::<Result<Vec<_>, _>>()?;
    let summary = SweepSummary {
        n,
        labels: reports.len(),
        exact_matches: reports.iter().filter(|r| r.exact_match).count(),
        min_fidelity: reports.iter().map(|r| r.fidelity).fold(f64::INFINITY, f64::min),
        min_success_probability: reports.iter().map(|r| r.success_probability).fold(f64::INFINITY, f64::min),
        max_success_probability: reports.iter().map(|r| r.success_probability).fold(0.0, f64::max),
    };
    Ok(Sweep { reports, summary })
}
