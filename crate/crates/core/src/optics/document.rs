//! JSON setup document.
//!
//! ```json
//! {
//!   "n": 2,
//!   "polarizers": ["σ-", "σ+"],
//!   "fibers": [
//!     { "emitter": 1, "detector": 1, "phase_over_pi": "0" },
//!     { "emitter": 2, "detector": 1, "phase_over_pi": "1" }
//!   ]
//! }
//! ```
//!
//! Emitter and detector indices are 1-based. `phase_over_pi` is an exact
//! rational string (`"0"`, `"1"`, `"1/2"`); plain JSON integers are also
//! accepted on input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::phase::Phase;
use super::setup::{Fiber, OpticalSetup, Polarizer, SetupError};

#[derive(Debug, Error)]
pub enum SetupParseError {
    #[error("malformed setup document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetupDoc {
    n: usize,
    polarizers: Vec<String>,
    fibers: Vec<FiberDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberDoc {
    emitter: usize,
    detector: usize,
    phase_over_pi: PhaseDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PhaseDoc {
    Text(String),
    Integer(i64),
}

pub fn serialize_setup(setup: &OpticalSetup) -> String {
    let doc = SetupDoc {
        n: setup.n(),
        polarizers: setup.polarizers().iter().map(|p| p.symbol().to_string()).collect(),
        fibers: setup
            .fibers()
            .iter()
            .map(|f| FiberDoc {
                emitter: f.emitter + 1,
                detector: f.detector + 1,
                phase_over_pi: PhaseDoc::Text(f.phase.to_string()),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("setup documents always serialize");
    text.push('\n');
    text
}

pub fn parse_setup(text: &str) -> Result<OpticalSetup, SetupParseError> {
    let doc: SetupDoc = serde_json::from_str(text)?;
    let invalid = |location: String, message: String| SetupParseError::Invalid { location, message };

    if doc.polarizers.len() != doc.n {
        return Err(invalid(
            "polarizers".into(),
            format!(
                "{} polarizers listed but n = {} (detector count must equal emitter count)",
                doc.polarizers.len(),
                doc.n
            ),
        ));
    }
    let polarizers = doc
        .polarizers
        .iter()
        .enumerate()
        .map(|(k, p)| p.parse::<Polarizer>().map_err(|e| invalid(format!("polarizers[{k}]"), e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;

    let mut fibers = Vec::with_capacity(doc.fibers.len());
    for (k, f) in doc.fibers.iter().enumerate() {
        let loc = |field: &str| format!("fibers[{k}].{field}");
        let index = |value: usize, field: &str| {
            if (1..=doc.n).contains(&value) {
                Ok(value - 1)
            } else {
                Err(invalid(loc(field), format!("{value} out of range 1..={}", doc.n)))
            }
        };
        let emitter = index(f.emitter, "emitter")?;
        let detector = index(f.detector, "detector")?;
        let phase = match &f.phase_over_pi {
            PhaseDoc::Integer(i) => Phase::new(*i, 1),
            PhaseDoc::Text(s) => {
                s.parse().map_err(|e: super::phase::ParsePhaseError| invalid(loc("phase_over_pi"), e.to_string()))?
            }
        };
        fibers.push(Fiber::new(emitter, detector, phase));
    }

    OpticalSetup::new(polarizers, fibers).map_err(|e| {
        let location = match &e {
            SetupError::Empty => "n".to_string(),
            SetupError::EmitterOutOfRange { fiber, .. }
            | SetupError::DetectorOutOfRange { fiber, .. }
            | SetupError::DuplicateFiber { fiber, .. } => format!("fibers[{fiber}]"),
        };
        invalid(location, e.to_string())
    })
}
