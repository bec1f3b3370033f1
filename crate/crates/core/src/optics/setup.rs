use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::spin::Qubit;

use super::matching::maximum_matching;
use super::phase::Phase;

/// Circular polarization filter in front of a detector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarizer {
    /// Passes σ− photons, heralding an emitter left in `|+⟩`.
    SigmaMinus,
    /// Passes σ+ photons, heralding an emitter left in `|−⟩`.
    SigmaPlus,
}

impl Polarizer {
    /// The ground state an emitter must have decayed into for its photon to pass.
    pub fn heralded(self) -> Qubit {
        match self {
            Polarizer::SigmaMinus => Qubit::Plus,
            Polarizer::SigmaPlus => Qubit::Minus,
        }
    }

    pub fn flipped(self) -> Polarizer {
        match self {
            Polarizer::SigmaMinus => Polarizer::SigmaPlus,
            Polarizer::SigmaPlus => Polarizer::SigmaMinus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Polarizer::SigmaMinus => "σ-",
            Polarizer::SigmaPlus => "σ+",
        }
    }
}

impl fmt::Display for Polarizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown polarizer `{0}` (expected `σ-` or `σ+`)")]
pub struct ParsePolarizerError(pub String);

impl FromStr for Polarizer {
    type Err = ParsePolarizerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "σ-" | "σ−" | "sigma-" | "s-" => Ok(Polarizer::SigmaMinus),
            "σ+" | "sigma+" | "s+" => Ok(Polarizer::SigmaPlus),
            other => Err(ParsePolarizerError(other.to_string())),
        }
    }
}

/// A fiber from an emitter to a detector. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fiber {
    pub emitter: usize,
    pub detector: usize,
    pub phase: Phase,
}

impl Fiber {
    pub fn new(emitter: usize, detector: usize, phase: Phase) -> Self {
        Fiber { emitter, detector, phase }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SetupError {
    #[error("a setup needs at least one emitter and detector")]
    Empty,
    #[error("fiber {fiber}: emitter {emitter} out of range 1..={n}", fiber = .fiber + 1, emitter = .emitter + 1)]
    EmitterOutOfRange { fiber: usize, emitter: usize, n: usize },
    #[error("fiber {fiber}: detector {detector} out of range 1..={n}", fiber = .fiber + 1, detector = .detector + 1)]
    DetectorOutOfRange { fiber: usize, detector: usize, n: usize },
    #[error("fiber {fiber}: duplicate fiber from emitter {emitter} to detector {detector}",
        fiber = .fiber + 1, emitter = .emitter + 1, detector = .detector + 1)]
    DuplicateFiber { fiber: usize, emitter: usize, detector: usize },
}

/// `n` emitters, `n` polarized detectors, and the fibers between them.
///
/// Fiber indices are checked on construction; graph-level conditions are
/// reported by [`validate_setup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpticalSetup {
    polarizers: Vec<Polarizer>,
    fibers: Vec<Fiber>,
}

impl OpticalSetup {
    pub fn new(polarizers: Vec<Polarizer>, fibers: Vec<Fiber>) -> Result<Self, SetupError> {
        let n = polarizers.len();
        if n == 0 {
            return Err(SetupError::Empty);
        }
        let mut seen = HashSet::new();
        for (k, f) in fibers.iter().enumerate() {
            if f.emitter >= n {
                return Err(SetupError::EmitterOutOfRange { fiber: k, emitter: f.emitter, n });
            }
            if f.detector >= n {
                return Err(SetupError::DetectorOutOfRange { fiber: k, detector: f.detector, n });
            }
            if !seen.insert((f.emitter, f.detector)) {
                return Err(SetupError::DuplicateFiber { fiber: k, emitter: f.emitter, detector: f.detector });
            }
        }
        Ok(OpticalSetup { polarizers, fibers })
    }

    /// Every emitter wired to every detector with no phase shift.
    pub fn all_to_all(polarizers: Vec<Polarizer>) -> Self {
        let n = polarizers.len();
        let fibers = (0..n).flat_map(|e| (0..n).map(move |d| Fiber::new(e, d, Phase::ZERO))).collect();
        OpticalSetup::new(polarizers, fibers).expect("all-to-all wiring is well formed")
    }

    pub fn n(&self) -> usize {
        self.polarizers.len()
    }

    pub fn polarizers(&self) -> &[Polarizer] {
        &self.polarizers
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn fiber(&self, emitter: usize, detector: usize) -> Option<&Fiber> {
        self.fibers.iter().find(|f| f.emitter == emitter && f.detector == detector)
    }

    /// Number of fibers leaving each emitter.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for f in &self.fibers {
            deg[f.emitter] += 1;
        }
        deg
    }

    /// Fiber phase per `(emitter, detector)`, `None` where no fiber exists.
    pub fn phase_matrix(&self) -> Vec<Vec<Option<Phase>>> {
        let n = self.n();
        let mut m = vec![vec![None; n]; n];
        for f in &self.fibers {
            m[f.emitter][f.detector] = Some(f.phase);
        }
        m
    }

    /// Same wiring with every polarizer swapped σ− ↔ σ+.
    pub fn with_flipped_polarizers(&self) -> OpticalSetup {
        OpticalSetup { polarizers: self.polarizers.iter().map(|p| p.flipped()).collect(), fibers: self.fibers.clone() }
    }

    pub fn count(&self, polarizer: Polarizer) -> usize {
        self.polarizers.iter().filter(|&&p| p == polarizer).count()
    }
}

/// A violated setup invariant. Indices are 0-based; `Display` shows them 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    IsolatedEmitter { emitter: usize },
    NoPerfectMatching { matched: usize, unmatched_emitters: Vec<usize> },
}

impl Diagnostic {
    pub fn code(&self) -> &'static str {
        match self {
            Diagnostic::IsolatedEmitter { .. } => "isolated-emitter",
            Diagnostic::NoPerfectMatching { .. } => "no-perfect-matching",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::IsolatedEmitter { emitter } => {
                write!(f, "{}: emitter {} has no fibers", self.code(), emitter + 1)
            }
            Diagnostic::NoPerfectMatching { matched, unmatched_emitters } => {
                let list: Vec<String> = unmatched_emitters.iter().map(|e| (e + 1).to_string()).collect();
                write!(
                    f,
                    "{}: at most {} emitters can reach distinct detectors; unmatched emitters [{}]",
                    self.code(),
                    matched,
                    list.join(", ")
                )
            }
        }
    }
}

/// Reports every violated graph invariant; an empty list means the setup is valid.
///
/// The matching check is skipped when an emitter is isolated, since that
/// already rules out a perfect matching.
pub fn validate_setup(setup: &OpticalSetup) -> Vec<Diagnostic> {
    let n = setup.n();
    let mut adj = vec![Vec::new(); n];
    for f in setup.fibers() {
        adj[f.emitter].push(f.detector);
    }
    let mut out: Vec<Diagnostic> = adj
        .iter()
        .enumerate()
        .filter(|(_, a)| a.is_empty())
        .map(|(emitter, _)| Diagnostic::IsolatedEmitter { emitter })
        .collect();
    if out.is_empty() {
        let matching = maximum_matching(&adj, n);
        let unmatched: Vec<usize> = (0..n).filter(|&e| matching[e].is_none()).collect();
        if !unmatched.is_empty() {
            out.push(Diagnostic::NoPerfectMatching { matched: n - unmatched.len(), unmatched_emitters: unmatched });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Polarizer::{SigmaMinus as M, SigmaPlus as P};

    #[test]
    fn two_emitter_fan_in_is_valid() {
        let s = OpticalSetup::all_to_all(vec![M, P]);
        assert!(validate_setup(&s).is_empty());
        assert_eq!(s.degrees(), vec![2, 2]);
    }

    #[test]
    fn pigeonhole_is_reported() {
        let s =
            OpticalSetup::new(vec![M, M], vec![Fiber::new(0, 0, Phase::ZERO), Fiber::new(1, 0, Phase::ZERO)]).unwrap();
        let d = validate_setup(&s);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code(), "no-perfect-matching");
        assert_eq!(d[0], Diagnostic::NoPerfectMatching { matched: 1, unmatched_emitters: vec![1] });
    }

    #[test]
    fn isolated_emitter_is_reported() {
        let s =
            OpticalSetup::new(vec![M, M], vec![Fiber::new(0, 0, Phase::ZERO), Fiber::new(0, 1, Phase::ZERO)]).unwrap();
        let d = validate_setup(&s);
        assert_eq!(d, vec![Diagnostic::IsolatedEmitter { emitter: 1 }]);
        assert_eq!(d[0].to_string(), "isolated-emitter: emitter 2 has no fibers");
    }

    #[test]
    fn empty_fiber_list_is_flagged_not_rejected() {
        let s = OpticalSetup::new(vec![M], vec![]).unwrap();
        assert_eq!(validate_setup(&s), vec![Diagnostic::IsolatedEmitter { emitter: 0 }]);
    }

    #[test]
    fn construction_errors() {
        let z = Phase::ZERO;
        assert_eq!(OpticalSetup::new(vec![], vec![]), Err(SetupError::Empty));
        assert!(matches!(
            OpticalSetup::new(vec![M], vec![Fiber::new(1, 0, z)]),
            Err(SetupError::EmitterOutOfRange { .. })
        ));
        assert!(matches!(
            OpticalSetup::new(vec![M], vec![Fiber::new(0, 3, z)]),
            Err(SetupError::DetectorOutOfRange { .. })
        ));
        let dup = OpticalSetup::new(vec![M], vec![Fiber::new(0, 0, z), Fiber::new(0, 0, Phase::PI)]);
        assert_eq!(dup, Err(SetupError::DuplicateFiber { fiber: 1, emitter: 0, detector: 0 }));
    }

    #[test]
    fn polarizer_symbols() {
        assert_eq!("σ−".parse::<Polarizer>().unwrap(), M);
        assert_eq!("sigma+".parse::<Polarizer>().unwrap(), P);
        assert!("x".parse::<Polarizer>().is_err());
        assert_eq!(M.heralded(), Qubit::Plus);
        assert_eq!(P.heralded(), Qubit::Minus);
    }
}
