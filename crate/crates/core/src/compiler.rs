//! Translates a coupled-basis label into the fiber network that heralds it.
//!
//! Detector layout: `N/2 + m` σ− detectors take the lowest indices, the
//! remaining `N/2 − m` carry σ+. Emitter 1 is wired to every detector. Each
//! later emitter either raises the running spin (wired to every detector not
//! yet reserved) or lowers it (wired to one free σ− detector through a π
//! shift and one free σ+ detector, and that pair becomes reserved). Reserved
//! detectors are only excluded for subsequent emitters; emitter 1 keeps its
//! fibers to them.

use serde_json::json;
use thiserror::Error;

use crate::half::HalfInt;
use crate::optics::{Fiber, OpticalSetup, Phase, Polarizer};
use crate::spin::{CoupledLabel, CouplingHistory, SpinStep};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("emitter {emitter}: no unreserved {polarizer} detector left", emitter = .emitter + 1)]
    PolarityExhausted { emitter: usize, polarizer: Polarizer },
    #[error("emitter {emitter}: chooser returned detector {detector}, which is not an eligible {polarizer} detector",
        emitter = .emitter + 1, detector = .detector + 1)]
    InvalidChoice { emitter: usize, detector: usize, polarizer: Polarizer },
}

/// Picks which free detector a lowering emitter reserves.
pub trait DetectorChooser {
    /// `candidates` is non-empty, ascending, and all carry `polarizer`.
    fn choose(&mut self, emitter: usize, polarizer: Polarizer, candidates: &[usize]) -> usize;
}

/// Default tie-break: lowest eligible index.
#[derive(Clone, Copy, Debug, Default)]
pub struct LowestIndex;

impl DetectorChooser for LowestIndex {
    fn choose(&mut self, _emitter: usize, _polarizer: Polarizer, candidates: &[usize]) -> usize {
        candidates[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitterRole {
    First,
    Up,
    Down,
}

impl EmitterRole {
    fn tag(self) -> &'static str {
        match self {
            EmitterRole::First => "FIRST",
            EmitterRole::Up => "UP",
            EmitterRole::Down => "DOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmitterRecord {
    pub emitter: usize,
    pub role: EmitterRole,
    pub detectors: Vec<usize>,
    /// `(σ− detector, σ+ detector)` reserved by a lowering emitter.
    pub reserved: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompilerTrace {
    pub polarizers: Vec<Polarizer>,
    pub emitters: Vec<EmitterRecord>,
}

impl CompilerTrace {
    /// JSON debugging dump with 1-based indices.
    pub fn to_json(&self) -> String {
        let emitters: Vec<_> = self
            .emitters
            .iter()
            .map(|r| {
                json!({
                    "emitter": r.emitter + 1,
                    "case": r.role.tag(),
                    "detectors": r.detectors.iter().map(|d| d + 1).collect::<Vec<_>>(),
                    "reserved": r.reserved.map(|(m, p)| json!({ "sigma_minus": m + 1, "sigma_plus": p + 1 })),
                })
            })
            .collect();
        let doc = json!({
            "polarizers": self.polarizers.iter().map(|p| p.symbol()).collect::<Vec<_>>(),
            "emitters": emitters,
        });
        serde_json::to_string_pretty(&doc).expect("trace serializes") + "\n"
    }
}

/// Detector counts `(#σ−, #σ+) = (N/2 + m, N/2 − m)`.
pub fn detector_counts(label: &CoupledLabel) -> (usize, usize) {
    let n = label.n_qubits() as i32;
    let twice_m = label.m().twice();
    // n ± 2m is even and nonnegative for valid labels.
    (((n + twice_m) / 2) as usize, ((n - twice_m) / 2) as usize)
}

pub fn compile_setup(label: &CoupledLabel) -> Result<(OpticalSetup, CompilerTrace), CompileError> {
    compile_setup_with(label, &mut LowestIndex)
}

pub fn compile_setup_with(
    label: &CoupledLabel,
    chooser: &mut dyn DetectorChooser,
) -> Result<(OpticalSetup, CompilerTrace), CompileError> {
    let n = label.n_qubits();
    let (n_minus, _) = detector_counts(label);
    let polarizers: Vec<Polarizer> =
        (0..n).map(|d| if d < n_minus { Polarizer::SigmaMinus } else { Polarizer::SigmaPlus }).collect();

    let mut reserved = vec![false; n];
    let mut fibers = Vec::new();
    let mut records = Vec::with_capacity(n);

    fibers.extend((0..n).map(|d| Fiber::new(0, d, Phase::ZERO)));
    records.push(EmitterRecord { emitter: 0, role: EmitterRole::First, detectors: (0..n).collect(), reserved: None });

    let history = label.history();
    for emitter in 1..n {
        match history.step(emitter) {
            SpinStep::Up => {
                let detectors: Vec<usize> = (0..n).filter(|&d| !reserved[d]).collect();
                fibers.extend(detectors.iter().map(|&d| Fiber::new(emitter, d, Phase::ZERO)));
                records.push(EmitterRecord { emitter, role: EmitterRole::Up, detectors, reserved: None });
            }
            SpinStep::Down => {
                let mut pick = |polarizer: Polarizer| -> Result<usize, CompileError> {
                    let candidates: Vec<usize> =
                        (0..n).filter(|&d| !reserved[d] && polarizers[d] == polarizer).collect();
                    if candidates.is_empty() {
                        return Err(CompileError::PolarityExhausted { emitter, polarizer });
                    }
                    let detector = chooser.choose(emitter, polarizer, &candidates);
                    if !candidates.contains(&detector) {
                        return Err(CompileError::InvalidChoice { emitter, detector, polarizer });
                    }
                    Ok(detector)
                };
                let minus = pick(Polarizer::SigmaMinus)?;
                let plus = pick(Polarizer::SigmaPlus)?;
                reserved[minus] = true;
                reserved[plus] = true;
                fibers.push(Fiber::new(emitter, minus, Phase::PI));
                fibers.push(Fiber::new(emitter, plus, Phase::ZERO));
                let mut detectors = vec![minus, plus];
                detectors.sort_unstable();
                records.push(EmitterRecord {
                    emitter,
                    role: EmitterRole::Down,
                    detectors,
                    reserved: Some((minus, plus)),
                });
            }
        }
    }

    let setup = OpticalSetup::new(polarizers.clone(), fibers).expect("compiled fibers are in range and distinct");
    Ok((setup, CompilerTrace { polarizers, emitters: records }))
}

/// Outcome of [`label_feasibility`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    pub reason: String,
}

/// Checks whether `(spins; m)` names a label the compiler can realise.
///
/// Beyond label validity this confirms the detector counts `N/2 ± m` are
/// nonnegative integers and that the `d = N/2 − S_N` lowering steps fit in
/// the `N/2 − |m|` detectors of the scarcer polarity.
pub fn label_feasibility(spins: &[HalfInt], m: HalfInt) -> Feasibility {
    let label = match CouplingHistory::new(spins.to_vec()).and_then(|h| CoupledLabel::new(h, m)) {
        Ok(l) => l,
        Err(e) => return Feasibility { feasible: false, reason: e.to_string() },
    };
    let n = label.n_qubits() as i32;
    let twice_m = label.m().twice();
    if (n + twice_m) % 2 != 0 || n + twice_m < 0 || n - twice_m < 0 {
        return Feasibility {
            feasible: false,
            reason: format!("detector counts N/2 ± m are not nonnegative integers for N = {n}, m = {m}"),
        };
    }
    let downs = (1..label.n_qubits()).filter(|&i| label.history().step(i) == SpinStep::Down).count() as i32;
    let scarce = (n - twice_m.abs()) / 2;
    if downs > scarce {
        return Feasibility {
            feasible: false,
            reason: format!("{downs} lowering steps exceed the {scarce} detectors of the scarcer polarity"),
        };
    }
    Feasibility {
        feasible: true,
        reason: format!("{} σ- and {} σ+ detectors, {downs} lowering steps", (n + twice_m) / 2, (n - twice_m) / 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::validate_setup;
    use Polarizer::{SigmaMinus as M, SigmaPlus as P};

    fn label(spins: &[i32], twice_m: i32) -> CoupledLabel {
        CoupledLabel::from_twice(spins, twice_m).unwrap()
    }

    #[test]
    fn triplet_up() {
        let (s, trace) = compile_setup(&label(&[1, 2], 2)).unwrap();
        assert_eq!(s.polarizers(), &[M, M]);
        assert_eq!(s.fibers().len(), 4);
        assert!(s.fibers().iter().all(|f| f.phase.is_zero()));
        assert_eq!(trace.emitters[1].role, EmitterRole::Up);
    }

    #[test]
    fn singlet_has_pi_on_sigma_minus_fiber() {
        let (s, trace) = compile_setup(&label(&[1, 0], 0)).unwrap();
        assert_eq!(s.polarizers(), &[M, P]);
        assert_eq!(s.fiber(1, 0).unwrap().phase, Phase::PI);
        assert_eq!(s.fiber(1, 1).unwrap().phase, Phase::ZERO);
        assert_eq!(s.fibers().iter().filter(|f| f.phase.is_pi()).count(), 1);
        assert_eq!(trace.emitters[1].reserved, Some((0, 1)));
    }

    #[test]
    fn three_qubit_down_topology() {
        let (s, trace) = compile_setup(&label(&[1, 2, 1], 1)).unwrap();
        assert_eq!(s.polarizers(), &[M, M, P]);
        assert_eq!(s.degrees(), vec![3, 3, 2]);
        assert_eq!(s.fiber(2, 0).unwrap().phase, Phase::PI);
        assert_eq!(s.fiber(2, 2).unwrap().phase, Phase::ZERO);
        assert!(s.fiber(2, 1).is_none());
        assert_eq!(trace.emitters[2].role, EmitterRole::Down);
        assert!(validate_setup(&s).is_empty());
    }

    #[test]
    fn w_state_is_all_to_all() {
        let (s, _) = compile_setup(&label(&[1, 2, 3], 1)).unwrap();
        assert_eq!(s, OpticalSetup::all_to_all(vec![M, M, P]));
    }

    #[test]
    fn later_up_skips_reserved_detectors() {
        // 1/2,0,1/2: emitter 2 reserves D1 (σ-) and D3 (σ+), emitter 3 keeps only D2.
        let (s, trace) = compile_setup(&label(&[1, 0, 1], 1)).unwrap();
        assert_eq!(trace.emitters[2].detectors, vec![1]);
        assert_eq!(s.degrees(), vec![3, 2, 1]);
    }

    #[test]
    fn bad_chooser_is_rejected() {
        struct Wrong;
        impl DetectorChooser for Wrong {
            fn choose(&mut self, _: usize, _: Polarizer, _: &[usize]) -> usize {
                99
            }
        }
        let err = compile_setup_with(&label(&[1, 0], 0), &mut Wrong).unwrap_err();
        assert!(matches!(err, CompileError::InvalidChoice { emitter: 1, detector: 99, .. }));
    }

    #[test]
    fn feasibility() {
        let h = |t: &[i32]| t.iter().map(|&x| HalfInt::from_twice(x)).collect::<Vec<_>>();
        assert!(label_feasibility(&h(&[1, 2, 1]), HalfInt::HALF).feasible);
        assert!(label_feasibility(&h(&[1]), HalfInt::MINUS_HALF).feasible);
        let f = label_feasibility(&h(&[1, 0]), HalfInt::from_int(1));
        assert!(!f.feasible);
        assert!(f.reason.contains("projection"), "{}", f.reason);
    }

    #[test]
    fn trace_json_is_one_based() {
        let (_, trace) = compile_setup(&label(&[1, 2, 1], 1)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&trace.to_json()).unwrap();
        assert_eq!(v["emitters"][2]["case"], "DOWN");
        assert_eq!(v["emitters"][2]["reserved"]["sigma_minus"], 1);
        assert_eq!(v["emitters"][2]["reserved"]["sigma_plus"], 3);
        assert_eq!(v["polarizers"][2], "σ+");
    }
}
