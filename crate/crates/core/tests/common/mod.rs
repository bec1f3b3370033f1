#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use spin_coupling::compiler::{compile_setup_with, DetectorChooser};
use spin_coupling::optics::{validate_setup, Fiber, OpticalSetup, Phase, Polarizer};
use spin_coupling::spin::{CoupledLabel, Qubit};
use spin_coupling::StateVector;

/// Outcome of running the emission/detection process directly.
pub struct PhysicalOutcome {
    /// Normalized conditional atomic state, `None` if the event cannot happen.
    pub state: Option<StateVector>,
    pub probability: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum PhotonPol {
    SigmaMinus,
    SigmaPlus,
}

/// Atomic bitstring and the sorted multiset of occupied photon modes.
type JointKey = (usize, Vec<Option<(usize, PhotonPol)>>);

/// Where one emitter's photon ends up in one branch of the superposition.
#[derive(Clone, Copy)]
enum Landing {
    Detector { detector: usize, pol: PhotonPol },
    Lost,
}

/// Expands the full emission superposition and projects it onto the
/// coincidence event, without any permanent or matching machinery.
///
/// Each emitter is in `(|+⟩|σ−⟩ + |−⟩|σ+⟩)/√2`; its photon enters each of its
/// `deg` fibers with amplitude `e^{iφ}/√deg`, then survives with amplitude
/// `√η` or is lost with amplitude `√(1−η)`. The event keeps branches where
/// every detector receives exactly one photon whose polarization its filter
/// passes. All such branches leave the light in the same Fock state (one
/// photon per detector mode), so their amplitudes add per atomic outcome.
pub fn physical_oracle(setup: &OpticalSetup, efficiency: f64) -> PhysicalOutcome {
    let n = setup.n();
    let mut branches: Vec<Vec<(Qubit, Landing, Complex64)>> = vec![Vec::new(); n];
    let mut fibers_of: Vec<Vec<&Fiber>> = vec![Vec::new(); n];
    for f in setup.fibers() {
        fibers_of[f.emitter].push(f);
    }
    for e in 0..n {
        let deg = fibers_of[e].len() as f64;
        for (qubit, pol) in [(Qubit::Plus, PhotonPol::SigmaMinus), (Qubit::Minus, PhotonPol::SigmaPlus)] {
            let decay = 1.0 / 2f64.sqrt();
            for f in &fibers_of[e] {
                let r = f.phase.over_pi();
                let theta = std::f64::consts::PI * (*r.numer() as f64) / (*r.denom() as f64);
                let fiber_amp = Complex64::from_polar(1.0 / deg.sqrt(), theta);
                branches[e].push((
                    qubit,
                    Landing::Detector { detector: f.detector, pol },
                    fiber_amp * decay * efficiency.sqrt(),
                ));
                if efficiency < 1.0 {
                    branches[e].push((qubit, Landing::Lost, fiber_amp * decay * (1.0 - efficiency).sqrt()));
                }
            }
        }
    }

    // Joint amplitude per (atomic bitstring, light configuration).
    let mut joint: HashMap<JointKey, Complex64> = HashMap::new();
    let mut choice = vec![0usize; n];
    loop {
        let mut bits = 0usize;
        let mut amp = Complex64::new(1.0, 0.0);
        let mut landings = Vec::with_capacity(n);
        for e in 0..n {
            let (q, landing, a) = branches[e][choice[e]];
            bits = (bits << 1) | q.bit();
            amp *= a;
            landings.push(match landing {
                Landing::Detector { detector, pol } => Some((detector, pol)),
                Landing::Lost => None,
            });
        }
        // Photons are indistinguishable: the light state is the multiset of modes.
        landings.sort_by_key(|l| l.map(|(d, p)| (d, p == PhotonPol::SigmaPlus)));
        *joint.entry((bits, landings)).or_insert(Complex64::new(0.0, 0.0)) += amp;

        let mut k = n;
        loop {
            if k == 0 {
                return project(setup, joint);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < branches[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

fn project(setup: &OpticalSetup, joint: HashMap<JointKey, Complex64>) -> PhysicalOutcome {
    let n = setup.n();
    let passes = |d: usize, p: PhotonPol| match setup.polarizers()[d] {
        Polarizer::SigmaMinus => p == PhotonPol::SigmaMinus,
        Polarizer::SigmaPlus => p == PhotonPol::SigmaPlus,
    };
    let mut conditional = StateVector::zeros(n);
    for ((bits, light), amp) in joint {
        let mut hits = vec![0usize; n];
        let mut ok = true;
        for l in &light {
            match l {
                Some((d, p)) if passes(*d, *p) => hits[*d] += 1,
                _ => ok = false,
            }
        }
        if ok && hits.iter().all(|&h| h == 1) {
            conditional.amplitudes_mut()[bits] += amp;
        }
    }
    let probability = conditional.norm_sqr();
    let state = (probability > 0.0).then(|| {
        let mut s = conditional;
        s.normalize().unwrap();
        s
    });
    PhysicalOutcome { state, probability }
}

/// A random setup that admits a perfect matching: a random bijection plus
/// extra fibers with probability `density`, phases drawn from `phases`.
pub fn random_valid_setup<R: Rng>(rng: &mut R, n: usize, density: f64, phases: &[Phase]) -> OpticalSetup {
    let polarizers: Vec<Polarizer> =
        (0..n).map(|_| if rng.random_bool(0.5) { Polarizer::SigmaMinus } else { Polarizer::SigmaPlus }).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut fibers = Vec::new();
    for (e, &target) in perm.iter().enumerate() {
        for d in 0..n {
            if target == d || rng.random_bool(density) {
                fibers.push(Fiber::new(e, d, *phases.choose(rng).unwrap()));
            }
        }
    }
    fibers.shuffle(rng);
    let setup = OpticalSetup::new(polarizers, fibers).unwrap();
    assert!(validate_setup(&setup).is_empty());
    setup
}

/// Follows a fixed script of candidate positions (0 past its end) and
/// records how many candidates it was offered at each call.
pub struct Scripted {
    pub script: Vec<usize>,
    pub offered: Vec<usize>,
}

impl DetectorChooser for Scripted {
    fn choose(&mut self, _: usize, _: Polarizer, candidates: &[usize]) -> usize {
        let k = self.offered.len();
        self.offered.push(candidates.len());
        candidates[self.script.get(k).copied().unwrap_or(0)]
    }
}

/// Every sequence of tie-break choices the compiler can be steered through for `label`.
pub fn all_choice_scripts(label: &CoupledLabel) -> Vec<Vec<usize>> {
    fn explore(label: &CoupledLabel, prefix: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut chooser = Scripted { script: prefix.clone(), offered: Vec::new() };
        compile_setup_with(label, &mut chooser).unwrap();
        if chooser.offered.len() == prefix.len() {
            out.push(prefix);
            return;
        }
        for c in 0..chooser.offered[prefix.len()] {
            let mut next = prefix.clone();
            next.push(c);
            explore(label, next, out);
        }
    }
    let mut out = Vec::new();
    explore(label, Vec::new(), &mut out);
    out
}
