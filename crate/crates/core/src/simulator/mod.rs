//! Post-selected N-photon coincidence: which atomic state a successful
//! detection event projects the emitters onto, and how likely that event is.
//!
//! Emitter `i` decays to `|+⟩` with a σ− photon or to `|−⟩` with a σ+ photon.
//! A detector's filter passes only one polarization, so a coincidence with
//! atomic outcome `b` is a bijection emitter → detector along existing fibers
//! whose filters all agree with `b`. Since the detectors cannot tell which
//! emitter sent a photon, all such bijections add coherently and the
//! coefficient of `b` is the permanent of
//! `M_b[i][j] = e^{iφ_ij}` (fiber exists, filter `j` passes qubit `i`'s photon), else `0`.

mod bruteforce;
mod permanent;
mod probability;

use std::fmt::Write as _;

use num_complex::{Complex, Complex64};
use rayon::prelude::*;
use thiserror::Error;

use crate::optics::{validate_setup, Diagnostic, OpticalSetup, Polarizer};
use crate::state::{bitstring, StateVector};

pub use bruteforce::{simulate_bruteforce, MAX_BRUTEFORCE_QUBITS};
pub use permanent::{ryser, PermanentScalar};
pub use probability::{success_probability, success_probability_of};

/// Largest setup `simulate` accepts. Cost grows as `C(N, N/2) · 2^N · N`.
pub const MAX_SIM_QUBITS: usize = 14;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SimError {
    #[error("setup is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidSetup(Vec<Diagnostic>),
    #[error("{n} emitters exceeds the limit of {max} for this method")]
    TooLarge { n: usize, max: usize },
    #[error("per-photon efficiency {0} outside (0, 1]")]
    BadEfficiency(f64),
}

/// Unnormalized coincidence amplitudes, one per atomic bitstring.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    /// Every fiber phase is a multiple of π/2: Gaussian integers.
    Exact(Vec<Complex<i64>>),
    Float(Vec<Complex64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    n: usize,
    coefficients: Coefficients,
}

impl Projection {
    pub(crate) fn new(n: usize, coefficients: Coefficients) -> Self {
        Projection { n, coefficients }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coefficients, Coefficients::Exact(_))
    }

    /// Exact coefficient of `index`, when available.
    pub fn exact(&self, index: usize) -> Option<Complex<i64>> {
        match &self.coefficients {
            Coefficients::Exact(c) => Some(c[index]),
            Coefficients::Float(_) => None,
        }
    }

    pub fn get(&self, index: usize) -> Complex64 {
        match &self.coefficients {
            Coefficients::Exact(c) => Complex64::new(c[index].re as f64, c[index].im as f64),
            Coefficients::Float(c) => c[index],
        }
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_null(&self) -> bool {
        match &self.coefficients {
            Coefficients::Exact(c) => c.iter().all(|z| z.re == 0 && z.im == 0),
            Coefficients::Float(c) => c.iter().all(|z| z.norm() == 0.0),
        }
    }

    /// `Σ_b |c_b|²`.
    pub fn norm_sqr(&self) -> f64 {
        match &self.coefficients {
            Coefficients::Exact(c) => c.iter().map(|z| (z.re * z.re + z.im * z.im) as f64).sum(),
            Coefficients::Float(c) => c.iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    /// Largest coefficient-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &Projection) -> f64 {
        assert_eq!(self.n, other.n, "projections over different qubit counts");
        (0..self.len()).map(|b| (self.get(b) - other.get(b)).norm()).fold(0.0, f64::max)
    }

    /// Projection with every qubit relabelled `|+⟩ ↔ |−⟩`.
    pub fn bit_flipped(&self) -> Projection {
        let mask = self.len() - 1;
        let coefficients = match &self.coefficients {
            Coefficients::Exact(c) => Coefficients::Exact((0..c.len()).map(|b| c[b ^ mask]).collect()),
            Coefficients::Float(c) => Coefficients::Float((0..c.len()).map(|b| c[b ^ mask]).collect()),
        };
        Projection { n: self.n, coefficients }
    }

    pub fn to_state(&self) -> StateVector {
        StateVector::from_amplitudes((0..self.len()).map(|b| self.get(b)).collect()).expect("2^n coefficients")
    }

    /// Dump: one `bitstring re im` line per nonzero coefficient, in bitstring order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in 0..self.len() {
            let bits = bitstring(b, self.n);
            match &self.coefficients {
                Coefficients::Exact(c) if c[b].re != 0 || c[b].im != 0 => {
                    let _ = writeln!(out, "{bits} {} {}", c[b].re, c[b].im);
                }
                Coefficients::Float(c) if c[b].norm() != 0.0 => {
                    let _ = writeln!(out, "{bits} {} {}", c[b].re, c[b].im);
                }
                _ => {}
            }
        }
        out
    }
}

/// Result of [`simulate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Simulation {
    pub projection: Projection,
    /// Normalized projected state; all zeros when `null_postselection`.
    pub state: StateVector,
    /// No bijection is compatible with any bitstring: the event never happens.
    pub null_postselection: bool,
}

/// Computes the post-selected projection with one Ryser permanent per bitstring.
pub fn simulate(setup: &OpticalSetup) -> Result<Simulation, SimError> {
    let diagnostics = validate_setup(setup);
    if !diagnostics.is_empty() {
        return Err(SimError::InvalidSetup(diagnostics));
    }
    let n = setup.n();
    if n > MAX_SIM_QUBITS {
        return Err(SimError::TooLarge { n, max: MAX_SIM_QUBITS });
    }
    let phases = setup.phase_matrix();
    let polarizers = setup.polarizers();
    let n_plus = setup.count(Polarizer::SigmaPlus) as u32;

    // Qubit i can feed detector j iff j's filter heralds the qubit's state.
    let compatible = |b: usize, i: usize, j: usize| ((b >> (n - 1 - i)) & 1) == polarizers[j].heralded().bit();
    // A bijection needs exactly as many |−⟩ qubits as σ+ detectors.
    let feasible = |b: usize| (b as u64).count_ones() == n_plus;

    let exact = setup.fibers().iter().all(|f| f.phase.unit_gaussian().is_some());
    let coefficients = if exact {
        let units: Vec<Vec<Option<Complex<i128>>>> = phases
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.and_then(|p| p.unit_gaussian()).map(|g| Complex::new(g.re as i128, g.im as i128)))
                    .collect()
            })
            .collect();
        let c = (0..1usize << n)
            .into_par_iter()
            .map(|b| {
                if !feasible(b) {
                    return Complex::new(0, 0);
                }
                let m: Vec<Complex<i128>> = (0..n * n)
                    .map(|k| {
                        let (i, j) = (k / n, k % n);
                        match units[i][j] {
                            Some(u) if compatible(b, i, j) => u,
                            _ => Complex::new(0, 0),
                        }
                    })
                    .collect();
                let p = ryser(&m, n);
                Complex::new(
                    i64::try_from(p.re).expect("permanent bounded by N!"),
                    i64::try_from(p.im).expect("permanent bounded by N!"),
                )
            })
            .collect();
        Coefficients::Exact(c)
    } else {
        let units: Vec<Vec<Option<Complex64>>> =
            phases.iter().map(|row| row.iter().map(|p| p.map(|p| p.unit())).collect()).collect();
        let c = (0..1usize << n)
            .into_par_iter()
            .map(|b| {
                if !feasible(b) {
                    return Complex64::new(0.0, 0.0);
                }
                let m: Vec<Complex64> = (0..n * n)
                    .map(|k| {
                        let (i, j) = (k / n, k % n);
                        match units[i][j] {
                            Some(u) if compatible(b, i, j) => u,
                            _ => Complex64::new(0.0, 0.0),
                        }
                    })
                    .collect();
                ryser(&m, n)
            })
            .collect();
        Coefficients::Float(c)
    };

    let projection = Projection::new(n, coefficients);
    let null_postselection = projection.is_null();
    let mut state = projection.to_state();
    if !null_postselection {
        state.normalize().expect("nonzero projection");
    }
    Ok(Simulation { projection, state, null_postselection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::{Fiber, Phase};
    use crate::state::parse_bitstring;
    use Polarizer::{SigmaMinus as M, SigmaPlus as P};

    fn exact(sim: &Simulation, bits: &str) -> Complex<i64> {
        sim.projection.exact(parse_bitstring(bits).unwrap()).unwrap()
    }

    fn fig3_setup() -> OpticalSetup {
        let z = Phase::ZERO;
        let mut fibers: Vec<Fiber> = (0..2).flat_map(|e| (0..3).map(move |d| Fiber::new(e, d, z))).collect();
        fibers.push(Fiber::new(2, 0, Phase::PI));
        fibers.push(Fiber::new(2, 2, z));
        OpticalSetup::new(vec![M, M, P], fibers).unwrap()
    }

    #[test]
    fn three_qubit_switch_setup() {
        let sim = simulate(&fig3_setup()).unwrap();
        assert_eq!(exact(&sim, "++-"), Complex::new(2, 0));
        assert_eq!(exact(&sim, "+-+"), Complex::new(-1, 0));
        assert_eq!(exact(&sim, "-++"), Complex::new(-1, 0));
        assert_eq!(sim.projection.to_text(), "++- 2 0\n+-+ -1 0\n-++ -1 0\n");
        let k = 1.0 / 6f64.sqrt();
        assert!((sim.state.amplitudes()[0b001].re - 2.0 * k).abs() < 1e-15);
    }

    #[test]
    fn both_sigma_minus_gives_plus_plus() {
        let sim = simulate(&OpticalSetup::all_to_all(vec![M, M])).unwrap();
        assert_eq!(sim.projection.to_text(), "++ 2 0\n");
        assert_eq!(sim.state.amplitudes()[0].re, 1.0);
    }

    #[test]
    fn single_emitter() {
        let s = OpticalSetup::new(vec![M], vec![Fiber::new(0, 0, Phase::ZERO)]).unwrap();
        let sim = simulate(&s).unwrap();
        assert_eq!(sim.projection.to_text(), "+ 1 0\n");
    }

    #[test]
    fn singlet_wiring() {
        let s = OpticalSetup::new(
            vec![M, P],
            vec![
                Fiber::new(0, 0, Phase::ZERO),
                Fiber::new(0, 1, Phase::ZERO),
                Fiber::new(1, 0, Phase::PI),
                Fiber::new(1, 1, Phase::ZERO),
            ],
        )
        .unwrap();
        let sim = simulate(&s).unwrap();
        assert_eq!(exact(&sim, "+-"), Complex::new(1, 0));
        assert_eq!(exact(&sim, "-+"), Complex::new(-1, 0));
    }

    #[test]
    fn null_postselection_is_reported() {
        // The two bijections onto |++⟩ cancel: 1·1 + i·i = 0.
        let s = OpticalSetup::new(
            vec![M, M],
            vec![
                Fiber::new(0, 0, Phase::ZERO),
                Fiber::new(0, 1, Phase::new(1, 2)),
                Fiber::new(1, 0, Phase::new(1, 2)),
                Fiber::new(1, 1, Phase::ZERO),
            ],
        )
        .unwrap();
        let sim = simulate(&s).unwrap();
        assert!(sim.null_postselection);
        assert_eq!(sim.projection.to_text(), "");
        assert_eq!(sim.state.norm_sqr(), 0.0);
    }

    #[test]
    fn invalid_setup_is_an_error() {
        let s = OpticalSetup::new(vec![M, M], vec![Fiber::new(0, 0, Phase::ZERO)]).unwrap();
        assert!(matches!(simulate(&s), Err(SimError::InvalidSetup(_))));
    }

    #[test]
    fn general_phases_use_float_path() {
        let s = OpticalSetup::new(
            vec![M, P],
            vec![
                Fiber::new(0, 0, Phase::ZERO),
                Fiber::new(0, 1, Phase::ZERO),
                Fiber::new(1, 0, Phase::new(1, 3)),
                Fiber::new(1, 1, Phase::ZERO),
            ],
        )
        .unwrap();
        let sim = simulate(&s).unwrap();
        assert!(!sim.projection.is_exact());
        let c = sim.projection.get(parse_bitstring("-+").unwrap());
        assert!((c - Phase::new(1, 3).unit()).norm() < 1e-15);
    }
}
