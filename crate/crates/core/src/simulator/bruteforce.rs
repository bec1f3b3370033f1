//! Reference projection by enumerating every emitter → detector bijection.

use itertools::Itertools;
use num_complex::{Complex, Complex64};

use crate::optics::{OpticalSetup, Phase, Polarizer};

use super::{Coefficients, Projection, SimError};

/// `N!` grows too fast beyond this.
pub const MAX_BRUTEFORCE_QUBITS: usize = 10;

/// Same contract as [`super::simulate`]'s projection, computed as a sum over
/// all `N!` permutations. Does not require a valid setup: a setup without
/// any compatible bijection simply yields the zero projection.
pub fn simulate_bruteforce(setup: &OpticalSetup) -> Result<Projection, SimError> {
    let n = setup.n();
    if n > MAX_BRUTEFORCE_QUBITS {
        return Err(SimError::TooLarge { n, max: MAX_BRUTEFORCE_QUBITS });
    }
    let mut wiring: Vec<Vec<Option<Phase>>> = vec![vec![None; n]; n];
    for f in setup.fibers() {
        wiring[f.emitter][f.detector] = Some(f.phase);
    }
    // Detector j sees an atom left in |−⟩ (bit 1) iff its filter is σ+.
    let detector_bit: Vec<usize> = setup.polarizers().iter().map(|&p| usize::from(p == Polarizer::SigmaPlus)).collect();
    let quarter_turn_only = setup.fibers().iter().all(|f| f.phase.quarter_turns().is_some());

    let mut exact = vec![Complex::new(0i64, 0); 1 << n];
    let mut float = vec![Complex64::new(0.0, 0.0); 1 << n];
    'perms: for perm in (0..n).permutations(n) {
        let mut bits = 0usize;
        let mut quarter_turns = 0u32;
        let mut angle = 0.0f64;
        for (emitter, &detector) in perm.iter().enumerate() {
            let Some(phase) = wiring[emitter][detector] else {
                continue 'perms;
            };
            bits = (bits << 1) | detector_bit[detector];
            if quarter_turn_only {
                quarter_turns += u32::from(phase.quarter_turns().expect("checked above"));
            } else {
                let r = phase.over_pi();
                angle += std::f64::consts::PI * (*r.numer() as f64) / (*r.denom() as f64);
            }
        }
        if quarter_turn_only {
            exact[bits] += match quarter_turns % 4 {
                0 => Complex::new(1, 0),
                1 => Complex::new(0, 1),
                2 => Complex::new(-1, 0),
                _ => Complex::new(0, -1),
            };
        } else {
            float[bits] += Complex64::new(angle.cos(), angle.sin());
        }
    }
    let coefficients = if quarter_turn_only { Coefficients::Exact(exact) } else { Coefficients::Float(float) };
    Ok(Projection::new(n, coefficients))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::Fiber;

    #[test]
    fn no_compatible_matching_is_all_zero() {
        // Both emitters only reach detector 1.
        let s = OpticalSetup::new(
            vec![Polarizer::SigmaMinus, Polarizer::SigmaPlus],
            vec![Fiber::new(0, 0, Phase::ZERO), Fiber::new(1, 0, Phase::ZERO)],
        )
        .unwrap();
        assert!(simulate_bruteforce(&s).unwrap().is_null());
    }

    #[test]
    fn size_limit() {
        let s = OpticalSetup::all_to_all(vec![Polarizer::SigmaMinus; MAX_BRUTEFORCE_QUBITS + 1]);
        assert!(matches!(simulate_bruteforce(&s), Err(SimError::TooLarge { .. })));
    }
}
