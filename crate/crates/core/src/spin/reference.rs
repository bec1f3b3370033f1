//! Reference eigenstates built by successive spin-1/2 coupling.

use crate::half::HalfInt;
use crate::state::StateVector;

use super::cg::cg_coefficient;
use super::label::{CoupledLabel, CouplingHistory, Qubit, SpinError, MAX_QUBITS};

/// Expands `|S1,…,SN; m⟩` over the product basis.
///
/// Uses `|S1…Si; m⟩ = Σ_{m2} ⟨S_{i-1}, m−m2; 1/2, m2 | Si, m⟩ |S1…S_{i-1}; m−m2⟩ ⊗ |m2⟩`
/// down to `|1/2; ±1/2⟩ = |±⟩`. Amplitudes are real.
pub fn build_reference_state(label: &CoupledLabel) -> Result<StateVector, SpinError> {
    let n = label.n_qubits();
    if n > MAX_QUBITS {
        return Err(SpinError::QubitCount { n, max: MAX_QUBITS });
    }
    let amplitudes = expand(label.history(), n, label.m())?;
    let mut state = StateVector::from_real(&amplitudes).expect("length is 2^n");
    // Already unit norm up to rounding; renormalize to pin it at 1e-12.
    state.normalize().expect("reference states are nonzero");
    Ok(state)
}

fn expand(history: &CouplingHistory, len: usize, m: HalfInt) -> Result<Vec<f64>, SpinError> {
    if len == 1 {
        return Ok(if m == HalfInt::HALF { vec![1.0, 0.0] } else { vec![0.0, 1.0] });
    }
    let j = history.spins()[len - 2];
    let step = history.step(len - 1);
    let mut out = vec![0.0; 1 << len];
    for m2 in Qubit::BOTH {
        let m1 = m - m2.m();
        if m1.abs() > j {
            continue;
        }
        let c = cg_coefficient(j, m, step, m2)?;
        if c == 0.0 {
            continue;
        }
        let sub = expand(history, len - 1, m1)?;
        for (idx, a) in sub.iter().enumerate() {
            out[(idx << 1) | m2.bit()] += c * a;
        }
    }
    Ok(out)
}

/// All `2^n` coupled-basis labels of `n` qubits.
///
/// Ordered lexicographically by the doubled-spin sequence, then by ascending `m`.
/// This order is part of the CLI and CSV output contract.
pub fn enumerate_coupled_basis(n: usize) -> Result<Vec<CoupledLabel>, SpinError> {
    if n == 0 || n > MAX_QUBITS {
        return Err(SpinError::QubitCount { n, max: MAX_QUBITS });
    }
    let mut histories = Vec::new();
    let mut spins = vec![HalfInt::HALF];
    collect_histories(n, &mut spins, &mut histories);

    let mut labels = Vec::with_capacity(1 << n);
    for history in histories {
        let total = history.total().twice();
        for twice_m in (-total..=total).step_by(2) {
            labels.push(CoupledLabel::new(history.clone(), HalfInt::from_twice(twice_m))?);
        }
    }
    Ok(labels)
}

fn collect_histories(n: usize, spins: &mut Vec<HalfInt>, out: &mut Vec<CouplingHistory>) {
    if spins.len() == n {
        out.push(CouplingHistory::new(spins.clone()).expect("generated histories are valid"));
        return;
    }
    let last = *spins.last().expect("non-empty");
    for next in [last - HalfInt::HALF, last + HalfInt::HALF] {
        if next.twice() >= 0 {
            spins.push(next);
            collect_histories(n, spins, out);
            spins.pop();
        }
    }
}
