//! Collective spin operators acting on dense states (ħ = 1).

use num_complex::Complex64;

use crate::state::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pauli {
    X,
    Y,
    Z,
}

/// Applies `σ_p` to qubit `q` (0-based from the left).
fn apply_pauli(state: &StateVector, q: usize, p: Pauli) -> StateVector {
    let n = state.n_qubits();
    let mask = 1usize << (n - 1 - q);
    let mut out = StateVector::zeros(n);
    let src = state.amplitudes();
    let dst = out.amplitudes_mut();
    let i = Complex64::new(0.0, 1.0);
    for (idx, &a) in src.iter().enumerate() {
        let minus = idx & mask != 0;
        match p {
            Pauli::X => dst[idx ^ mask] += a,
            // σ_y|+⟩ = i|−⟩, σ_y|−⟩ = −i|+⟩
            Pauli::Y => dst[idx ^ mask] += if minus { -i * a } else { i * a },
            Pauli::Z => dst[idx] += if minus { -a } else { a },
        }
    }
    out
}

/// `Ŝ_z ψ`, diagonal with eigenvalue `(#plus − #minus)/2`.
pub fn apply_total_sz(state: &StateVector) -> StateVector {
    let n = state.n_qubits();
    let mut out = state.clone();
    for (idx, a) in out.amplitudes_mut().iter_mut().enumerate() {
        let minus = idx.count_ones() as f64;
        *a *= (n as f64 - 2.0 * minus) / 2.0;
    }
    out
}

/// `Ŝ² ψ = Σ_{i,j} Ŝ⁽ⁱ⁾·Ŝ⁽ʲ⁾ ψ`, each term expanded as `¼ Σ_p σ_p⁽ⁱ⁾ σ_p⁽ʲ⁾`.
pub fn apply_total_spin_squared(state: &StateVector) -> StateVector {
    let n = state.n_qubits();
    let mut acc = StateVector::zeros(n);
    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
        let singles: Vec<StateVector> = (0..n).map(|j| apply_pauli(state, j, p)).collect();
        for i in 0..n {
            for single in &singles {
                let term = apply_pauli(single, i, p);
                for (a, t) in acc.amplitudes_mut().iter_mut().zip(term.amplitudes()) {
                    *a += 0.25 * t;
                }
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::Qubit::{Minus, Plus};

    #[test]
    fn single_qubit_casimir_is_three_quarters() {
        let s = StateVector::basis(&[Minus]);
        let out = apply_total_spin_squared(&s);
        assert!((out.amplitudes()[1].re - 0.75).abs() < 1e-15);
    }

    #[test]
    fn product_state_sz() {
        let s = StateVector::basis(&[Plus, Plus, Minus]);
        let out = apply_total_sz(&s);
        assert!((out.amplitudes()[1].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn stretched_state_is_max_spin() {
        let s = StateVector::basis(&[Plus, Plus, Plus]);
        let out = apply_total_spin_squared(&s);
        // S = 3/2 → S(S+1) = 15/4
        assert!((out.amplitudes()[0].re - 3.75).abs() < 1e-14);
        assert!(out.amplitudes()[1..].iter().all(|a| a.norm() < 1e-14));
    }
}
