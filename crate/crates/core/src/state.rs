//! Dense N-qubit state vectors over the `|±⟩` product basis.
//!
//! Index convention: qubit 1 is the most significant bit, and a bit value
//! of 0 stands for `|+⟩`, 1 for `|−⟩`. So for three qubits index `0b001`
//! is `|++−⟩`. Every module and file format in this crate uses it.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::spin::Qubit;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("amplitude count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("qubit count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cannot normalize the zero vector")]
    ZeroNorm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(n_qubits: usize) -> Self {
        StateVector { n_qubits, amplitudes: vec![Complex64::new(0.0, 0.0); 1 << n_qubits] }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, StateError> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(StateError::NotPowerOfTwo(len));
        }
        Ok(StateVector { n_qubits: len.trailing_zeros() as usize, amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self, StateError> {
        Self::from_amplitudes(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Product state, e.g. `basis(&[Plus, Minus])` is `|+−⟩`.
    pub fn basis(qubits: &[Qubit]) -> Self {
        let mut s = StateVector::zeros(qubits.len());
        s.amplitudes[bits_to_index(qubits)] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) -> Result<(), StateError> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(StateError::ZeroNorm);
        }
        self.amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64, StateError> {
        if self.n_qubits != other.n_qubits {
            return Err(StateError::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        StateVector { n_qubits: self.n_qubits, amplitudes: self.amplitudes.iter().map(|a| a * factor).collect() }
    }

    /// Largest per-amplitude distance to `other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64, StateError> {
        if self.n_qubits != other.n_qubits {
            return Err(StateError::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// One line per amplitude with modulus above `cutoff`: `bitstring re im`.
    pub fn to_text(&self, cutoff: f64) -> String {
        let mut out = String::new();
        for (idx, a) in self.amplitudes.iter().enumerate() {
            if a.norm() > cutoff {
                let _ = writeln!(out, "{} {} {}", bitstring(idx, self.n_qubits), a.re, a.im);
            }
        }
        out
    }
}

/// Renders a basis index as `+`/`-` characters, qubit 1 first.
pub fn bitstring(index: usize, n_qubits: usize) -> String {
    (0..n_qubits).map(|q| Qubit::from_bit(index >> (n_qubits - 1 - q)).symbol()).collect()
}

/// Parses a `+`/`-` bitstring back to its basis index.
pub fn parse_bitstring(s: &str) -> Option<usize> {
    s.chars().try_fold(0usize, |acc, c| match c {
        '+' => Some(acc << 1),
        '-' | '−' => Some((acc << 1) | 1),
        _ => None,
    })
}

/// State of qubit `q` (0-based from the left) in basis index `index`.
#[inline]
pub fn qubit_at(index: usize, q: usize, n_qubits: usize) -> Qubit {
    Qubit::from_bit(index >> (n_qubits - 1 - q))
}

pub fn bits_to_index(qubits: &[Qubit]) -> usize {
    qubits.iter().fold(0, |acc, q| (acc << 1) | q.bit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::Qubit::{Minus, Plus};

    #[test]
    fn bit_convention_qubit_one_is_msb() {
        assert_eq!(bits_to_index(&[Plus, Plus, Minus]), 0b001);
        assert_eq!(bits_to_index(&[Minus, Plus, Plus]), 0b100);
        assert_eq!(bitstring(0b001, 3), "++-");
        assert_eq!(parse_bitstring("-++"), Some(0b100));
        assert_eq!(parse_bitstring("+x"), None);
        assert_eq!(qubit_at(0b100, 0, 3), Minus);
        assert_eq!(qubit_at(0b100, 2, 3), Plus);
    }

    #[test]
    fn normalize_and_text_form() {
        let mut s = StateVector::from_real(&[0.0, 1.0, -1.0, 0.0]).unwrap();
        s.normalize().unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        let text = s.to_text(1e-12);
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("+- "));
        assert!(lines[1].starts_with("-+ -"));
    }

    #[test]
    fn errors() {
        assert_eq!(StateVector::from_real(&[1.0, 0.0, 0.0]), Err(StateError::NotPowerOfTwo(3)));
        assert_eq!(StateVector::zeros(2).normalize(), Err(StateError::ZeroNorm));
        assert!(StateVector::zeros(1).inner(&StateVector::zeros(2)).is_err());
    }
}
