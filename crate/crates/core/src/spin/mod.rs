//! Coupling histories, Clebsch-Gordan coupling and reference eigenstates.

mod cg;
mod label;
mod operators;
mod reference;

pub use cg::cg_coefficient;
pub use label::{CoupledLabel, CouplingHistory, LabelParseError, Qubit, SpinError, SpinStep, MAX_QUBITS};
pub use operators::{apply_total_spin_squared, apply_total_sz};
pub use reference::{build_reference_state, enumerate_coupled_basis};
