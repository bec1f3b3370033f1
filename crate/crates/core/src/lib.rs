//! Heralded preparation of N-qubit total angular momentum eigenstates with
//! linear optics.
//!
//! A coupled-basis label `|S1, …, SN; m⟩` is compiled into a network of
//! fibers between `N` Λ-type emitters and `N` circularly polarized
//! detectors ([`compiler`]). Conditioning on one photon per detector
//! projects the emitters onto a state computed from matrix permanents
//! ([`simulator`]), which [`verify`] checks against the Clebsch-Gordan
//! expansion built in [`spin`].
//!
//! ```
//! use spin_coupling::{spin::CoupledLabel, verify::verify_label};
//!
//! let label: CoupledLabel = "1/2,1,1/2;1/2".parse().unwrap();
//! let report = verify_label(&label).unwrap();
//! assert!(report.exact_match);
//! ```

pub mod compiler;
pub mod half;
pub mod optics;
pub mod simulator;
pub mod spin;
pub mod state;
pub mod verify;

pub use half::HalfInt;
pub use state::StateVector;
