//! Emitter–detector fiber networks: data model, validation and file formats.

mod document;
mod dot;
mod matching;
mod phase;
mod setup;

pub use document::{parse_setup, serialize_setup, SetupParseError};
pub use dot::export_dot;
pub use matching::maximum_matching;
pub use phase::{ParsePhaseError, Phase};
pub use setup::{validate_setup, Diagnostic, Fiber, OpticalSetup, ParsePolarizerError, Polarizer, SetupError};
