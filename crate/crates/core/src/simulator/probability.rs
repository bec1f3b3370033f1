use crate::optics::OpticalSetup;

use super::{simulate, Projection, SimError};

/// Probability of the coincidence event under the lossless-splitter model.
///
/// Each emitter's photon amplitude is `1/√2` per decay channel and
/// `1/√deg_i` per fiber, and each photon independently survives with
/// probability `efficiency`, giving
/// `η^N · Σ_b |c_b|² · Π_i 1/(2·deg_i)`.
pub fn success_probability(setup: &OpticalSetup, efficiency: f64) -> Result<f64, SimError> {
    check_efficiency(efficiency)?;
    let sim = simulate(setup)?;
    success_probability_of(&sim.projection, setup, efficiency)
}

/// As [`success_probability`], reusing an already computed projection of `setup`.
pub fn success_probability_of(projection: &Projection, setup: &OpticalSetup, efficiency: f64) -> Result<f64, SimError> {
    check_efficiency(efficiency)?;
    let splitting: f64 = setup.degrees().iter().map(|&d| 1.0 / (2.0 * d as f64)).product();
    Ok(efficiency.powi(setup.n() as i32) * projection.norm_sqr() * splitting)
}

fn check_efficiency(efficiency: f64) -> Result<(), SimError> {
    if efficiency > 0.0 && efficiency <= 1.0 {
        Ok(())
    } else {
        Err(SimError::BadEfficiency(efficiency))
    }
}
