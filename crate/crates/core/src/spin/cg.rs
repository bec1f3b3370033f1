//! Clebsch-Gordan coefficients for coupling a spin-1/2 onto spin `j`.
//!
//! Condon–Shortley phase convention throughout. This fixes every relative
//! sign of the reference states, e.g. `|1/2,1,1/2;+1/2⟩` comes out as
//! `(2|++−⟩ − |+−+⟩ − |−++⟩)/√6`.

use crate::half::HalfInt;

use super::label::{Qubit, SpinError, SpinStep};

/// `⟨j, m1; 1/2, m2 | j ± 1/2, m_total⟩` with `m1 = m_total − m2`.
pub fn cg_coefficient(j: HalfInt, m_total: HalfInt, step: SpinStep, m2: Qubit) -> Result<f64, SpinError> {
    let out_of_range = |detail| Err(SpinError::CgOutOfRange { j, m_total, detail });
    if j.twice() < 0 {
        return out_of_range("j is negative");
    }
    if step == SpinStep::Down && j.twice() < 1 {
        return out_of_range("cannot lower a spin below zero");
    }
    let m1 = m_total - m2.m();
    if m1.abs() > j {
        return out_of_range("implied m1 exceeds j");
    }
    if (j.twice() - m1.twice()).rem_euclid(2) != 0 {
        return out_of_range("m1 and j differ in parity");
    }

    let j2 = f64::from(j.twice());
    let mm = f64::from(m_total.twice());
    let den = 2.0 * (j2 + 1.0);
    let aligned = ((j2 + mm + 1.0) / den).sqrt();
    let opposed = ((j2 - mm + 1.0) / den).sqrt();
    Ok(match (step, m2) {
        (SpinStep::Up, Qubit::Plus) => aligned,
        (SpinStep::Up, Qubit::Minus) => opposed,
        (SpinStep::Down, Qubit::Plus) => -opposed,
        (SpinStep::Down, Qubit::Minus) => aligned,
    })
}
