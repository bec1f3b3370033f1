use std::fmt;
use std::str::FromStr;

use num_complex::{Complex, Complex64};
use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

/// Optical phase shift stored as an exact rational multiple of π.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(Ratio<i64>);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("`{0}` is not a rational phase (expected e.g. `0`, `1`, `1/2`, `-3/4`)")]
pub struct ParsePhaseError(pub String);

impl Phase {
    pub const ZERO: Phase = Phase(Ratio::new_raw(0, 1));
    pub const PI: Phase = Phase(Ratio::new_raw(1, 1));

    /// `numer/denom · π`. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Phase(Ratio::new(numer, denom))
    }

    pub fn over_pi(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Multiple of π/2 reduced into `0..4`, if the phase is one.
    pub fn quarter_turns(&self) -> Option<u8> {
        let twice = self.0 * 2;
        twice.is_integer().then(|| twice.to_integer().rem_euclid(4) as u8)
    }

    /// True when `e^{iφ} = −1`.
    pub fn is_pi(&self) -> bool {
        self.quarter_turns() == Some(2)
    }

    /// `e^{iφ}` as a Gaussian integer, when it is one of `1, i, −1, −i`.
    pub fn unit_gaussian(&self) -> Option<Complex<i64>> {
        self.quarter_turns().map(|q| match q {
            0 => Complex::new(1, 0),
            1 => Complex::new(0, 1),
            2 => Complex::new(-1, 0),
            _ => Complex::new(0, -1),
        })
    }

    /// `e^{iφ}`, exact for multiples of π/2.
    pub fn unit(&self) -> Complex64 {
        match self.unit_gaussian() {
            Some(g) => Complex64::new(g.re as f64, g.im as f64),
            None => {
                let theta = std::f64::consts::PI * (*self.0.numer() as f64) / (*self.0.denom() as f64);
                Complex64::from_polar(1.0, theta)
            }
        }
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Phase {
    type Err = ParsePhaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParsePhaseError(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: i64 = num.strip_prefix('+').unwrap_or(num).parse().map_err(|_| err())?;
        let den: i64 = den.parse().map_err(|_| err())?;
        if den <= 0 {
            return Err(err());
        }
        Ok(Phase(Ratio::new(num, den)))
    }
}
