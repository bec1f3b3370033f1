//! Coupling histories and coupled-basis labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::half::{HalfInt, ParseHalfIntError};

/// Largest qubit count accepted when enumerating or building reference states.
pub const MAX_QUBITS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("coupling history is empty")]
    EmptyHistory,
    #[error("coupling history must start at S1 = 1/2, got {0}")]
    BadFirstSpin(HalfInt),
    #[error("S{index} = {current} does not differ from S{prev_index} = {previous} by 1/2", prev_index = .index - 1)]
    BadStep { index: usize, previous: HalfInt, current: HalfInt },
    #[error("S{index} = {value} is negative")]
    NegativeSpin { index: usize, value: HalfInt },
    #[error("projection m = {m} is not allowed for total spin S = {total} of {n} qubits")]
    BadProjection { m: HalfInt, total: HalfInt, n: usize },
    #[error("Clebsch-Gordan arguments out of range: j = {j}, m_total = {m_total}, {detail}")]
    CgOutOfRange { j: HalfInt, m_total: HalfInt, detail: &'static str },
    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCount { n: usize, max: usize },
}

/// Whether an added spin-1/2 raises or lowers the running total spin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinStep {
    Up,
    Down,
}

impl SpinStep {
    #[inline]
    pub fn delta(self) -> HalfInt {
        match self {
            SpinStep::Up => HalfInt::HALF,
            SpinStep::Down => HalfInt::MINUS_HALF,
        }
    }
}

/// Single-qubit ground state: `|+⟩ = |1/2; +1/2⟩`, `|−⟩ = |1/2; −1/2⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Qubit {
    Plus,
    Minus,
}

impl Qubit {
    pub const BOTH: [Qubit; 2] = [Qubit::Plus, Qubit::Minus];

    /// Bit value in the product-basis index: `|+⟩ ↦ 0`, `|−⟩ ↦ 1`.
    #[inline]
    pub fn bit(self) -> usize {
        match self {
            Qubit::Plus => 0,
            Qubit::Minus => 1,
        }
    }

    #[inline]
    pub fn from_bit(bit: usize) -> Self {
        if bit & 1 == 0 {
            Qubit::Plus
        } else {
            Qubit::Minus
        }
    }

    #[inline]
    pub fn m(self) -> HalfInt {
        match self {
            Qubit::Plus => HalfInt::HALF,
            Qubit::Minus => HalfInt::MINUS_HALF,
        }
    }

    #[inline]
    pub fn symbol(self) -> char {
        match self {
            Qubit::Plus => '+',
            Qubit::Minus => '-',
        }
    }
}

/// The sequence `S1, S2, …, SN` of running total spins.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<HalfInt>", into = "Vec<HalfInt>")]
pub struct CouplingHistory(Vec<HalfInt>);

impl CouplingHistory {
    pub fn new(spins: Vec<HalfInt>) -> Result<Self, SpinError> {
        let first = *spins.first().ok_or(SpinError::EmptyHistory)?;
        if first != HalfInt::HALF {
            return Err(SpinError::BadFirstSpin(first));
        }
        for (k, pair) in spins.windows(2).enumerate() {
            let index = k + 2;
            if pair[1].twice() < 0 {
                return Err(SpinError::NegativeSpin { index, value: pair[1] });
            }
            if (pair[1] - pair[0]).abs() != HalfInt::HALF {
                return Err(SpinError::BadStep { index, previous: pair[0], current: pair[1] });
            }
        }
        Ok(CouplingHistory(spins))
    }

    pub fn from_twice(twice: &[i32]) -> Result<Self, SpinError> {
        Self::new(twice.iter().copied().map(HalfInt::from_twice).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn spins(&self) -> &[HalfInt] {
        &self.0
    }

    /// Final total spin `S_N`.
    pub fn total(&self) -> HalfInt {
        *self.0.last().expect("history is never empty")
    }

    /// Step taken when adding qubit `i` (0-based, `i ≥ 1`).
    pub fn step(&self, i: usize) -> SpinStep {
        if self.0[i] > self.0[i - 1] {
            SpinStep::Up
        } else {
            SpinStep::Down
        }
    }

    /// History truncated to the first `len` qubits.
    pub fn prefix(&self, len: usize) -> CouplingHistory {
        CouplingHistory(self.0[..len].to_vec())
    }

    /// Doubled spins joined by `-`, e.g. `1-2-1`.
    pub fn doubled_string(&self) -> String {
        self.0.iter().map(|s| s.twice().to_string()).collect::<Vec<_>>().join("-")
    }
}

impl TryFrom<Vec<HalfInt>> for CouplingHistory {
    type Error = SpinError;
    fn try_from(v: Vec<HalfInt>) -> Result<Self, SpinError> {
        CouplingHistory::new(v)
    }
}

impl From<CouplingHistory> for Vec<HalfInt> {
    fn from(h: CouplingHistory) -> Self {
        h.0
    }
}

/// One coupled-basis state `|S1, …, SN; m⟩`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoupledLabel {
    history: CouplingHistory,
    m: HalfInt,
}

impl CoupledLabel {
    pub fn new(history: CouplingHistory, m: HalfInt) -> Result<Self, SpinError> {
        let n = history.n_qubits();
        let total = history.total();
        if m.abs() > total || (m.twice() - n as i32).rem_euclid(2) != 0 {
            return Err(SpinError::BadProjection { m, total, n });
        }
        Ok(CoupledLabel { history, m })
    }

    /// Builds a label from doubled spins and doubled projection.
    pub fn from_twice(spins: &[i32], twice_m: i32) -> Result<Self, SpinError> {
        Self::new(CouplingHistory::from_twice(spins)?, HalfInt::from_twice(twice_m))
    }

    pub fn history(&self) -> &CouplingHistory {
        &self.history
    }

    pub fn m(&self) -> HalfInt {
        self.m
    }

    pub fn n_qubits(&self) -> usize {
        self.history.n_qubits()
    }

    pub fn total_spin(&self) -> HalfInt {
        self.history.total()
    }
}

impl fmt::Display for CoupledLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spins: Vec<String> = self.history.0.iter().map(ToString::to_string).collect();
        write!(f, "{};{}", spins.join(","), self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LabelParseError {
    #[error("label `{0}` must have the form `S1,S2,...,SN;m`")]
    Syntax(String),
    #[error(transparent)]
    Number(#[from] ParseHalfIntError),
    #[error("doubled value `{0}` is not an integer")]
    Doubled(String),
    #[error(transparent)]
    Invalid(#[from] SpinError),
}

impl FromStr for CoupledLabel {
    type Err = LabelParseError;

    /// Parses `1/2,1,1/2;1/2`, or the doubled alias `d:1,2,1;1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (doubled, body) = match t.strip_prefix("d:") {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (spins, m) = body.split_once(';').ok_or_else(|| LabelParseError::Syntax(s.to_string()))?;
        if spins.trim().is_empty() || m.trim().is_empty() {
            return Err(LabelParseError::Syntax(s.to_string()));
        }
        let parse = |tok: &str| -> Result<HalfInt, LabelParseError> {
            if doubled {
                let tok = tok.trim();
                tok.strip_prefix('+')
                    .unwrap_or(tok)
                    .parse::<i32>()
                    .map(HalfInt::from_twice)
                    .map_err(|_| LabelParseError::Doubled(tok.to_string()))
            } else {
                Ok(tok.parse::<HalfInt>()?)
            }
        };
        let spins = spins.split(',').map(parse).collect::<Result<Vec<_>, _>>()?;
        let m = parse(m)?;
        Ok(CoupledLabel::new(CouplingHistory::new(spins)?, m)?)
    }
}
