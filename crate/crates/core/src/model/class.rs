use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Wake-turbulence class ordinal; 1 is the heaviest wake impact.
///
/// With six classes the letters `A`..`F` map to `1`..`6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WakeClass(u8);

impl WakeClass {
    pub fn new(ordinal: u8, eta: u8) -> Result<Self> {
        if ordinal == 0 || ordinal > eta {
            return Err(Error::ModelMismatch { ordinal, eta });
        }
        Ok(Self(ordinal))
    }

    /// Builds a class without range checking. Lookups against a model
    /// still reject out-of-range ordinals.
    pub const fn from_ordinal(ordinal: u8) -> Self {
        Self(ordinal)
    }

    pub const fn ordinal(self) -> u8 {
        self.0
    }

    /// Zero-based index into separation matrices.
    pub const fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_letter(letter: &str) -> Result<Self> {
        let mut chars = letter.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_uppercase() => Ok(Self(c as u8 - b'A' + 1)),
            _ => Err(Error::InvalidInstance(format!("bad wake class {letter:?}"))),
        }
    }

    pub fn letter(self) -> char {
        (b'A' + self.0 - 1) as char
    }
}

impl fmt::Display for WakeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperationTask {
    Landing,
    Takeoff,
}

impl OperationTask {
    pub const fn index(self) -> usize {
        match self {
            OperationTask::Landing => 0,
            OperationTask::Takeoff => 1,
        }
    }

    pub const fn other(self) -> Self {
        match self {
            OperationTask::Landing => OperationTask::Takeoff,
            OperationTask::Takeoff => OperationTask::Landing,
        }
    }
}

impl fmt::Display for OperationTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperationTask::Landing => f.write_str("landing"),
            OperationTask::Takeoff => f.write_str("takeoff"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_round_trip() {
        for (i, l) in ["A", "B", "C", "D", "E", "F"].iter().enumerate() {
            let c = WakeClass::from_letter(l).unwrap();
            assert_eq!(c.ordinal() as usize, i + 1);
            assert_eq!(c.letter().to_string(), *l);
        }
        assert!(WakeClass::from_letter("a").is_err());
        assert!(WakeClass::from_letter("AB").is_err());
    }

    #[test]
    fn range_checked_constructor() {
        assert!(WakeClass::new(0, 6).is_err());
        assert!(WakeClass::new(7, 6).is_err());
        assert_eq!(WakeClass::new(6, 6).unwrap().index(), 5);
    }
}
