//! Digits, finite words and digit alphabets for bounded continued fractions.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub type Digit = u8;

/// A finite word of partial quotients.
pub type Word = Vec<Digit>;

#[derive(Debug, Error)]
pub enum DigitError {
    #[error("digit out of range: {0}")]
    OutOfRange(u32),
    #[error("empty alphabet")]
    EmptyAlphabet,
}

/// A finite set of allowed partial quotients, e.g. {1,2} or {1,2,3}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    digits: Vec<Digit>,
}

impl Alphabet {
    pub fn new(mut digits: Vec<Digit>) -> Result<Self, DigitError> {
        if digits.is_empty() {
            return Err(DigitError::EmptyAlphabet);
        }
        digits.sort_unstable();
        digits.dedup();
        for &d in &digits {
            if d == 0 {
                return Err(DigitError::OutOfRange(0));
            }
        }
        Ok(Alphabet { digits })
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn min(&self) -> Digit {
        self.digits[0]
    }

    pub fn max(&self) -> Digit {
        *self.digits.last().unwrap()
    }

    pub fn contains(&self, d: Digit) -> bool {
        self.digits.binary_search(&d).is_ok()
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d)?;
        }
        write!(f, "}}")
    }
}

pub fn word_to_string(w: &[Digit]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

pub fn word_from_str(s: &str) -> Option<Word> {
    s.chars()
        .map(|c| c.to_digit(10).and_then(|d| if d > 0 { Some(d as Digit) } else { None }))
        .collect()
}
