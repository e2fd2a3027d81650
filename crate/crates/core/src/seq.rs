//! Eventually periodic digit sequences with a marked origin, and the textual
//! literal syntax used by the CLI, the claim ledger and the tests.
//!
//! Literal grammar: digits are single characters, `*` marks the origin digit,
//! `(...)` encloses a repeating block at either end, and a trailing `^t`
//! transposes (mirrors) the whole sequence about the origin. A lone block
//! `(w)` denotes the purely periodic bi-infinite repetition of `w`, with the
//! origin at the starred digit of the block (first digit when no star is
//! written). Examples:
//!
//! - `(3322212)33*2221233222122121212(21)`
//! - `(21)` — the periodic sequence …212121… with origin `2`
//! - `33*2` — a finite window (no tails), usable only with extremal bounds

use crate::digits::{Digit, Word};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("unexpected character {0:?} in sequence literal")]
    BadChar(char),
    #[error("sequence literal has no digits")]
    Empty,
    #[error("unbalanced parentheses in sequence literal")]
    Unbalanced,
    #[error("more than one origin marker")]
    MultipleStars,
    #[error("origin marker in an invalid position")]
    BadStar,
    #[error("empty periodic block")]
    EmptyBlock,
}

/// One half of a bi-infinite sequence: digits read *outward* from the origin
/// (`head[0]` is the digit adjacent to the origin), followed by an optional
/// repeating block. Without a tail the sequence is partial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneSidedSeq {
    pub head: Word,
    pub tail: Option<Word>,
}

impl OneSidedSeq {
    pub fn new(head: Word, tail: Option<Word>) -> Self {
        if let Some(t) = &tail {
            assert!(!t.is_empty(), "empty periodic tail");
        }
        OneSidedSeq { head, tail }
    }

    pub fn finite(head: Word) -> Self {
        OneSidedSeq { head, tail: None }
    }

    pub fn is_complete(&self) -> bool {
        self.tail.is_some()
    }

    /// Digit at outward offset k >= 0 (offset 0 = adjacent to the origin).
    /// None when the sequence is partial and k runs past the head.
    pub fn digit(&self, k: usize) -> Option<Digit> {
        if k < self.head.len() {
            return Some(self.head[k]);
        }
        self.tail
            .as_ref()
            .map(|t| t[(k - self.head.len()) % t.len()])
    }

    /// First n digits outward; requires completeness when n exceeds the head.
    pub fn prefix(&self, n: usize) -> Word {
        (0..n)
            .map(|k| self.digit(k).expect("prefix ran past a partial sequence"))
            .collect()
    }

    /// Extend the head by whole periods of the tail.
    pub fn unrolled(&self, periods: usize) -> OneSidedSeq {
        match &self.tail {
            None => self.clone(),
            Some(t) => {
                let mut head = self.head.clone();
                for _ in 0..periods {
                    head.extend_from_slice(t);
                }
                OneSidedSeq::new(head, Some(t.clone()))
            }
        }
    }
}

/// A bi-infinite sequence … a_{-1} a_0^* a_1 … with both halves eventually
/// periodic (or partial).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiSeq {
    pub left: OneSidedSeq,
    pub origin: Digit,
    pub right: OneSidedSeq,
}

impl BiSeq {
    pub fn new(left: OneSidedSeq, origin: Digit, right: OneSidedSeq) -> Self {
        BiSeq { left, origin, right }
    }

    /// Purely periodic repetition of `block` with origin at `block[star]`.
    pub fn purely_periodic(block: &[Digit], star: usize) -> Self {
        let n = block.len();
        assert!(n > 0 && star < n);
        let rot: Word = (0..n).map(|k| block[(star + k) % n]).collect();
        let right_tail: Word = (0..n).map(|k| rot[(k + 1) % n]).collect();
        let left_tail: Word = (0..n).map(|k| rot[(n - 1 - k) % n]).collect();
        BiSeq {
            left: OneSidedSeq::new(vec![], Some(left_tail)),
            origin: rot[0],
            right: OneSidedSeq::new(vec![], Some(right_tail)),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.left.is_complete() && self.right.is_complete()
    }

    /// Digit at absolute index i (origin at 0); None past a partial end.
    pub fn digit(&self, i: i64) -> Option<Digit> {
        match i {
            0 => Some(self.origin),
            _ if i > 0 => self.right.digit((i - 1) as usize),
            _ => self.left.digit((-i - 1) as usize),
        }
    }

    /// Mirror about the origin: a_i ↦ a_{-i}.
    pub fn transpose(&self) -> BiSeq {
        BiSeq {
            left: self.right.clone(),
            origin: self.origin,
            right: self.left.clone(),
        }
    }

    /// Re-center at index i (both halves must reach i).
    pub fn recenter(&self, i: i64) -> Option<BiSeq> {
        if i == 0 {
            return Some(self.clone());
        }
        let origin = self.digit(i)?;
        // Collect enough concrete digits on the shrinking side, then reuse the
        // untouched tail. Offsetting into an eventually periodic sequence is
        // again eventually periodic with the same block.
        let grab = |side: i64, from: i64| -> Option<OneSidedSeq> {
            // Digits at from, from+side, from+2·side, …
            let far = if side > 0 { &self.right } else { &self.left };
            let near_len = self.left.head.len().max(self.right.head.len()) as i64 + i.abs() + 1;
            let mut head = Vec::new();
            let mut k = from;
            let Some(t) = far.tail.clone() else {
                // Partial side: only keep what exists.
                while let Some(d) = self.digit(k) {
                    head.push(d);
                    k += side;
                }
                return Some(OneSidedSeq::finite(head));
            };
            for _ in 0..near_len {
                head.push(self.digit(k)?);
                k += side;
            }
            // Align the head with the periodic block: extend until the
            // remaining digits match a rotation of the tail verbatim.
            loop {
                // Check whether digits from position k onward equal some
                // rotation of t repeated; since the source is eventually
                // periodic with block t (up to rotation) this terminates.
                let probe: Option<Vec<Digit>> =
                    (0..2 * t.len() as i64).map(|j| self.digit(k + j * side)).collect();
                match probe {
                    Some(p) if p[..t.len()] == p[t.len()..] => {
                        let block: Word = p[..t.len()].to_vec();
                        return Some(OneSidedSeq::new(head, Some(block)));
                    }
                    Some(p) => {
                        head.push(p[0]);
                        k += side;
                    }
                    None => return None,
                }
            }
        };
        let right = grab(1, i + 1)?;
        let left = grab(-1, i - 1)?;
        Some(BiSeq { left, origin, right })
    }
}

/// Parsed form of a sequence literal; printing reproduces the source text
/// exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqLiteral {
    pub left_block: Option<Word>,
    /// Center digits as written, left to right. Empty for a lone block.
    pub center: Word,
    /// Index of the starred digit within `center`, or within `left_block`
    /// for a purely periodic literal; None when no star is written.
    pub star: Option<usize>,
    pub right_block: Option<Word>,
    pub transposed: bool,
}

impl SeqLiteral {
    pub fn parse(input: &str) -> Result<SeqLiteral, ParseError> {
        let (body, transposed) = match input.strip_suffix("^t") {
            Some(b) => (b, true),
            None => (input, false),
        };
        let mut left_block: Option<Word> = None;
        let mut right_block: Option<Word> = None;
        let mut center: Word = Vec::new();
        let mut star: Option<usize> = None;
        let mut star_in_block: Option<usize> = None;
        let mut in_block: Option<Word> = None;
        let mut seen_center = false;
        for c in body.chars() {
            match c {
                '(' => {
                    if in_block.is_some() || right_block.is_some() {
                        return Err(ParseError::Unbalanced);
                    }
                    if left_block.is_some() && !seen_center {
                        return Err(ParseError::BadStar);
                    }
                    in_block = Some(Vec::new());
                }
                ')' => {
                    let b = in_block.take().ok_or(ParseError::Unbalanced)?;
                    if b.is_empty() {
                        return Err(ParseError::EmptyBlock);
                    }
                    if seen_center || left_block.is_some() {
                        right_block = Some(b);
                    } else {
                        left_block = Some(b);
                    }
                }
                '1'..='9' => {
                    let d = c as u8 - b'0';
                    match &mut in_block {
                        Some(b) => b.push(d),
                        None => {
                            if right_block.is_some() {
                                return Err(ParseError::Unbalanced);
                            }
                            center.push(d);
                            seen_center = true;
                        }
                    }
                }
                '*' => {
                    if star.is_some() || star_in_block.is_some() {
                        return Err(ParseError::MultipleStars);
                    }
                    match &in_block {
                        Some(b) => {
                            if b.is_empty() {
                                return Err(ParseError::BadStar);
                            }
                            star_in_block = Some(b.len() - 1);
                        }
                        None => {
                            if center.is_empty() {
                                return Err(ParseError::BadStar);
                            }
                            star = Some(center.len() - 1);
                        }
                    }
                }
                c if c.is_whitespace() => {}
                c => return Err(ParseError::BadChar(c)),
            }
        }
        if in_block.is_some() {
            return Err(ParseError::Unbalanced);
        }
        if center.is_empty() {
            // Lone block: purely periodic.
            match (left_block, right_block) {
                (Some(b), None) => {
                    return Ok(SeqLiteral {
                        left_block: Some(b),
                        center: vec![],
                        star: star_in_block,
                        right_block: None,
                        transposed,
                    })
                }
                _ => return Err(ParseError::Empty),
            }
        }
        if star_in_block.is_some() {
            return Err(ParseError::BadStar);
        }
        Ok(SeqLiteral {
            left_block,
            center,
            star,
            right_block,
            transposed,
        })
    }

    /// True for a lone-block literal like `(3322212)`.
    pub fn purely_periodic(&self) -> bool {
        self.center.is_empty()
    }

    /// Index (into center or lone block) of the origin digit.
    fn origin_index(&self) -> usize {
        self.star.unwrap_or(0)
    }

    /// The bi-infinite (possibly partial) sequence this literal denotes.
    pub fn to_biseq(&self) -> BiSeq {
        let b = if self.purely_periodic() {
            let block = self.left_block.as_ref().unwrap();
            BiSeq::purely_periodic(block, self.origin_index())
        } else {
            let j = self.origin_index();
            let origin = self.center[j];
            let mut left_head: Word = self.center[..j].to_vec();
            left_head.reverse();
            let left_tail = self.left_block.as_ref().map(|b| {
                let mut t = b.clone();
                t.reverse();
                t
            });
            let right_head: Word = self.center[j + 1..].to_vec();
            let right_tail = self.right_block.clone();
            BiSeq::new(
                OneSidedSeq::new(left_head, left_tail),
                origin,
                OneSidedSeq::new(right_head, right_tail),
            )
        };
        if self.transposed {
            b.transpose()
        } else {
            b
        }
    }
}

impl fmt::Display for SeqLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_word = |f: &mut fmt::Formatter<'_>, w: &[Digit], star: Option<usize>| {
            for (i, d) in w.iter().enumerate() {
                write!(f, "{}", d)?;
                if star == Some(i) {
                    write!(f, "*")?;
                }
            }
            Ok(())
        };
        if let Some(b) = &self.left_block {
            write!(f, "(")?;
            let star = if self.purely_periodic() { self.star } else { None };
            write_word(f, b, star)?;
            write!(f, ")")?;
        }
        write_word(f, &self.center, self.star)?;
        if let Some(b) = &self.right_block {
            write!(f, "(")?;
            write_word(f, b, None)?;
            write!(f, ")")?;
        }
        if self.transposed {
            write!(f, "^t")?;
        }
        Ok(())
    }
}
