//! Branch-and-bound prover for inequalities about λ-values over all
//! completions of a partial digit window.
//!
//! A claim fixes finitely many digits around the origin (possibly with
//! pinned periodic continuations on either side) and asserts that λ at an
//! index stays below/above a threshold for *every* completion over the
//! alphabet — or, for disjunctive claims, that every completion has some
//! λ_i above the threshold for i in a given index set. Free positions are
//! bounded through extremal digit choices (the first-difference parity
//! rule), and disjunctive claims are settled by splitting on the free
//! digits nearest the index set.


use crate::digits::{Alphabet, Digit, Word};
use crate::interval::{parse_decimal, RInterval, Rat};
use crate::seq::SeqLiteral;
use num::bigint::BigInt;
use num::One;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProverError {
    #[error("pattern literal has no origin marker: {0}")]
    NoOrigin(String),
    #[error("bad ledger line {line}: {reason}")]
    BadLedgerLine { line: usize, reason: String },
    #[error(transparent)]
    Literal(#[from] crate::seq::ParseError),
    #[error(transparent)]
    Decimal(#[from] crate::interval::NumError),
}

/// A partial bi-infinite window: fixed digits at finitely many positions
/// (position 0 always fixed), optional pinned periodic continuations beyond
/// the outermost fixed digits, free positions ranging over `alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowPattern {
    known: BTreeMap<i64, Digit>,
    /// Pinned periodic continuation to the left, read outward.
    left_tail: Option<Word>,
    /// Pinned periodic continuation to the right, read outward.
    right_tail: Option<Word>,
    pub alphabet: Alphabet,
}

impl WindowPattern {
    pub fn from_literal(lit: &SeqLiteral, alphabet: Alphabet) -> Result<Self, ProverError> {
        if lit.star.is_none() && !lit.purely_periodic() {
            return Err(ProverError::NoOrigin(lit.to_string()));
        }
        let b = lit.to_biseq();
        let mut known = BTreeMap::new();
        known.insert(0, b.origin);
        for (k, &d) in b.right.head.iter().enumerate() {
            known.insert(k as i64 + 1, d);
        }
        for (k, &d) in b.left.head.iter().enumerate() {
            known.insert(-(k as i64) - 1, d);
        }
        Ok(WindowPattern {
            known,
            left_tail: b.left.tail,
            right_tail: b.right.tail,
            alphabet,
        })
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self, ProverError> {
        let lit = SeqLiteral::parse(text)?;
        Ok(Self::from_literal(&lit, alphabet)?)
    }

    /// Build a pattern from explicit fixed digits; position 0 must be fixed.
    pub fn from_digits(known: BTreeMap<i64, Digit>, alphabet: Alphabet) -> Self {
        assert!(known.contains_key(&0), "position 0 must be fixed");
        WindowPattern { known, left_tail: None, right_tail: None, alphabet }
    }

    pub fn has_pinned_tails(&self) -> bool {
        self.left_tail.is_some() || self.right_tail.is_some()
    }

    pub fn known(&self) -> &BTreeMap<i64, Digit> {
        &self.known
    }

    fn min_known(&self) -> i64 {
        *self.known.keys().next().unwrap()
    }

    fn max_known(&self) -> i64 {
        *self.known.keys().next_back().unwrap()
    }

    /// Fixed digit at a position, following pinned tails beyond the window.
    pub fn digit_at(&self, idx: i64) -> Option<Digit> {
        if let Some(&d) = self.known.get(&idx) {
            return Some(d);
        }
        if idx > self.max_known() {
            if let Some(t) = &self.right_tail {
                let k = (idx - self.max_known() - 1) as usize;
                return Some(t[k % t.len()]);
            }
        }
        if idx < self.min_known() {
            if let Some(t) = &self.left_tail {
                let k = (self.min_known() - idx - 1) as usize;
                return Some(t[k % t.len()]);
            }
        }
        None
    }

    pub fn assign(&self, idx: i64, d: Digit) -> WindowPattern {
        debug_assert!(self.digit_at(idx).is_none());
        let mut out = self.clone();
        out.known.insert(idx, d);
        out
    }

    /// Mirror about the origin: position p ↦ −p, tails swapped.
    pub fn transpose(&self) -> WindowPattern {
        WindowPattern {
            known: self.known.iter().map(|(&p, &d)| (-p, d)).collect(),
            left_tail: self.right_tail.clone(),
            right_tail: self.left_tail.clone(),
            alphabet: self.alphabet.clone(),
        }
    }

    /// Render the fixed window (no tails) as a literal, `?` for free gaps.
    pub fn window_string(&self) -> String {
        let mut s = String::new();
        for idx in self.min_known()..=self.max_known() {
            match self.known.get(&idx) {
                Some(&d) => s.push(char::from(b'0' + d)),
                None => s.push('?'),
            }
            if idx == 0 {
                s.push('*');
            }
        }
        s
    }
}

/// Outer enclosure of one side value [0; digits outward from i] over all
/// completions of the pattern; with `extremal` set, free digits take the
/// max/min-realizing value instead of ranging over the whole alphabet, so
/// the endpoint on that side converges to the true extremum.
fn side_enclosure(
    p: &WindowPattern,
    i: i64,
    step: i64,
    extremal: Option<bool>, // Some(true) = maximize the side value
    depth: u32,
) -> RInterval {
    let one = Rat::one();
    let amin = Rat::from_integer(BigInt::from(p.alphabet.min()));
    let amax = Rat::from_integer(BigInt::from(p.alphabet.max()));
    // Seed: any [0; e1, e2, …] over the alphabet lies in [1/(amax+1), 1/amin ∧ 1].
    let lo = (&amax + &one).recip();
    let hi = amin.recip().min(one);
    let mut v = RInterval::new(lo, hi);
    for k in (1..=depth as i64).rev() {
        let idx = i + k * step;
        match p.digit_at(idx) {
            Some(d) => {
                v = v.add_rat(&Rat::from_integer(BigInt::from(d))).recip();
            }
            None => match extremal {
                Some(maximize) => {
                    // Odd side-offset digits decrease the value, even ones
                    // increase it.
                    let odd = k % 2 == 1;
                    let d = if maximize == odd { p.alphabet.min() } else { p.alphabet.max() };
                    v = v.add_rat(&Rat::from_integer(BigInt::from(d))).recip();
                }
                None => {
                    let lo = (&amax + v.hi()).recip();
                    let hi = (&amin + v.lo()).recip();
                    v = RInterval::new(lo, hi);
                }
            },
        }
    }
    v
}

/// Enclosure of the extremal (max or min) value of λ_i over all completions
/// of the pattern. The enclosure always contains the true extremum; its
/// width shrinks like 4^(−depth).
pub fn extremal_lambda(p: &WindowPattern, i: i64, maximize: bool, depth: u32) -> RInterval {
    let right = side_enclosure(p, i, 1, Some(maximize), depth);
    let left = side_enclosure(p, i, -1, Some(maximize), depth);
    let d = match p.digit_at(i) {
        Some(d) => d,
        None => {
            if maximize {
                p.alphabet.max()
            } else {
                p.alphabet.min()
            }
        }
    };
    right.add(&left).add_rat(&Rat::from_integer(BigInt::from(d)))
}

/// Outer enclosure of the whole λ_i range over all completions.
pub fn lambda_range(p: &WindowPattern, i: i64, depth: u32) -> RInterval {
    let right = side_enclosure(p, i, 1, None, depth);
    let left = side_enclosure(p, i, -1, None, depth);
    let d = p.digit_at(i);
    let lo = Rat::from_integer(BigInt::from(d.unwrap_or(p.alphabet.min())));
    let hi = Rat::from_integer(BigInt::from(d.unwrap_or(p.alphabet.max())));
    let base = RInterval::new(lo, hi);
    right.add(&left).add(&base)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClaimKind {
    Upper,
    Lower,
    Disjunctive,
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClaimKind::Upper => "UPPER",
            ClaimKind::Lower => "LOWER",
            ClaimKind::Disjunctive => "DISJ",
        };
        f.write_str(s)
    }
}

/// Expected value annotation carried by a ledger line, checked against the
/// achieved bound after proving.
#[derive(Clone, Debug, PartialEq)]
pub enum Expected {
    /// Decimal expansion of the achieved extremum starts with this prefix.
    Prefix(String),
    /// Achieved bound lies strictly below this value.
    Below(Rat),
    /// Achieved bound lies strictly above this value.
    Above(Rat),
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub id: String,
    pub pattern_text: String,
    pub pattern: WindowPattern,
    pub kind: ClaimKind,
    pub threshold: Rat,
    pub threshold_text: String,
    pub index_set: Vec<i64>,
    pub expected: Option<Expected>,
}

impl Claim {
    pub fn transposed(&self) -> Claim {
        Claim {
            id: format!("{}^t", self.id),
            pattern_text: format!("{}^t", self.pattern_text),
            pattern: self.pattern.transpose(),
            kind: self.kind,
            threshold: self.threshold.clone(),
            threshold_text: self.threshold_text.clone(),
            index_set: self.index_set.iter().map(|&i| -i).collect(),
            expected: self.expected.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Proved,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    /// For UPPER/LOWER: enclosure of the achieved extremum. For DISJ: the
    /// weakest certified per-branch λ lower bound (every completion has some
    /// λ_i in the index set at or above this).
    pub bound: RInterval,
    pub witness: Option<String>,
    pub depth_used: u32,
}

const BASE_DEPTH: u32 = 48;
/// How far away from the index set free digits are still worth splitting on.
const SPLIT_HORIZON: i64 = 8;

/// Render the completion realizing the extremum of λ_i as a sequence
/// literal: fixed digits as given, free digits by the parity rule (relative
/// to i), periodic extremal blocks beyond the window.
fn extremal_witness(p: &WindowPattern, maximize: bool, i: i64) -> String {
    let lo = p.min_known();
    let hi = p.max_known();
    let ext = |idx: i64| -> Digit {
        let odd = (idx - i).rem_euclid(2) == 1;
        if maximize == odd {
            p.alphabet.min()
        } else {
            p.alphabet.max()
        }
    };
    let mut center = String::new();
    for idx in lo..=hi {
        let d = p.digit_at(idx).unwrap_or_else(|| ext(idx));
        center.push(char::from(b'0' + d));
        if idx == 0 {
            center.push('*');
        }
    }
    let left = match &p.left_tail {
        Some(t) => {
            let mut w: Word = t.clone();
            w.reverse();
            crate::digits::word_to_string(&w)
        }
        // Written left-to-right the outward extremal digits read reversed.
        None => [ext(lo - 2), ext(lo - 1)]
            .iter()
            .map(|d| char::from(b'0' + d))
            .collect(),
    };
    let right = match &p.right_tail {
        Some(t) => crate::digits::word_to_string(t),
        None => [ext(hi + 1), ext(hi + 2)]
            .iter()
            .map(|d| char::from(b'0' + d))
            .collect(),
    };
    format!("({left}){center}({right})")
}

fn prove_extremum(c: &Claim, maximize: bool, max_depth: u32, tol: &Rat) -> Verdict {
    let i = c.index_set.first().copied().unwrap_or(0);
    let mut depth = BASE_DEPTH;
    loop {
        let iv = extremal_lambda(&c.pattern, i, maximize, depth);
        let decided = if maximize {
            // UPPER claim: max < threshold.
            if iv.lt(&c.threshold) {
                Some(Status::Proved)
            } else if iv.gt(&c.threshold) {
                Some(Status::Refuted)
            } else {
                None
            }
        } else {
            // LOWER claim: min > threshold.
            if iv.gt(&c.threshold) {
                Some(Status::Proved)
            } else if iv.lt(&c.threshold) {
                Some(Status::Refuted)
            } else {
                None
            }
        };
        match decided {
            Some(status) if iv.width() <= *tol => {
                let witness = Some(extremal_witness(&c.pattern, maximize, i));
                return Verdict { status, bound: iv, witness, depth_used: depth };
            }
            _ if depth >= max_depth.max(BASE_DEPTH) * 8 => {
                return Verdict {
                    status: Status::Inconclusive,
                    bound: iv,
                    witness: None,
                    depth_used: depth,
                };
            }
            _ => depth *= 2,
        }
    }
}

struct DisjSearch<'a> {
    claim: &'a Claim,
    depth: u32,
    max_splits: u32,
    /// Weakest certified clearing bound across proved branches.
    weakest: Option<RInterval>,
    splits_used: u32,
}

enum BranchOutcome {
    Proved,
    Refuted(String),
    Inconclusive,
}

impl<'a> DisjSearch<'a> {
    fn run(&mut self, p: &WindowPattern, splits: u32) -> BranchOutcome {
        // Clear the branch if some λ_i is certifiably above the threshold
        // for every completion.
        for &i in &self.claim.index_set {
            let iv = extremal_lambda(p, i, false, self.depth);
            if iv.gt(&self.claim.threshold) {
                self.weakest = Some(match &self.weakest {
                    None => iv,
                    Some(w) => RInterval::new(
                        w.lo().clone().min(iv.lo().clone()),
                        w.hi().clone().min(iv.hi().clone()),
                    ),
                });
                self.splits_used = self.splits_used.max(splits);
                return BranchOutcome::Proved;
            }
        }
        // Split on the free digit nearest the index set.
        let pos = self.pick_split(p);
        match pos {
            Some(pos) if splits < self.max_splits => {
                for &d in p.alphabet.digits() {
                    match self.run(&p.assign(pos, d), splits + 1) {
                        BranchOutcome::Proved => {}
                        other => return other,
                    }
                }
                BranchOutcome::Proved
            }
            _ => {
                // No useful split left: look for a genuine counterexample —
                // a single completion keeping every λ_i at or below the
                // threshold.
                let all_below = self.claim.index_set.iter().all(|&i| {
                    extremal_lambda(p, i, true, self.depth).lt(&self.claim.threshold)
                });
                if all_below {
                    let i = self.claim.index_set[0];
                    BranchOutcome::Refuted(extremal_witness(p, false, i))
                } else {
                    BranchOutcome::Inconclusive
                }
            }
        }
    }

    fn pick_split(&self, p: &WindowPattern) -> Option<i64> {
        let s = &self.claim.index_set;
        let mut best: Option<(i64, i64)> = None; // (distance, pos)
        let lo = s.iter().min().unwrap() - SPLIT_HORIZON;
        let hi = s.iter().max().unwrap() + SPLIT_HORIZON;
        for pos in lo..=hi {
            if p.digit_at(pos).is_some() {
                continue;
            }
            let dist = s.iter().map(|&i| (pos - i).abs()).min().unwrap();
            if dist > SPLIT_HORIZON {
                continue;
            }
            let cand = (dist, pos.abs() * 2 + i64::from(pos < 0));
            match best {
                Some((bd, bp)) if (bd, bp) <= cand => {}
                _ => best = Some(cand),
            }
        }
        best.map(|(_, enc)| {
            let pos = enc / 2;
            if enc % 2 == 1 {
                -pos
            } else {
                pos
            }
        })
    }
}

fn prove_disjunctive(c: &Claim, max_depth: u32, _tol: &Rat) -> Verdict {
    let mut search = DisjSearch {
        claim: c,
        depth: BASE_DEPTH * 2,
        max_splits: max_depth.max(12),
        weakest: None,
        splits_used: 0,
    };
    match search.run(&c.pattern, 0) {
        BranchOutcome::Proved => Verdict {
            status: Status::Proved,
            bound: search.weakest.expect("at least one branch"),
            witness: None,
            depth_used: search.splits_used,
        },
        BranchOutcome::Refuted(w) => Verdict {
            status: Status::Refuted,
            bound: RInterval::point(c.threshold.clone()),
            witness: Some(w),
            depth_used: search.splits_used,
        },
        BranchOutcome::Inconclusive => Verdict {
            status: Status::Inconclusive,
            bound: RInterval::point(c.threshold.clone()),
            witness: None,
            depth_used: search.max_splits,
        },
    }
}

pub fn prove_claim(c: &Claim, max_depth: u32, tol: &Rat) -> Verdict {
    match c.kind {
        ClaimKind::Upper => prove_extremum(c, true, max_depth, tol),
        ClaimKind::Lower => prove_extremum(c, false, max_depth, tol),
        ClaimKind::Disjunctive => prove_disjunctive(c, max_depth, tol),
    }
}

/// Check a proved verdict's bound against the claim's expected annotation.
pub fn check_expected(c: &Claim, v: &Verdict) -> Option<bool> {
    let e = c.expected.as_ref()?;
    Some(match e {
        Expected::Prefix(p) => {
            crate::interval::has_decimal_prefix(v.bound.lo(), p)
                && crate::interval::has_decimal_prefix(v.bound.hi(), p)
        }
        Expected::Below(x) => v.bound.lt(x),
        Expected::Above(x) => v.bound.gt(x),
    })
}

/// Parse the line-oriented claim ledger:
/// `id | pattern | kind | threshold | index_set [| expected]`,
/// `#` starts a comment.
pub fn parse_ledger(text: &str, alphabet: Alphabet) -> Result<Vec<Claim>, ProverError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        let bad = |reason: &str| ProverError::BadLedgerLine {
            line: lineno + 1,
            reason: reason.to_string(),
        };
        if fields.len() < 5 {
            return Err(bad("expected at least 5 fields"));
        }
        let id = fields[0].to_string();
        let pattern_text = fields[1].to_string();
        let pattern = WindowPattern::parse(&pattern_text, alphabet.clone())?;
        let kind = match fields[2] {
            "UPPER" => ClaimKind::Upper,
            "LOWER" => ClaimKind::Lower,
            "DISJ" => ClaimKind::Disjunctive,
            k => return Err(bad(&format!("unknown kind {k:?}"))),
        };
        let threshold_text = fields[3].to_string();
        let threshold = parse_decimal(&threshold_text)?;
        let set_text = fields[4].trim_start_matches('{').trim_end_matches('}');
        let index_set: Vec<i64> = set_text
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("bad index set"))?;
        if index_set.is_empty() {
            return Err(bad("empty index set"));
        }
        let expected = match fields.get(5) {
            None => None,
            Some(&"-") | Some(&"") => None,
            Some(e) if e.starts_with('=') => Some(Expected::Prefix(e[1..].to_string())),
            Some(e) if e.starts_with('<') => Some(Expected::Below(parse_decimal(&e[1..])?)),
            Some(e) if e.starts_with('>') => Some(Expected::Above(parse_decimal(&e[1..])?)),
            Some(e) => return Err(bad(&format!("bad expected annotation {e:?}"))),
        };
        out.push(Claim {
            id,
            pattern_text,
            pattern,
            kind,
            threshold,
            threshold_text,
            index_set,
            expected,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub status: Status,
    pub bound_lo: String,
    pub bound_hi: String,
    pub depth_used: u32,
    /// Present when the ledger line carries an expected annotation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Result of re-proving the mirrored claim.
    pub transpose_status: Status,
}

/// Prove every ledger claim (and its transpose), in parallel, with a
/// deterministic report ordered as in the ledger.
pub fn run_ledger(claims: &[Claim], max_depth: u32, tol: &Rat) -> Vec<ClaimReport> {
    claims
        .par_iter()
        .map(|c| {
            let v = prove_claim(c, max_depth, tol);
            let vt = prove_claim(&c.transposed(), max_depth, tol);
            let (lo, hi) = v.bound.to_decimal_strings(17);
            ClaimReport {
                id: c.id.clone(),
                status: v.status,
                bound_lo: lo,
                bound_hi: hi,
                depth_used: v.depth_used,
                expected_ok: check_expected(c, &v),
                witness: if v.status == Status::Refuted { v.witness.clone() } else { None },
                transpose_status: vt.status,
            }
        })
        .collect()
}

pub fn report_all_proved(reports: &[ClaimReport]) -> bool {
    reports.iter().all(|r| {
        r.status == Status::Proved
            && r.transpose_status == Status::Proved
            && r.expected_ok != Some(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::has_decimal_prefix;

    fn a123() -> Alphabet {
        Alphabet::new(vec![1, 2, 3]).unwrap()
    }

    fn claim(pattern: &str, kind: ClaimKind, threshold: &str, set: &[i64]) -> Claim {
        Claim {
            id: "test".into(),
            pattern_text: pattern.into(),
            pattern: WindowPattern::parse(pattern, a123()).unwrap(),
            kind,
            threshold: parse_decimal(threshold).unwrap(),
            threshold_text: threshold.into(),
            index_set: set.to_vec(),
            expected: None,
        }
    }

    fn tol() -> Rat {
        parse_decimal("0.0000000000001").unwrap()
    }

    #[test]
    fn upper_claim_33x3() {
        // max of λ_0 over …3 3* 3… completions is 3.61278966…
        let c = claim("33*3", ClaimKind::Upper, "3.61279", &[0]);
        let v = prove_claim(&c, 24, &tol());
        assert_eq!(v.status, Status::Proved);
        assert!(has_decimal_prefix(v.bound.lo(), "3.61278966"));
        // Tightening the threshold below the max refutes with a witness.
        let c = claim("33*3", ClaimKind::Upper, "3.61", &[0]);
        let v = prove_claim(&c, 24, &tol());
        assert_eq!(v.status, Status::Refuted);
        assert!(v.witness.is_some());
    }

    #[test]
    fn lower_claim_3x1() {
        // min of λ_0 over …3* 1… is [3;1,131313…] + [0;313131…] = 3.822020185…
        let c = claim("3*1", ClaimKind::Lower, "3.822", &[0]);
        let v = prove_claim(&c, 24, &tol());
        assert_eq!(v.status, Status::Proved);
        assert!(has_decimal_prefix(v.bound.lo(), "3.822020185"));
    }

    #[test]
    fn pattern_accessors() {
        let p = WindowPattern::parse("(21)123*32(13)", a123()).unwrap();
        assert_eq!(p.digit_at(0), Some(3));
        assert_eq!(p.digit_at(-1), Some(2));
        assert_eq!(p.digit_at(-2), Some(1));
        // Beyond the head the pinned left block continues: …2121|123*.
        assert_eq!(p.digit_at(-3), Some(1));
        assert_eq!(p.digit_at(-4), Some(2));
        assert_eq!(p.digit_at(2), Some(2));
        assert_eq!(p.digit_at(3), Some(1));
        assert_eq!(p.digit_at(4), Some(3));
        let t = p.transpose();
        assert_eq!(t.digit_at(2), p.digit_at(-2));
        assert_eq!(t.digit_at(-3), p.digit_at(3));
    }

    #[test]
    fn window_string_roundtrip() {
        let p = WindowPattern::parse("33*2", a123()).unwrap();
        assert_eq!(p.window_string(), "33*2");
    }

    #[test]
    fn extremal_encloses_random_completions() {
        let p = WindowPattern::parse("23*1", a123()).unwrap();
        let max = extremal_lambda(&p, 0, true, 60);
        let min = extremal_lambda(&p, 0, false, 60);
        // A few concrete completions must land inside [min, max].
        for lit in ["(12)23*1(21)", "(31)23*1(13)", "(111)23*1(333)"] {
            let b = SeqLiteral::parse(lit).unwrap().to_biseq();
            let v = crate::cf::lambda_at(&b, 0, &tol()).unwrap();
            // The completion's value must lie within [min, max] up to the
            // enclosure widths on either side.
            assert!(v.hi() >= min.lo() && v.lo() <= max.hi(), "{lit}");
        }
    }

    #[test]
    fn ledger_parse_and_run() {
        let text = "\
# two claims
l1.iii | 33*3 | UPPER | 3.61279 | {0} | =3.61278966
l1.i   | 3*1  | LOWER | 3.822   | {0} | =3.822020185
";
        let claims = parse_ledger(text, a123()).unwrap();
        assert_eq!(claims.len(), 2);
        let reports = run_ledger(&claims, 24, &tol());
        assert!(report_all_proved(&reports), "{reports:?}");
        assert_eq!(reports[0].id, "l1.iii");
        assert_eq!(reports[0].expected_ok, Some(true));
    }

    #[test]
    fn ledger_rejects_malformed_lines() {
        assert!(parse_ledger("x | 3*1 | UPPER | 3.9", a123()).is_err());
        assert!(parse_ledger("x | 3*1 | SIDEWAYS | 3.9 | {0}", a123()).is_err());
        assert!(parse_ledger("x | 31 | UPPER | 3.9 | {0}", a123()).is_err());
    }

    #[test]
    fn disjunctive_smoke() {
        // Single-index disjunctive claim, equivalent to LOWER but exercising
        // the branch search: λ_0 of any completion of …3 3* 2 1… exceeds 3.5.
        let c = claim("33*21", ClaimKind::Disjunctive, "3.5", &[0]);
        let v = prove_claim(&c, 24, &tol());
        assert_eq!(v.status, Status::Proved);
    }
}
