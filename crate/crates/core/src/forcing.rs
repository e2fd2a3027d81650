//! Window search under Markov-value constraints: enumerate the symbolic
//! windows compatible with a λ-value corridor, and replay the left-replication
//! mechanism that forces a periodic continuation digit by digit.

use crate::digits::{Alphabet, Digit};
use crate::interval::Rat;
use crate::prover::{extremal_lambda, Claim, ClaimKind, WindowPattern};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ForcingError {
    #[error("window budget exceeded: {0} live windows")]
    Budget(usize),
    #[error("replication seed does not parse: {0}")]
    BadSeed(#[from] crate::prover::ProverError),
    #[error("all branches died during replication")]
    NoBranch,
}

const PRUNE_DEPTH: u32 = 48;
const WINDOW_BUDGET: usize = 10_000_000;

/// Symmetric windows a_{-radius}..a_{radius} that may carry λ_0 in (lo, hi)
/// while keeping every λ_i below hi for |i| ≤ radius, stored as canonical
/// (lexicographically minimal under reversal) literals.
#[derive(Clone, Debug)]
pub struct SurvivorSet {
    pub windows: Vec<Vec<Digit>>,
    pub radius: i64,
    pub lo: Rat,
    pub hi: Rat,
    pub eliminated: u64,
}

fn window_literal(digits: &[Digit], origin: usize) -> String {
    let mut s = String::new();
    for (k, &d) in digits.iter().enumerate() {
        s.push(char::from(b'0' + d));
        if k == origin {
            s.push('*');
        }
    }
    s
}

fn canonical(mut w: Vec<Digit>) -> Vec<Digit> {
    let mut r = w.clone();
    r.reverse();
    if r < w {
        w = r;
    }
    w
}

/// Lexicographic minimum of a window literal and its reversal about the
/// origin marker.
pub fn canonicalize(digits: &[Digit], origin: usize) -> String {
    let mut rev: Vec<Digit> = digits.to_vec();
    rev.reverse();
    let rev_origin = digits.len() - 1 - origin;
    let a = window_literal(digits, origin);
    let b = window_literal(&rev, rev_origin);
    a.min(b)
}

fn symmetric_pattern(digits: &[Digit], alphabet: &Alphabet) -> WindowPattern {
    let r = (digits.len() / 2) as i64;
    let known: BTreeMap<i64, Digit> = digits
        .iter()
        .enumerate()
        .map(|(k, &d)| (k as i64 - r, d))
        .collect();
    WindowPattern::from_digits(known, alphabet.clone())
}

/// A window dies when some λ_i is certifiably ≥ hi for every completion, or
/// λ_0 is certifiably ≤ lo for every completion.
fn window_survives(digits: &[Digit], alphabet: &Alphabet, lo: &Rat, hi: &Rat) -> bool {
    let r = (digits.len() / 2) as i64;
    let p = symmetric_pattern(digits, alphabet);
    if extremal_lambda(&p, 0, true, PRUNE_DEPTH).hi() <= lo {
        return false;
    }
    for i in -r..=r {
        if extremal_lambda(&p, i, false, PRUNE_DEPTH).lo() >= hi {
            return false;
        }
    }
    true
}

/// Enumerate survivors by growing the radius one step at a time, pruning as
/// soon as a certified bound rules a window out. Restricting a survivor to a
/// smaller radius always yields a survivor, so staged growth loses nothing.
pub fn survivors(
    lo: &Rat,
    hi: &Rat,
    radius: i64,
    alphabet: &Alphabet,
) -> Result<SurvivorSet, ForcingError> {
    assert!(lo < hi && radius >= 1);
    let mut eliminated = 0u64;
    let mut live: BTreeSet<Vec<Digit>> = alphabet.digits().iter().map(|&d| vec![d]).collect();
    for _ in 1..=radius {
        let mut candidates: BTreeSet<Vec<Digit>> = BTreeSet::new();
        for w in &live {
            for &dl in alphabet.digits() {
                for &dr in alphabet.digits() {
                    let mut v = Vec::with_capacity(w.len() + 2);
                    v.push(dl);
                    v.extend_from_slice(w);
                    v.push(dr);
                    candidates.insert(canonical(v));
                }
            }
        }
        if candidates.len() > WINDOW_BUDGET {
            return Err(ForcingError::Budget(candidates.len()));
        }
        let cand: Vec<Vec<Digit>> = candidates.into_iter().collect();
        let kept: Vec<(Vec<Digit>, bool)> = cand
            .into_par_iter()
            .map(|w| {
                let keep = window_survives(&w, alphabet, lo, hi);
                (w, keep)
            })
            .collect();
        live = BTreeSet::new();
        for (w, keep) in kept {
            if keep {
                live.insert(w);
            } else {
                eliminated += 1;
            }
        }
    }
    Ok(SurvivorSet {
        windows: live.into_iter().collect(),
        radius,
        lo: lo.clone(),
        hi: hi.clone(),
        eliminated,
    })
}

impl SurvivorSet {
    pub fn literals(&self) -> Vec<String> {
        self.windows
            .iter()
            .map(|w| window_literal(w, w.len() / 2))
            .collect()
    }

    /// Restrict every window to a smaller radius (canonicalized, deduplicated).
    pub fn project(&self, radius: i64) -> BTreeSet<Vec<Digit>> {
        assert!(radius <= self.radius);
        let cut = (self.radius - radius) as usize;
        self.windows
            .iter()
            .map(|w| canonical(w[cut..w.len() - cut].to_vec()))
            .collect()
    }

    /// Position-wise consensus of the survivors, `?` where they disagree,
    /// trimmed of undetermined outer positions. Windows are aligned against
    /// the first survivor, each in whichever orientation agrees better.
    pub fn consensus(&self) -> Option<String> {
        let first = self.windows.first()?;
        let n = first.len();
        let mut cols: Vec<Option<Digit>> = first.iter().map(|&d| Some(d)).collect();
        for w in self.windows.iter().skip(1) {
            let mut rev = w.clone();
            rev.reverse();
            let agree = |v: &[Digit]| v.iter().zip(first).filter(|(a, b)| a == b).count();
            let best = if agree(&rev) > agree(w) { rev } else { w.clone() };
            for (c, &d) in cols.iter_mut().zip(&best) {
                if *c != Some(d) {
                    *c = None;
                }
            }
        }
        let mut s = String::new();
        let span: Vec<usize> = (0..n).filter(|&k| cols[k].is_some()).collect();
        let (first_k, last_k) = (*span.first()?, *span.last()?);
        for k in first_k..=last_k {
            match cols[k] {
                Some(d) => s.push(char::from(b'0' + d)),
                None => s.push('?'),
            }
            if k == n / 2 {
                s.push('*');
            }
        }
        Some(s)
    }
}

/// A partial bi-infinite window under construction during replication.
type Branch = BTreeMap<i64, Digit>;

fn branch_literal(b: &Branch) -> String {
    let lo = *b.keys().next().unwrap();
    let hi = *b.keys().next_back().unwrap();
    let mut s = String::new();
    for k in lo..=hi {
        s.push(char::from(b'0' + b[&k]));
        if k == 0 {
            s.push('*');
        }
    }
    s
}

/// Does the claim's fixed window occur inside the branch at this offset?
/// Every fixed digit of the claim must be present and equal; claims with
/// pinned periodic tails never instantiate on a finite window.
fn instantiates(c: &Claim, b: &Branch, offset: i64) -> bool {
    if c.pattern.has_pinned_tails() {
        return false;
    }
    c.pattern
        .known()
        .iter()
        .all(|(&p, &d)| b.get(&(p + offset)) == Some(&d))
}

/// Does some proved claim force a λ above `bound` at an index within
/// `horizon` of the origin, given the branch's digits? Returns the claim id.
fn contradiction(claims: &[Claim], b: &Branch, bound: &Rat, horizon: i64) -> Option<String> {
    for c in claims {
        if c.kind == ClaimKind::Upper || &c.threshold < bound || c.pattern.has_pinned_tails() {
            continue;
        }
        let keys: Vec<i64> = c.pattern.known().keys().copied().collect();
        let (kmin, kmax) = (keys[0], *keys.last().unwrap());
        let blo = *b.keys().next().unwrap();
        let bhi = *b.keys().next_back().unwrap();
        for offset in (blo - kmin)..=(bhi - kmax) {
            if c.index_set.iter().any(|&i| (i + offset).abs() > horizon) {
                continue;
            }
            if instantiates(c, b, offset) {
                return Some(c.id.clone());
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub enum Replication {
    /// A unique forced extension; the seed word recurs at `seed_offset`.
    Forced {
        window: String,
        seed_offset: Option<i64>,
        claims_used: Vec<String>,
    },
    /// Forcing stopped with several admissible branches.
    NotForced {
        branches: Vec<String>,
        claims_used: Vec<String>,
    },
}

/// Horizon of the replication hypothesis: λ_i is constrained for |i| ≤ 17.
const REPLICATION_HORIZON: i64 = 17;
/// Keep at most this many live branches; a branch that would need a further
/// split is reported as-is instead.
const MAX_BRANCHES: usize = 2;

pub struct Replicator<'a> {
    claims: Vec<Claim>,
    alphabet: Alphabet,
    bound: &'a Rat,
}

impl<'a> Replicator<'a> {
    /// `claims` must all have been proved; transposes are derived here.
    pub fn new(claims: &[Claim], alphabet: Alphabet, bound: &'a Rat) -> Self {
        let mut all: Vec<Claim> = claims.to_vec();
        all.extend(claims.iter().map(|c| c.transposed()));
        Replicator { claims: all, alphabet, bound }
    }

    fn excluded(&self, b: &Branch, pos: i64, d: Digit) -> Option<String> {
        let mut trial = b.clone();
        trial.insert(pos, d);
        contradiction(&self.claims, &trial, self.bound, REPLICATION_HORIZON)
    }

    /// Candidate digits at `pos` not ruled out by any claim, with the ids of
    /// the claims ruling the others out.
    fn candidates(&self, b: &Branch, pos: i64) -> (Vec<Digit>, Vec<String>) {
        let mut open = Vec::new();
        let mut used = Vec::new();
        for &d in self.alphabet.digits() {
            match self.excluded(b, pos, d) {
                Some(id) => used.push(id),
                None => open.push(d),
            }
        }
        (open, used)
    }

    /// Extend the window to span `left_target..=right_target`, forcing one
    /// digit at a time and splitting (up to MAX_BRANCHES) when necessary.
    pub fn run(
        &self,
        seed: &Branch,
        left_target: i64,
        right_target: i64,
    ) -> Result<Replication, ForcingError> {
        let mut used: Vec<String> = Vec::new();
        let mut live: Vec<Branch> = vec![seed.clone()];
        loop {
            // Drop branches that already contradict a claim.
            live.retain(|b| {
                match contradiction(&self.claims, b, self.bound, REPLICATION_HORIZON) {
                    Some(id) => {
                        used.push(id);
                        false
                    }
                    None => true,
                }
            });
            if live.is_empty() {
                return Err(ForcingError::NoBranch);
            }
            let mut progressed = false;
            for b in &mut live {
                loop {
                    let lo = *b.keys().next().unwrap();
                    let hi = *b.keys().next_back().unwrap();
                    let mut stepped = false;
                    for pos in [lo - 1, hi + 1] {
                        let in_range = (pos < lo && pos >= left_target)
                            || (pos > lo && pos <= right_target);
                        if !in_range {
                            continue;
                        }
                        let (open, ids) = self.candidates(b, pos);
                        if open.len() == 1 {
                            used.extend(ids);
                            b.insert(pos, open[0]);
                            stepped = true;
                        }
                    }
                    if !stepped {
                        break;
                    }
                    progressed = true;
                }
            }
            let done = |b: &Branch| {
                *b.keys().next().unwrap() <= left_target
                    && *b.keys().next_back().unwrap() >= right_target
            };
            if live.iter().all(done) {
                break;
            }
            if progressed {
                continue;
            }
            // No forced step anywhere: split the first incomplete branch on
            // its outer left position, if the budget allows.
            let idx = live.iter().position(|b| !done(b)).unwrap();
            let b = live[idx].clone();
            let lo = *b.keys().next().unwrap();
            let pos = if lo > left_target {
                lo - 1
            } else {
                *b.keys().next_back().unwrap() + 1
            };
            let (open, ids) = self.candidates(&b, pos);
            if open.is_empty() {
                used.extend(ids);
                live.remove(idx);
                continue;
            }
            if live.len() + open.len() - 1 > MAX_BRANCHES {
                break; // would exceed the budget: report as-is
            }
            used.extend(ids);
            live.remove(idx);
            for d in open {
                let mut nb = b.clone();
                nb.insert(pos, d);
                live.push(nb);
            }
        }
        used.sort();
        used.dedup();
        if live.len() == 1 {
            let b = &live[0];
            let seed_offset = find_subwindow(b, seed);
            Ok(Replication::Forced {
                window: branch_literal(b),
                seed_offset,
                claims_used: used,
            })
        } else {
            Ok(Replication::NotForced {
                branches: live.iter().map(branch_literal).collect(),
                claims_used: used,
            })
        }
    }
}

/// Smallest nonzero offset at which the seed window recurs inside the branch.
fn find_subwindow(b: &Branch, seed: &Branch) -> Option<i64> {
    let blo = *b.keys().next().unwrap();
    let bhi = *b.keys().next_back().unwrap();
    let slo = *seed.keys().next().unwrap();
    let shi = *seed.keys().next_back().unwrap();
    let mut best: Option<i64> = None;
    for k in (blo - slo)..=(bhi - shi) {
        if k == 0 {
            continue;
        }
        if seed.iter().all(|(&p, &d)| b.get(&(p + k)) == Some(&d)) {
            match best {
                Some(prev) if prev.abs() <= k.abs() => {}
                _ => best = Some(k),
            }
        }
    }
    best
}

/// Parse a plain window literal (digits with one `*` origin marker) into a
/// position map.
pub fn parse_window(text: &str, alphabet: &Alphabet) -> Result<Branch, ForcingError> {
    let p = WindowPattern::parse(text, alphabet.clone())?;
    Ok(p.known().clone())
}

/// One application of the left-replication corollary: extend the seed window
/// to positions -16..12, citing the claims consumed along the way.
pub fn replicate_left(
    seed: &str,
    bound: &Rat,
    claims: &[Claim],
    alphabet: &Alphabet,
) -> Result<Replication, ForcingError> {
    let b = parse_window(seed, alphabet)?;
    Replicator::new(claims, alphabet.clone(), bound).run(&b, -16, 12)
}

/// Iterate replication: after each forced step the seed recurs at offset -7,
/// so recenter there and force again, growing the left side without end.
pub fn replicate_iter(
    seed: &str,
    bound: &Rat,
    claims: &[Claim],
    alphabet: &Alphabet,
    steps: u32,
) -> Result<Replication, ForcingError> {
    let seed_map = parse_window(seed, alphabet)?;
    let rep = Replicator::new(claims, alphabet.clone(), bound);
    let mut window = seed_map.clone();
    let mut all_used: Vec<String> = Vec::new();
    let mut total_shift = 0i64;
    for _ in 0..steps {
        match rep.run(&window, -16, 12)? {
            Replication::Forced { claims_used, seed_offset, window: w } => {
                all_used.extend(claims_used);
                let off = seed_offset.ok_or(ForcingError::NoBranch)?;
                let forced = parse_window(&w, &rep.alphabet)?;
                // Recenter on the recurring seed and keep the known digits.
                window = forced.iter().map(|(&p, &d)| (p - off, d)).collect();
                total_shift += off;
            }
            other => return Ok(other),
        }
    }
    // Shift back so the original origin is position 0 again.
    let final_map: Branch = window.iter().map(|(&p, &d)| (p + total_shift, d)).collect();
    all_used.sort();
    all_used.dedup();
    Ok(Replication::Forced {
        window: branch_literal(&final_map),
        seed_offset: Some(-7),
        claims_used: all_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::parse_decimal;
    use crate::prover::parse_ledger;

    fn a123() -> Alphabet {
        Alphabet::new(vec![1, 2, 3]).unwrap()
    }

    fn d(s: &str) -> Rat {
        parse_decimal(s).unwrap()
    }

    #[test]
    fn survivors_radius_one() {
        let s = survivors(&d("3.62"), &d("3.71"), 1, &a123()).unwrap();
        assert_eq!(s.literals(), vec!["23*3"]);
        assert_eq!(s.consensus().unwrap(), "23*3");
    }

    #[test]
    fn survivors_radius_three_nested() {
        let s3 = survivors(&d("3.62"), &d("3.71"), 3, &a123()).unwrap();
        let s2 = survivors(&d("3.62"), &d("3.71"), 2, &a123()).unwrap();
        let projected = s3.project(2);
        let s2set: BTreeSet<Vec<Digit>> = s2.windows.iter().cloned().collect();
        assert!(projected.is_subset(&s2set));
    }

    #[test]
    fn canonicalize_involution() {
        let a = [3u8, 3, 2];
        assert_eq!(canonicalize(&a, 1), "23*3");
        let b = [2u8, 3, 3];
        assert_eq!(canonicalize(&b, 1), "23*3");
    }

    fn ledger_claims() -> Vec<Claim> {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/ledger.txt");
        let text = std::fs::read_to_string(path).unwrap();
        parse_ledger(&text, a123()).unwrap()
    }

    const SEED: &str = "2332221233*222123322";
    const EXTENDED: &str = "23322212332221233*222123322212";

    #[test]
    fn replication_forces_extension() {
        let claims = ledger_claims();
        let bound = d("3.70969985975033");
        let r = replicate_left(SEED, &bound, &claims, &a123()).unwrap();
        match r {
            Replication::Forced { window, seed_offset, claims_used } => {
                assert_eq!(window, EXTENDED);
                assert_eq!(seed_offset, Some(-7));
                assert!(!claims_used.is_empty());
            }
            other => panic!("expected forced extension, got {other:?}"),
        }
    }

    #[test]
    fn survivors_radius_five_consensus() {
        let s = survivors(&d("3.7087"), &d("3.7099"), 5, &a123()).unwrap();
        let c = s.consensus().unwrap();
        assert!(
            c == "1233*222" || c == "2223*321",
            "unexpected consensus {c} over {:?}",
            s.literals()
        );
    }

    #[test]
    fn survivors_radius_nine_unique() {
        let lo = d("3.7096992");
        let hi = d("3.7096999");
        let s = survivors(&lo, &hi, 9, &a123()).unwrap();
        let want: Vec<Digit> = "2332221233222123322"
            .bytes()
            .map(|b| b - b'0')
            .collect();
        assert_eq!(s.windows, vec![canonical(want)]);
    }

    #[test]
    fn replication_iterates() {
        let claims = ledger_claims();
        let bound = d("3.70969985975033");
        let r = replicate_iter(SEED, &bound, &claims, &a123(), 10).unwrap();
        match r {
            Replication::Forced { window, .. } => {
                let copies = window.matches("2332221").count();
                assert!(copies >= 10, "only {copies} copies in {window}");
            }
            other => panic!("expected forced window, got {other:?}"),
        }
    }

    #[test]
    fn replication_loose_bound_branches() {
        let claims = ledger_claims();
        let bound = d("3.7096998599");
        let r = replicate_left(SEED, &bound, &claims, &a123()).unwrap();
        match r {
            Replication::NotForced { branches, .. } => {
                assert_eq!(branches.len(), 2);
                assert!(branches.iter().any(|b| b == EXTENDED));
                assert!(branches
                    .iter()
                    .any(|b| b == "12212332221233*222123322212"));
            }
            other => panic!("expected two branches, got {other:?}"),
        }
    }
}
