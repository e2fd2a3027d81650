//! Continued-fraction values of eventually periodic sequences: exact
//! evaluation through quadratic surds, certified λ-value enclosures, Markov
//! and Lagrange values, the first-difference comparison rule and extremal
//! periodic completions.

use crate::digits::{Alphabet, Digit, Word};
use crate::interval::{pow2_inv, RInterval, Rat};
use crate::seq::{BiSeq, OneSidedSeq};
use crate::surd::{periodic_cf_value, Surd};
use num::bigint::BigInt;
use num::{One, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CfError {
    #[error("sequence is partial; complete it or use extremal bounds")]
    Partial,
    #[error("equal digits have no first difference")]
    EqualDigits,
}

/// Value and continuant of a finite word: returns (p, q) with [0; w] = p/q in
/// lowest terms; q is the continuant K(w). Empty word yields (0, 1).
pub fn continuant(w: &[Digit]) -> (BigInt, BigInt) {
    // K(w) by the standard recurrence; p = K(w[1..]).
    let k = |digits: &[Digit]| -> BigInt {
        let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
        for &d in digits {
            let next = BigInt::from(d) * &cur + &prev;
            prev = cur;
            cur = next;
        }
        cur
    };
    if w.is_empty() {
        return (BigInt::zero(), BigInt::one());
    }
    (k(&w[1..]), k(w))
}

/// Continuant K(w) alone.
pub fn continuant_k(w: &[Digit]) -> BigInt {
    continuant(w).1
}

/// Exact value of a complete one-sided sequence as [0; d0, d1, …].
pub fn eval_exact(seq: &OneSidedSeq) -> Result<Surd, CfError> {
    let tail = seq.tail.as_ref().ok_or(CfError::Partial)?;
    let mut v = periodic_cf_value(tail);
    for &d in seq.head.iter().rev() {
        v = v.add_rat(&Rat::from_integer(BigInt::from(d))).recip();
    }
    Ok(v)
}

/// Enclosure of [c0; seq] of width <= tol.
pub fn eval(seq: &OneSidedSeq, integer_part: Digit, tol: &Rat) -> Result<RInterval, CfError> {
    let half = tol / Rat::from_integer(BigInt::from(2));
    let v = eval_exact(seq)?.to_interval(&half);
    let out = v.add_rat(&Rat::from_integer(BigInt::from(integer_part)));
    debug_assert!(out.width() <= *tol);
    Ok(out)
}

/// Fold head digits onto a tail-value enclosure: [0; d0, …, dk, tail].
pub fn fold_back(head: &[Digit], tail_value: &RInterval) -> RInterval {
    let mut v = tail_value.clone();
    for &d in head.iter().rev() {
        v = v.add_rat(&Rat::from_integer(BigInt::from(d))).recip();
    }
    v
}

/// Precomputed enclosures of [0; rotation of t] for every rotation phase.
fn rotation_intervals(t: &Word, tol: &Rat) -> Vec<RInterval> {
    (0..t.len())
        .map(|j| {
            let rot: Word = (0..t.len()).map(|k| t[(j + k) % t.len()]).collect();
            periodic_cf_value(&rot).to_interval(tol)
        })
        .collect()
}

/// One side of λ_i: enclosure of [0; a_{i+s}, a_{i+2s}, …] for s = ±1,
/// reading outward from position i in a complete bi-sequence.
fn side_value(a: &BiSeq, i: i64, step: i64, rot: &[RInterval], head_len: usize) -> RInterval {
    // Positions idx = i + k·step for k = 1, 2, …; once |idx| exceeds the head
    // on that side we are inside the periodic block at a known phase.
    let boundary = head_len as i64 + 1; // |idx| >= boundary means inside tail
    let mut head = Vec::new();
    let mut k = 1i64;
    loop {
        let idx = i + k * step;
        let in_tail = if step > 0 { idx >= boundary } else { idx <= -boundary };
        if in_tail {
            let outward = (idx.abs() - boundary) as usize;
            let phase = outward % rot.len();
            return fold_back(&head, &rot[phase]);
        }
        head.push(a.digit(idx).expect("complete sequence"));
        k += 1;
    }
}

/// Enclosure of λ_i(a) = [a_i; a_{i+1}, …] + [0; a_{i-1}, …], width <= tol.
pub fn lambda_at(a: &BiSeq, i: i64, tol: &Rat) -> Result<RInterval, CfError> {
    let (rt, lt) = match (&a.right.tail, &a.left.tail) {
        (Some(r), Some(l)) => (r, l),
        _ => return Err(CfError::Partial),
    };
    let quarter = tol / Rat::from_integer(BigInt::from(4));
    let rot_r = rotation_intervals(rt, &quarter);
    let rot_l = rotation_intervals(lt, &quarter);
    let out = lambda_with_rotations(a, i, &rot_r, &rot_l);
    debug_assert!(out.width() <= *tol);
    Ok(out)
}

fn lambda_with_rotations(a: &BiSeq, i: i64, rot_r: &[RInterval], rot_l: &[RInterval]) -> RInterval {
    let right = side_value(a, i, 1, rot_r, a.right.head.len());
    let left = side_value(a, i, -1, rot_l, a.left.head.len());
    let d = Rat::from_integer(BigInt::from(a.digit(i).expect("complete sequence")));
    right.add(&left).add_rat(&d)
}

/// Enclosure of sup over all shifts of λ on the purely periodic repetition of
/// `t`, width <= tol.
pub fn periodic_sup(t: &Word, tol: &Rat) -> RInterval {
    let half = tol / Rat::from_integer(BigInt::from(2));
    let quarter = &half / Rat::from_integer(BigInt::from(2));
    let mut best: Option<RInterval> = None;
    for j in 0..t.len() {
        let b = BiSeq::purely_periodic(t, j);
        let right = eval_exact(&b.right).unwrap().to_interval(&quarter);
        let left = eval_exact(&b.left).unwrap().to_interval(&quarter);
        let lam = right
            .add(&left)
            .add_rat(&Rat::from_integer(BigInt::from(b.origin)));
        best = Some(match best {
            None => lam,
            Some(b) => b.max(&lam),
        });
    }
    best.expect("nonempty block")
}

/// Enclosure of m(a) = sup over all i of λ_i(a), width <= tol.
pub fn markov_value(a: &BiSeq, tol: &Rat) -> Result<RInterval, CfError> {
    let (rt, lt) = match (&a.right.tail, &a.left.tail) {
        (Some(r), Some(l)) => (r.clone(), l.clone()),
        _ => return Err(CfError::Partial),
    };
    let quarter = tol / Rat::from_integer(BigInt::from(4));
    // Window size: beyond N positions into a periodic tail, λ_i differs from
    // the corresponding purely periodic λ by less than 2^(1-n), n the number
    // of agreeing digits; pick n with 2^(1-n) <= tol/4.
    let mut n_req: u32 = 2;
    while pow2_inv(n_req - 1) > quarter {
        n_req += 1;
    }
    let head_max = a.right.head.len().max(a.left.head.len()) as i64;
    let n = head_max + n_req as i64 + 1;
    let eps = pow2_inv(n_req);

    let rot_r = rotation_intervals(&rt, &quarter);
    let rot_l = rotation_intervals(&lt, &quarter);
    let mut acc = lambda_with_rotations(a, 0, &rot_r, &rot_l);
    for i in (-n..=n).filter(|&i| i != 0) {
        acc = acc.max(&lambda_with_rotations(a, i, &rot_r, &rot_l));
    }
    // The two periodic ends contribute their shift-sups exactly in the limit
    // (limsup), so the sups are genuine lower bounds; finite deep positions
    // can exceed them by at most eps.
    let sup_r = periodic_sup(&rt, &quarter);
    let sup_l = periodic_sup(&lt, &quarter);
    let tails = sup_r.max(&sup_l);
    let lo = acc.lo().clone().max(tails.lo().clone());
    let hi = acc.hi().clone().max(tails.hi() + &eps);
    let out = RInterval::new(lo.clone().min(hi.clone()), hi);
    debug_assert!(out.width() <= *tol);
    Ok(out)
}

/// Enclosure of ℓ(a) = limsup λ_n = the shift-sup of the right periodic tail.
pub fn lagrange_value(a: &BiSeq, tol: &Rat) -> Result<RInterval, CfError> {
    match &a.right.tail {
        Some(t) => Ok(periodic_sup(t, tol)),
        None => Err(CfError::Partial),
    }
}

/// First-difference comparison: two continued fractions sharing partial
/// quotients c_1…c_n (the `shared` word, excluding the common integer part)
/// and first differing at position n+1. Returns the ordering of the value
/// with digit `next_a` versus the value with digit `next_b`, together with
/// the guaranteed gap bound 1/2^(n-1) valid for *any* completions beyond the
/// shared prefix.
pub fn compare_prefix(
    shared: &[Digit],
    next_a: Digit,
    next_b: Digit,
) -> Result<(Ordering, Rat), CfError> {
    if next_a == next_b {
        return Err(CfError::EqualDigits);
    }
    let pos = shared.len() + 1;
    // Larger digit wins at even positions, loses at odd positions.
    let by_digit = next_a.cmp(&next_b);
    let ord = if pos % 2 == 0 { by_digit } else { by_digit.reverse() };
    let n = shared.len();
    let gap = if n >= 1 {
        pow2_inv(n as u32 - 1)
    } else {
        Rat::from_integer(BigInt::from(2))
    };
    Ok((ord, gap))
}

/// The periodic tail extremizing the continued-fraction value among all
/// completions over `alphabet`, when the next free position has the given
/// parity (position indices count partial quotients from 1, so the digit
/// right after the integer part sits at an odd position).
pub fn extremal_tail(alphabet: &Alphabet, maximize: bool, next_position_odd: bool) -> OneSidedSeq {
    let (first, second) = if maximize == next_position_odd {
        (alphabet.min(), alphabet.max())
    } else {
        (alphabet.max(), alphabet.min())
    };
    OneSidedSeq::new(vec![], Some(vec![first, second]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{has_decimal_prefix, parse_decimal};
    use crate::seq::SeqLiteral;

    fn tol12() -> Rat {
        parse_decimal("0.00000000000000001").unwrap()
    }

    fn assert_prefix(iv: &RInterval, prefix: &str) {
        assert!(
            has_decimal_prefix(iv.lo(), prefix) && has_decimal_prefix(iv.hi(), prefix),
            "expected decimal prefix {prefix}, got {iv}"
        );
    }

    #[test]
    fn continuants() {
        assert_eq!(continuant(&[]), (BigInt::zero(), BigInt::one()));
        assert_eq!(continuant(&[3]), (BigInt::one(), BigInt::from(3)));
        assert_eq!(continuant(&[2, 1]), (BigInt::one(), BigInt::from(3)));
        assert_eq!(continuant(&[2, 2, 1]), (BigInt::from(3), BigInt::from(7)));
        assert_eq!(continuant_k(&[1, 2]), BigInt::from(3));
        assert_eq!(continuant_k(&[2, 2]), BigInt::from(5));
    }

    #[test]
    fn eval_example_values() {
        // [3; 1, 1,3,1,3,…] + [0; 3,1,3,1,…] = 3.822020185…
        let right = OneSidedSeq::new(vec![1], Some(vec![1, 3]));
        let left = OneSidedSeq::new(vec![], Some(vec![3, 1]));
        let tol = tol12();
        let r = eval(&right, 3, &tol).unwrap();
        let l = eval(&left, 0, &tol).unwrap();
        assert_prefix(&r.add(&l), "3.822020185");
    }

    #[test]
    fn lambda_basics() {
        let tol = tol12();
        // λ_0 of …1 1 1… is √5.
        let ones = SeqLiteral::parse("(1)").unwrap().to_biseq();
        let l = lambda_at(&ones, 0, &tol).unwrap();
        assert_prefix(&l, "2.2360679");
        // λ_0 of …1 2 1 2… with origin 2 is √12.
        let p21 = SeqLiteral::parse("(21)").unwrap().to_biseq();
        let l = lambda_at(&p21, 0, &tol).unwrap();
        assert_prefix(&l, "3.4641016");
    }

    #[test]
    fn markov_of_periodic_blocks() {
        let tol = tol12();
        let ones = SeqLiteral::parse("(1)").unwrap().to_biseq();
        let m = markov_value(&ones, &tol).unwrap();
        assert_prefix(&m, "2.23606797");
        let j0 = SeqLiteral::parse("(33*22212)").unwrap().to_biseq();
        let m = markov_value(&j0, &tol).unwrap();
        assert_prefix(&m, "3.70969985967967");
    }

    #[test]
    fn markov_of_j1_sequence() {
        let tol = tol12();
        let j1 = SeqLiteral::parse("(21)12212332221233*22212332221233321(12)")
            .unwrap()
            .to_biseq();
        let l0 = lambda_at(&j1, 0, &tol).unwrap();
        assert_prefix(&l0, "3.70969985975042");
        // The sup over all shifts is slightly larger and sits at i = 7.
        let m = markov_value(&j1, &tol).unwrap();
        assert_prefix(&m, "3.70970022751115");
        let l7 = lambda_at(&j1, 7, &tol).unwrap();
        assert_prefix(&l7, "3.70970022751115");
    }

    #[test]
    fn lagrange_of_mixed_sequence() {
        let tol = tol12();
        let a = SeqLiteral::parse("(3322212)33*222(1)").unwrap().to_biseq();
        let l = lagrange_value(&a, &tol).unwrap();
        assert_prefix(&l, "2.23606797");
        let j0 = SeqLiteral::parse("(3322212)").unwrap().to_biseq();
        let l = lagrange_value(&j0, &tol).unwrap();
        assert_prefix(&l, "3.70969985967967");
    }

    #[test]
    fn compare_prefix_parity() {
        // Position 1 (odd): smaller digit gives the larger value.
        let (ord, _) = compare_prefix(&[], 2, 3).unwrap();
        assert_eq!(ord, Ordering::Greater);
        // Position 2 (even): larger digit wins.
        let (ord, gap) = compare_prefix(&[2], 1, 2).unwrap();
        assert_eq!(ord, Ordering::Less);
        assert_eq!(gap, Rat::one());
        assert_eq!(compare_prefix(&[2], 2, 2), Err(CfError::EqualDigits));
    }

    #[test]
    fn extremal_tails() {
        let a123 = Alphabet::new(vec![1, 2, 3]).unwrap();
        let a12 = Alphabet::new(vec![1, 2]).unwrap();
        assert_eq!(extremal_tail(&a123, true, true).tail, Some(vec![1, 3]));
        assert_eq!(extremal_tail(&a123, false, true).tail, Some(vec![3, 1]));
        assert_eq!(extremal_tail(&a12, true, true).tail, Some(vec![1, 2]));
        assert_eq!(extremal_tail(&a123, true, false).tail, Some(vec![3, 1]));
    }

    #[test]
    fn transpose_invariance_of_markov() {
        let tol = tol12();
        let a = SeqLiteral::parse("(3322212)33*22212332(21)").unwrap().to_biseq();
        let m = markov_value(&a, &tol).unwrap();
        let mt = markov_value(&a.transpose(), &tol).unwrap();
        assert!(m.overlaps(&mt), "m={m} mt={mt}");
    }
}
