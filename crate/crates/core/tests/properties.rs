//! Randomized property suites for the sequence-value machinery.

use mlgap_core::cf::{extremal_tail, lambda_at, markov_value};
use mlgap_core::digits::{Alphabet, Digit};
use mlgap_core::dim::{build_subshift, pressure};
use mlgap_core::interval::parse_decimal;
use mlgap_core::prover::{extremal_lambda, WindowPattern};
use mlgap_core::seq::{BiSeq, OneSidedSeq};
use proptest::prelude::*;

fn a123() -> Alphabet {
    Alphabet::new(vec![1, 2, 3]).unwrap()
}

fn digit123() -> impl Strategy<Value = Digit> {
    1u8..=3
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<Digit>> {
    prop::collection::vec(digit123(), 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    /// The Markov value only sees the multiset of two-sided views, so
    /// mirroring the sequence about the origin never changes it.
    #[test]
    fn markov_value_is_transpose_invariant(block in word(7), star_seed in 0usize..64) {
        let star = star_seed % block.len();
        let a = BiSeq::purely_periodic(&block, star);
        let tol = parse_decimal("0.000001").unwrap();
        let m = markov_value(&a, &tol).unwrap();
        let mt = markov_value(&a.transpose(), &tol).unwrap();
        prop_assert!(m.overlaps(&mt), "m={m} vs transposed {mt}");
    }

    /// λ₀ of any periodic completion of a pinned window lies between the
    /// certified extremal bounds for that window.
    #[test]
    fn extremal_bounds_dominate_random_completions(
        core in word(5),
        star_seed in 0usize..64,
        ltail in word(4),
        rtail in word(4),
    ) {
        let star = star_seed % core.len();
        let pattern = {
            let mut known = std::collections::BTreeMap::new();
            for (j, &d) in core.iter().enumerate() {
                known.insert(j as i64 - star as i64, d);
            }
            WindowPattern::from_digits(known, a123())
        };
        let lo = extremal_lambda(&pattern, 0, false, 28);
        let hi = extremal_lambda(&pattern, 0, true, 28);

        let left_head: Vec<Digit> = core[..star].iter().rev().copied().collect();
        let b = BiSeq::new(
            OneSidedSeq::new(left_head, Some(ltail)),
            core[star],
            OneSidedSeq::new(core[star + 1..].to_vec(), Some(rtail)),
        );
        let tol = parse_decimal("0.000001").unwrap();
        let lam = lambda_at(&b, 0, &tol).unwrap();
        prop_assert!(lo.lo() <= lam.hi(), "completion below extremal minimum");
        prop_assert!(lam.lo() <= hi.hi(), "completion above extremal maximum");
    }

    /// The extremal tail really is extremal among short periodic tails: no
    /// random periodic tail gives a larger (resp. smaller) one-sided value.
    #[test]
    fn extremal_tail_beats_random_tails(tail in word(6)) {
        let tol = parse_decimal("0.000001").unwrap();
        for maximize in [false, true] {
            let best = extremal_tail(&a123(), maximize, true);
            let b_best = BiSeq::new(
                OneSidedSeq::new(vec![], Some(vec![1])),
                2,
                best.clone(),
            );
            let b_rand = BiSeq::new(
                OneSidedSeq::new(vec![], Some(vec![1])),
                2,
                OneSidedSeq::new(vec![], Some(tail.clone())),
            );
            let v_best = lambda_at(&b_best, 0, &tol).unwrap();
            let v_rand = lambda_at(&b_rand, 0, &tol).unwrap();
            if maximize {
                prop_assert!(v_rand.lo() <= v_best.hi());
            } else {
                prop_assert!(v_best.lo() <= v_rand.hi());
            }
        }
    }
}

/// Pressure strictly decreases in s and stabilizes as the collocation order
/// grows.
#[test]
fn pressure_monotone_and_order_convergent() {
    let spec = build_subshift(&Alphabet::new(vec![1, 2]).unwrap(), &[]).unwrap();
    let mut prev = f64::INFINITY;
    for s in [0.2, 0.4, 0.6, 0.8] {
        let p = pressure(&spec, s, 14).unwrap().unwrap();
        let mid = p.to_f64();
        assert!(mid < prev, "pressure not decreasing at s={s}");
        prev = mid;
    }
    let coarse = pressure(&spec, 0.5312805062772051, 8).unwrap().unwrap();
    let fine = pressure(&spec, 0.5312805062772051, 20).unwrap().unwrap();
    let c = coarse.to_f64();
    let f = fine.to_f64();
    assert!(f.abs() < 1e-10, "pressure at the dimension should vanish: {f}");
    assert!((c - f).abs() < 1e-4, "orders disagree: {c} vs {f}");
}
