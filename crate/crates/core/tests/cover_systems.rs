//! The shipped covering systems: each must certify its published exponent
//! (case sums below 1) and bisection must land at or below that exponent.

use mlgap_core::cover::{case_sum, parse_cover, solve_threshold, CoverSystem};
use mlgap_core::interval::{parse_decimal, Rat};
use num::bigint::BigInt;
use std::fs;
use std::path::PathBuf;

fn load_all() -> Vec<CoverSystem> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/cover");
    let mut files: Vec<_> = fs::read_dir(&dir)
        .expect("cover data directory")
        .map(|e| e.expect("dir entry").path())
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| parse_cover(&fs::read_to_string(p).expect("readable file")).expect("parses"))
        .collect()
}

#[test]
fn shipped_systems_certify_published_exponents() {
    let systems = load_all();
    assert_eq!(systems.len(), 7);
    let tol = parse_decimal("0.0000000001").unwrap();
    let margin = parse_decimal("0.00001").unwrap();
    let one = Rat::from_integer(BigInt::from(1));
    for cs in &systems {
        let sum = case_sum(cs, &cs.s_target, &tol).unwrap();
        println!(
            "{:15} s = {:10}  max case sum = {}",
            cs.label,
            cs.s_target,
            sum.to_decimal_strings(8).1
        );
        assert!(*sum.hi() < one, "{} not certified", cs.label);
        assert!(sum.width() < margin, "{} enclosure too loose", cs.label);
    }
}

#[test]
fn case_sums_match_printed_comparisons() {
    let systems = load_all();
    let tol = parse_decimal("0.0000000001").unwrap();
    let get = |label: &str| systems.iter().find(|c| c.label == label).unwrap();
    let check = |label: &str, below: &str| {
        let cs = get(label);
        let sum = case_sum(cs, &cs.s_target, &tol).unwrap();
        let cap = parse_decimal(below).unwrap();
        assert!(*sum.hi() < cap, "{}: {} !< {}", label, sum.to_decimal_strings(8).1, below);
    };
    check("sqrt10-sqrt13", "1");
    check("sqrt13-3.84", "0.999999");
    check("3.84-sqrt20", "0.999999");
    check("sqrt20-sqrt21", "0.999997");
    check("3.84-3.92", "0.99999");
    check("3.92-4.01", "0.99999");
    check("4.01-sqrt20", "0.9999");
}

#[test]
fn bisection_does_not_exceed_published_exponents() {
    let tol = parse_decimal("0.00001").unwrap();
    let slack = parse_decimal("0.0001").unwrap();
    for cs in &load_all() {
        let s_star = solve_threshold(cs, &tol).unwrap();
        assert!(
            s_star <= &cs.s_target + &slack,
            "{}: solved {} vs published {}",
            cs.label,
            s_star,
            cs.s_target
        );
        let certified = case_sum(cs, &s_star, &parse_decimal("0.0000000001").unwrap()).unwrap();
        assert!(*certified.hi() < Rat::from_integer(BigInt::from(1)));
    }
}

#[test]
fn case_sums_strictly_decrease_in_s() {
    let tol = parse_decimal("0.0000000001").unwrap();
    for cs in &load_all() {
        let mut prev: Option<Rat> = None;
        for k in 1..=10 {
            let s = Rat::new(BigInt::from(k), BigInt::from(10));
            let sum = case_sum(cs, &s, &tol).unwrap();
            if let Some(p) = prev {
                assert!(*sum.hi() < p, "{} not decreasing at s = {}", cs.label, s);
            }
            prev = Some(sum.lo().clone());
        }
    }
}
