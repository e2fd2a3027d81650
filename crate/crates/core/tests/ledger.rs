//! Runs the shipped claim ledger end to end: every claim and its transpose
//! must be proved, and every expected annotation must check out.

use mlgap_core::interval::parse_decimal;
use mlgap_core::prover::{parse_ledger, report_all_proved, run_ledger, Status};
use mlgap_core::Alphabet;

#[test]
fn shipped_ledger_proves() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/ledger.txt");
    let text = std::fs::read_to_string(path).unwrap();
    let alphabet = Alphabet::new(vec![1, 2, 3]).unwrap();
    let claims = parse_ledger(&text, alphabet).unwrap();
    assert!(claims.len() > 50, "ledger unexpectedly short: {}", claims.len());

    let tol = parse_decimal("0.000000000000000000000000000001").unwrap();
    let reports = run_ledger(&claims, 40, &tol);
    for r in &reports {
        let ok = r.status == Status::Proved
            && r.transpose_status == Status::Proved
            && r.expected_ok != Some(false);
        println!(
            "{:<11} {:?} (transpose {:?}) bound [{}, {}] expected_ok {:?}{}",
            r.id,
            r.status,
            r.transpose_status,
            &r.bound_lo[..r.bound_lo.len().min(22)],
            &r.bound_hi[..r.bound_hi.len().min(22)],
            r.expected_ok,
            if ok { "" } else { "  <-- FAIL" }
        );
    }
    assert!(report_all_proved(&reports));
}
