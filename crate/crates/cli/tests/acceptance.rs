//! The twelve acceptance criteria at p = 5, one PASS/FAIL line each.
//!
//! Parameters are pinned inside each check (lengths 8, indices 6, oracle
//! precision 3 or 4, 200 Cartan samples with seed 0). All arithmetic is
//! exact, so there are no numerical tolerances. Criterion 12 is a known
//! failure (see the README): the test asserts that it still fails so a
//! change in that status is noticed.

use std::io::Write;

use heckext_cli::checks::{acceptance, KNOWN_FAILURES};
use heckext_cli::RunConfig;

#[test]
fn acceptance_criteria() {
    let verdicts = acceptance(&RunConfig::default()).expect("checks run");
    assert_eq!(verdicts.len(), 12);
    // Written to the stdout handle rather than through `println!` so the
    // lines appear without `--nocapture`.
    let mut out = std::io::stdout().lock();
    for v in &verdicts {
        writeln!(out, "{}", v.line()).unwrap();
        if !v.pass {
            writeln!(out, "    details: {}", v.details).unwrap();
        }
    }
    drop(out);
    for v in &verdicts {
        let n = v.criterion.expect("acceptance checks are numbered");
        if KNOWN_FAILURES.contains(&n) {
            assert!(!v.pass, "criterion {n} ({}) now passes; update KNOWN_FAILURES and the README", v.id);
        } else {
            assert!(v.pass, "criterion {n} ({}) failed: {}", v.id, v.details);
        }
    }
}
