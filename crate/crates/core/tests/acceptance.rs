//! Runs every acceptance criterion and prints one line per criterion.
//!
//! Pinned bounds are the default configuration: seed 42, n <= 6, Bessel
//! series through x^12, 50 random relations, FR window i, j <= 2 with q and p
//! orders 10, polyominoes of width <= 4 and area <= 10.

use std::process::ExitCode;

use nbessel::bessel::{alternating_diagonal, contained_descent_sum, disjoint_descent_sum};
use nbessel::verify::{check_list, run_check, VerifyConfig};
use nbessel::Basis;

/// Criteria whose literal statement is false; see `twisted_inversion_reading`.
const KNOWN_FAILURES: [u8; 1] = [2];

// The ω-twisted inverse with K∼ the conjugate breaks at degree 3, while the
// descent-complement reading holds through degree 6.
fn twisted_inversion_reading() -> bool {
    let inv = alternating_diagonal(Basis::S, 6).invert().unwrap();
    (0..=6).all(|n| {
        let got = inv.element().bidegree_component(n, n);
        got.equals(&contained_descent_sum(n))
            && got.equals(&disjoint_descent_sum(n, true)) == (n <= 2)
    })
}

fn main() -> ExitCode {
    let config = VerifyConfig::default();
    let mut failed = Vec::new();
    for (id, _) in check_list() {
        let outcome = run_check(id, &config).expect("known check");
        let mark = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "{mark} {:>2} {}: {}",
            outcome.id, outcome.title, outcome.detail
        );
        eprintln!("        took {:.2?}", outcome.elapsed);
        if !outcome.passed {
            failed.push(outcome.id);
        }
    }
    let reading = twisted_inversion_reading();
    println!(
        "{} twisted inversion: complement form holds, conjugate form fails from degree 3",
        if reading { "PASS" } else { "FAIL" }
    );
    if failed == KNOWN_FAILURES && reading {
        println!(
            "acceptance: {} of 14 pass; failures match the documented set {KNOWN_FAILURES:?}",
            14 - failed.len()
        );
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {failed:?}");
        ExitCode::FAILURE
    }
}
