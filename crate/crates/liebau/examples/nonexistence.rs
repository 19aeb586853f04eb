//! Sign patterns of the coefficients that rule out positive periodic
//! solutions outright: when `r(t) x^alpha - s(t) x^beta` keeps one strict
//! sign for every positive state, integrating the equation over a period
//! gives a contradiction.
//!
//! Run with: cargo run --example nonexistence

use liebau::certify::check_nonexistence;
use liebau::model::{CoefficientFunction, ProblemSpec};

fn main() {
    let cases = [
        ("r = 1, s = -1: forcing strictly positive", 1.0, -1.0),
        ("r = -1, s = 1: forcing strictly negative", -1.0, 1.0),
        ("r = 1, s = 1: mixed signs, nothing follows", 1.0, 1.0),
    ];
    for (label, r, s) in cases {
        let p = ProblemSpec::new(
            0.0,
            1.0,
            CoefficientFunction::Constant(r),
            CoefficientFunction::Constant(s),
            0.25,
            0.5,
        )
        .unwrap();
        println!("{label}");
        let checks = check_nonexistence(&p);
        for check in &checks {
            println!("  [{}] {} (margin {:+.3})", check.status, check.name, check.margin);
        }
        let ruled_out = checks.iter().any(|c| c.status == liebau::CheckStatus::Pass);
        println!(
            "  -> {}",
            if ruled_out {
                "no positive periodic solution can exist"
            } else {
                "non-existence not established by sign patterns"
            }
        );
        println!();
    }
}
