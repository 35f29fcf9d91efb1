//! Acceptance criteria at their pinned sizes. One line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use hecke_ribbon::verify::{criterion, criterion_title, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    for k in 1..=CRITERIA {
        let start = Instant::now();
        match criterion(k) {
            Ok(report) => {
                let verdict = if report.passed() { "PASS" } else { "FAIL" };
                println!(
                    "criterion {k:>2} {verdict} {} [{}; {} checks; {:.1}s]",
                    criterion_title(k),
                    report.scope,
                    report.checked,
                    start.elapsed().as_secs_f64()
                );
                if !report.passed() {
                    failed += 1;
                    for f in report.failures.iter().take(10) {
                        println!("    {f}");
                    }
                }
            }
            Err(e) => {
                failed += 1;
                println!("criterion {k:>2} FAIL {}: {e}", criterion_title(k));
            }
        }
    }
    println!("{} of {CRITERIA} criteria pass", CRITERIA - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
