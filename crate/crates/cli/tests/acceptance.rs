//! The acceptance suite: one PASS/FAIL line per criterion; fails if any criterion fails.

use std::process::ExitCode;

use eisterms_cli::acceptance::{criterion_count, run};

fn main() -> ExitCode {
    let results = run(&[]);
    assert_eq!(results.len(), criterion_count());
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
