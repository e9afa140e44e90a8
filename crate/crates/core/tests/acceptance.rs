//! Full verification suite: one PASS/FAIL line per check.
//!
//! Runs without the libtest harness so the lines are never captured.

use std::process::ExitCode;

use toboggan::acceptance::{format_line, run_with, RELEASE};

fn main() -> ExitCode {
    let results = match run_with(&[], |r| println!("{}", format_line(r))) {
        Ok(results) => results,
        Err(e) => {
            eprintln!("acceptance suite aborted: {e}");
            return ExitCode::FAILURE;
        }
    };
    let release = results.iter().filter(|r| RELEASE.contains(&r.id)).count();
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} checks passed", results.len());
    if release != 10 || passed != results.len() {
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
