//! Acceptance criteria 1-10 at `n <= 4`, one line per criterion.
//!
//! Runs without the libtest harness so the lines are printed even when the
//! run passes.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use qcube::config::RunConfig;
use qcube::suites::SUITES;

fn main() -> ExitCode {
    let cfg = RunConfig { max_n: 4, grid_resolution: 10, ..RunConfig::default() };
    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for (number, name, suite) in SUITES {
        let start = Instant::now();
        let check = suite(&cfg);
        let secs = start.elapsed().as_secs_f64();
        if !check.passed {
            failed += 1;
        }
        writeln!(out, "criterion {number:>2} {name:<13} {check} ({secs:.2}s)").unwrap();
    }
    writeln!(out, "acceptance: {} of {} criteria passed", SUITES.len() - failed, SUITES.len()).unwrap();
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
