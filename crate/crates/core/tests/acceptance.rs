//! Runs the nine acceptance criteria and prints one line per criterion.

use std::process::ExitCode;

use apartness_core::parallel::default_jobs;
use apartness_core::suite::{Suite, SuiteConfig};

fn main() -> ExitCode {
    let config = SuiteConfig {
        jobs: default_jobs(),
        ..SuiteConfig::default()
    };
    let suite = Suite::new(config).expect("default bounds are valid");
    let mut failed = Vec::new();
    for n in 1..=9 {
        let r = suite.run(n);
        println!("{r}");
        if !r.passed() {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: criteria {failed:?} do not pass");
        ExitCode::FAILURE
    }
}
