//! Runs every acceptance criterion and prints one line per criterion.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use invtopos_core::suite::{run_criterion, SuiteOptions, Status, CRITERIA};

fn seed() -> u64 {
    std::env::var("INVTOPOS_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7)
}

fn main() -> ExitCode {
    let options = SuiteOptions { seed: seed(), ..Default::default() };
    println!("acceptance criteria, seed {}", options.seed);
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let r = run_criterion(id, &options).expect("known criterion");
        let verdict = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        println!(
            "criterion {:>2} {verdict}  {} ({} checks, {:.2}s)",
            r.id,
            r.name,
            r.checked,
            start.elapsed().as_secs_f64()
        );
        for f in &r.failures {
            println!("    {f}");
        }
        if r.status == Status::Fail {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
