//! Acceptance run: one PASS/FAIL line per criterion, each against its time budget.
//!
//! Failures are reported but only change the exit status when
//! `FINFREE_STRICT_ACCEPTANCE=1`, so the rest of the test suite still runs.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use finfree::verify::{run_suite, Suite, SuiteOptions};

struct Criterion {
    id: u32,
    suite: Suite,
    budget: Duration,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, suite: Suite::Identities, budget: secs(5) },
        Criterion { id: 2, suite: Suite::Cumulants, budget: secs(30) },
        Criterion { id: 3, suite: Suite::Orthogonality, budget: secs(120) },
        Criterion { id: 4, suite: Suite::JacobiZeros, budget: secs(30 * 60) },
        Criterion { id: 5, suite: Suite::MarchenkoPastur, budget: secs(5) },
        Criterion { id: 6, suite: Suite::Endpoints, budget: secs(60) },
        Criterion { id: 7, suite: Suite::Moments, budget: secs(10 * 60) },
        Criterion { id: 8, suite: Suite::Interlacing, budget: secs(120) },
        Criterion { id: 9, suite: Suite::Densities, budget: secs(5 * 60) },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let report = run_suite(c.suite, &SuiteOptions::for_suite(c.suite));
        let elapsed = start.elapsed();
        let (ok, lines) = match report {
            Ok(rep) => {
                let lines: Vec<String> = rep
                    .checks
                    .iter()
                    .map(|k| format!("    [{}] {}: {}", if k.passed { "ok" } else { "FAIL" }, k.name, k.detail))
                    .collect();
                (rep.passed(), lines)
            }
            Err(e) => (false, vec![format!("    error: {e}")]),
        };
        let in_time = elapsed <= c.budget;
        let pass = ok && in_time;
        failed += usize::from(!pass);
        println!(
            "{} criterion {} ({}) in {:.1}s, budget {}s{}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.suite,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            if in_time { "" } else { ", over budget" }
        );
        for l in lines {
            println!("{l}");
        }
    }
    if failed == 0 {
        println!("all criteria passed");
        return ExitCode::SUCCESS;
    }
    println!("{failed} of the selected criteria failed");
    let strict = std::env::var("FINFREE_STRICT_ACCEPTANCE").is_ok_and(|v| v == "1");
    if strict {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
