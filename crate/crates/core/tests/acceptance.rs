//! One line per acceptance criterion: verdict, elapsed time and limit.

use std::time::{Duration, Instant};

use jetlift::suite::{run_criterion, run_suite, CheckReport, SuiteConfig};

const SEED: u64 = 42;

fn limits() -> [(u8, u64); 8] {
    [(1, 5), (2, 20), (3, 30), (4, 30), (5, 30), (6, 60), (7, 60), (8, 30)]
}

fn line(criterion: u8, ok: bool, elapsed: Duration, limit: u64, detail: &str) -> bool {
    let pass = ok && elapsed <= Duration::from_secs(limit);
    println!(
        "criterion {criterion}: {} ({:.2}s, limit {limit}s){}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if detail.is_empty() { String::new() } else { format!(" {detail}") }
    );
    pass
}

fn summary(reports: &[CheckReport]) -> String {
    reports
        .iter()
        .map(|r| {
            let mut s = format!("[{} {}/{}", r.name, r.passed, r.cases);
            if !r.green() {
                s += &format!(" failed {} inconclusive {}: {}", r.failed, r.inconclusive, r.problems.join("; "));
            }
            s + "]"
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[test]
fn acceptance_criteria() {
    let cfg = SuiteConfig { seed: SEED, ..SuiteConfig::default() };
    let mut all_pass = true;
    println!();
    for (c, limit) in limits() {
        let start = Instant::now();
        let reports = run_criterion(c, &cfg);
        let elapsed = start.elapsed();
        let ok = !reports.is_empty() && reports.iter().all(CheckReport::green);
        all_pass &= line(c, ok, elapsed, limit, &summary(&reports));
    }

    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let full = SuiteConfig { jobs, ..cfg };
    let start = Instant::now();
    let first = serde_json::to_string(&run_suite(&full)).unwrap();
    let elapsed = start.elapsed();
    let second = serde_json::to_string(&run_suite(&SuiteConfig { jobs: 1, ..full })).unwrap();
    let report: serde_json::Value = serde_json::from_str(&first).unwrap();
    let green = report["failed"] == 0 && report["inconclusive"] == 0;
    let detail = format!("[{} cases, deterministic {}]", report["total_cases"], first == second);
    all_pass &= line(9, green && first == second, elapsed, 300, &detail);

    assert!(all_pass, "some acceptance criteria failed; see the lines above");
}
