//! Runs without the libtest harness so the per-criterion lines are always shown.

use std::process::ExitCode;

use ufact_selftest::{run_all, KNOWN_UNATTAINABLE};

fn main() -> ExitCode {
    let results = run_all();
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        let limit = r.limit_ms.map(|l| format!(", limit {l} ms")).unwrap_or_default();
        println!("{status} [{:>2}] {} ({} ms{limit}): {}", r.id, r.name, r.elapsed_ms, r.detail);
    }
    let mut ok = results.len() == 11;
    for r in results.iter().filter(|r| !r.pass) {
        // a known failure must stay confined to the analysed case
        let expected = KNOWN_UNATTAINABLE.contains(&r.id) && r.detail.starts_with("no gcd witness for c2 letter [1]:");
        if !expected {
            eprintln!("unexpected failure of criterion {}: {}", r.id, r.detail);
            ok = false;
        }
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("acceptance: {} passed, {failed} failed ({} known unattainable)", results.len() - failed, KNOWN_UNATTAINABLE.len());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
