//! One PASS/FAIL line per acceptance criterion, at tolerance zero, against the
//! bundled data files. Exits nonzero when any criterion fails.

use std::process::ExitCode;

use k3g2_report::commands::Context;
use k3g2_report::verify::{self, CriterionResult, SIMPLE_ONLY};

fn main() -> ExitCode {
    let ctx = Context::bundled();
    let mut results: Vec<CriterionResult> = Vec::new();
    for id in 1..=10 {
        match verify::criterion(&ctx, id) {
            Ok(r) => results.push(r),
            Err(e) => results.push(CriterionResult {
                id,
                title: verify::TITLES[id as usize - 1].to_string(),
                passed: false,
                details: vec![format!("error: {e}")],
            }),
        }
    }
    let simple: Vec<CriterionResult> = results.iter().filter(|r| SIMPLE_ONLY.contains(&r.id)).cloned().collect();
    results.push(verify::data_validation(&ctx, false, &simple));

    for r in &results {
        println!("{}", r.line());
        if !r.passed {
            for d in &r.details {
                println!("    {d}");
            }
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
