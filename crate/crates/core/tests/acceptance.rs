//! Acceptance criteria AC1 to AC9, one line each.
//!
//! AC9 is known to fail: a few catalog rows, kept exactly as transcribed,
//! instantiate to (type, rank, split rank) triples no standard diagram
//! has. Those rows carry a `flag` in the data file. The run exits nonzero
//! if anything else fails, or if the set of failing rows changes.

use std::process::ExitCode;
use std::time::Instant;

use austere_core::catalog::Catalog;
use austere_core::verify::{run_all, Options};

/// Rows that fail admissibility closure as transcribed.
const KNOWN_INADMISSIBLE: [&str; 3] = [
    "(sl(2n,C), su*(2n))",
    "(e6(-26), su*(6)+su(2))",
    "(e7^C, e7(-25))",
];

fn main() -> ExitCode {
    let start = Instant::now();
    let outcomes = match run_all(&Options::default()) {
        Ok(o) => o,
        Err(e) => {
            println!("acceptance suite could not start: {e}");
            return ExitCode::FAILURE;
        }
    };
    for o in &outcomes {
        println!("{o}");
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!(
        "{passed} of {} criteria pass ({:.1}s)",
        outcomes.len(),
        start.elapsed().as_secs_f64()
    );

    let mut unexpected = Vec::new();
    for o in outcomes.iter().filter(|o| !o.passed) {
        if o.id != 9 {
            unexpected.push(format!("AC{}", o.id));
        }
    }
    let closure = Catalog::builtin().admissibility_closure();
    let failing: Vec<(String, bool)> = closure.failing_pairs();
    let names: Vec<&str> = failing.iter().map(|(p, _)| p.as_str()).collect();
    if names != KNOWN_INADMISSIBLE || failing.iter().any(|(_, flagged)| !flagged) {
        unexpected.push(format!("AC9 closure failures changed: {names:?}"));
    }
    let ac9 = outcomes.iter().find(|o| o.id == 9).expect("nine outcomes");
    if !ac9.passed && !ac9.detail.starts_with("admissibility closure") {
        unexpected.push("AC9 fails beyond admissibility closure".into());
    }
    if !ac9.passed {
        println!(
            "known failure: AC9 admissibility closure, {} catalog rows flagged as irregular",
            KNOWN_INADMISSIBLE.len()
        );
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
