//! Run the built-in property suites, the same ones `equiareal check` runs.
//!
//! ```bash
//! cargo run --release --example property_checks -- 500
//! ```

use equiareal::cli::{run_checks, Options};
use equiareal::enumerate_completions;

fn main() {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let opts = Options { trials, ..Options::default() };
    let mut failed = false;
    for suite in run_checks(&opts, enumerate_completions) {
        println!("{:<20} {:>7} cases  {}", suite.name, suite.cases, if suite.passed() { "ok" } else { "FAILED" });
        if let Some(c) = suite.counterexample {
            println!("  {c}");
            failed = true;
        }
    }
    if failed {
        std::process::exit(3);
    }
}
