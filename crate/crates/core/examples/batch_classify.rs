//! Classify JSON-lines records, mixing edge and coordinate input.
//!
//! ```bash
//! cargo run --example batch_classify
//! cargo run --example batch_classify -- records.jsonl
//! ```

use std::io::{self, BufReader};

use equiareal::cli::{cmd_classify, Options};

const SAMPLE: &str = r#"{"id": "isosceles", "edges": [7, 8, 9, 7, 8, 9]}
{"id": "rectangle", "coords": [[0, 0, 0], [3, 4, 0], [3, 0, 0], [0, 4, 0]]}
{"id": "lattice", "coords": [[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]]}
{"id": "broken", "edges": [1, 1, 1, 100, 1, 1]}
{"id": "typo", "edges": [1, 1, "one", 1, 1, 1]}
"#;

fn main() -> io::Result<()> {
    let opts = Options::default();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let status = match std::env::args().nth(1) {
        Some(path) => cmd_classify(&mut BufReader::new(std::fs::File::open(path)?), &mut out, &opts)?,
        None => cmd_classify(&mut SAMPLE.as_bytes(), &mut out, &opts)?,
    };
    eprintln!("exit status {}", status.code());
    Ok(())
}
