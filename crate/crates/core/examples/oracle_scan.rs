//! Cross-check the closed-form completion table against a numeric root scan.
//!
//! ```bash
//! cargo run --release --example oracle_scan
//! ```

use equiareal::oracle::{oracle_completions, oracle_uniqueness_fuzz, DEFAULT_GRID};

fn main() {
    for face in [[1.0, 1.0, 1.0], [9.0, 16.0, 25.0], [49.0, 64.0, 81.0]] {
        println!("face {face:?}");
        for hit in oracle_completions(face[0], face[1], face[2], DEFAULT_GRID) {
            println!(
                "  ({:.9}, {:.9}, {:.9})  branch {}  {}",
                hit.x2,
                hit.y2,
                hit.z2,
                hit.branch,
                if hit.realizable { "realizable" } else { "no tetrahedron" }
            );
        }
    }

    let report = oracle_uniqueness_fuzz(200, 42);
    println!("{} random faces, {} mismatches", report.faces.len(), report.mismatches.len());
    for m in &report.mismatches {
        println!("  trial {}: {}", m.trial, m.kind);
    }
}
