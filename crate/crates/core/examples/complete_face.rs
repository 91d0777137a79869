//! Every way to complete a triangle to a tetrahedron with four faces of
//! equal area.
//!
//! ```bash
//! cargo run --example complete_face            # 3 4 5
//! cargo run --example complete_face -- 7 8 9
//! ```

use equiareal::solve::right_angle_condition;
use equiareal::{enumerate_completions, Scalar};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let sides: Vec<String> = if args.len() == 3 {
        args
    } else {
        ["3", "4", "5"].map(String::from).to_vec()
    };
    let [a2, b2, c2] = [0, 1, 2].map(|i| Scalar::parse_decimal(&sides[i]).expect("decimal side").square());

    let rows = match enumerate_completions(&a2, &b2, &c2) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };

    println!("face a² = {a2}, b² = {b2}, c² = {c2}");
    for row in &rows {
        let class = row.class().map(|c| c.tag().to_string()).unwrap_or_else(|| "-".into());
        print!("row {}: x² = {}, y² = {}, z² = {}  {class}", row.row_id, row.x2, row.y2, row.z2);
        if let Some(first) = row.duplicate_of {
            print!("  (same as row {first})");
        }
        if !row.is_feasible() {
            print!("  [{}]", row.reason());
        }
        println!();
    }

    // Rows 4, 6 and 7 are feasible exactly when the face has a right angle.
    for row_id in [4, 6, 7] {
        let check = right_angle_condition(&a2, &b2, &c2, row_id).expect("row has a condition");
        println!("row {row_id} right-angle condition: {} (residual {})", check.holds, check.residual);
    }
}
