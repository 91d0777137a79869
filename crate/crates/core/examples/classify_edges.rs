//! Classify a handful of tetrahedra given by edge lengths.
//!
//! ```bash
//! cargo run --example classify_edges
//! ```

use equiareal::classify::SimplexClass;
use equiareal::{classify, face_areas, Scalar, SquaredEdges};

fn lengths(values: [&str; 6]) -> SquaredEdges {
    let parsed = values.map(|v| Scalar::parse_decimal(v).expect("decimal"));
    SquaredEdges::from_lengths(parsed).expect("positive lengths")
}

fn main() {
    let samples = [
        ("isosceles 7-8-9", lengths(["7", "8", "9", "7", "8", "9"])),
        ("flat 3-4-5 rectangle", lengths(["3", "4", "5", "3", "4", "5"])),
        ("regular, one edge stretched", lengths(["1", "1", "1", "1", "1", "1.5"])),
        ("obtuse 2-3-4 faces", lengths(["2", "3", "4", "2", "3", "4"])),
        ("points 0, 1, 2, 3 on a line", SquaredEdges::from_integers([1, 4, 1, 9, 4, 1]).unwrap()),
    ];

    for (name, e) in &samples {
        let areas = face_areas(e);
        let class = classify(e).expect("classification is total on valid input");
        println!("{name}");
        println!("  edges²  {e}");
        println!("  16S²    [{}]", areas.0.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", "));
        match &class {
            SimplexClass::Type2(p) => {
                let (d1, d2) = p.diagonal_pair.edges();
                println!(
                    "  {}: parallelogram with diagonals {d1}, {d2} (squares {}, {})",
                    class.tag(),
                    p.diagonals2[0],
                    p.diagonals2[1]
                );
            }
            SimplexClass::NotRealizable(defect) => println!("  {}: {defect}", class.tag()),
            _ => println!("  {}", class.tag()),
        }
    }
}
