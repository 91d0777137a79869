//! Coordinates from edge lengths, then the projection argument checked
//! numerically: project along the line joining the midpoints of AB and CD,
//! and the four vertices land on a parallelogram.
//!
//! ```bash
//! cargo run --example realize_witness
//! ```

use equiareal::witness::projection_witness;
use equiareal::{realize, SquaredEdges, Tolerances, Vertex};

fn main() {
    let tol = Tolerances::default();
    let e = SquaredEdges::from_integers([49, 64, 81, 49, 64, 81]).unwrap();
    let emb = realize(&e, &tol).expect("realizable");

    for v in Vertex::ALL {
        let [px, py, pz] = emb.point(v);
        println!("{v:?} = ({px:.12}, {py:.12}, {pz:.12})");
    }
    println!("largest relative edge error: {:.2e}", emb.max_relative_residual(&e));

    let w = projection_witness(&emb, tol.witness).expect("equal areas hold");
    println!("gap between midpoints along the plane: {:.2e}", w.midpoint_gap);
    println!("projected sides differ by {:.2e} and {:.2e}", w.side_residuals[0], w.side_residuals[1]);
    println!("opposite edges differ by {:.2e} and {:.2e}", w.edge_residuals[0], w.edge_residuals[1]);
    println!("C and D lie {:.6} and {:.6} from the projected line AB", w.c_to_ab_proj, w.d_to_ab_proj);
    println!(
        "parallelogram: {}, opposite edges equal: {}",
        w.is_parallelogram(tol.witness),
        w.confirms_equal_opposite_edges(tol.witness)
    );
}
