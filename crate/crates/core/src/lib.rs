//! Tetrahedra whose four faces have equal area.
//!
//! A tetrahedron is described by its six squared edge lengths, labeled so
//! that `a`, `b`, `c` bound one face and `x`, `y`, `z` are the edges opposite
//! `a`, `b`, `c`. All exact computation happens on those squares with
//! arbitrary-precision rationals:
//!
//! - [`metric`]: face areas, volume, realizability.
//! - [`classify`]: sorts an equiareal tetrahedron into one of three classes,
//!   recovering the parallelogram for the degenerate planar case.
//! - [`solve`]: given one face, enumerates every way to complete it.
//! - [`witness`]: floating coordinates and a geometric projection check.
//! - [`oracle`]: an independent numeric root finder that cross-checks [`solve`].
//!
//! ```
//! use equiareal::{classify, ClassTag, SquaredEdges};
//!
//! let e = SquaredEdges::from_integers([49, 64, 81, 49, 64, 81]).unwrap();
//! assert_eq!(classify(&e).unwrap().tag(), ClassTag::Type1);
//! ```

// NaN-rejecting float comparisons are written as `!(v > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::result_large_err, clippy::large_enum_variant)]
#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod cli;
pub mod metric;
pub mod oracle;
pub mod sampling;
pub mod scalar;
pub mod solve;
pub mod witness;

pub use classify::{classify, classify_approx, ClassTag, SimplexClass};
pub use metric::{cayley_menger_288v2, face_areas, heron_16s2, is_realizable, Edge, Face, SquaredEdges, Vertex};
pub use scalar::Scalar;
pub use solve::{enumerate_completions, SolutionRow};
pub use witness::{projection_witness, realize, Embedding, Tolerances};
