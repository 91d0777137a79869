//! Sorting six edge lengths into the three kinds of equal-area tetrahedra.
//!
//! * Type 1: a genuine tetrahedron; all four faces are congruent.
//! * Type 2: four coplanar points forming a parallelogram with its diagonals.
//! * Type 3: four collinear points; every face has zero area.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::metric::{
    cayley_menger_288v2, face_areas, faces_congruent, is_realizable, opposite_edges_equal, Edge,
    MetricDefect, SquaredEdges, Vertex,
};
use crate::scalar::Scalar;

/// A pair of opposite edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OppositePair {
    #[serde(rename = "a,x")]
    AX,
    #[serde(rename = "b,y")]
    BY,
    #[serde(rename = "c,z")]
    CZ,
}

impl OppositePair {
    pub const ALL: [OppositePair; 3] = [OppositePair::AX, OppositePair::BY, OppositePair::CZ];

    pub fn edges(self) -> (Edge, Edge) {
        match self {
            OppositePair::AX => (Edge::A, Edge::X),
            OppositePair::BY => (Edge::B, Edge::Y),
            OppositePair::CZ => (Edge::C, Edge::Z),
        }
    }
}

impl fmt::Display for OppositePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.edges();
        write!(f, "({p},{q})")
    }
}

/// A flat tetrahedron read as a parallelogram: one opposite-edge pair forms
/// the diagonals, the other four edges the sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelogramStructure {
    pub diagonal_pair: OppositePair,
    /// Squared sides in cyclic order around the quadrilateral, so entries 0
    /// and 2 (and 1 and 3) are opposite sides.
    pub sides2: [Scalar; 4],
    pub diagonals2: [Scalar; 2],
}

impl ParallelogramStructure {
    /// Reads `e` with `pair` as the diagonals.
    pub fn with_diagonals(e: &SquaredEdges, pair: OppositePair) -> Self {
        let (d1, d2) = pair.edges();
        let (p, q) = d1.vertices();
        let (r, s) = d2.vertices();
        // Cycle p -> r -> q -> s -> p avoids both diagonals.
        let side = |u: Vertex, v: Vertex| e.between(u, v).clone();
        ParallelogramStructure {
            diagonal_pair: pair,
            sides2: [side(p, r), side(r, q), side(q, s), side(s, p)],
            diagonals2: [e.get(d1).clone(), e.get(d2).clone()],
        }
    }

    pub fn opposite_sides_equal(&self) -> bool {
        self.sides2[0] == self.sides2[2] && self.sides2[1] == self.sides2[3]
    }

    /// Sum of squared sides equals sum of squared diagonals.
    pub fn satisfies_parallelogram_law(&self) -> bool {
        let sides: Scalar = self.sides2.iter().sum();
        let diagonals: Scalar = self.diagonals2.iter().sum();
        sides == diagonals
    }
}

/// Class tag without attached data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassTag {
    Type1,
    Type2,
    Type3,
    NotEquiareal,
    NotRealizable,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassTag::Type1 => "Type1",
            ClassTag::Type2 => "Type2",
            ClassTag::Type3 => "Type3",
            ClassTag::NotEquiareal => "NotEquiareal",
            ClassTag::NotRealizable => "NotRealizable",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplexClass {
    /// Non-degenerate, all faces congruent.
    Type1,
    /// Parallelogram with its diagonals.
    Type2(ParallelogramStructure),
    /// Collinear points, all areas zero.
    Type3,
    NotEquiareal,
    NotRealizable(MetricDefect),
}

impl SimplexClass {
    pub fn tag(&self) -> ClassTag {
        match self {
            SimplexClass::Type1 => ClassTag::Type1,
            SimplexClass::Type2(_) => ClassTag::Type2,
            SimplexClass::Type3 => ClassTag::Type3,
            SimplexClass::NotEquiareal => ClassTag::NotEquiareal,
            SimplexClass::NotRealizable(_) => ClassTag::NotRealizable,
        }
    }

    pub fn is_equiareal(&self) -> bool {
        matches!(
            self,
            SimplexClass::Type1 | SimplexClass::Type2(_) | SimplexClass::Type3
        )
    }
}

impl fmt::Display for SimplexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.tag(), f)
    }
}

/// Inputs that contradict the classification theorems. Reaching either
/// variant means a counterexample or a bug; they are never swallowed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("counterexample: non-degenerate equiareal tetrahedron {0} has unequal opposite edges")]
    TheoremViolation(SquaredEdges),
    #[error("flat equiareal tetrahedron {0} is not a parallelogram under any diagonal pairing")]
    NoParallelogram(SquaredEdges),
}

/// Runs the classification pipeline: realizability, exact area equality,
/// then the sign of `288V²`.
pub fn classify(e: &SquaredEdges) -> Result<SimplexClass, ClassifyError> {
    if let Err(defect) = is_realizable(e) {
        return Ok(SimplexClass::NotRealizable(defect));
    }
    let areas = face_areas(e);
    if !areas.all_equal() {
        return Ok(SimplexClass::NotEquiareal);
    }
    if areas.all_zero() {
        return Ok(SimplexClass::Type3);
    }
    let volume = cayley_menger_288v2(e);
    if volume.is_positive() {
        if !opposite_edges_equal(e) || !faces_congruent(e) {
            return Err(ClassifyError::TheoremViolation(e.clone()));
        }
        return Ok(SimplexClass::Type1);
    }
    let mut pairings = recover_parallelogram(e)?;
    Ok(SimplexClass::Type2(pairings.swap_remove(0)))
}

/// Every opposite-edge pair that works as the diagonals of a parallelogram,
/// in the order `(a,x)`, `(b,y)`, `(c,z)`. The first entry is primary.
///
/// Two pairings can never both qualify: that would force all three pairs of
/// opposite edges equal and two incompatible parallelogram laws at once.
pub fn recover_parallelogram(
    e: &SquaredEdges,
) -> Result<Vec<ParallelogramStructure>, ClassifyError> {
    let found: Vec<ParallelogramStructure> = OppositePair::ALL
        .into_iter()
        .map(|pair| ParallelogramStructure::with_diagonals(e, pair))
        .filter(|p| p.opposite_sides_equal() && p.satisfies_parallelogram_law())
        .collect();
    if found.is_empty() {
        Err(ClassifyError::NoParallelogram(e.clone()))
    } else {
        Ok(found)
    }
}

/// Floating-point classification for data that has no exact representation.
///
/// Squared lengths are scaled to unit diameter; areas, volume and their
/// differences are compared against `tol`. Unlike [`classify`], the result is
/// only as good as the tolerance.
pub fn classify_approx(squared: [f64; 6], tol: f64) -> ClassTag {
    let scale = squared.iter().cloned().fold(0.0, f64::max);
    if !(scale > 0.0) || squared.iter().any(|v| !(*v > 0.0)) {
        return ClassTag::NotRealizable;
    }
    let [a2, b2, c2, x2, y2, z2] = squared.map(|v| v / scale);
    let heron = |p: f64, q: f64, r: f64| 2.0 * (p * q + p * r + q * r) - p * p - q * q - r * r;
    let areas = [heron(a2, b2, c2), heron(a2, y2, z2), heron(b2, x2, z2), heron(c2, x2, y2)];
    let g12 = 0.5 * (c2 + b2 - a2);
    let g13 = 0.5 * (c2 + x2 - y2);
    let g23 = 0.5 * (b2 + x2 - z2);
    let volume =
        8.0 * (c2 * (b2 * x2 - g23 * g23) - g12 * (g12 * x2 - g23 * g13) + g13 * (g12 * g23 - b2 * g13));
    if areas.iter().any(|f| *f < -tol) || volume < -tol {
        return ClassTag::NotRealizable;
    }
    let (lo, hi) = areas
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), f| (lo.min(*f), hi.max(*f)));
    if hi - lo > tol {
        ClassTag::NotEquiareal
    } else if hi <= tol {
        ClassTag::Type3
    } else if volume > tol {
        ClassTag::Type1
    } else {
        ClassTag::Type2
    }
}
