//! Floating-point realization of squared edge data and the projection witness
//! for tetrahedra with two pairs of equal-area faces.
//!
//! Everything here is demonstrative: decisions are made exactly upstream, and
//! these coordinates only visualize or re-enact them numerically.

use thiserror::Error;

use crate::metric::{cayley_menger_288v2, face_areas, is_realizable, Edge, Face, MetricDefect, SquaredEdges, Vertex};
use crate::scalar::Scalar;

pub type Point = [f64; 3];

/// Numeric tolerances for realization and witnesses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative error allowed between requested and realized squared distances.
    pub round_trip: f64,
    /// Relative error allowed in geometric witness measurements.
    pub witness: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            round_trip: 1e-12,
            witness: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("edges are not realizable: {0}")]
    NotRealizable(MetricDefect),
    #[error("realized distances deviate from the input by {worst:e} (relative), above tolerance {tolerance:e}")]
    RoundTrip { worst: f64, tolerance: f64 },
    #[error("degenerate tetrahedron: 6V = {six_volume:e} relative to diameter³")]
    Degenerate { six_volume: f64 },
    #[error("hypothesis fails: {equality} ({lhs:e} vs {rhs:e})")]
    HypothesisFailed {
        equality: AreaEquality,
        lhs: f64,
        rhs: f64,
    },
}

/// The two area equalities assumed by the projection argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaEquality {
    /// area(ABC) = area(ABD)
    AbcAbd,
    /// area(ACD) = area(BCD)
    AcdBcd,
}

impl std::fmt::Display for AreaEquality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AreaEquality::AbcAbd => f.write_str("area(ABC) = area(ABD)"),
            AreaEquality::AcdBcd => f.write_str("area(ACD) = area(BCD)"),
        }
    }
}

/// Four points, in vertex order `A, B, C, D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Embedding {
    pub points: [Point; 4],
}

impl Embedding {
    pub fn new(points: [Point; 4]) -> Self {
        Embedding { points }
    }

    pub fn point(&self, v: Vertex) -> Point {
        self.points[v.index()]
    }

    /// Squared distances in edge-label order `a, b, c, x, y, z`.
    pub fn squared_distances(&self) -> [f64; 6] {
        Edge::ALL.map(|e| {
            let (p, q) = e.vertices();
            norm2(sub(self.point(p), self.point(q)))
        })
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        self.squared_distances()
            .into_iter()
            .fold(0.0, f64::max)
            .sqrt()
    }

    /// Worst deviation of realized from requested squared distances, relative
    /// to the largest requested squared distance.
    pub fn max_relative_residual(&self, e: &SquaredEdges) -> f64 {
        let target = e.as_array().clone().map(|v| v.to_f64());
        let scale = target.iter().cloned().fold(0.0, f64::max);
        self.squared_distances()
            .iter()
            .zip(target.iter())
            .map(|(got, want)| (got - want).abs() / scale)
            .fold(0.0, f64::max)
    }

    pub fn face_area(&self, face: Face) -> f64 {
        let [p, q, r] = face.vertices().map(|v| self.point(v));
        0.5 * norm2(cross(sub(q, p), sub(r, p))).sqrt()
    }

    /// Six times the signed volume.
    pub fn six_volume(&self) -> f64 {
        let [a, b, c, d] = self.points;
        dot(sub(b, a), cross(sub(c, a), sub(d, a)))
    }
}

/// Square root of an exact nonnegative rational, negated when `negative`.
fn signed_sqrt(square: &Scalar, negative: bool) -> f64 {
    let r = square.to_f64().max(0.0).sqrt();
    if negative {
        -r
    } else {
        r
    }
}

/// Canonical coordinates for realizable squared edges.
///
/// `A` is the origin, `B` lies on the positive first axis, `C` in the closed
/// upper half of the first coordinate plane and `D` has a nonnegative third
/// coordinate. Each coordinate is the square root of an exact rational, so
/// the result is deterministic and accurate to a few ulps.
pub fn realize(e: &SquaredEdges, tol: &Tolerances) -> Result<Embedding, WitnessError> {
    is_realizable(e).map_err(WitnessError::NotRealizable)?;
    let (a2, b2, c2, x2, y2, z2) = (e.a2(), e.b2(), e.c2(), e.x2(), e.y2(), e.z2());
    let half = Scalar::from_ratio(1, 2).expect("nonzero");

    let face_abc = face_areas(e).get(Face::I).clone();
    let bx = c2.to_f64().sqrt();

    // C and D projected onto AB, times |AB|.
    let c_along = &half * &(c2 + b2 - a2);
    let d_along = &half * &(c2 + x2 - y2);
    let cx = signed_sqrt(&(c_along.square() / c2), c_along.is_negative());
    let dx = signed_sqrt(&(d_along.square() / c2), d_along.is_negative());

    let (cy, dy, dz) = if face_abc.is_positive() {
        let cy = signed_sqrt(&(&face_abc / (c2 * 4)), false);
        // Dy·(2·Cy) = x² − z² + b² − 2·Dx·Cx, all rational.
        let lifted = x2 - z2 + b2 - (&c_along * &d_along * 2) / c2;
        let dy = signed_sqrt(&(lifted.square() * c2 / &face_abc), lifted.is_negative());
        let height2 = cayley_menger_288v2(e) / (&face_abc * 2);
        (cy, dy, signed_sqrt(&height2, false))
    } else {
        // A, B, C collinear: D lies in the plane z = 0.
        let face_abd = face_areas(e).get(Face::IV).clone();
        (0.0, signed_sqrt(&(face_abd / (c2 * 4)), false), 0.0)
    };

    let emb = Embedding::new([
        [0.0, 0.0, 0.0],
        [bx, 0.0, 0.0],
        [cx, cy, 0.0],
        [dx, dy, dz],
    ]);
    let worst = emb.max_relative_residual(e);
    if !(worst <= tol.round_trip) {
        return Err(WitnessError::RoundTrip {
            worst,
            tolerance: tol.round_trip,
        });
    }
    Ok(emb)
}

/// Measurements from projecting the tetrahedron onto the plane through `CD`
/// parallel to `AB`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionWitness {
    pub plane_point: Point,
    pub plane_normal: Point,
    pub a_proj: Point,
    pub b_proj: Point,
    /// Distance between the midpoints of `A⊥B⊥` and `CD`.
    pub midpoint_gap: f64,
    /// Distances of `C` and `D` to the line `A⊥B⊥`.
    pub c_to_ab_proj: f64,
    pub d_to_ab_proj: f64,
    /// Distances of `A⊥` and `B⊥` to the line `CD`.
    pub a_proj_to_cd: f64,
    pub b_proj_to_cd: f64,
    /// `C` and `D` lie on different sides of line `A⊥B⊥` within the plane.
    pub cd_separated: bool,
    /// `A⊥` and `B⊥` lie on different sides of line `CD`.
    pub ab_separated: bool,
    /// `|A⊥C| − |B⊥D|` and `|B⊥C| − |A⊥D|`.
    pub side_residuals: [f64; 2],
    /// `|AC| − |BD|` and `|BC| − |AD|`.
    pub edge_residuals: [f64; 2],
    /// `|CC*|` and `|DD*|`, the distances of `C` and `D` to the line `AB`.
    pub foot_distances: [f64; 2],
    pub diameter: f64,
}

impl ProjectionWitness {
    /// `A⊥CB⊥D` is a parallelogram within `tol` relative to the diameter.
    pub fn is_parallelogram(&self, tol: f64) -> bool {
        let bound = tol * self.diameter;
        self.cd_separated
            && self.ab_separated
            && self.midpoint_gap <= bound
            && self.side_residuals.iter().all(|r| r.abs() <= bound)
    }

    /// Parallelogram plus `|AC| = |BD|` and `|BC| = |AD|`.
    pub fn confirms_equal_opposite_edges(&self, tol: f64) -> bool {
        self.is_parallelogram(tol)
            && self
                .edge_residuals
                .iter()
                .all(|r| r.abs() <= tol * self.diameter)
    }
}

/// Re-enacts the projection argument on concrete coordinates.
///
/// Requires a non-degenerate tetrahedron with `area(ABC) = area(ABD)` and
/// `area(ACD) = area(BCD)` within `tol` (relative).
pub fn projection_witness(emb: &Embedding, tol: f64) -> Result<ProjectionWitness, WitnessError> {
    let diameter = emb.diameter();
    let rel_volume = emb.six_volume().abs() / diameter.powi(3);
    if !(rel_volume > tol) {
        return Err(WitnessError::Degenerate {
            six_volume: rel_volume,
        });
    }
    for (equality, f1, f2) in [
        (AreaEquality::AbcAbd, Face::I, Face::IV),
        (AreaEquality::AcdBcd, Face::III, Face::II),
    ] {
        let (lhs, rhs) = (emb.face_area(f1), emb.face_area(f2));
        if (lhs - rhs).abs() > tol * lhs.max(rhs) {
            return Err(WitnessError::HypothesisFailed { equality, lhs, rhs });
        }
    }

    let [a, b, c, d] = emb.points;
    let normal = unit(cross(sub(b, a), sub(d, c)));
    let project = |p: Point| {
        let h = dot(sub(p, c), normal);
        sub(p, scale(normal, h))
    };
    let (ap, bp) = (project(a), project(b));

    let midpoint_gap = norm2(sub(midpoint(ap, bp), midpoint(c, d))).sqrt();
    let side = |p: Point, q: Point, r: Point| dot(cross(sub(q, p), sub(r, p)), normal);

    Ok(ProjectionWitness {
        plane_point: c,
        plane_normal: normal,
        a_proj: ap,
        b_proj: bp,
        midpoint_gap,
        c_to_ab_proj: line_distance(c, ap, bp),
        d_to_ab_proj: line_distance(d, ap, bp),
        a_proj_to_cd: line_distance(ap, c, d),
        b_proj_to_cd: line_distance(bp, c, d),
        cd_separated: side(ap, bp, c) * side(ap, bp, d) < 0.0,
        ab_separated: side(c, d, ap) * side(c, d, bp) < 0.0,
        side_residuals: [dist(ap, c) - dist(bp, d), dist(bp, c) - dist(ap, d)],
        edge_residuals: [dist(a, c) - dist(b, d), dist(b, c) - dist(a, d)],
        foot_distances: [line_distance(c, a, b), line_distance(d, a, b)],
        diameter,
    })
}

fn sub(p: Point, q: Point) -> Point {
    [p[0] - q[0], p[1] - q[1], p[2] - q[2]]
}

fn scale(p: Point, s: f64) -> Point {
    [p[0] * s, p[1] * s, p[2] * s]
}

fn dot(p: Point, q: Point) -> f64 {
    p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
}

fn cross(p: Point, q: Point) -> Point {
    [
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ]
}

fn norm2(p: Point) -> f64 {
    dot(p, p)
}

fn unit(p: Point) -> Point {
    scale(p, 1.0 / norm2(p).sqrt())
}

fn dist(p: Point, q: Point) -> f64 {
    norm2(sub(p, q)).sqrt()
}

fn midpoint(p: Point, q: Point) -> Point {
    scale([p[0] + q[0], p[1] + q[1], p[2] + q[2]], 0.5)
}

/// Distance from `p` to the line through `q` and `r`.
fn line_distance(p: Point, q: Point, r: Point) -> f64 {
    let dir = sub(r, q);
    norm2(cross(sub(p, q), dir)).sqrt() / norm2(dir).sqrt()
}
