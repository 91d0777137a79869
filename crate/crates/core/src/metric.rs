//! Exact metric formulas on the six squared edge lengths of a tetrahedron.
//!
//! Labels follow a fixed convention. Face I carries edges `(a, b, c)`, face II
//! `(a, y, z)`, face III `(b, x, z)` and face IV `(c, x, y)`. The edge `x` is
//! opposite `a`, `y` is opposite `b` and `z` is opposite `c`. For realization
//! the edges sit on vertices as `a = BC`, `b = CA`, `c = AB`, `x = AD`,
//! `y = BD`, `z = CD`.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

/// One of the four vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    A,
    B,
    C,
    D,
}

impl Vertex {
    pub const ALL: [Vertex; 4] = [Vertex::A, Vertex::B, Vertex::C, Vertex::D];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// One of the six edges, by its label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edge {
    A,
    B,
    C,
    X,
    Y,
    Z,
}

impl Edge {
    pub const ALL: [Edge; 6] = [Edge::A, Edge::B, Edge::C, Edge::X, Edge::Y, Edge::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The edge sharing no vertex with this one.
    pub fn opposite(self) -> Edge {
        match self {
            Edge::A => Edge::X,
            Edge::B => Edge::Y,
            Edge::C => Edge::Z,
            Edge::X => Edge::A,
            Edge::Y => Edge::B,
            Edge::Z => Edge::C,
        }
    }

    /// Endpoints under the fixed vertex mapping, lower vertex first.
    pub fn vertices(self) -> (Vertex, Vertex) {
        match self {
            Edge::A => (Vertex::B, Vertex::C),
            Edge::B => (Vertex::A, Vertex::C),
            Edge::C => (Vertex::A, Vertex::B),
            Edge::X => (Vertex::A, Vertex::D),
            Edge::Y => (Vertex::B, Vertex::D),
            Edge::Z => (Vertex::C, Vertex::D),
        }
    }

    /// The edge joining two distinct vertices.
    pub fn between(p: Vertex, q: Vertex) -> Option<Edge> {
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        Edge::ALL.into_iter().find(|e| e.vertices() == (p, q))
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::A => "a",
            Edge::B => "b",
            Edge::C => "c",
            Edge::X => "x",
            Edge::Y => "y",
            Edge::Z => "z",
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the four faces, numbered as in the labeling convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Face {
    I,
    II,
    III,
    IV,
}

impl Face {
    pub const ALL: [Face; 4] = [Face::I, Face::II, Face::III, Face::IV];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn edges(self) -> [Edge; 3] {
        match self {
            Face::I => [Edge::A, Edge::B, Edge::C],
            Face::II => [Edge::A, Edge::Y, Edge::Z],
            Face::III => [Edge::B, Edge::X, Edge::Z],
            Face::IV => [Edge::C, Edge::X, Edge::Y],
        }
    }

    /// Vertices spanning the face: I = ABC, II = BCD, III = ACD, IV = ABD.
    pub fn vertices(self) -> [Vertex; 3] {
        match self {
            Face::I => [Vertex::A, Vertex::B, Vertex::C],
            Face::II => [Vertex::B, Vertex::C, Vertex::D],
            Face::III => [Vertex::A, Vertex::C, Vertex::D],
            Face::IV => [Vertex::A, Vertex::B, Vertex::D],
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Face::I => "I",
            Face::II => "II",
            Face::III => "III",
            Face::IV => "IV",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgesError {
    #[error("squared length of edge {edge} must be positive, got {value}")]
    NonPositive { edge: Edge, value: Scalar },
}

/// The six squared edge lengths `(a², b², c², x², y², z²)`, all positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquaredEdges([Scalar; 6]);

impl SquaredEdges {
    pub fn new(
        a2: Scalar,
        b2: Scalar,
        c2: Scalar,
        x2: Scalar,
        y2: Scalar,
        z2: Scalar,
    ) -> Result<Self, EdgesError> {
        Self::from_array([a2, b2, c2, x2, y2, z2])
    }

    /// Values in label order `a, b, c, x, y, z`.
    pub fn from_array(values: [Scalar; 6]) -> Result<Self, EdgesError> {
        for (edge, value) in Edge::ALL.into_iter().zip(values.iter()) {
            if !value.is_positive() {
                return Err(EdgesError::NonPositive {
                    edge,
                    value: value.clone(),
                });
            }
        }
        Ok(SquaredEdges(values))
    }

    pub fn from_integers(values: [i64; 6]) -> Result<Self, EdgesError> {
        Self::from_array(values.map(Scalar::from_integer))
    }

    /// Squares six lengths exactly.
    pub fn from_lengths(lengths: [Scalar; 6]) -> Result<Self, EdgesError> {
        for (edge, value) in Edge::ALL.into_iter().zip(lengths.iter()) {
            if !value.is_positive() {
                return Err(EdgesError::NonPositive {
                    edge,
                    value: value.clone(),
                });
            }
        }
        Self::from_array(lengths.map(|l| l.square()))
    }

    /// Squared pairwise distances of four points; fails if two points coincide.
    pub fn from_points(points: &[[Scalar; 3]; 4]) -> Result<Self, EdgesError> {
        let values = Edge::ALL.map(|e| {
            let (p, q) = e.vertices();
            points[p.index()]
                .iter()
                .zip(points[q.index()].iter())
                .map(|(u, v)| (u - v).square())
                .sum::<Scalar>()
        });
        Self::from_array(values)
    }

    pub fn get(&self, edge: Edge) -> &Scalar {
        &self.0[edge.index()]
    }

    pub fn between(&self, p: Vertex, q: Vertex) -> &Scalar {
        self.get(Edge::between(p, q).expect("distinct vertices"))
    }

    pub fn a2(&self) -> &Scalar {
        &self.0[0]
    }
    pub fn b2(&self) -> &Scalar {
        &self.0[1]
    }
    pub fn c2(&self) -> &Scalar {
        &self.0[2]
    }
    pub fn x2(&self) -> &Scalar {
        &self.0[3]
    }
    pub fn y2(&self) -> &Scalar {
        &self.0[4]
    }
    pub fn z2(&self) -> &Scalar {
        &self.0[5]
    }

    pub fn as_array(&self) -> &[Scalar; 6] {
        &self.0
    }

    /// Squared edges of one face, in the order listed by [`Face::edges`].
    pub fn face(&self, face: Face) -> [&Scalar; 3] {
        face.edges().map(|e| self.get(e))
    }

    pub fn max(&self) -> &Scalar {
        self.0.iter().max().expect("six entries")
    }

    /// The same tetrahedron with vertices renamed: new vertex `i` is old vertex `perm[i]`.
    pub fn relabeled(&self, perm: [Vertex; 4]) -> SquaredEdges {
        SquaredEdges(Edge::ALL.map(|e| {
            let (p, q) = e.vertices();
            self.between(perm[p.index()], perm[q.index()]).clone()
        }))
    }

    /// All squared edges multiplied by `t > 0`.
    pub fn scaled(&self, t: &Scalar) -> SquaredEdges {
        assert!(t.is_positive(), "scale factor must be positive");
        SquaredEdges(self.0.clone().map(|v| v * t))
    }
}

impl fmt::Debug for SquaredEdges {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("SquaredEdges").field(&self.0).finish()
    }
}

impl fmt::Display for SquaredEdges {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// All 24 vertex permutations.
pub fn vertex_permutations() -> Vec<[Vertex; 4]> {
    let mut out = Vec::with_capacity(24);
    for p in Vertex::ALL {
        for q in Vertex::ALL {
            for r in Vertex::ALL {
                for s in Vertex::ALL {
                    let perm = [p, q, r, s];
                    let mut seen = [false; 4];
                    perm.iter().for_each(|v| seen[v.index()] = true);
                    if seen.iter().all(|&b| b) {
                        out.push(perm);
                    }
                }
            }
        }
    }
    out
}

/// `16·S²` for a triangle with squared sides `p2, q2, r2` (Heron's formula, expanded).
///
/// Negative when the triangle inequality fails, zero for collinear points.
pub fn heron_16s2(p2: &Scalar, q2: &Scalar, r2: &Scalar) -> Scalar {
    let two = Scalar::from_integer(2);
    &two * &(p2 * q2 + p2 * r2 + q2 * r2) - p2.square() - q2.square() - r2.square()
}

/// The same quantity as [`heron_16s2`] in the completed-square form
/// `4p²r² − (p² − q² + r²)²`.
pub fn heron_16s2_factored(p2: &Scalar, q2: &Scalar, r2: &Scalar) -> Scalar {
    p2 * r2 * 4 - (p2 - q2 + r2).square()
}

/// `16·S²` of each face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceAreas16(pub [Scalar; 4]);

impl FaceAreas16 {
    pub fn get(&self, face: Face) -> &Scalar {
        &self.0[face.index()]
    }

    pub fn all_equal(&self) -> bool {
        self.0.iter().all(|v| v == &self.0[0])
    }

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// First face whose value differs from face I.
    pub fn first_mismatch(&self) -> Option<Face> {
        Face::ALL.into_iter().find(|f| self.get(*f) != self.get(Face::I))
    }
}

pub fn face_areas(e: &SquaredEdges) -> FaceAreas16 {
    FaceAreas16(Face::ALL.map(|f| {
        let [p, q, r] = e.face(f);
        heron_16s2(p, q, r)
    }))
}

/// `288·V²` as the bordered 5×5 Cayley–Menger determinant.
pub fn cayley_menger_288v2(e: &SquaredEdges) -> Scalar {
    let mut m: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); 5]; 5];
    for i in 1..5 {
        m[0][i] = Scalar::one();
        m[i][0] = Scalar::one();
    }
    for p in Vertex::ALL {
        for q in Vertex::ALL {
            if p != q {
                m[p.index() + 1][q.index() + 1] = e.between(p, q).clone();
            }
        }
    }
    determinant(m)
}

/// Exact determinant by Gaussian elimination over the rationals.
fn determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= &delta;
            }
        }
    }
    det
}

/// Why six squared lengths cannot be the distances of four points in space.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricDefect {
    #[error("face {face} violates the triangle inequality (16S² = {value})")]
    NegativeFaceArea { face: Face, value: Scalar },
    #[error("negative Cayley-Menger determinant (288V² = {value})")]
    NegativeVolume { value: Scalar },
}

/// Every failing realizability condition, faces first, then the volume.
pub fn metric_defects(e: &SquaredEdges) -> Vec<MetricDefect> {
    let areas = face_areas(e);
    let mut defects: Vec<MetricDefect> = Face::ALL
        .into_iter()
        .filter(|f| areas.get(*f).is_negative())
        .map(|face| MetricDefect::NegativeFaceArea {
            face,
            value: areas.get(face).clone(),
        })
        .collect();
    let cm = cayley_menger_288v2(e);
    if cm.is_negative() {
        defects.push(MetricDefect::NegativeVolume { value: cm });
    }
    defects
}

/// `Ok` iff every face has `16S² ≥ 0` and `288V² ≥ 0`; otherwise the first
/// failing condition.
pub fn is_realizable(e: &SquaredEdges) -> Result<(), MetricDefect> {
    match metric_defects(e).into_iter().next() {
        None => Ok(()),
        Some(d) => Err(d),
    }
}

/// `x² = a²`, `y² = b²` and `z² = c²`.
pub fn opposite_edges_equal(e: &SquaredEdges) -> bool {
    [Edge::A, Edge::B, Edge::C]
        .into_iter()
        .all(|edge| e.get(edge) == e.get(edge.opposite()))
}

/// Side-side-side congruence of all four faces.
pub fn faces_congruent(e: &SquaredEdges) -> bool {
    let sorted = |f: Face| {
        let mut v = e.face(f);
        v.sort();
        v
    };
    let first = sorted(Face::I);
    Face::ALL.into_iter().skip(1).all(|f| sorted(f) == first)
}
