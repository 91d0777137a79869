//! Equal-area completions of a single face.
//!
//! Given face I with squared sides `(a², b², c²)`, the only candidates for the
//! three opposite edges are the eight rows obtained by choosing, per edge,
//! either the side it is opposite to or its "parallelogram partner":
//!
//! | row | x²            | y²            | z²            |
//! |-----|---------------|---------------|---------------|
//! | 1   | a²            | b²            | c²            |
//! | 2   | a²            | b²            | 2a²+2b²−c²    |
//! | 3   | a²            | 2a²−b²+2c²    | c²            |
//! | 4   | a²            | 2a²−b²+2c²    | 2a²+2b²−c²    |
//! | 5   | 2b²+2c²−a²    | b²            | c²            |
//! | 6   | 2b²+2c²−a²    | b²            | 2a²+2b²−c²    |
//! | 7   | 2b²+2c²−a²    | 2a²−b²+2c²    | c²            |
//! | 8   | 2b²+2c²−a²    | 2a²−b²+2c²    | 2a²+2b²−c²    |
//!
//! Each row is completed to six edges and re-verified exactly, so rows that
//! only arise from squaring (4, 6, 7 off a right angle; 8 always) come back
//! infeasible with a reason.

use std::fmt;

use thiserror::Error;

use crate::classify::{classify, ClassifyError, SimplexClass};
use crate::metric::{face_areas, heron_16s2, is_realizable, Edge, Face, MetricDefect, SquaredEdges};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("squared side {edge}² = {value} must be positive")]
    NonPositiveSide { edge: Edge, value: Scalar },
    #[error("face ({a2}, {b2}, {c2}) is not a triangle: {violated}")]
    NotATriangle {
        a2: Scalar,
        b2: Scalar,
        c2: Scalar,
        violated: TriangleInequality,
    },
    #[error("row {0} has no right-angle condition (only rows 4, 6 and 7 do)")]
    NoRightAngleCondition(u8),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// A violated triangle inequality, named by its longest side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleInequality {
    pub longest: Edge,
}

impl fmt::Display for TriangleInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let others: Vec<&str> = [Edge::A, Edge::B, Edge::C]
            .into_iter()
            .filter(|e| *e != self.longest)
            .map(Edge::name)
            .collect();
        write!(f, "{} < {} + {} fails", self.longest, others[0], others[1])
    }
}

/// Why a table row is not an equal-area tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    NonPositiveSquaredLength { edge: Edge, value: Scalar },
    NotRealizable(MetricDefect),
    /// Realizable, but `face` has `16S² = value` instead of the face I value.
    AreasDiffer { face: Face, value: Scalar, expected: Scalar },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::NonPositiveSquaredLength { edge, value } => {
                write!(f, "nonpositive squared length {edge}² = {value}")
            }
            Infeasibility::NotRealizable(d) => write!(f, "not realizable: {d}"),
            Infeasibility::AreasDiffer {
                face,
                value,
                expected,
            } => write!(f, "not equiareal: face {face} has 16S² = {value} ≠ {expected}"),
        }
    }
}

/// One row of the completion table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRow {
    pub row_id: u8,
    pub x2: Scalar,
    pub y2: Scalar,
    pub z2: Scalar,
    /// `Ok` carries the class of the completed tetrahedron (Type 1, 2 or 3).
    pub verdict: Result<SimplexClass, Infeasibility>,
    /// Lowest-numbered row with the same `(x², y², z²)`, when that is not this row.
    pub duplicate_of: Option<u8>,
    /// All rows (including this one) sharing the triple.
    pub coincident_rows: Vec<u8>,
}

impl SolutionRow {
    pub fn is_feasible(&self) -> bool {
        self.verdict.is_ok()
    }

    pub fn class(&self) -> Option<&SimplexClass> {
        self.verdict.as_ref().ok()
    }

    pub fn reason(&self) -> String {
        match &self.verdict {
            Ok(class) => format!("equiareal {class}"),
            Err(why) => why.to_string(),
        }
    }

    pub fn triple(&self) -> [&Scalar; 3] {
        [&self.x2, &self.y2, &self.z2]
    }

    pub fn is_primary(&self) -> bool {
        self.duplicate_of.is_none()
    }
}

/// The candidate `(x², y², z²)` of one row, before verification.
pub fn table_row(a2: &Scalar, b2: &Scalar, c2: &Scalar, row_id: u8) -> [Scalar; 3] {
    assert!((1..=8).contains(&row_id), "table rows are numbered 1..=8");
    let bits = row_id - 1;
    let x2 = if bits & 4 != 0 {
        b2 * 2 + c2 * 2 - a2
    } else {
        a2.clone()
    };
    let y2 = if bits & 2 != 0 {
        a2 * 2 - b2 + c2 * 2
    } else {
        b2.clone()
    };
    let z2 = if bits & 1 != 0 {
        a2 * 2 + b2 * 2 - c2
    } else {
        c2.clone()
    };
    [x2, y2, z2]
}

fn check_face(a2: &Scalar, b2: &Scalar, c2: &Scalar) -> Result<(), SolveError> {
    for (edge, value) in [(Edge::A, a2), (Edge::B, b2), (Edge::C, c2)] {
        if !value.is_positive() {
            return Err(SolveError::NonPositiveSide {
                edge,
                value: value.clone(),
            });
        }
    }
    if heron_16s2(a2, b2, c2).is_negative() {
        let longest = [(Edge::A, a2), (Edge::B, b2), (Edge::C, c2)]
            .into_iter()
            .max_by(|l, r| l.1.cmp(r.1))
            .map(|(e, _)| e)
            .expect("three sides");
        return Err(SolveError::NotATriangle {
            a2: a2.clone(),
            b2: b2.clone(),
            c2: c2.clone(),
            violated: TriangleInequality { longest },
        });
    }
    Ok(())
}

fn verify(a2: &Scalar, b2: &Scalar, c2: &Scalar, triple: &[Scalar; 3]) -> Result<Result<SimplexClass, Infeasibility>, SolveError> {
    for (edge, value) in [Edge::X, Edge::Y, Edge::Z].into_iter().zip(triple.iter()) {
        if !value.is_positive() {
            return Ok(Err(Infeasibility::NonPositiveSquaredLength {
                edge,
                value: value.clone(),
            }));
        }
    }
    let [x2, y2, z2] = triple.clone();
    let e = SquaredEdges::new(a2.clone(), b2.clone(), c2.clone(), x2, y2, z2)
        .expect("all six checked positive");
    if let Err(defect) = is_realizable(&e) {
        return Ok(Err(Infeasibility::NotRealizable(defect)));
    }
    let areas = face_areas(&e);
    if let Some(face) = areas.first_mismatch() {
        return Ok(Err(Infeasibility::AreasDiffer {
            face,
            value: areas.get(face).clone(),
            expected: areas.get(Face::I).clone(),
        }));
    }
    let class = classify(&e)?;
    debug_assert!(class.is_equiareal());
    Ok(Ok(class))
}

/// All eight rows, each verified and classified, with coincident rows linked.
pub fn enumerate_completions(
    a2: &Scalar,
    b2: &Scalar,
    c2: &Scalar,
) -> Result<Vec<SolutionRow>, SolveError> {
    check_face(a2, b2, c2)?;
    let triples: Vec<[Scalar; 3]> = (1..=8).map(|id| table_row(a2, b2, c2, id)).collect();
    let mut rows = Vec::with_capacity(8);
    for (i, triple) in triples.iter().enumerate() {
        let coincident_rows: Vec<u8> = triples
            .iter()
            .enumerate()
            .filter(|(_, t)| *t == triple)
            .map(|(j, _)| j as u8 + 1)
            .collect();
        let row_id = i as u8 + 1;
        let duplicate_of = Some(coincident_rows[0]).filter(|&first| first != row_id);
        let verdict = verify(a2, b2, c2, triple)?;
        let [x2, y2, z2] = triple.clone();
        rows.push(SolutionRow {
            row_id,
            x2,
            y2,
            z2,
            verdict,
            duplicate_of,
            coincident_rows,
        });
    }
    Ok(rows)
}

/// Result of the right-angle test attached to rows 4, 6 and 7.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightAngleCheck {
    pub holds: bool,
    /// `a⁴ − (b² − c²)²` for row 4, and the matching permutation for rows 6 and 7.
    pub residual: Scalar,
}

/// Rows 4, 6 and 7 are feasible only when face I is right-angled with the
/// unchanged edge's partner side as a leg: row 4 needs `a⁴ = (b² − c²)²`,
/// row 6 `b⁴ = (a² − c²)²`, row 7 `c⁴ = (a² − b²)²`.
pub fn right_angle_condition(
    a2: &Scalar,
    b2: &Scalar,
    c2: &Scalar,
    row_id: u8,
) -> Result<RightAngleCheck, SolveError> {
    let (leg, p, q) = match row_id {
        4 => (a2, b2, c2),
        6 => (b2, a2, c2),
        7 => (c2, a2, b2),
        other => return Err(SolveError::NoRightAngleCondition(other)),
    };
    let residual = leg.square() - (p - q).square();
    Ok(RightAngleCheck {
        holds: residual.is_zero(),
        residual,
    })
}

/// The three factor products that would all have to vanish for row 8 to be
/// an equal-area tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution8Witness {
    /// `(a² − b² + c²)(a² + b² − c²)`
    pub f10: Scalar,
    /// `(a² + b² − c²)(−a² + b² + c²)`
    pub f11: Scalar,
    /// `(a² − b² + c²)(−a² + b² + c²)`
    pub f12: Scalar,
}

impl Solution8Witness {
    pub fn all_zero(&self) -> bool {
        self.f10.is_zero() && self.f11.is_zero() && self.f12.is_zero()
    }
}

pub fn solution8_witness(a2: &Scalar, b2: &Scalar, c2: &Scalar) -> Solution8Witness {
    let b_hyp = a2 - b2 + c2;
    let c_hyp = a2 + b2 - c2;
    let a_hyp = b2 + c2 - a2;
    Solution8Witness {
        f10: &b_hyp * &c_hyp,
        f11: &c_hyp * &a_hyp,
        f12: &b_hyp * &a_hyp,
    }
}
