//! Seeded random instances for fuzzing and property suites.

use rand::Rng;

use crate::metric::SquaredEdges;
use crate::scalar::Scalar;
use crate::solve::table_row;

/// `p/q` with `1 ≤ p ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn positive_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Scalar {
    let num = rng.gen_range(1..=max_num);
    let den = rng.gen_range(1..=max_den);
    Scalar::from_ratio(num, den).expect("nonzero denominator")
}

pub fn positive_triple<R: Rng>(rng: &mut R) -> [Scalar; 3] {
    std::array::from_fn(|_| positive_rational(rng, 1000, 50))
}

/// Squared sides of an acute triangle.
pub fn acute_face<R: Rng>(rng: &mut R) -> [Scalar; 3] {
    loop {
        let [a2, b2, c2] = std::array::from_fn(|_| positive_rational(rng, 400, 20));
        if a2 < &b2 + &c2 && b2 < &a2 + &c2 && c2 < &a2 + &b2 {
            return [a2, b2, c2];
        }
    }
}

/// A non-degenerate tetrahedron with opposite edges equal and acute faces.
pub fn type1<R: Rng>(rng: &mut R) -> SquaredEdges {
    let [a2, b2, c2] = acute_face(rng);
    SquaredEdges::new(a2.clone(), b2.clone(), c2.clone(), a2, b2, c2).expect("positive")
}

/// A parallelogram with its diagonals, built from one of the always-feasible
/// table rows 2, 3 or 5 over a random non-degenerate face.
pub fn type2<R: Rng>(rng: &mut R) -> SquaredEdges {
    let face = crate::oracle::random_face(rng);
    let row = [2u8, 3, 5][rng.gen_range(0..3)];
    let [a2, b2, c2] = face;
    let [x2, y2, z2] = table_row(&a2, &b2, &c2, row);
    SquaredEdges::new(a2, b2, c2, x2, y2, z2).expect("parallelogram partners are positive")
}

/// Four distinct collinear points.
pub fn type3<R: Rng>(rng: &mut R) -> SquaredEdges {
    loop {
        let pos: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-30..=30));
        let pts = pos.map(|p| [Scalar::from_integer(p), Scalar::zero(), Scalar::zero()]);
        if let Ok(e) = SquaredEdges::from_points(&pts) {
            return e;
        }
    }
}

/// Integer points in `[-20, 20]³`, pairwise distinct.
pub fn integer_points<R: Rng>(rng: &mut R) -> [[Scalar; 3]; 4] {
    loop {
        let pts: [[i64; 3]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-20..=20)));
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| pts[i] != pts[j]));
        if distinct {
            return pts.map(|p| p.map(Scalar::from_integer));
        }
    }
}

/// Squared distances of random integer points (realizable by construction).
pub fn realizable<R: Rng>(rng: &mut R) -> SquaredEdges {
    SquaredEdges::from_points(&integer_points(rng)).expect("distinct points")
}

/// Six independent random squared lengths; usually not realizable.
pub fn arbitrary<R: Rng>(rng: &mut R) -> SquaredEdges {
    SquaredEdges::from_array(std::array::from_fn(|_| positive_rational(rng, 200, 10))).expect("positive")
}

/// One of the generators above, chosen uniformly.
pub fn any_edges<R: Rng>(rng: &mut R) -> SquaredEdges {
    match rng.gen_range(0..5) {
        0 => type1(rng),
        1 => type2(rng),
        2 => type3(rng),
        3 => realizable(rng),
        _ => arbitrary(rng),
    }
}
