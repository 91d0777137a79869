use equiareal::classify::{classify, ClassTag, SimplexClass};
use equiareal::metric::{
    cayley_menger_288v2, face_areas, heron_16s2, is_realizable, metric_defects, vertex_permutations, Face,
    MetricDefect, SquaredEdges,
};
use equiareal::scalar::Scalar;
use equiareal::solve::{enumerate_completions, right_angle_condition, table_row};
use equiareal::witness::{realize, Tolerances};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (1i64..=500, 1i64..=30).prop_map(|(p, q)| Scalar::from_ratio(p, q).unwrap())
}

fn coordinate() -> impl Strategy<Value = Scalar> {
    (-60i64..=60, 1i64..=4).prop_map(|(p, q)| Scalar::from_ratio(p, q).unwrap())
}

fn points() -> impl Strategy<Value = [[Scalar; 3]; 4]> {
    proptest::array::uniform4(proptest::array::uniform3(coordinate()))
}

fn squared_edges() -> impl Strategy<Value = SquaredEdges> {
    proptest::array::uniform6(rational()).prop_map(|v| SquaredEdges::from_array(v).unwrap())
}

/// A non-degenerate triangle `(a², b², c²)`.
fn face() -> impl Strategy<Value = [Scalar; 3]> {
    proptest::array::uniform3(rational()).prop_filter("non-degenerate triangle", |[a, b, c]| heron_16s2(a, b, c).is_positive())
}

/// `288V² = 8 det G` with `G` the Gram matrix of the edge vectors at `A`.
fn gram_volume(e: &SquaredEdges) -> Scalar {
    let half = Scalar::from_ratio(1, 2).unwrap();
    // Vectors AB, AC, AD have squared lengths c², b², x².
    let (ab, ac, ad) = (e.c2(), e.b2(), e.x2());
    let g12 = &half * &(&(ab + ac) - e.a2());
    let g13 = &half * &(&(ab + ad) - e.y2());
    let g23 = &half * &(&(ac + ad) - e.z2());
    let det = &(&(ab * &(&(ac * ad) - &g23.square())) - &(&g12 * &(&(&g12 * ad) - &(&g23 * &g13))))
        + &(&g13 * &(&(&g12 * &g23) - &(ac * &g13)));
    &det * 8
}

fn sorted(mut v: Vec<Scalar>) -> Vec<Scalar> {
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn volume_matches_gram_determinant(e in squared_edges()) {
        prop_assert_eq!(cayley_menger_288v2(&e), gram_volume(&e));
    }

    #[test]
    fn point_sets_are_realizable(pts in points()) {
        if let Ok(e) = SquaredEdges::from_points(&pts) {
            prop_assert_eq!(is_realizable(&e), Ok(()));
            prop_assert!(metric_defects(&e).is_empty());
        }
    }

    #[test]
    fn relabeling_permutes_areas_and_keeps_volume(e in squared_edges(), k in 0usize..24) {
        let perm = vertex_permutations()[k];
        let r = e.relabeled(perm);
        prop_assert_eq!(sorted(face_areas(&r).0.to_vec()), sorted(face_areas(&e).0.to_vec()));
        prop_assert_eq!(cayley_menger_288v2(&r), cayley_menger_288v2(&e));
        prop_assert_eq!(classify(&r).unwrap().tag(), classify(&e).unwrap().tag());
    }

    #[test]
    fn scaling_scales_areas_and_volume(e in squared_edges(), t in rational()) {
        let s = e.scaled(&t);
        let t2 = t.square();
        for f in Face::ALL {
            prop_assert_eq!(face_areas(&s).get(f).clone(), &t2 * face_areas(&e).get(f));
        }
        prop_assert_eq!(cayley_menger_288v2(&s), &(&t2 * &t) * &cayley_menger_288v2(&e));
    }

    #[test]
    fn equiareal_means_opposite_edges_equal_unless_flat(pts in points()) {
        if let Ok(e) = SquaredEdges::from_points(&pts) {
            if let SimplexClass::Type1 = classify(&e).unwrap() {
                prop_assert!(e.a2() == e.x2() && e.b2() == e.y2() && e.c2() == e.z2());
            }
        }
    }

    /// Alternate corners of a box always have equal-area faces.
    #[test]
    fn box_corners_are_type1(p in rational(), q in rational(), r in rational()) {
        let o = Scalar::zero();
        let pts = [
            [o.clone(), o.clone(), o.clone()],
            [p.clone(), q.clone(), o.clone()],
            [p.clone(), o.clone(), r.clone()],
            [o.clone(), q.clone(), r.clone()],
        ];
        let e = SquaredEdges::from_points(&pts).unwrap();
        prop_assert_eq!(classify(&e).unwrap(), SimplexClass::Type1);
    }

    #[test]
    fn feasible_rows_solve_the_area_equations(f in face()) {
        let [a2, b2, c2] = f;
        let s16 = heron_16s2(&a2, &b2, &c2);
        for row in enumerate_completions(&a2, &b2, &c2).unwrap() {
            let (x2, y2, z2) = (&row.x2, &row.y2, &row.z2);
            // (v − p)²·[v² − 2v(q + r) + p(2q + 2r − p)] vanishes for every
            // row, with (p, q, r) = (a², b², c²) for v = x² and its rotations.
            let quartic = |v: &Scalar, p: &Scalar, q: &Scalar, r: &Scalar| {
                let q_plus_r = q + r;
                let bracket = &(&v.square() - &(&(v * &q_plus_r) * 2)) + &(p * &(&(&q_plus_r * 2) - p));
                &(v - p).square() * &bracket
            };
            prop_assert!(quartic(x2, &a2, &b2, &c2).is_zero());
            prop_assert!(quartic(y2, &b2, &a2, &c2).is_zero());
            prop_assert!(quartic(z2, &c2, &a2, &b2).is_zero());
            if !row.is_feasible() {
                continue;
            }
            // Faces II, III, IV in the rearranged form 4pr − (p − q + r)².
            let rearranged = |p: &Scalar, q: &Scalar, r: &Scalar| {
                &(&(p * r) * 4) - &(&(p - q) + r).square()
            };
            prop_assert_eq!(rearranged(&a2, y2, z2), s16.clone());
            prop_assert_eq!(rearranged(&b2, x2, z2), s16.clone());
            prop_assert_eq!(rearranged(&c2, x2, y2), s16.clone());
            let e = SquaredEdges::new(a2.clone(), b2.clone(), c2.clone(), x2.clone(), y2.clone(), z2.clone()).unwrap();
            let tag = classify(&e).unwrap().tag();
            prop_assert!(matches!(tag, ClassTag::Type1 | ClassTag::Type2));
        }
    }

    #[test]
    fn rows_two_three_five_always_feasible(f in face()) {
        let [a2, b2, c2] = f;
        let rows = enumerate_completions(&a2, &b2, &c2).unwrap();
        for id in [2u8, 3, 5] {
            prop_assert!(rows[usize::from(id) - 1].is_feasible());
            prop_assert_eq!(rows[usize::from(id) - 1].class().unwrap().tag(), ClassTag::Type2);
        }
        prop_assert!(!rows[7].is_feasible());
    }

    #[test]
    fn row_one_follows_the_largest_angle(f in face()) {
        let [a2, b2, c2] = f;
        let rows = enumerate_completions(&a2, &b2, &c2).unwrap();
        let largest = a2.clone().max(b2.clone()).max(c2.clone());
        let rest = &(&(&a2 + &b2) + &c2) - &largest;
        let expected = match rest.cmp(&largest) {
            std::cmp::Ordering::Greater => Some(ClassTag::Type1),
            std::cmp::Ordering::Equal => Some(ClassTag::Type2),
            std::cmp::Ordering::Less => None,
        };
        prop_assert_eq!(rows[0].class().map(|c| c.tag()), expected);
        if expected.is_none() {
            let volume_fails = rows[0].reason().contains("Cayley");
            prop_assert!(volume_fails, "{}", rows[0].reason());
        }
    }

    #[test]
    fn rows_four_six_seven_need_a_right_angle(f in face()) {
        let [a2, b2, c2] = f;
        let rows = enumerate_completions(&a2, &b2, &c2).unwrap();
        for id in [4u8, 6, 7] {
            let check = right_angle_condition(&a2, &b2, &c2, id).unwrap();
            prop_assert_eq!(rows[usize::from(id) - 1].is_feasible(), check.holds);
        }
    }

    #[test]
    fn table_rows_match_their_bits(f in face(), id in 1u8..=8) {
        let [a2, b2, c2] = f;
        let [x2, y2, z2] = table_row(&a2, &b2, &c2, id);
        let bit = |k: u8| (id - 1) & k != 0;
        prop_assert_eq!(x2 != a2, bit(4) && a2 != &(&(&b2 + &c2) * 2) - &a2);
        prop_assert_eq!(y2 != b2, bit(2) && b2 != &(&(&a2 + &c2) * 2) - &b2);
        prop_assert_eq!(z2 != c2, bit(1) && c2 != &(&(&a2 + &b2) * 2) - &c2);
    }

    #[test]
    fn realized_points_reproduce_distances(pts in points()) {
        if let Ok(e) = SquaredEdges::from_points(&pts) {
            let emb = realize(&e, &Tolerances::default()).unwrap();
            prop_assert!(emb.max_relative_residual(&e) <= 1e-12);
        }
    }

    #[test]
    fn defects_report_what_fails(e in squared_edges()) {
        let defects = metric_defects(&e);
        let areas = face_areas(&e);
        for f in Face::ALL {
            let listed = defects.iter().any(|d| matches!(d, MetricDefect::NegativeFaceArea { face, .. } if *face == f));
            prop_assert_eq!(listed, areas.get(f).is_negative());
        }
        let listed = defects.iter().any(|d| matches!(d, MetricDefect::NegativeVolume { .. }));
        prop_assert_eq!(listed, cayley_menger_288v2(&e).is_negative());
        prop_assert_eq!(is_realizable(&e).err(), defects.first().cloned());
    }
}

/// Builds coordinates in floating point (A at the origin, B on an axis, C in
/// a plane) and reports whether every square root had a nonnegative
/// argument. `None` when some argument is too close to zero to decide.
fn float_realizable(e: &SquaredEdges) -> Option<bool> {
    let [a2, b2, c2, x2, y2, z2] = e.as_array().clone().map(|s| s.to_f64());
    let scale = [a2, b2, c2, x2, y2, z2].into_iter().fold(0.0, f64::max);
    let decide = |v: f64| {
        if v.abs() <= 1e-9 * scale * scale {
            None
        } else {
            Some(v > 0.0)
        }
    };
    // B = (c, 0, 0); C = (cx, cy, 0); D = (dx, dy, dz).
    let c = c2.sqrt();
    let cx = (b2 + c2 - a2) / (2.0 * c);
    let cy2 = b2 - cx * cx;
    let dx = (x2 + c2 - y2) / (2.0 * c);
    let face_abd = x2 - dx * dx;
    let mut verdict = true;
    for arg in [cy2 * c2, face_abd * c2] {
        verdict &= decide(arg)?;
    }
    if !verdict {
        return Some(false);
    }
    let cy = cy2.sqrt();
    let dy = (x2 + b2 - z2 - 2.0 * cx * dx) / (2.0 * cy);
    let dz2 = face_abd - dy * dy;
    // Faces ACD and BCD are implied once D exists.
    decide(dz2 * c2 * cy2)
}

#[test]
fn realizability_agrees_with_float_construction() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let (mut decided, mut realizable) = (0, 0);
    for _ in 0..1000 {
        let e = equiareal::sampling::any_edges(&mut rng);
        let Some(expected) = float_realizable(&e) else {
            continue;
        };
        decided += 1;
        realizable += usize::from(expected);
        assert_eq!(is_realizable(&e).is_ok(), expected, "{e}");
    }
    assert!(decided >= 500, "only {decided} instances away from the boundary");
    assert!(realizable >= 100 && decided - realizable >= 100);
}
