use num_rational::BigRational;
use proptest::prelude::*;
use pwrot::dynamics::Symbol;
use pwrot::geometry::{
    clip_segment_to_box, intersect_halfplanes, line_intersection, Containment, ExactLine, ExactSegment, HalfPlane,
    LineMeet, RationalBox, Region,
};
use pwrot::tiles::interior_samples;
use pwrot::{make_field, CycloNum, Field, Sign};

fn field(i: usize) -> Field {
    let (p, q) = [(4, 5), (11, 12), (3, 7)][i % 3];
    make_field(p, q).unwrap()
}

fn point(f: &Field, x: i64, y: i64, den: i64) -> CycloNum {
    f.embed_rational_point(&BigRational::new(x.into(), den.into()), &BigRational::new(y.into(), den.into()))
}

/// The line through `c` with direction `λ^t`.
fn line(f: &Field, t: i64, c: &CycloNum) -> ExactLine {
    let u = f.lambda_pow(t).conj();
    let b = -(&u * c);
    ExactLine::new(u, b).unwrap()
}

/// Half-planes whose lines use directions `λ^t` and all contain the origin.
fn planes(f: &Field, spec: &[(i64, i64, i64)]) -> Vec<HalfPlane> {
    spec.iter()
        .filter_map(|&(t, x, y)| {
            let l = line(f, t, &point(f, x, y, 4));
            let side = match l.side_of(&f.zero()) {
                Sign::Positive => Symbol::Plus,
                Sign::Negative => Symbol::Minus,
                Sign::Zero => return None,
            };
            Some(HalfPlane { line: l, side })
        })
        .collect()
}

fn arb_spec() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((0i64..12, -20i64..20, -20i64..20), 3..12)
}

#[test]
fn regular_pentagon_from_five_halfplanes() {
    let f = make_field(4, 5).unwrap();
    // edges tangent to the unit circle at λ^j
    let hs: Vec<HalfPlane> = (0..5)
        .map(|j| {
            let n = f.lambda_pow(j);
            let u = (&f.i_unit() * &n).conj();
            let b = -(&u * &n);
            HalfPlane { line: ExactLine::new(u, b).unwrap(), side: Symbol::Minus }
        })
        .map(|mut h| {
            if h.line.side_of(&f.zero()) == Sign::Positive {
                h.side = Symbol::Plus;
            }
            h
        })
        .collect();
    let Region::Polygon(p) = intersect_halfplanes(&hs) else { panic!("expected a polygon") };
    assert_eq!(p.side_count(), 5);
    assert!(p.is_regular());
    assert_eq!(p.contains(&f.zero()), Containment::Interior);
}

#[test]
fn clipping_examples() {
    let f = make_field(4, 5).unwrap();
    let bx = RationalBox::from_ints(-3, -3, 3, 3).unwrap();
    let seg = ExactSegment { a: f.from_integer(-10), b: f.from_integer(10), depth: 0 };
    let c = clip_segment_to_box(&seg, &bx).unwrap();
    let mut ends = [c.a, c.b];
    ends.sort_by(pwrot::geometry::cmp_points);
    assert_eq!(ends, [f.from_integer(-3), f.from_integer(3)]);
    let inner = ExactSegment { a: point(&f, 1, 1, 1), b: point(&f, -1, 2, 1), depth: 0 };
    assert_eq!(clip_segment_to_box(&inner, &bx), Some(inner.clone()));
    let corner = ExactSegment { a: point(&f, 3, 3, 1), b: point(&f, 5, 6, 1), depth: 0 };
    assert_eq!(clip_segment_to_box(&corner, &bx), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn intersection_is_order_independent(fi in 0usize..3, spec in arb_spec(), seed in any::<u64>()) {
        let f = field(fi);
        let hs = planes(&f, &spec);
        prop_assume!(!hs.is_empty());
        let mut shuffled = hs.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            let j = (seed.rotate_left(i as u32) % (i as u64 + 1)) as usize;
            shuffled.swap(i, j);
        }
        shuffled.reverse();
        prop_assert_eq!(intersect_halfplanes(&hs), intersect_halfplanes(&shuffled));
    }

    #[test]
    fn polygon_respects_every_constraint(fi in 0usize..3, spec in arb_spec()) {
        let f = field(fi);
        let hs = planes(&f, &spec);
        prop_assume!(!hs.is_empty());
        if let Region::Polygon(p) = intersect_halfplanes(&hs) {
            prop_assert!(p.side_count() >= 3);
            prop_assert_eq!(p.contains(&f.zero()), Containment::Interior);
            for h in &hs {
                for v in p.vertices() {
                    prop_assert!(h.classify(v) != Sign::Negative);
                }
            }
            for s in interior_samples(&p, 4, 7) {
                prop_assert!(hs.iter().all(|h| h.strictly_contains(&s)));
            }
        }
    }

    #[test]
    fn meet_lies_on_both_lines(fi in 0usize..3, t1 in 0i64..12, t2 in 0i64..12, a in (-30i64..30, -30i64..30), b in (-30i64..30, -30i64..30)) {
        let f = field(fi);
        let l1 = line(&f, t1, &point(&f, a.0, a.1, 3));
        let l2 = line(&f, t2, &point(&f, b.0, b.1, 5));
        match line_intersection(&l1, &l2) {
            LineMeet::Point(w) => {
                prop_assert!(l1.value(&w).is_zero());
                prop_assert!(l2.value(&w).is_zero());
            }
            LineMeet::Parallel => {
                prop_assert!((&l1.u * &l2.u.conj()).imag_part().is_zero());
            }
        }
    }
}
