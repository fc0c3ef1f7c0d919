//! Property coverage for boundedness analysis: radius closed forms versus
//! brute force, the class partition, witness duality, and closure laws.

use m2pn::dbound::{
    class_predicates, classify, classify_pair, minkowski_sum, pair_radius, phi, radius,
    scale_pair, scaling_closure_check, sum_closure_check, pair_sum_closure_check,
    witness_g_check, AnalyticFamily, BoundClass, PairSet, SetDescriptor,
};
use m2pn::dfalgebra::{
    classify_df, epsilon, min_of, piecewise_constant, pointwise_eq, scaled_ratio,
    standard_ratio, step_at, DistributionFn, CLOSED_FORM_TOL,
};
use m2pn::geometry::{two_norm, Point};
use m2pn::space::{default_t_grid, geometric_grid, Prob2Norm};
use proptest::collection::vec as pvec;
use proptest::prelude::*;

fn point(dim: usize) -> impl Strategy<Value = Point> {
    pvec((-5i32..=5).prop_map(|c| c as f64), dim..=dim)
        .prop_map(|cs| Point::new(cs).unwrap())
}

fn finite_set(max_len: usize) -> impl Strategy<Value = SetDescriptor> {
    pvec(point(2), 1..=max_len).prop_map(|pts| SetDescriptor::finite(pts).unwrap())
}

/// Radius shapes covering all four classes, including improper limits.
fn any_radius() -> impl Strategy<Value = DistributionFn> {
    let leaf = prop_oneof![
        (0u32..6).prop_map(|k| step_at(k as f64)),
        Just(step_at(f64::INFINITY)),
        (1u32..9).prop_map(|k| standard_ratio(k as f64 / 2.0)),
        (1u32..4, 1u32..9)
            .prop_map(|(s, a)| scaled_ratio(s as f64 / 4.0, a as f64 / 2.0).unwrap()),
        (1u32..5, 1u32..8).prop_map(|(t, v)| {
            piecewise_constant(vec![(t as f64, v as f64 / 8.0)]).unwrap()
        }),
    ];
    pvec(leaf, 1..3).prop_map(min_of)
}

fn brute_max_area(pts: &[Point]) -> f64 {
    let mut m = 0f64;
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate() {
            if i != j {
                m = m.max(two_norm(x, y).unwrap());
            }
        }
    }
    m
}

const PROBE_TS: [f64; 8] = [-1.0, 0.0, 0.25, 0.5, 1.0, 2.0, 8.0, 64.0];

proptest! {
    /// The closed-form radius of a listed set collapses to the worst-pair
    /// distribution, and matches the direct infimum sweep bit for bit.
    #[test]
    fn finite_radius_matches_brute_force(a in finite_set(8)) {
        let SetDescriptor::FiniteSet(pts) = &a else { unreachable!() };
        let max_area = brute_max_area(pts);
        for (space, expected) in [
            (
                Prob2Norm::standard(2).unwrap(),
                if max_area == 0.0 { epsilon(0.0) } else { standard_ratio(max_area) },
            ),
            (Prob2Norm::indicator(2).unwrap(), step_at(max_area)),
        ] {
            let r = radius(&a, &space).unwrap();
            prop_assert_eq!(&r, &expected);
            for t in PROBE_TS {
                prop_assert_eq!(phi(&a, &space, t).unwrap(), r.eval(t));
            }
        }
    }

    /// Exactly one class predicate holds, and it names the class the
    /// classifier assigns.
    #[test]
    fn predicates_partition_every_radius(r in any_radius()) {
        let preds = class_predicates(&r);
        prop_assert_eq!(preds.iter().filter(|&&b| b).count(), 1,
            "predicates {:?} for {}", preds, r);
        let classes = [
            BoundClass::CertainlyBounded,
            BoundClass::PerhapsBounded,
            BoundClass::PerhapsUnbounded,
            BoundClass::CertainlyUnbounded,
        ];
        let idx = preds.iter().position(|&b| b).unwrap();
        let assigned = m2pn::dbound::classify_radius(&r).class;
        prop_assert_eq!(assigned, classes[idx]);
    }

    /// D-bounded sets certify through their own radius as witness; the
    /// radius is admissible exactly when the set is D-bounded.
    #[test]
    fn radius_is_the_canonical_witness(a in finite_set(6)) {
        let grid = default_t_grid();
        for space in [
            Prob2Norm::standard(2).unwrap(),
            Prob2Norm::indicator(2).unwrap(),
        ] {
            let r = radius(&a, &space).unwrap();
            let c = classify(&a, &space).unwrap();
            prop_assert!(c.is_d_bounded());
            prop_assert!(classify_df(&r).in_d_plus);
            prop_assert!(witness_g_check(&a, &space, &r, &grid).unwrap());
        }
    }

    /// Cross-pair radii ignore order up to pointwise equality.
    #[test]
    fn pair_radius_is_symmetric(a in finite_set(5), b in finite_set(5)) {
        let space = Prob2Norm::standard(2).unwrap();
        let fwd = pair_radius(&PairSet::new(a.clone(), b.clone()).unwrap(), &space).unwrap();
        let rev = pair_radius(&PairSet::new(b, a).unwrap(), &space).unwrap();
        let grid = default_t_grid();
        prop_assert!(pointwise_eq(&fwd, &rev, &grid));
    }

    /// Scaling the first component by a dyadic factor and back restores
    /// the radius exactly, and never leaves the D-bounded class.
    #[test]
    fn scaling_round_trips_and_stays_bounded(
        a in finite_set(5),
        b in finite_set(3),
        k in -3i32..=3,
        neg in prop::bool::ANY,
    ) {
        let alpha = if neg { -2f64.powi(k) } else { 2f64.powi(k) };
        let space = Prob2Norm::standard(2).unwrap();
        let p = PairSet::new(a, b).unwrap();
        prop_assert!(scaling_closure_check(alpha, &p, &space).unwrap());
        let there = scale_pair(alpha, &p).unwrap();
        let back = scale_pair(1.0 / alpha, &there).unwrap();
        prop_assert_eq!(
            pair_radius(&back, &space).unwrap(),
            pair_radius(&p, &space).unwrap()
        );
    }

    /// The listed Minkowski sum holds every pairwise sum and nothing else.
    #[test]
    fn minkowski_sum_is_the_pairwise_sums(a in finite_set(5), c in finite_set(5)) {
        let sum = minkowski_sum(&a, &c).unwrap();
        let SetDescriptor::FiniteSet(sum_pts) = &sum else { unreachable!() };
        let SetDescriptor::FiniteSet(a_pts) = &a else { unreachable!() };
        let SetDescriptor::FiniteSet(c_pts) = &c else { unreachable!() };
        prop_assert!(sum_pts.len() <= a_pts.len() * c_pts.len());
        for x in a_pts {
            for y in c_pts {
                let s = x.try_add(y).unwrap();
                prop_assert!(sum_pts.contains(&s));
            }
        }
        for s in sum_pts {
            prop_assert!(a_pts.iter().any(|x| c_pts
                .iter()
                .any(|y| &x.try_add(y).unwrap() == s)));
        }
    }

    /// Summed sets stay D-bounded and obey the split minimum bound.
    #[test]
    fn sum_closure_never_fails(
        a in finite_set(4),
        c in finite_set(4),
        b in finite_set(3),
        standard in prop::bool::ANY,
    ) {
        let space = if standard {
            Prob2Norm::standard(2).unwrap()
        } else {
            Prob2Norm::indicator(2).unwrap()
        };
        let grid = geometric_grid(-4, 8);
        prop_assert!(sum_closure_check(&a, &c, &b, &space, &grid).unwrap());
    }

    /// Elementwise sums of D-bounded pair sets stay D-bounded and obey the
    /// split minimum bound.
    #[test]
    fn pair_sum_closure_never_fails(
        a in finite_set(3),
        b in finite_set(3),
        c in finite_set(3),
        d in finite_set(3),
    ) {
        let space = Prob2Norm::standard(2).unwrap();
        let p1 = PairSet::new(a, b).unwrap();
        let p2 = PairSet::new(c, d).unwrap();
        let grid = geometric_grid(-4, 8);
        prop_assert!(pair_sum_closure_check(&p1, &p2, &space, &grid).unwrap());
    }

    /// Analytic descriptors reduce to their family's closed form: the
    /// larger supremum governs equal families, and a listed set paired
    /// with an analytic one inherits the declared cross supremum.
    #[test]
    fn analytic_pairs_use_the_declared_supremum(
        s1_num in 1u32..40,
        s2_num in 1u32..40,
        a in finite_set(4),
    ) {
        let s1 = s1_num as f64 / 4.0;
        let s2 = s2_num as f64 / 4.0;
        let space = Prob2Norm::standard(2).unwrap();
        let both = PairSet::new(
            SetDescriptor::analytic(s1, AnalyticFamily::Standard).unwrap(),
            SetDescriptor::analytic(s2, AnalyticFamily::Standard).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(
            pair_radius(&both, &space).unwrap(),
            standard_ratio(s1.max(s2))
        );
        let mixed = PairSet::new(
            a,
            SetDescriptor::analytic(s1, AnalyticFamily::Standard).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(pair_radius(&mixed, &space).unwrap(), standard_ratio(s1));
    }
}

#[test]
fn unbounded_sets_reject_every_witness() {
    // A custom family capped strictly below one is never D-bounded, and no
    // witness in the admissible class can certify it.
    let space = Prob2Norm::custom(2, |x: &Point, y: &Point| {
        let area = two_norm(x, y).expect("validated inputs");
        if area == 0.0 {
            epsilon(0.0)
        } else {
            scaled_ratio(0.5, area).unwrap()
        }
    })
    .unwrap();
    let a = SetDescriptor::finite(vec![
        Point::new(vec![1.0, 0.0]).unwrap(),
        Point::new(vec![0.0, 1.0]).unwrap(),
    ])
    .unwrap();
    let c = classify(&a, &space).unwrap();
    assert!(!c.is_d_bounded());
    assert_eq!(c.class, BoundClass::PerhapsUnbounded);
    assert!((c.limit - 0.5).abs() <= CLOSED_FORM_TOL);

    let grid = geometric_grid(-10, 20);
    for k in [-2i32, 0, 4, 10, 18] {
        let scale = 2f64.powi(k);
        assert_eq!(witness_g_check(&a, &space, &step_at(scale), &grid), Ok(false));
        assert_eq!(
            witness_g_check(&a, &space, &standard_ratio(scale), &grid),
            Ok(false)
        );
    }
    // The capped radius itself is not admissible as a witness.
    let r = radius(&a, &space).unwrap();
    assert_eq!(
        witness_g_check(&a, &space, &r, &grid),
        Err(m2pn::Error::WitnessNotInDPlus)
    );
}

#[test]
fn pair_classification_covers_all_four_classes() {
    let space = Prob2Norm::standard(2).unwrap();
    let line = SetDescriptor::finite(vec![
        Point::new(vec![1.0, 1.0]).unwrap(),
        Point::new(vec![2.0, 2.0]).unwrap(),
        Point::new(vec![-3.0, -3.0]).unwrap(),
    ])
    .unwrap();
    // Collinear cross pairs: radius is the unit jump, certainly bounded.
    let cb = classify_pair(&PairSet::new(line.clone(), line.clone()).unwrap(), &space).unwrap();
    assert_eq!(cb.class, BoundClass::CertainlyBounded);

    let square = SetDescriptor::finite(vec![
        Point::new(vec![1.0, 0.0]).unwrap(),
        Point::new(vec![0.0, 1.0]).unwrap(),
    ])
    .unwrap();
    let pb = classify_pair(&PairSet::new(square.clone(), line.clone()).unwrap(), &space).unwrap();
    assert_eq!(pb.class, BoundClass::PerhapsBounded);

    let infinite =
        SetDescriptor::analytic(f64::INFINITY, AnalyticFamily::Standard).unwrap();
    let cu = classify_pair(&PairSet::new(square.clone(), infinite).unwrap(), &space).unwrap();
    assert_eq!(cu.class, BoundClass::CertainlyUnbounded);

    let capped = SetDescriptor::analytic(
        2.0,
        AnalyticFamily::CustomRadiusRule(scaled_ratio(0.25, 2.0).unwrap()),
    )
    .unwrap();
    let pu = classify_pair(&PairSet::new(square, capped).unwrap(), &space).unwrap();
    assert_eq!(pu.class, BoundClass::PerhapsUnbounded);
    assert_eq!(pu.limit, 0.25);
}
