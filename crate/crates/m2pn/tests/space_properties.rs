//! Property coverage for probabilistic 2-norm spaces: axiom batteries,
//! scaling laws, ball convexity, boundedness thresholds, and products.

use m2pn::dfalgebra::{self, CLOSED_FORM_TOL};
use m2pn::geometry::{two_norm, Point};
use m2pn::report::all_pass;
use m2pn::sequences::{converges_to, SequenceRule, Verdict};
use m2pn::space::{
    ball_contains, bound_constants, check_2pn_axioms, check_mg2pn_axioms, convexity_probe_ball,
    is_bounded, is_bounded_grid, product_space, scalar_monotonicity_check, BallQuery, Prob2Norm,
};
use proptest::collection::vec as pvec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn point(dim: usize) -> impl Strategy<Value = Point> {
    pvec((-5i32..=5).prop_map(|c| c as f64), dim..=dim)
        .prop_map(|cs| Point::new(cs).unwrap())
}

/// Nonzero dyadic scalars: sign * 2^k with k in [-3, 3].
fn dyadic_scalar() -> impl Strategy<Value = f64> {
    (prop::bool::ANY, -3i32..=3).prop_map(|(neg, k)| {
        let v = 2f64.powi(k);
        if neg {
            -v
        } else {
            v
        }
    })
}

fn space_family(dim: usize) -> impl Strategy<Value = Prob2Norm> {
    prop_oneof![
        Just(Prob2Norm::standard(dim).unwrap()),
        Just(Prob2Norm::indicator(dim).unwrap()),
    ]
}

const PROBE_TS: [f64; 7] = [0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 16.0];

proptest! {
    /// Scaling the first argument by a power of two rescales the
    /// distribution argument exactly, with no rounding slack at all.
    #[test]
    fn dyadic_scaling_is_exact(
        space in space_family(2),
        x in point(2),
        y in point(2),
        alpha in dyadic_scalar(),
    ) {
        let direct = space.nu(&x.scale(alpha), &y).unwrap();
        let derived = space.nu(&x, &y).unwrap().scale_argument(alpha.abs()).unwrap();
        prop_assert_eq!(&direct, &derived);
        for t in PROBE_TS {
            prop_assert_eq!(direct.eval(t * alpha.abs()), space.nu(&x, &y).unwrap().eval(t));
        }
    }

    /// General scalars obey the same law within the closed-form tolerance.
    #[test]
    fn general_scaling_is_tight(
        x in point(2),
        y in point(2),
        num in 1i32..40,
        den in 1i32..40,
    ) {
        let alpha = num as f64 / den as f64;
        let space = Prob2Norm::standard(2).unwrap();
        let direct = space.nu(&x.scale(alpha), &y).unwrap();
        let base = space.nu(&x, &y).unwrap();
        for t in PROBE_TS {
            let lhs = direct.eval(t);
            let rhs = base.eval(t / alpha);
            prop_assert!((lhs - rhs).abs() <= CLOSED_FORM_TOL,
                "alpha={alpha} t={t}: {lhs} vs {rhs}");
        }
    }

    /// A larger scalar always gives a pointwise smaller distribution.
    #[test]
    fn scalar_order_never_fails(
        space in space_family(2),
        x in point(2),
        y in point(2),
        a in dyadic_scalar(),
        b in dyadic_scalar(),
    ) {
        let (small, large) = if a.abs() <= b.abs() { (a, b) } else { (b, a) };
        let grid: Vec<f64> = PROBE_TS.to_vec();
        prop_assert!(
            scalar_monotonicity_check(&space, &x, &y, small, large, &grid).unwrap()
        );
    }

    /// Sampled segment points between two ball members stay in the ball.
    #[test]
    fn balls_are_convex(
        space in space_family(2),
        center in point(2),
        direction in point(2),
        candidate in point(2),
        level_num in 1u32..8,
        radius_num in 1u32..16,
    ) {
        let level = level_num as f64 / 8.0;
        let radius = radius_num as f64 / 2.0;
        let q = BallQuery::new(center.clone(), direction, level, radius).unwrap();
        // The center always belongs to its own ball; the second endpoint
        // is accepted only when it is a member.
        prop_assert!(ball_contains(&space, &q, &center).unwrap());
        let y2 = if ball_contains(&space, &q, &candidate).unwrap() {
            candidate
        } else {
            center.clone()
        };
        let lambdas: Vec<f64> = (0..=8).map(|i| i as f64 / 8.0).collect();
        prop_assert!(
            convexity_probe_ball(&space, &q, &center, &y2, &lambdas).unwrap()
        );
    }

    /// The forward/backward threshold constants invert each other tightly.
    #[test]
    fn threshold_constants_round_trip(
        m_num in 1i32..2000,
        r_num in 1i32..999,
    ) {
        let m = m_num as f64 / 16.0;
        let r = r_num as f64 / 1000.0;
        let (t0, m_back) = bound_constants(m, r).unwrap();
        prop_assert!(t0 > 0.0);
        prop_assert!((m_back - m).abs() <= CLOSED_FORM_TOL * m);
    }

    /// The geometric-grid threshold brackets the closed-form one within a
    /// single grid step.
    #[test]
    fn grid_threshold_matches_closed_form(
        xs in pvec(point(2), 1..5),
        ys in pvec(point(2), 1..3),
        r_num in 1i32..15,
    ) {
        let r = r_num as f64 / 16.0;
        let space = Prob2Norm::standard(2).unwrap();
        let closed = is_bounded(&space, &xs, &ys, &[r]).unwrap();
        let gridded = is_bounded_grid(&space, &xs, &ys, &[r]).unwrap();
        let t0 = closed[0].threshold.unwrap();
        let g = gridded[0].threshold;
        let lo = 2f64.powi(-10);
        let hi = 2f64.powi(20);
        if t0 == 0.0 {
            // Degenerate set (all areas zero): every positive t certifies.
            prop_assert_eq!(g, Some(lo));
        } else if t0 < hi {
            let g = g.unwrap();
            prop_assert!(g >= t0 * (1.0 - 1e-9), "grid {g} below closed {t0}");
            prop_assert!(
                g <= (2.0 * t0 * (1.0 + 1e-9)).max(lo),
                "grid {g} more than one step above closed {t0}"
            );
        }
    }

    /// Componentwise convergence certificates combine to the pair: the
    /// product-space index is exactly the larger component index.
    #[test]
    fn product_convergence_takes_the_larger_index(
        lim_x in point(2),
        dir_x in point(2),
        lim_y in point(2),
        dir_y in point(2),
        wx in point(2),
        wy in point(2),
        t_num in 1u32..6,
        alpha_num in 1u32..8,
    ) {
        let t = t_num as f64 / 2.0;
        let alpha = alpha_num as f64 / 8.0;
        let horizon = 64;

        // Route every evaluation through the same custom-rule code path so
        // component and pair verdicts share rounding behavior bit for bit.
        let wrap = |inner: Prob2Norm| {
            let dim = inner.dim();
            Prob2Norm::custom(dim, move |u: &Point, v: &Point| {
                inner.nu(u, v).unwrap()
            })
            .unwrap()
        };
        let sx = wrap(Prob2Norm::standard(2).unwrap());
        let sy = wrap(Prob2Norm::indicator(2).unwrap());
        let pair_space = product_space(&sx, &sy);

        let seq_x = SequenceRule::affine_inv_n(lim_x.clone(), dir_x.clone(), horizon).unwrap();
        let seq_y = SequenceRule::affine_inv_n(lim_y.clone(), dir_y.clone(), horizon).unwrap();
        let vx = converges_to(&sx, &seq_x, &lim_x, std::slice::from_ref(&wx), t, alpha).unwrap();
        let vy = converges_to(&sy, &seq_y, &lim_y, std::slice::from_ref(&wy), t, alpha).unwrap();

        let cat = |a: &Point, b: &Point| {
            let mut cs = a.coords().to_vec();
            cs.extend_from_slice(b.coords());
            Point::new(cs).unwrap()
        };
        let seq_pair =
            SequenceRule::affine_inv_n(cat(&lim_x, &lim_y), cat(&dir_x, &dir_y), horizon)
                .unwrap();
        let vp = converges_to(
            &pair_space,
            &seq_pair,
            &cat(&lim_x, &lim_y),
            &[cat(&wx, &wy)],
            t,
            alpha,
        )
        .unwrap();

        match (&vx, &vy) {
            (Verdict::CertifiedAt(nx), Verdict::CertifiedAt(ny)) => {
                prop_assert_eq!(vp, Verdict::CertifiedAt(*nx.max(ny)));
            }
            _ => prop_assert!(!vp.is_certified()),
        }
    }

    /// The pair distribution in a product space is the pointwise minimum of
    /// the component distributions.
    #[test]
    fn product_distribution_is_componentwise_min(
        ux in point(2), uy in point(2), vx in point(2), vy in point(2),
    ) {
        let sx = Prob2Norm::standard(2).unwrap();
        let sy = Prob2Norm::indicator(2).unwrap();
        let pair = product_space(&sx, &sy);
        let cat = |a: &Point, b: &Point| {
            let mut cs = a.coords().to_vec();
            cs.extend_from_slice(b.coords());
            Point::new(cs).unwrap()
        };
        let joint = pair.nu(&cat(&ux, &uy), &cat(&vx, &vy)).unwrap();
        let fx = sx.nu(&ux, &vx).unwrap();
        let fy = sy.nu(&uy, &vy).unwrap();
        for t in PROBE_TS {
            prop_assert_eq!(joint.eval(t), fx.eval(t).min(fy.eval(t)));
        }
    }

    /// The built-in distribution families reproduce their closed forms on
    /// arbitrary integer inputs.
    #[test]
    fn families_match_closed_forms(x in point(3), y in point(3), t_num in 1u32..20) {
        let t = t_num as f64 / 4.0;
        let area = two_norm(&x, &y).unwrap();
        let std_val = Prob2Norm::standard(3).unwrap().nu(&x, &y).unwrap().eval(t);
        let ind_val = Prob2Norm::indicator(3).unwrap().nu(&x, &y).unwrap().eval(t);
        if area == 0.0 {
            prop_assert_eq!(std_val, 1.0);
            prop_assert_eq!(ind_val, 1.0);
        } else {
            prop_assert_eq!(std_val, t / (t + area));
            prop_assert_eq!(ind_val, if t > area { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn axiom_batteries_pass_for_builtin_families() {
    let t_grid: Vec<f64> = (0..6).map(|k| 2f64.powi(k - 2)).collect();
    let s_grid = t_grid.clone();
    for dim in [2usize, 3] {
        for space in [
            Prob2Norm::standard(dim).unwrap(),
            Prob2Norm::indicator(dim).unwrap(),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let reports =
                check_2pn_axioms(&space, &t_grid, &s_grid, 400, 1e-9, &mut rng).unwrap();
            assert!(all_pass(&reports), "{} dim {dim}: {reports:?}", space.family_name());

            let mut rng = ChaCha8Rng::seed_from_u64(12);
            let reports =
                check_mg2pn_axioms(&space, &t_grid, &s_grid, 400, 1e-9, &mut rng).unwrap();
            assert!(all_pass(&reports), "{} dim {dim}: {reports:?}", space.family_name());
        }
    }
}

#[test]
fn custom_rule_spaces_run_the_full_battery() {
    // A custom rule built from a valid family must still pass: here the
    // standard family pre-composed with a dyadic argument scale.
    let dim = 2;
    let space = Prob2Norm::custom(dim, move |x: &Point, y: &Point| {
        let area = two_norm(x, y).expect("validated inputs");
        if area == 0.0 {
            dfalgebra::epsilon(0.0)
        } else {
            dfalgebra::standard_ratio(2.0 * area)
        }
    })
    .unwrap();
    let t_grid: Vec<f64> = (0..5).map(|k| 2f64.powi(k - 2)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let reports = check_2pn_axioms(&space, &t_grid, &t_grid, 200, 1e-9, &mut rng).unwrap();
    assert!(all_pass(&reports), "{reports:?}");
}
