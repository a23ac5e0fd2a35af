mod common;

use dotchain::bounds::{evaluate_bound, BoundId, BoundParams, BoundSpec};
use dotchain::format::{from_json, to_json};
use dotchain::stats::{energy, max_flat_richness, min_squared_separation};
use dotchain::{
    alpha_line, canonical_line, count_chains_distinct, count_chains_dp, intersect_alpha_lines,
    same_radial_line, ChainType, LineKey, Point, PointSet, Scalar,
};
use proptest::prelude::*;

use common::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Scalar::ratio(n, d).unwrap())
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn point2() -> impl Strategy<Value = Point> {
    (scalar(), scalar()).prop_map(|(x, y)| Point::xy(x, y))
}

fn nonorigin2() -> impl Strategy<Value = Point> {
    point2().prop_filter("non-origin", |p| !p.is_origin())
}

fn point_set(dim: usize, max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, dim), 1..=max).prop_filter_map(
        "distinct",
        |rows| {
            let mut pts: Vec<Point> = Vec::new();
            for r in rows {
                let p = Point::ints(&r);
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            PointSet::external("p", pts).ok()
        },
    )
}

fn set_and_chain(max: usize) -> impl Strategy<Value = (PointSet, ChainType)> {
    (
        point_set(2, max),
        prop::collection::vec((0usize..64, 0usize..64), 1..=4),
    )
        .prop_map(|(set, picks)| {
            let pts = set.points();
            let alphas = picks
                .iter()
                .map(|&(i, j)| {
                    let d = dot_naive(&pts[i % pts.len()], &pts[j % pts.len()]);
                    if d.is_zero() {
                        Scalar::one()
                    } else {
                        d
                    }
                })
                .collect();
            (set, ChainType::new(alphas).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn counts_match_nested_loops((set, chain) in set_and_chain(12)) {
        let rep = count_chains_dp(&set, &chain).unwrap().count;
        let dis = count_chains_distinct(&set, &chain).unwrap().count;
        prop_assert_eq!(rep, oracle_count(&set, chain.alphas(), false).into());
        prop_assert_eq!(dis, oracle_count(&set, chain.alphas(), true).into());
    }

    #[test]
    fn reversing_the_type_preserves_counts((set, chain) in set_and_chain(14)) {
        let rev = chain.reversed();
        prop_assert_eq!(count_chains_dp(&set, &chain).unwrap().count, count_chains_dp(&set, &rev).unwrap().count);
        prop_assert_eq!(
            count_chains_distinct(&set, &chain).unwrap().count,
            count_chains_distinct(&set, &rev).unwrap().count
        );
    }

    #[test]
    fn adding_a_point_never_loses_chains((set, chain) in set_and_chain(12), extra in prop::collection::vec(-3i64..=3, 2)) {
        let p = Point::ints(&extra);
        prop_assume!(!set.points().contains(&p));
        let bigger = set.with_point(p).unwrap();
        let before = count_chains_dp(&set, &chain).unwrap().count;
        let after = count_chains_dp(&bigger, &chain).unwrap().count;
        prop_assert!(after >= before);
        let before = count_chains_distinct(&set, &chain).unwrap().count;
        let after = count_chains_distinct(&bigger, &chain).unwrap().count;
        prop_assert!(after >= before);
    }

    #[test]
    fn distinct_never_exceeds_repeats((set, chain) in set_and_chain(16)) {
        prop_assert!(count_chains_distinct(&set, &chain).unwrap().count <= count_chains_dp(&set, &chain).unwrap().count);
    }

    #[test]
    fn alpha_lines_are_injective(p in nonorigin2(), q in nonorigin2(), alpha in nonzero()) {
        prop_assume!(p != q);
        prop_assert_ne!(alpha_line(&p, &alpha).unwrap(), alpha_line(&q, &alpha).unwrap());
    }

    #[test]
    fn alpha_line_holds_exactly_its_solutions(a in nonorigin2(), alpha in nonzero(), x in point2()) {
        let line = alpha_line(&a, &alpha).unwrap();
        prop_assert_eq!(line.contains(&x).unwrap(), dot_naive(&a, &x) == alpha);
    }

    #[test]
    fn intersections_solve_both_equations(a in nonorigin2(), alpha in nonzero(), c in nonorigin2(), beta in nonzero()) {
        match intersect_alpha_lines(&a, &alpha, &c, &beta) {
            Ok(p) => {
                prop_assert!(!same_radial_line(&a, &c).unwrap());
                prop_assert_eq!(dot_naive(&a, &p), alpha);
                prop_assert_eq!(dot_naive(&c, &p), beta);
            }
            Err(e) => {
                prop_assert_eq!(e, dotchain::Error::SameRadialLine);
                prop_assert!(same_radial_line(&a, &c).unwrap());
            }
        }
    }

    /// Two points off a common radial line determine a third through the
    /// intersection, and that point's alpha-line partners recover them.
    #[test]
    fn intersection_round_trip(a in nonorigin2(), c in nonorigin2(), p in nonorigin2()) {
        prop_assume!(!same_radial_line(&a, &c).unwrap());
        let alpha = dot_naive(&a, &p);
        let beta = dot_naive(&c, &p);
        prop_assume!(!alpha.is_zero() && !beta.is_zero());
        prop_assert_eq!(intersect_alpha_lines(&a, &alpha, &c, &beta).unwrap(), p);
    }

    #[test]
    fn canonical_line_is_symmetric(p in point2(), q in point2(), t in scalar()) {
        prop_assume!(p != q);
        let l = canonical_line(&p, &q).unwrap();
        prop_assert_eq!(&l, &canonical_line(&q, &p).unwrap());
        // every affine combination lies on it
        let x = Point::xy(&p[0] + &(&t * &(&q[0] - &p[0])), &p[1] + &(&t * &(&q[1] - &p[1])));
        prop_assert!(l.contains(&x).unwrap());
        prop_assert_eq!(&l, &LineKey::new(l.coefficients().0.clone(), l.coefficients().1.clone(), l.coefficients().2.clone()).unwrap());
    }

    #[test]
    fn energy_is_homogeneous(set in point_set(2, 10), lam in 1i64..=5, s in 0.5f64..3.0) {
        prop_assume!(set.len() >= 2);
        let factor = Scalar::from(lam);
        let scaled = PointSet::external("s", set.points().iter().map(|p| p.scale(&factor)).collect()).unwrap();
        let e = energy(&set, s).unwrap();
        let es = energy(&scaled, s).unwrap();
        prop_assert!((es - e * (lam as f64).powf(-s)).abs() <= 1e-12 * e);
    }

    #[test]
    fn energy_and_separation_match_direct_loops(set in point_set(3, 14), s in 0.5f64..3.0) {
        prop_assume!(set.len() >= 2);
        let e = energy(&set, s).unwrap();
        let o = oracle_energy(&set, s);
        prop_assert!((e - o).abs() <= 1e-12 * o);
        prop_assert_eq!(min_squared_separation(&set).unwrap(), oracle_min_sq_sep(&set));
    }

    #[test]
    fn line_richness_matches_pair_scan(set in point_set(2, 14)) {
        prop_assume!(set.len() >= 2);
        prop_assert_eq!(max_flat_richness(&set, 1).unwrap().max_points, oracle_line_richness(&set));
    }

    #[test]
    fn line_richness_matches_pair_scan_3d(set in point_set(3, 12)) {
        prop_assume!(set.len() >= 2);
        prop_assert_eq!(max_flat_richness(&set, 1).unwrap().max_points, oracle_line_richness(&set));
    }

    #[test]
    fn files_round_trip(set in point_set(3, 20)) {
        let text = to_json(&set);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(&back, &set);
        prop_assert_eq!(to_json(&back), text);
    }

    #[test]
    fn bounds_are_monotone(id in prop::sample::select(BoundId::ALL.to_vec()), k in 1usize..=12, n in 2.0f64..1e5, t in 2.0f64..50.0) {
        let k = match id {
            BoundId::Hinge => 2,
            BoundId::SingleDot => 1,
            _ => k,
        };
        let p = |n: f64, t: f64, r: f64| BoundParams::nk(n, k).with_t(t).with_r(r).with_d(3).with_s(q("3/2"));
        let v = |p: BoundParams| evaluate_bound(&BoundSpec::new(id, p)).unwrap().value();
        let base = v(p(n, t, 2.0 * t));
        prop_assert!(v(p(2.0 * n, t, 2.0 * t)) >= base);
        prop_assert!(v(p(n, 2.0 * t, 2.0 * t)) >= base);
        prop_assert!(v(p(n, t, 4.0 * t)) >= base);
    }
}
