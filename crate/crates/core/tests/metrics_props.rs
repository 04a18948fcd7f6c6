mod common;

use common::{exhaustive_bottleneck, perturb, random_diagram, random_filtration, rng};
use persr_core::metrics::{bottleneck, dist_inf, facet_diagram_points, hausdorff, stability_check, ExtendedPoint};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = ExtendedPoint> {
    (-4i32..4, 0i32..6, prop::bool::weighted(0.2), prop::bool::weighted(0.2)).prop_map(|(b, len, nb, pd)| {
        let birth = if nb { f64::NEG_INFINITY } else { b as f64 * 0.5 };
        let death = if pd { f64::INFINITY } else { b as f64 * 0.5 + len as f64 * 0.5 };
        ExtendedPoint::new(birth, death)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dist_inf_is_a_metric(u in point(), v in point(), w in point()) {
        prop_assert_eq!(dist_inf(&u, &u), 0.0);
        prop_assert_eq!(dist_inf(&u, &v), dist_inf(&v, &u));
        prop_assert!(dist_inf(&u, &w) <= dist_inf(&u, &v) + dist_inf(&v, &w));
    }

    #[test]
    fn bottleneck_is_a_pseudometric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_diagram(&mut r, 12), random_diagram(&mut r, 12), random_diagram(&mut r, 12));
        prop_assert_eq!(bottleneck(&a, &a), 0.0);
        prop_assert_eq!(bottleneck(&a, &b), bottleneck(&b, &a));
        prop_assert!(bottleneck(&a, &c) <= bottleneck(&a, &b) + bottleneck(&b, &c));
    }

    #[test]
    fn bottleneck_matches_exhaustive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_diagram(&mut r, 6), random_diagram(&mut r, 6));
        prop_assert_eq!(bottleneck(&a, &b), exhaustive_bottleneck(&a, &b));
    }

    #[test]
    fn hausdorff_shrinks_under_union(a in prop::collection::vec(-10.0f64..10.0, 1..8), b in prop::collection::vec(-10.0f64..10.0, 1..8)) {
        let union: Vec<f64> = a.iter().chain(&b).copied().collect();
        prop_assert!(hausdorff(&a, &union).unwrap() <= hausdorff(&a, &b).unwrap());
        prop_assert_eq!(hausdorff(&a, &b).unwrap(), hausdorff(&b, &a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn facet_diagrams_are_stable(seed in any::<u64>(), eps in 0.0f64..2.0) {
        let mut r = rng(seed);
        let f = random_filtration(&mut r, 1, 10, 4);
        let g = perturb(&mut r, &f, eps);
        let report = stability_check(&f, &g).unwrap();
        prop_assert!(report.passed, "{:?}", report);
    }

    #[test]
    fn constant_shift_is_tight(seed in any::<u64>(), c in -3.0f64..3.0) {
        let f = random_filtration(&mut rng(seed), 1, 10, 4);
        let g = f.shifted(c);
        let d = bottleneck(&facet_diagram_points(&f), &facet_diagram_points(&g));
        prop_assert!((d - c.abs()).abs() <= 1e-9);
        prop_assert!(stability_check(&f, &g).unwrap().passed);
    }
}
