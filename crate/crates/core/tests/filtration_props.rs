mod common;

use common::{probe_points, random_filtration, rng};
use persr_core::filtration::vietoris_rips;
use persr_core::{Point, PointCloud, RipsConfig};
use proptest::prelude::*;
use rand::Rng;

fn random_cloud(seed: u64, n: usize) -> PointCloud {
    let mut r = rng(seed);
    let labels = ["B", "C", "H"];
    PointCloud::new(
        (0..n)
            .map(|_| {
                let label = labels[r.gen_range(0..3)];
                Point::new(label, [r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)])
            })
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sublevels_nest(seed in any::<u64>()) {
        let f = random_filtration(&mut rng(seed), 1, 8, 4);
        let probes = probe_points(&f);
        for (i, &t) in probes.iter().enumerate() {
            let small = f.sublevel(t);
            for &u in &probes[i..] {
                let big = f.sublevel(u);
                prop_assert!(small.faces().all(|s| big.contains(s)));
            }
        }
    }

    #[test]
    fn rips_values_are_monotone(seed in any::<u64>(), n in 1usize..8) {
        let cloud = random_cloud(seed, n);
        let f = vietoris_rips(&cloud, &RipsConfig { max_dim: 3, ..RipsConfig::default() }).unwrap();
        for (s, &v) in f.values() {
            for b in s.boundary() {
                prop_assert!(f.value(&b).unwrap() <= v);
            }
            // Value is the largest pairwise distance.
            let vs = s.vertices();
            let mut diam: f64 = 0.0;
            for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    diam = diam.max(cloud.points[a as usize].distance(&cloud.points[b as usize]));
                }
            }
            prop_assert!((diam - v).abs() < 1e-8);
        }
    }

    #[test]
    fn sublevel_constant_between_critical_values(seed in any::<u64>()) {
        let f = random_filtration(&mut rng(seed), 1, 8, 4);
        let alphas = f.critical_values(None).into_vec();
        for w in alphas.windows(2) {
            let (x, y) = (w[0] + (w[1] - w[0]) * 0.1, w[1] - (w[1] - w[0]) * 0.1);
            prop_assert_eq!(f.sublevel(x), f.sublevel(y));
            prop_assert_eq!(f.sublevel(x).minimal_nonfaces(), f.sublevel(y).minimal_nonfaces());
        }
        // Every attained value strictly shrinks the ideal.
        for &a in &alphas {
            let before = f.sublevel(a - 1e-6);
            let after = f.sublevel(a);
            prop_assert!(after.num_faces() > before.num_faces());
        }
    }

    #[test]
    fn element_filter_matches_prefiltered_cloud(seed in any::<u64>(), n in 1usize..9) {
        let cloud = random_cloud(seed, n);
        let filtered = cloud.filter_labels(&["b"]);
        prop_assume!(!filtered.is_empty());
        let cfg = RipsConfig { elements: Some(vec!["B".into()]), ..RipsConfig::default() };
        let a = vietoris_rips(&cloud, &cfg).unwrap();
        let b = vietoris_rips(&filtered, &RipsConfig::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}
