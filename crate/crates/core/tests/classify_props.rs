use persr_core::classify::{evaluate, knn_predict, score, DistanceMatrix, EvalConfig};
use proptest::prelude::*;

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Points on a line, so distances are `|x_i - x_j|`.
fn line_matrix(xs: &[f64]) -> DistanceMatrix {
    let ids = (0..xs.len()).map(|i| format!("s{i:02}")).collect();
    let rows = xs.iter().map(|a| xs.iter().map(|b| (a - b).abs()).collect()).collect();
    DistanceMatrix::from_rows(ids, rows).unwrap()
}

fn clusters() -> (DistanceMatrix, Vec<String>) {
    let mut xs = Vec::new();
    let mut ls = Vec::new();
    for (c, centre) in [("a", 0.0), ("b", 100.0), ("c", 200.0)] {
        for k in 0..10 {
            xs.push(centre + k as f64 * 0.1);
            ls.push(c.to_string());
        }
    }
    (line_matrix(&xs), ls)
}

#[test]
fn confusion_matrix_oracle() {
    // Confusion (rows truth a, b, c): [[3, 1, 0], [0, 3, 1], [1, 0, 3]].
    let truth = labels(&["a", "a", "a", "a", "b", "b", "b", "b", "c", "c", "c", "c"]);
    let pred = labels(&["a", "a", "a", "b", "b", "b", "b", "c", "c", "c", "c", "a"]);
    let (s, defined) = score(&truth, &pred).unwrap();
    assert!(defined);
    assert!((s.accuracy - 0.75).abs() < 1e-12);
    assert!((s.balanced_accuracy - 0.75).abs() < 1e-12);
    assert!((s.macro_precision - 0.75).abs() < 1e-12);
    assert!((s.macro_recall - 0.75).abs() < 1e-12);
    assert!((s.macro_f1 - 0.75).abs() < 1e-12);
    // c = 9, s = 12, p_k = t_k = 4: (108 - 48) / (144 - 48) = 0.625.
    assert!((s.mcc - 0.625).abs() < 1e-12);
}

#[test]
fn constant_prediction_has_undefined_mcc() {
    let (s, defined) = score(&labels(&["a", "b"]), &labels(&["a", "a"])).unwrap();
    assert!(!defined);
    assert_eq!(s.mcc, 0.0);
}

#[test]
fn separated_clusters_score_perfectly() {
    let (m, ls) = clusters();
    for f in [0.2, 0.5, 0.8] {
        let config = EvalConfig {
            test_fraction: f,
            k: 1,
            ..EvalConfig::default()
        };
        let e = evaluate(&m, &ls, &config).unwrap();
        assert_eq!(e.mean.as_array(), [1.0; 6]);
        assert_eq!(e.std.as_array(), [0.0; 6]);
    }
}

#[test]
fn evaluation_is_deterministic() {
    let (m, ls) = clusters();
    let config = EvalConfig { seed: 7, ..EvalConfig::default() };
    assert_eq!(evaluate(&m, &ls, &config).unwrap(), evaluate(&m, &ls, &config).unwrap());
}

proptest! {
    #[test]
    fn one_nn_returns_own_label(xs in prop::collection::btree_set(0u32..1000, 2..20)) {
        let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
        let m = line_matrix(&xs);
        let ls: Vec<String> = (0..xs.len()).map(|i| format!("c{}", i % 3)).collect();
        let all: Vec<usize> = (0..xs.len()).collect();
        prop_assert_eq!(knn_predict(&m, &ls, &all, 1, &all).unwrap(), ls);
    }

    #[test]
    fn prediction_ignores_training_order(xs in prop::collection::vec(0.0f64..50.0, 6..20), k in 1usize..4, rot in 0usize..20) {
        let m = line_matrix(&xs);
        let ls: Vec<String> = (0..xs.len()).map(|i| format!("c{}", i % 2)).collect();
        let train: Vec<usize> = (0..xs.len() - 2).collect();
        let mut rotated = train.clone();
        rotated.rotate_left(rot % train.len());
        rotated.reverse();
        let queries = [xs.len() - 2, xs.len() - 1];
        prop_assert_eq!(
            knn_predict(&m, &ls, &train, k, &queries).unwrap(),
            knn_predict(&m, &ls, &rotated, k, &queries).unwrap()
        );
    }
}
