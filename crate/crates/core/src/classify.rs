//! Critical-value features, Hausdorff distance matrices and k-nearest
//! neighbour evaluation with stratified splits.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::filtration::vietoris_rips;
use crate::metrics::hausdorff;
use crate::{CriticalValues, Error, PointCloud, Result, RipsConfig};

/// How a point cloud is turned into a feature set.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureConfig {
    pub rips: RipsConfig,
    /// Critical values outside `[range.0, range.1]` are discarded.
    pub range: (f64, f64),
    /// Decimal digits kept when deduplicating critical values.
    pub precision: Option<u32>,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            rips: RipsConfig::default(),
            range: (0.0, 7.0),
            precision: Some(9),
        }
    }
}

/// Critical values of the Vietoris–Rips filtration, clipped to the range.
pub fn extract_features(cloud: &PointCloud, config: &FeatureConfig) -> Result<CriticalValues> {
    let filtration = vietoris_rips(cloud, &config.rips)?;
    Ok(filtration
        .critical_values(config.precision)
        .clipped(config.range.0, config.range.1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub id: String,
    pub label: String,
    pub features: CriticalValues,
}

impl Sample {
    pub fn new(id: impl Into<String>, label: impl Into<String>, features: CriticalValues) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Sample {
            id: id.into(),
            label: label.into(),
            features,
        })
    }
}

/// Square symmetric matrix of pairwise distances, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    ids: Vec<String>,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Validates shape, symmetry, zero diagonal and non-negativity.
    pub fn new(ids: Vec<String>, data: Vec<f64>) -> Result<Self> {
        let n = ids.len();
        if data.len() != n * n {
            return Err(Error::InvalidMatrix(alloc::format!(
                "{} entries for {n} ids",
                data.len()
            )));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::InvalidMatrix(alloc::format!("non-zero diagonal at {}", ids[i])));
            }
            for j in 0..n {
                let x = data[i * n + j];
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidMatrix(alloc::format!(
                        "entry ({}, {}) = {x}",
                        ids[i], ids[j]
                    )));
                }
                if x != data[j * n + i] {
                    return Err(Error::InvalidMatrix(alloc::format!(
                        "asymmetric entry ({}, {})",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        Ok(DistanceMatrix { ids, data })
    }

    /// Assembles a matrix from its rows.
    pub fn from_rows(ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(ids, rows.into_iter().flatten().collect())
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ids.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.ids.len();
        &self.data[i * n..(i + 1) * n]
    }
}

/// Hausdorff distances from sample `i` to every sample.
pub fn distance_row(samples: &[Sample], i: usize) -> Result<Vec<f64>> {
    samples
        .iter()
        .map(|s| hausdorff(samples[i].features.as_slice(), s.features.as_slice()))
        .collect()
}

pub fn pairwise_distances(samples: &[Sample]) -> Result<DistanceMatrix> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples {
            required: 2,
            found: samples.len(),
        });
    }
    let rows = (0..samples.len())
        .map(|i| distance_row(samples, i))
        .collect::<Result<Vec<_>>>()?;
    DistanceMatrix::from_rows(samples.iter().map(|s| s.id.clone()).collect(), rows)
}

fn check_index(index: usize, len: usize) -> Result<()> {
    if index >= len {
        Err(Error::IndexOutOfRange { index, len })
    } else {
        Ok(())
    }
}

/// Predicts each query by majority vote among its `k` nearest training
/// samples. Neighbours are ranked by (distance, id); vote ties go to the
/// label with the smaller total distance, then the lexicographically
/// smaller label. Only query-to-training distances are read.
pub fn knn_predict(
    matrix: &DistanceMatrix,
    labels: &[String],
    train: &[usize],
    k: usize,
    queries: &[usize],
) -> Result<Vec<String>> {
    let n = matrix.len();
    if labels.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: labels.len(),
        });
    }
    if k == 0 || k > train.len() {
        return Err(Error::KOutOfRange {
            k,
            available: train.len(),
        });
    }
    for &i in train.iter().chain(queries) {
        check_index(i, n)?;
    }
    let ids = matrix.ids();
    queries
        .iter()
        .map(|&q| {
            let mut neighbours: Vec<(f64, usize)> = train.iter().map(|&t| (matrix.get(q, t), t)).collect();
            neighbours.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| ids[a.1].cmp(&ids[b.1])));
            let mut votes: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
            for &(d, t) in &neighbours[..k] {
                let e = votes.entry(labels[t].as_str()).or_insert((0, 0.0));
                e.0 += 1;
                e.1 += d;
            }
            // BTreeMap iterates labels in order, so keeping the first best
            // entry implements the lexicographic tie-break.
            let mut best: Option<(&str, usize, f64)> = None;
            for (label, (count, total)) in votes {
                let better = match best {
                    None => true,
                    Some((_, bc, bt)) => count > bc || (count == bc && total < bt),
                };
                if better {
                    best = Some((label, count, total));
                }
            }
            Ok(best.expect("k >= 1").0.to_string())
        })
        .collect()
}

/// The six classification scores of one split.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Scores {
    pub accuracy: f64,
    pub balanced_accuracy: f64,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub mcc: f64,
}

impl Scores {
    pub const NAMES: [&'static str; 6] = [
        "accuracy",
        "balanced_accuracy",
        "macro_precision",
        "macro_recall",
        "macro_f1",
        "mcc",
    ];

    pub fn as_array(&self) -> [f64; 6] {
        [
            self.accuracy,
            self.balanced_accuracy,
            self.macro_precision,
            self.macro_recall,
            self.macro_f1,
            self.mcc,
        ]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        Scores {
            accuracy: a[0],
            balanced_accuracy: a[1],
            macro_precision: a[2],
            macro_recall: a[3],
            macro_f1: a[4],
            mcc: a[5],
        }
    }
}

/// Scores from true and predicted labels. Macro averages run over every
/// label seen in either sequence, with 0 for undefined ratios; balanced
/// accuracy averages recall over the true labels only. The second value is
/// `false` when the Matthews correlation is undefined (reported as 0).
pub fn score(truth: &[String], predicted: &[String]) -> Result<(Scores, bool)> {
    if truth.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            expected: truth.len(),
            found: predicted.len(),
        });
    }
    if truth.is_empty() {
        return Err(Error::TooFewSamples { required: 1, found: 0 });
    }
    let classes: BTreeSet<&str> = truth.iter().chain(predicted).map(String::as_str).collect();
    let s = truth.len() as f64;
    let correct = truth.iter().zip(predicted).filter(|(a, b)| a == b).count() as f64;
    let (mut precision, mut recall, mut f1, mut balanced) = (0.0, 0.0, 0.0, 0.0);
    let (mut sum_pt, mut sum_pp, mut sum_tt) = (0.0, 0.0, 0.0);
    let mut true_classes = 0usize;
    for &c in &classes {
        let t = truth.iter().filter(|x| *x == c).count() as f64;
        let p = predicted.iter().filter(|x| *x == c).count() as f64;
        let tp = truth.iter().zip(predicted).filter(|(a, b)| *a == c && *b == c).count() as f64;
        let pr = if p > 0.0 { tp / p } else { 0.0 };
        let rc = if t > 0.0 { tp / t } else { 0.0 };
        precision += pr;
        recall += rc;
        f1 += if pr + rc > 0.0 { 2.0 * pr * rc / (pr + rc) } else { 0.0 };
        if t > 0.0 {
            balanced += rc;
            true_classes += 1;
        }
        sum_pt += p * t;
        sum_pp += p * p;
        sum_tt += t * t;
    }
    let k = classes.len() as f64;
    let denom = (s * s - sum_pp) * (s * s - sum_tt);
    let defined = denom > 0.0;
    let mcc = if defined {
        (correct * s - sum_pt) / libm::sqrt(denom)
    } else {
        0.0
    };
    Ok((
        Scores {
            accuracy: correct / s,
            balanced_accuracy: balanced / true_classes as f64,
            macro_precision: precision / k,
            macro_recall: recall / k,
            macro_f1: f1 / k,
            mcc,
        },
        defined,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    pub k: usize,
    pub test_fraction: f64,
    pub repetitions: usize,
    pub seed: u64,
    /// Resampling attempts per repetition before giving up on a split that
    /// leaves some class without training samples.
    pub max_retries: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            k: 5,
            test_fraction: 0.2,
            repetitions: 10,
            seed: 0,
            max_retries: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub repetition: usize,
    pub test_fraction: f64,
    pub scores: Scores,
    pub mcc_defined: bool,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    pub predictions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub reports: Vec<EvalReport>,
    pub mean: Scores,
    /// Population standard deviation over repetitions.
    pub std: Scores,
}

/// Stratified split: each class sends `floor(m·f)` samples to the test set
/// plus one more with probability equal to the fractional part.
pub fn stratified_split(
    labels: &[String],
    test_fraction: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<usize>, Vec<usize>) {
    let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        by_class.entry(l.as_str()).or_default().push(i);
    }
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (_, mut members) in by_class {
        members.shuffle(rng);
        let exact = members.len() as f64 * test_fraction;
        let base = libm::floor(exact);
        let extra = usize::from(rng.gen_bool(exact - base));
        let n_test = (base as usize + extra).min(members.len());
        test.extend_from_slice(&members[..n_test]);
        train.extend_from_slice(&members[n_test..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

/// Repeated stratified k-NN evaluation. Repetition `r` draws from stream `r`
/// of a ChaCha8 generator seeded with `config.seed`.
pub fn evaluate(matrix: &DistanceMatrix, labels: &[String], config: &EvalConfig) -> Result<Evaluation> {
    if !(config.test_fraction > 0.0 && config.test_fraction < 1.0) {
        return Err(Error::InvalidTestFraction(config.test_fraction));
    }
    if config.repetitions == 0 {
        return Err(Error::TooFewSamples { required: 1, found: 0 });
    }
    if labels.len() != matrix.len() {
        return Err(Error::LengthMismatch {
            expected: matrix.len(),
            found: labels.len(),
        });
    }
    let reports = (0..config.repetitions)
        .map(|r| evaluate_repetition(matrix, labels, config, r))
        .collect::<Result<Vec<_>>>()?;
    let (mean, std) = summarize(&reports);
    Ok(Evaluation { reports, mean, std })
}

/// One repetition of [`evaluate`]; repetitions are independent.
pub fn evaluate_repetition(
    matrix: &DistanceMatrix,
    labels: &[String],
    config: &EvalConfig,
    repetition: usize,
) -> Result<EvalReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(repetition as u64);
    let classes: BTreeSet<&str> = labels.iter().map(String::as_str).collect();
    let attempts = config.max_retries.max(1);
    let mut missing = "";
    for _ in 0..attempts {
        let (train, test) = stratified_split(labels, config.test_fraction, &mut rng);
        let present: BTreeSet<&str> = train.iter().map(|&i| labels[i].as_str()).collect();
        if let Some(c) = classes.iter().find(|c| !present.contains(*c)) {
            missing = c;
            continue;
        }
        if test.is_empty() {
            continue;
        }
        let predictions = knn_predict(matrix, labels, &train, config.k, &test)?;
        let truth: Vec<String> = test.iter().map(|&i| labels[i].clone()).collect();
        let (scores, mcc_defined) = score(&truth, &predictions)?;
        return Ok(EvalReport {
            repetition,
            test_fraction: config.test_fraction,
            scores,
            mcc_defined,
            train,
            test,
            predictions,
        });
    }
    if missing.is_empty() {
        return Err(Error::TooFewSamples { required: 1, found: 0 });
    }
    Err(Error::ClassMissing {
        label: missing.to_string(),
        attempts,
    })
}

/// Mean and population standard deviation of the scores.
pub fn summarize(reports: &[EvalReport]) -> (Scores, Scores) {
    let n = reports.len().max(1) as f64;
    let mut sum = [0.0; 6];
    for r in reports {
        for (m, x) in sum.iter_mut().zip(r.scores.as_array()) {
            *m += x;
        }
    }
    let mean = sum.map(|x| x / n);
    let mut var = [0.0; 6];
    for r in reports {
        for ((v, x), m) in var.iter_mut().zip(r.scores.as_array()).zip(mean) {
            *v += (x - m) * (x - m);
        }
    }
    (Scores::from_array(mean), Scores::from_array(var.map(|v| libm::sqrt(v / n))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::Point;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn features(v: &[f64]) -> CriticalValues {
        CriticalValues::new(v.to_vec()).unwrap()
    }

    #[test]
    fn feature_examples() {
        let cloud = |pts: &[[f64; 3]]| PointCloud::new(pts.iter().map(|&c| Point::new("B", c)).collect()).unwrap();
        let two = cloud(&[[0.0, 0.0, 0.0], [2.0, 0.0, 0.0]]);
        let mut cfg = FeatureConfig::default();
        assert_eq!(extract_features(&two, &cfg).unwrap().as_slice(), &[0.0, 2.0]);
        cfg.range = (0.0, 1.0);
        assert_eq!(extract_features(&two, &cfg).unwrap().as_slice(), &[0.0]);
        let h = libm::sqrt(3.0) / 2.0;
        let tri = cloud(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, h, 0.0]]);
        cfg.range = (0.0, 7.0);
        assert_eq!(extract_features(&tri, &cfg).unwrap().as_slice(), &[0.0, 1.0]);
    }

    #[test]
    fn distances_between_samples() {
        let samples = vec![
            Sample::new("a", "x", features(&[0.0, 2.0])).unwrap(),
            Sample::new("b", "x", features(&[1.0])).unwrap(),
            Sample::new("c", "y", features(&[0.0, 2.0])).unwrap(),
        ];
        let m = pairwise_distances(&samples).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(0, 2), 0.0);
        assert!(matches!(
            pairwise_distances(&samples[..1]),
            Err(Error::TooFewSamples { required: 2, found: 1 })
        ));
        assert!(Sample::new("e", "x", CriticalValues::default()).is_err());
    }

    #[test]
    fn matrix_validation() {
        let ids = strings(&["a", "b"]);
        assert!(DistanceMatrix::new(ids.clone(), vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        assert!(DistanceMatrix::new(ids.clone(), vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(ids.clone(), vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(ids, vec![0.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn knn_ties() {
        // Two training samples per class, all at the same distance.
        let ids = strings(&["q", "a1", "a2", "b1", "b2"]);
        let mut data = vec![1.0; 25];
        for i in 0..5 {
            data[i * 5 + i] = 0.0;
        }
        let m = DistanceMatrix::new(ids, data).unwrap();
        let labels = strings(&["?", "b", "b", "a", "a"]);
        let pred = knn_predict(&m, &labels, &[1, 2, 3, 4], 4, &[0]).unwrap();
        assert_eq!(pred, strings(&["a"]));
        let pred = knn_predict(&m, &labels, &[1, 2, 3, 4], 1, &[1]).unwrap();
        assert_eq!(pred, strings(&["b"]));
        assert!(matches!(
            knn_predict(&m, &labels, &[1, 2], 3, &[0]),
            Err(Error::KOutOfRange { k: 3, available: 2 })
        ));
        assert!(knn_predict(&m, &labels, &[1, 2], 0, &[0]).is_err());
    }

    #[test]
    fn scores_single_class() {
        let t = strings(&["a", "a", "a"]);
        let (s, defined) = score(&t, &t).unwrap();
        assert!(!defined);
        assert_eq!(s.as_array(), [1.0, 1.0, 1.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn stratified_split_keeps_classes() {
        let labels = strings(&["a", "a", "a", "a", "b", "b", "b", "b", "b", "b"]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (train, test) = stratified_split(&labels, 0.5, &mut rng);
        assert_eq!(train.len() + test.len(), 10);
        assert_eq!(test.iter().filter(|&&i| labels[i] == "a").count(), 2);
        assert_eq!(test.iter().filter(|&&i| labels[i] == "b").count(), 3);
    }

    #[test]
    fn evaluate_rejects_bad_config() {
        let ids = strings(&["a", "b"]);
        let m = DistanceMatrix::new(ids, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let labels = strings(&["x", "y"]);
        let cfg = EvalConfig {
            test_fraction: 1.0,
            ..EvalConfig::default()
        };
        assert_eq!(evaluate(&m, &labels, &cfg), Err(Error::InvalidTestFraction(1.0)));
        let cfg = EvalConfig {
            k: 1,
            test_fraction: 0.9,
            max_retries: 5,
            ..EvalConfig::default()
        };
        assert!(matches!(
            evaluate(&m, &labels, &cfg),
            Err(Error::ClassMissing { attempts: 5, .. })
        ));
    }
}
