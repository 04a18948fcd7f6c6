//! Rayon-backed evaluation of the embarrassingly parallel parts: subset
//! classes of Hochster sums, features and distance-matrix rows.

use persr_core::algebra::{
    assemble, BettiTable, HochsterOptions, HochsterSum, PersistentBettiTable, PersistentHochsterSum, SubsetColumns,
};
use persr_core::classify::{
    distance_row, evaluate_repetition, extract_features, summarize, DistanceMatrix, EvalConfig, Evaluation,
    FeatureConfig, Sample,
};
use persr_core::{CriticalValues, Filtration, PointCloud, PrimeField, SimplicialComplex};
use rayon::prelude::*;

use crate::error::Result;

/// Evaluates popcount classes on the current rayon pool.
pub fn evaluate_columns(source: &impl SubsetColumns) -> BettiTable {
    let sizes: Vec<usize> = source.sizes().collect();
    let columns: Vec<(usize, Vec<u64>)> = sizes.into_par_iter().map(|m| (m, source.column(m))).collect();
    assemble(source, columns)
}

pub fn hochster_table(complex: &SimplicialComplex, field: PrimeField, options: HochsterOptions) -> Result<BettiTable> {
    Ok(evaluate_columns(&HochsterSum::new(complex, field, options)?))
}

pub fn persistent_hochster_table(
    filtration: &Filtration,
    t: f64,
    t_prime: f64,
    field: PrimeField,
    options: HochsterOptions,
) -> Result<PersistentBettiTable> {
    let sum = PersistentHochsterSum::new(filtration, t, t_prime, field, options)?;
    Ok(PersistentBettiTable {
        table: evaluate_columns(&sum),
        t,
        t_prime,
        modulus: field.modulus(),
    })
}

pub fn features(clouds: &[PointCloud], config: &FeatureConfig) -> Result<Vec<CriticalValues>> {
    Ok(clouds
        .par_iter()
        .map(|c| extract_features(c, config))
        .collect::<persr_core::Result<Vec<_>>>()?)
}

pub fn pairwise_distances(samples: &[Sample]) -> Result<DistanceMatrix> {
    if samples.len() < 2 {
        return Err(persr_core::Error::TooFewSamples {
            required: 2,
            found: samples.len(),
        }
        .into());
    }
    let rows = (0..samples.len())
        .into_par_iter()
        .map(|i| distance_row(samples, i))
        .collect::<persr_core::Result<Vec<_>>>()?;
    let ids = samples.iter().map(|s| s.id.clone()).collect();
    Ok(DistanceMatrix::from_rows(ids, rows)?)
}

/// Repeated evaluation with repetitions spread over the pool. Results are
/// identical to the sequential version since each repetition owns its
/// random stream.
pub fn evaluate(matrix: &DistanceMatrix, labels: &[String], config: &EvalConfig) -> Result<Evaluation> {
    if !(config.test_fraction > 0.0 && config.test_fraction < 1.0) {
        return Err(persr_core::Error::InvalidTestFraction(config.test_fraction).into());
    }
    if config.repetitions == 0 {
        return Err(persr_core::Error::TooFewSamples { required: 1, found: 0 }.into());
    }
    if labels.len() != matrix.len() {
        return Err(persr_core::Error::LengthMismatch {
            expected: matrix.len(),
            found: labels.len(),
        }
        .into());
    }
    let reports = (0..config.repetitions)
        .into_par_iter()
        .map(|r| evaluate_repetition(matrix, labels, config, r))
        .collect::<persr_core::Result<Vec<_>>>()?;
    let (mean, std) = summarize(&reports);
    Ok(Evaluation { reports, mean, std })
}
