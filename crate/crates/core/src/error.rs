use alloc::string::String;

use thiserror::Error;

use crate::Simplex;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,
    #[error("vertex {0} appears twice in a simplex")]
    DuplicateVertex(u32),
    #[error("vertex {0} is not in the vertex set")]
    VertexOutOfRange(u32),
    #[error("{n} vertices exceed the subset enumeration cap of {cap} ({subsets} subsets required)")]
    TooManyVertices { n: usize, cap: usize, subsets: u128 },
    #[error("filtration is not monotone: f({face}) = {face_value} > f({coface}) = {coface_value}")]
    NotMonotone {
        face: Simplex,
        coface: Simplex,
        face_value: f64,
        coface_value: f64,
    },
    #[error("face {0} has no filtration value")]
    MissingValue(Simplex),
    #[error("value {0} is not finite")]
    NonFinite(f64),
    #[error("expected t <= t', got t = {t}, t' = {t_prime}")]
    InvalidRange { t: f64, t_prime: f64 },
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("point cloud is empty after element filtering")]
    EmptyCloud,
    #[error("distance between empty sets is undefined")]
    EmptySet,
    #[error("the two filtrations are defined on different complexes")]
    MismatchedComplexes,
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("k = {k} is out of range for {available} training samples")]
    KOutOfRange { k: usize, available: usize },
    #[error("at least {required} samples are required, got {found}")]
    TooFewSamples { required: usize, found: usize },
    #[error("test fraction must lie in (0, 1), got {0}")]
    InvalidTestFraction(f64),
    #[error("class {label:?} has no training samples after {attempts} split attempts")]
    ClassMissing { label: String, attempts: usize },
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("index {index} out of range for {len} samples")]
    IndexOutOfRange { index: usize, len: usize },
}
