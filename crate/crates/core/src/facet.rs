//! Facet prime ideals, facet persistence barcodes and diagrams.
//!
//! The Stanley–Reisner ideal of a complex is the intersection of the primes
//! `P_σ = (x_i : i ∉ σ)` over its facets. Along a filtration a face is a
//! facet on a single interval `[f(σ), d)`, where `d` is the first value at
//! which one of its cofaces appears.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::{Error, Filtration, PrimeField, Result, Simplex, SimplicialComplex};

/// The prime monomial ideal generated by the variables outside `support`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FacetPrime {
    pub support: Simplex,
    pub generators: Vec<u32>,
}

impl FacetPrime {
    pub fn new(support: Simplex, vertex_set: &[u32]) -> Self {
        let generators = vertex_set
            .iter()
            .copied()
            .filter(|&v| !support.contains_vertex(v))
            .collect();
        FacetPrime { support, generators }
    }

    /// Whether the squarefree monomial `x^S` lies in the ideal.
    pub fn contains_monomial(&self, s: &[u32]) -> bool {
        s.iter().any(|v| !self.support.contains_vertex(*v))
    }
}

/// One prime per facet.
pub fn facet_prime_decomposition(complex: &SimplicialComplex) -> Vec<FacetPrime> {
    complex
        .facets()
        .into_iter()
        .map(|s| FacetPrime::new(s, complex.vertex_set()))
        .collect()
}

/// Lifespan `[birth, death)` of a facet prime; `death = None` is `+∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct FacetInterval {
    pub face: Simplex,
    pub birth: f64,
    pub death: Option<f64>,
}

impl FacetInterval {
    pub fn dim(&self) -> usize {
        self.face.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.death.is_some_and(|d| d <= self.birth)
    }

    /// `t ∈ [birth, death)`.
    pub fn alive_at(&self, t: f64) -> bool {
        self.birth <= t && self.death.is_none_or(|d| t < d)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FacetBarcode {
    pub bars: Vec<FacetInterval>,
}

impl FacetBarcode {
    /// Bars alive at `t`.
    pub fn alive_at(&self, t: f64) -> impl Iterator<Item = &FacetInterval> {
        self.bars.iter().filter(move |b| b.alive_at(t))
    }

    pub fn of_dim(&self, dim: usize) -> impl Iterator<Item = &FacetInterval> {
        self.bars.iter().filter(move |b| b.dim() == dim)
    }

    /// `(birth, death)` pairs sorted by `(birth, death)` with `+∞` last.
    pub fn endpoints(&self) -> Vec<(f64, Option<f64>)> {
        let mut out: Vec<(f64, Option<f64>)> = self.bars.iter().map(|b| (b.birth, b.death)).collect();
        out.sort_by(cmp_endpoint);
        out
    }
}

fn cmp_endpoint(a: &(f64, Option<f64>), b: &(f64, Option<f64>)) -> core::cmp::Ordering {
    let key = |d: Option<f64>| d.unwrap_or(f64::INFINITY);
    a.0.total_cmp(&b.0).then(key(a.1).total_cmp(&key(b.1)))
}

/// Facet lifespans of every face. Zero-length bars (a coface shares the
/// face's value) are dropped unless `keep_empty` is set.
pub fn facet_barcode(filtration: &Filtration, keep_empty: bool) -> FacetBarcode {
    let complex = filtration.complex();
    let mut bars = Vec::new();
    for (face, birth) in filtration.ordered_faces() {
        let death = complex
            .cofaces(face)
            .map(|tau| filtration.value(&tau).expect("coface has a value"))
            .reduce(f64::min);
        let bar = FacetInterval {
            face: face.clone(),
            birth,
            death,
        };
        if keep_empty || !bar.is_empty() {
            bars.push(bar);
        }
    }
    FacetBarcode { bars }
}

/// `β_t^{t'}`: bars with `birth <= t` and `death > t'`.
pub fn facet_persistent_betti(barcode: &FacetBarcode, t: f64, t_prime: f64) -> Result<u64> {
    if t > t_prime {
        return Err(Error::InvalidRange { t, t_prime });
    }
    Ok(barcode
        .bars
        .iter()
        .filter(|b| b.birth <= t && b.death.is_none_or(|d| d > t_prime))
        .count() as u64)
}

/// A point `(α_i, α_j)` of the facet persistence diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    pub birth: f64,
    pub death: Option<f64>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FacetDiagram {
    pub points: Vec<DiagramPoint>,
}

impl FacetDiagram {
    /// Points repeated by multiplicity, in [`FacetBarcode::endpoints`] order.
    pub fn endpoints(&self) -> Vec<(f64, Option<f64>)> {
        let mut out = Vec::new();
        for p in &self.points {
            for _ in 0..p.multiplicity {
                out.push((p.birth, p.death));
            }
        }
        out.sort_by(cmp_endpoint);
        out
    }
}

fn facet_set(complex: &SimplicialComplex) -> BTreeSet<Simplex> {
    complex.facets().into_iter().collect()
}

/// Multiplicities `μ_i^j` from facet persistent Betti numbers evaluated at
/// samples interleaving the critical values.
///
/// `β` is computed here from the facet sets of the sublevel complexes, not
/// from the barcode. The sentinels follow the strict reading of "remains
/// minimal": `β` at `b_{-1} = -∞` is 0 (nothing is born yet) and `β` up to
/// `b_{n+1} = +∞` is 0 (nothing outlives `+∞`), which places essential
/// primes at `(α_i, +∞)`.
pub fn multiplicities(filtration: &Filtration) -> FacetDiagram {
    let alphas = filtration.critical_values(None);
    let alphas = alphas.as_slice();
    let n = alphas.len();
    if n == 0 {
        return FacetDiagram::default();
    }
    let samples = crate::CriticalValues::new(alphas.to_vec())
        .expect("attained values are finite")
        .interleaved_samples();
    // facets[k] belongs to b_k for k = 0..=n.
    let facets: Vec<BTreeSet<Simplex>> = samples.iter().map(|&b| facet_set(&filtration.sublevel(b))).collect();
    // Indices are shifted by one so that position 0 stands for b_{-1} and
    // position n + 2 for b_{n+1}.
    let beta = |lo: usize, hi: usize| -> i64 {
        if lo == 0 || hi == n + 2 {
            return 0;
        }
        facets[lo - 1].intersection(&facets[hi - 1]).count() as i64
    };
    let mut points = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n + 1 {
            // μ_i^j with b_k at shifted position k + 1.
            let (im1, i0, jm1, j0) = (i, i + 1, j, j + 1);
            let mu = beta(im1, j0) - beta(i0, j0) + beta(i0, jm1) - beta(im1, jm1);
            debug_assert!(mu >= 0);
            if mu > 0 {
                points.push(DiagramPoint {
                    birth: alphas[i - 1],
                    death: (j <= n).then(|| alphas[j - 1]),
                    multiplicity: mu as u64,
                });
            }
        }
    }
    FacetDiagram { points }
}

/// The restriction map `v_t^{t'}` between facet persistence modules, as an
/// explicit 0/1 matrix from the primes alive at `t` to those at `t'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetModuleMap {
    pub domain: Vec<Simplex>,
    pub codomain: Vec<Simplex>,
    /// `matrix[r][c]` is the coefficient of `codomain[r]` in the image of
    /// `domain[c]`.
    pub matrix: Vec<Vec<u32>>,
}

impl FacetModuleMap {
    pub fn between(filtration: &Filtration, t: f64, t_prime: f64) -> Result<Self> {
        if t > t_prime {
            return Err(Error::InvalidRange { t, t_prime });
        }
        let domain = filtration.sublevel(t).facets();
        let codomain = filtration.sublevel(t_prime).facets();
        let matrix = codomain
            .iter()
            .map(|row| domain.iter().map(|col| u32::from(row == col)).collect())
            .collect();
        Ok(FacetModuleMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// `self ∘ first`; `first.codomain` must equal `self.domain`.
    pub fn compose(&self, first: &FacetModuleMap) -> Result<FacetModuleMap> {
        if self.domain != first.codomain {
            return Err(Error::LengthMismatch {
                expected: self.domain.len(),
                found: first.codomain.len(),
            });
        }
        let inner = self.domain.len();
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..first.domain.len())
                    .map(|c| (0..inner).map(|k| row[k] * first.matrix[k][c]).sum())
                    .collect()
            })
            .collect();
        Ok(FacetModuleMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            matrix,
        })
    }

    pub fn rank(&self) -> u64 {
        if self.domain.is_empty() || self.codomain.is_empty() {
            return 0;
        }
        PrimeField::GF2.rank(&self.matrix) as u64
    }
}

/// Rank of the explicit module map `v_t^{t'}`.
pub fn module_rank_oracle(filtration: &Filtration, t: f64, t_prime: f64) -> Result<u64> {
    FacetModuleMap::between(filtration, t, t_prime).map(|m| m.rank())
}
