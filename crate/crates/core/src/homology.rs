//! Reduced simplicial homology over prime fields and persistence barcodes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Filtration, PrimeField, Result, Simplex, SimplicialComplex};

/// Matrix of `∂_dim : C_dim -> C_{dim-1}`, rows in face order of dimension
/// `dim - 1`. For `dim = 0` it is the augmentation onto the empty face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    dim: usize,
    rows: Vec<Vec<u32>>,
    cols: usize,
}

impl BoundaryMatrix {
    pub fn new(complex: &SimplicialComplex, dim: usize, field: PrimeField) -> Self {
        let cols: Vec<&Simplex> = complex.faces_of_dim(dim).collect();
        if dim == 0 {
            let rows = vec![vec![1 % field.modulus(); cols.len()]];
            return BoundaryMatrix {
                dim,
                rows,
                cols: cols.len(),
            };
        }
        let row_index: BTreeMap<&Simplex, usize> = complex
            .faces_of_dim(dim - 1)
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut rows = vec![vec![0u32; cols.len()]; row_index.len()];
        for (j, sigma) in cols.iter().enumerate() {
            for (k, tau) in sigma.boundary().enumerate() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                rows[row_index[&tau]][j] = field.from_i64(sign);
            }
        }
        BoundaryMatrix {
            dim,
            rows,
            cols: cols.len(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols)
    }

    pub fn entry(&self, r: usize, c: usize) -> u32 {
        self.rows[r][c]
    }

    pub fn rank(&self, field: PrimeField) -> usize {
        if self.cols == 0 {
            0
        } else {
            field.rank(&self.rows)
        }
    }

    /// Whether `lower ∘ self` vanishes, with `lower` one dimension down.
    pub fn composes_to_zero(&self, lower: &BoundaryMatrix, field: PrimeField) -> bool {
        assert_eq!(lower.dim + 1, self.dim);
        let (inner, _) = self.shape();
        lower.rows.iter().all(|lrow| {
            (0..self.cols).all(|c| {
                (0..inner).fold(0, |acc, k| field.add(acc, field.mul(lrow[k], self.rows[k][c]))) == 0
            })
        })
    }
}

/// Reduced Betti numbers `β̃_{-1}, β̃_0, ..., β̃_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBetti(Vec<u64>);

impl ReducedBetti {
    /// `β̃_q`, zero outside the computed range.
    pub fn degree(&self, q: i32) -> u64 {
        usize::try_from(q + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }

    /// Entry `i` holds `β̃_{i-1}`.
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

pub fn reduced_betti(complex: &SimplicialComplex, field: PrimeField) -> ReducedBetti {
    let Some(top) = complex.dim() else {
        return ReducedBetti(vec![1]);
    };
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|d| {
            if d > top {
                0
            } else {
                BoundaryMatrix::new(complex, d, field).rank(field)
            }
        })
        .collect();
    let mut out = vec![1 - ranks[0] as u64];
    for q in 0..=top {
        let faces = complex.faces_of_dim(q).count();
        out.push((faces - ranks[q] - ranks[q + 1]) as u64);
    }
    ReducedBetti(out)
}

/// One persistence interval `[birth, death)`; `death = None` is `+∞`.
/// Dimension `-1` only occurs in reduced barcodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub dim: i32,
    pub birth: f64,
    pub death: Option<f64>,
}

impl Interval {
    /// Alive on all of `[t, t_prime]`.
    pub fn spans(&self, t: f64, t_prime: f64) -> bool {
        self.birth <= t && self.death.is_none_or(|d| d > t_prime)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Barcode {
    pub intervals: Vec<Interval>,
}

impl Barcode {
    /// Number of dimension-`q` intervals alive on all of `[t, t_prime]`.
    pub fn rank(&self, q: i32, t: f64, t_prime: f64) -> u64 {
        self.intervals
            .iter()
            .filter(|iv| iv.dim == q && iv.spans(t, t_prime))
            .count() as u64
    }

    pub fn of_dim(&self, q: i32) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(move |iv| iv.dim == q)
    }
}

/// Standard left-to-right column reduction over `field`.
///
/// `boundaries[j]` lists the row indices of the codimension-one faces of
/// column `j` in vertex-removal order, so entry `k` carries sign `(-1)^k`.
/// Rows always precede their columns. Returns, for each column, the column
/// that kills it (if any).
pub(crate) fn reduce(boundaries: &[Vec<usize>], field: PrimeField) -> Vec<Option<usize>> {
    let n = boundaries.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut reduced: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for (j, bd) in boundaries.iter().enumerate() {
        let mut col: Vec<(usize, u32)> = bd
            .iter()
            .enumerate()
            .map(|(k, &r)| (r, if k % 2 == 0 { 1 % field.modulus() } else { field.from_i64(-1) }))
            .collect();
        col.sort_unstable_by_key(|e| e.0);
        while let Some(&(low, c)) = col.last() {
            match owner[low] {
                Some(k) => {
                    let other = &reduced[k];
                    let lead = other.last().expect("pivot column is non-zero").1;
                    let factor = field.mul(c, field.inv(lead));
                    col = axpy(&col, other, field.neg(factor), field);
                }
                None => {
                    owner[low] = Some(j);
                    break;
                }
            }
        }
        reduced[j] = col;
    }
    owner
}

/// `a + factor * b` on sparse sorted columns.
fn axpy(a: &[(usize, u32)], b: &[(usize, u32)], factor: u32, field: PrimeField) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.mul(factor, b[j].1)));
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(factor, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Pairs columns into intervals. `dims[j]` and `values[j]` describe column
/// `j`; positive-length intervals only.
pub(crate) fn intervals_from_pairs(
    killed_by: &[Option<usize>],
    dims: &[i32],
    values: &[f64],
) -> Vec<Interval> {
    let n = killed_by.len();
    let mut is_death = vec![false; n];
    for k in killed_by.iter().flatten() {
        is_death[*k] = true;
    }
    let mut out = Vec::new();
    for i in 0..n {
        if is_death[i] {
            continue;
        }
        let death = killed_by[i].map(|k| values[k]);
        if death.is_some_and(|d| d <= values[i]) {
            continue;
        }
        out.push(Interval {
            dim: dims[i],
            birth: values[i],
            death,
        });
    }
    out
}

fn barcode_of(filtration: &Filtration, field: PrimeField, max_dim: usize, reduced: bool) -> Barcode {
    let faces: Vec<(&Simplex, f64)> = filtration
        .ordered_faces()
        .into_iter()
        .filter(|(s, _)| s.dim() <= max_dim + 1)
        .collect();
    let offset = usize::from(reduced);
    let index: BTreeMap<&Simplex, usize> = faces
        .iter()
        .enumerate()
        .map(|(i, (s, _))| (*s, i + offset))
        .collect();
    let mut boundaries = Vec::with_capacity(faces.len() + offset);
    let mut dims = Vec::with_capacity(faces.len() + offset);
    let mut values = Vec::with_capacity(faces.len() + offset);
    if reduced {
        boundaries.push(Vec::new());
        dims.push(-1);
        values.push(f64::NEG_INFINITY);
    }
    for (s, v) in &faces {
        let bd: Vec<usize> = if s.dim() == 0 {
            if reduced {
                vec![0]
            } else {
                Vec::new()
            }
        } else {
            s.boundary().map(|b| index[&b]).collect()
        };
        boundaries.push(bd);
        dims.push(s.dim() as i32);
        values.push(*v);
    }
    let killed_by = reduce(&boundaries, field);
    let mut intervals = intervals_from_pairs(&killed_by, &dims, &values);
    intervals.retain(|iv| iv.dim <= max_dim as i32);
    Barcode { intervals }
}

/// Ordinary (unreduced) persistence barcode in dimensions `0..=max_dim`.
/// Zero-length intervals are dropped.
pub fn persistence_barcode(filtration: &Filtration, field: PrimeField, max_dim: usize) -> Barcode {
    barcode_of(filtration, field, max_dim, false)
}

/// Barcode of reduced homology: the empty face enters at `-∞`, which turns
/// the oldest component into a dimension `-1` interval ending when the first
/// vertex appears.
pub fn reduced_barcode(filtration: &Filtration, field: PrimeField, max_dim: usize) -> Barcode {
    barcode_of(filtration, field, max_dim, true)
}

/// Rank of `H̃_q(Δ^t) -> H̃_q(Δ^{t'})`, for `q >= -1`.
pub fn persistent_rank(
    filtration: &Filtration,
    q: i32,
    t: f64,
    t_prime: f64,
    field: PrimeField,
) -> Result<u64> {
    if t > t_prime {
        return Err(Error::InvalidRange { t, t_prime });
    }
    let barcode = reduced_barcode(filtration, field, q.max(0) as usize);
    Ok(barcode.rank(q, t, t_prime))
}
