//! Graded Betti numbers of Stanley–Reisner rings via Hochster's formula,
//! their persistent counterparts, and the h-/f-vector and Hilbert series
//! bookkeeping built on top of them.
//!
//! Vertex subsets `W` are encoded as bit masks over the positions of the
//! vertex set, so at most 63 vertices can be addressed and, unless a degree
//! cap is given, at most [`SUBSET_ENUMERATION_CAP`].

use alloc::vec;
use alloc::vec::Vec;

use crate::field::BitMatrix;
use crate::homology::reduce;
use crate::{Error, Filtration, PrimeField, Result, SimplicialComplex, SUBSET_ENUMERATION_CAP};

/// Row layout used when a table is displayed as a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    /// Rows indexed by `j - i`, columns by `i` (Macaulay2 style).
    #[default]
    Macaulay2,
    /// Rows indexed by the internal degree `j`, columns by `i`.
    InternalDegree,
}

/// Graded Betti numbers `β_{i,j}` for `0 <= i, j <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    entries: Vec<Vec<u64>>,
    truncated_at: Option<usize>,
}

impl BettiTable {
    /// The all-zero table for `n` variables.
    pub fn zeros(n: usize) -> Self {
        BettiTable {
            n,
            entries: vec![vec![0; n + 1]; n + 1],
            truncated_at: None,
        }
    }

    /// Builds a table from `(i, j, β)` triples.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let mut table = Self::zeros(n);
        for (i, j, beta) in entries {
            let bad = i.max(j);
            if bad > n {
                return Err(Error::IndexOutOfRange { index: bad, len: n + 1 });
            }
            table.entries[i][j] = beta;
        }
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `β_{i,j}`, zero outside the table.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0)
    }

    /// `Some(m)` when only subsets with at most `m` vertices were enumerated,
    /// so columns `j > m` are unknown rather than zero.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    pub fn set_truncated_at(&mut self, max_j: Option<usize>) {
        self.truncated_at = max_j;
    }

    /// Non-zero entries as `(i, j, β)`, ordered by `j` then `i`.
    pub fn nonzero(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for j in 0..=self.n {
            for i in 0..=self.n {
                if self.entries[i][j] != 0 {
                    out.push((i, j, self.entries[i][j]));
                }
            }
        }
        out
    }

    /// Grid with `rows` rows and `cols` columns in the given layout. Cells
    /// that do not correspond to an entry (negative `j`) are zero.
    pub fn grid_sized(&self, layout: Layout, rows: usize, cols: usize) -> Vec<Vec<u64>> {
        (0..rows)
            .map(|r| {
                (0..cols)
                    .map(|i| match layout {
                        Layout::Macaulay2 => self.get(i, i + r),
                        Layout::InternalDegree => self.get(i, r),
                    })
                    .collect()
            })
            .collect()
    }

    /// Smallest grid containing every non-zero entry.
    pub fn grid(&self, layout: Layout) -> Vec<Vec<u64>> {
        let nz = self.nonzero();
        let cols = nz.iter().map(|e| e.0).max().unwrap_or(0) + 1;
        let rows = nz
            .iter()
            .map(|&(i, j, _)| match layout {
                Layout::Macaulay2 => j - i,
                Layout::InternalDegree => j,
            })
            .max()
            .unwrap_or(0)
            + 1;
        self.grid_sized(layout, rows, cols)
    }

    fn add(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i][j] += v;
    }
}

/// A table of persistent graded Betti numbers `β^{t,t'}_{i,j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistentBettiTable {
    pub table: BettiTable,
    pub t: f64,
    pub t_prime: f64,
    pub modulus: u32,
}

/// Optional cap on the subset size `|W| = j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HochsterOptions {
    pub max_j: Option<usize>,
}

/// A sum over vertex subsets split into independent popcount classes.
///
/// `column(m)` returns the contributions of all `|W| = m` to `β_{i,m}` for
/// `i = 0..=m`. Classes share nothing, so callers may evaluate them in any
/// order or in parallel and hand the results to [`assemble`].
pub trait SubsetColumns: Sync {
    fn n(&self) -> usize;
    fn max_j(&self) -> Option<usize>;
    fn column(&self, m: usize) -> Vec<u64>;

    /// Subset sizes to evaluate.
    fn sizes(&self) -> core::ops::RangeInclusive<usize> {
        0..=self.max_j().map_or(self.n(), |m| m.min(self.n()))
    }
}

/// Collects `(m, column(m))` pairs into a table.
pub fn assemble(
    source: &impl SubsetColumns,
    columns: impl IntoIterator<Item = (usize, Vec<u64>)>,
) -> BettiTable {
    let mut table = BettiTable::zeros(source.n());
    for (m, col) in columns {
        for (i, v) in col.into_iter().enumerate() {
            if v != 0 {
                table.add(i, m, v);
            }
        }
    }
    table.truncated_at = source.max_j().filter(|&m| m < source.n());
    table
}

/// Evaluates every popcount class sequentially.
pub fn evaluate_columns(source: &impl SubsetColumns) -> BettiTable {
    assemble(source, source.sizes().map(|m| (m, source.column(m))))
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_budget(n: usize, max_j: Option<usize>) -> Result<()> {
    let top = max_j.map_or(n, |m| m.min(n));
    let subsets: u128 = (0..=top).map(|m| binomial_u128(n, m)).sum();
    let budget = 1u128 << SUBSET_ENUMERATION_CAP;
    if n > 63 || subsets > budget {
        return Err(Error::TooManyVertices {
            n,
            cap: SUBSET_ENUMERATION_CAP,
            subsets,
        });
    }
    Ok(())
}

/// All `m`-subsets of `0..n` as masks, in increasing numeric order.
pub(crate) fn masks_of_size(n: usize, m: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if m > n {
        None
    } else if m == 0 {
        Some(0u64)
    } else {
        Some((1u64 << m) - 1)
    };
    core::iter::from_fn(move || {
        let x = next?;
        next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            let y = (((r ^ x) >> 2) / c) | r;
            (y < limit).then_some(y)
        };
        Some(x)
    })
}

fn face_mask(complex: &SimplicialComplex, vertices: &[u32]) -> u64 {
    let vs = complex.vertex_set();
    vertices.iter().fold(0u64, |acc, v| {
        acc | 1 << vs.binary_search(v).expect("vertex in vertex set")
    })
}

/// Static Hochster sum for one complex.
#[derive(Debug, Clone)]
pub struct HochsterSum {
    n: usize,
    max_j: Option<usize>,
    field: PrimeField,
    /// Face masks by dimension, each list sorted numerically.
    by_dim: Vec<Vec<u64>>,
}

impl HochsterSum {
    pub fn new(complex: &SimplicialComplex, field: PrimeField, options: HochsterOptions) -> Result<Self> {
        let n = complex.vertex_set().len();
        check_budget(n, options.max_j)?;
        let mut by_dim = vec![Vec::new(); complex.krull_dim()];
        for s in complex.faces() {
            by_dim[s.dim()].push(face_mask(complex, s.vertices()));
        }
        for list in &mut by_dim {
            list.sort_unstable();
        }
        Ok(HochsterSum {
            n,
            max_j: options.max_j,
            field,
            by_dim,
        })
    }

    /// Reduced Betti numbers of the subcomplex induced on `w`; entry `q + 1`
    /// holds `β̃_q`.
    pub fn induced_reduced_betti(&self, w: u64) -> Vec<u64> {
        let mut faces: Vec<Vec<u64>> = self
            .by_dim
            .iter()
            .map(|list| list.iter().copied().filter(|m| m & !w == 0).collect())
            .collect();
        while faces.last().is_some_and(Vec::is_empty) {
            faces.pop();
        }
        if faces.is_empty() {
            return vec![1];
        }
        // ranks[d] = rank of ∂_d, with ∂_0 the augmentation.
        let mut ranks = vec![0usize; faces.len() + 1];
        ranks[0] = 1;
        for d in 1..faces.len() {
            ranks[d] = self.boundary_rank(&faces[d], &faces[d - 1]);
        }
        let mut out = vec![0u64];
        for q in 0..faces.len() {
            out.push((faces[q].len() - ranks[q] - ranks[q + 1]) as u64);
        }
        out
    }

    fn boundary_rank(&self, upper: &[u64], lower: &[u64]) -> usize {
        if upper.is_empty() || lower.is_empty() {
            return 0;
        }
        let index = |m: u64| lower.binary_search(&m).expect("boundary face present");
        if self.field.modulus() == 2 {
            let mut matrix = BitMatrix::new(lower.len());
            for &m in upper {
                matrix.push_sparse_row(bits(m).map(|b| index(m & !(1 << b))));
            }
            matrix.rank()
        } else {
            let minus_one = self.field.from_i64(-1);
            let rows: Vec<Vec<u32>> = upper
                .iter()
                .map(|&m| {
                    let mut row = vec![0u32; lower.len()];
                    for (k, b) in bits(m).enumerate() {
                        row[index(m & !(1 << b))] = if k % 2 == 0 { 1 } else { minus_one };
                    }
                    row
                })
                .collect();
            self.field.rank(&rows)
        }
    }
}

/// Set bit positions of `m`, ascending.
fn bits(m: u64) -> impl Iterator<Item = u32> {
    let mut rest = m;
    core::iter::from_fn(move || {
        (rest != 0).then(|| {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            b
        })
    })
}

impl SubsetColumns for HochsterSum {
    fn n(&self) -> usize {
        self.n
    }

    fn max_j(&self) -> Option<usize> {
        self.max_j
    }

    fn column(&self, m: usize) -> Vec<u64> {
        let mut col = vec![0u64; m + 1];
        for w in masks_of_size(self.n, m) {
            let betti = self.induced_reduced_betti(w);
            for (k, &b) in betti.iter().enumerate() {
                // k = q + 1 and i = m - q - 1 = m - k.
                if b != 0 && k <= m {
                    col[m - k] += b;
                }
            }
        }
        col
    }
}

/// `β_{i,j} = Σ_{|W| = j} dim H̃_{j-i-1}(Δ_W)` for all `i, j`.
pub fn hochster_table(complex: &SimplicialComplex, field: PrimeField) -> Result<BettiTable> {
    hochster_table_with(complex, field, HochsterOptions::default())
}

pub fn hochster_table_with(
    complex: &SimplicialComplex,
    field: PrimeField,
    options: HochsterOptions,
) -> Result<BettiTable> {
    Ok(evaluate_columns(&HochsterSum::new(complex, field, options)?))
}

/// Persistent Hochster sum: ranks of `H̃_{j-1}(Δ_W^t) -> H̃_{j-1}(Δ_W^{t'})`.
#[derive(Debug, Clone)]
pub struct PersistentHochsterSum {
    n: usize,
    max_j: Option<usize>,
    field: PrimeField,
    t: f64,
    /// Faces with value at most `t'` as (mask, value, dim), in filtration order.
    faces: Vec<(u64, f64, i32)>,
}

impl PersistentHochsterSum {
    pub fn new(
        filtration: &Filtration,
        t: f64,
        t_prime: f64,
        field: PrimeField,
        options: HochsterOptions,
    ) -> Result<Self> {
        if t > t_prime {
            return Err(Error::InvalidRange { t, t_prime });
        }
        let complex = filtration.complex();
        let n = complex.vertex_set().len();
        check_budget(n, options.max_j)?;
        let faces = filtration
            .ordered_faces()
            .into_iter()
            .filter(|&(_, v)| v <= t_prime)
            .map(|(s, v)| (face_mask(complex, s.vertices()), v, s.dim() as i32))
            .collect();
        Ok(PersistentHochsterSum {
            n,
            max_j: options.max_j,
            field,
            t,
            faces,
        })
    }

    /// Persistent reduced ranks on `Δ_W`; entry `q + 1` holds the rank in
    /// degree `q`.
    pub fn induced_ranks(&self, w: u64) -> Vec<u64> {
        let local: Vec<&(u64, f64, i32)> = self.faces.iter().filter(|f| f.0 & !w == 0).collect();
        let mut lookup: Vec<(u64, usize)> = local.iter().enumerate().map(|(i, f)| (f.0, i + 1)).collect();
        lookup.sort_unstable();
        let index = |m: u64| lookup[lookup.binary_search_by_key(&m, |e| e.0).expect("face present")].1;

        let mut boundaries = Vec::with_capacity(local.len() + 1);
        let mut dims = Vec::with_capacity(local.len() + 1);
        let mut values = Vec::with_capacity(local.len() + 1);
        boundaries.push(Vec::new());
        dims.push(-1);
        values.push(f64::NEG_INFINITY);
        for &&(m, v, d) in &local {
            let bd = if d == 0 {
                vec![0]
            } else {
                bits(m).map(|b| index(m & !(1 << b))).collect()
            };
            boundaries.push(bd);
            dims.push(d);
            values.push(v);
        }
        let killed_by = reduce(&boundaries, self.field);
        let mut is_death = vec![false; killed_by.len()];
        for k in killed_by.iter().flatten() {
            is_death[*k] = true;
        }
        let top = local.last().map_or(0, |_| local.iter().map(|f| f.2).max().unwrap_or(0) + 1);
        let mut ranks = vec![0u64; top as usize + 1];
        for i in 0..killed_by.len() {
            if !is_death[i] && killed_by[i].is_none() && values[i] <= self.t {
                ranks[(dims[i] + 1) as usize] += 1;
            }
        }
        ranks
    }
}

impl SubsetColumns for PersistentHochsterSum {
    fn n(&self) -> usize {
        self.n
    }

    fn max_j(&self) -> Option<usize> {
        self.max_j
    }

    fn column(&self, m: usize) -> Vec<u64> {
        let mut col = vec![0u64; m + 1];
        for w in masks_of_size(self.n, m) {
            for (k, &r) in self.induced_ranks(w).iter().enumerate() {
                if r != 0 && k <= m {
                    col[m - k] += r;
                }
            }
        }
        col
    }
}

/// `β^{t,t'}_{i,j} = Σ_{|W| = j} rank(H̃_{j-i-1}(Δ_W^t) -> H̃_{j-i-1}(Δ_W^{t'}))`.
pub fn persistent_hochster_table(
    filtration: &Filtration,
    t: f64,
    t_prime: f64,
    field: PrimeField,
) -> Result<PersistentBettiTable> {
    persistent_hochster_table_with(filtration, t, t_prime, field, HochsterOptions::default())
}

pub fn persistent_hochster_table_with(
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

/// `B_j = Σ_i (-1)^i β_{i,j}` for `j = 0..=n`.
pub fn alternating_sums(table: &BettiTable) -> Vec<i64> {
    (0..=table.n())
        .map(|j| {
            (0..=table.n())
                .map(|i| {
                    let b = table.get(i, j) as i64;
                    if i % 2 == 0 {
                        b
                    } else {
                        -b
                    }
                })
                .sum()
        })
        .collect()
}

/// Coefficients `(h_0, ..., h_d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Persistent h-vectors need not be realizable; this flags negative
    /// entries.
    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&h| h < 0)
    }
}

/// Coefficients `(f_{-1}, f_0, ..., f_{d-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector(pub Vec<i64>);

impl FVector {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// `C(n, k)` for `0 <= k`, zero when `k > n`.
fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Coefficient of `s^k` in `(1 - s)^{-r}`, i.e. `C(r + k - 1, k)` with the
/// generalized convention at `r <= 0`.
fn series_coeff(r: i64, k: i64) -> i64 {
    if k < 0 {
        0
    } else if r > 0 {
        binom(r + k - 1, k)
    } else {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        sign * binom(-r, k)
    }
}

/// `h_m = Σ_{j <= m} C(n - d + m - j - 1, m - j) B_j` for `m = 0..=d`.
pub fn h_vector_from_betti(table: &BettiTable, n: usize, d: usize) -> HVector {
    let b = alternating_sums(table);
    let r = n as i64 - d as i64;
    HVector(
        (0..=d)
            .map(|m| {
                (0..=m)
                    .map(|j| series_coeff(r, (m - j) as i64) * b.get(j).copied().unwrap_or(0))
                    .sum()
            })
            .collect(),
    )
}

/// `f_{j-1} = Σ_{i <= j} C(d - i, j - i) h_i`.
pub fn f_from_h(h: &HVector, d: usize) -> Result<FVector> {
    if h.0.len() != d + 1 {
        return Err(Error::LengthMismatch {
            expected: d + 1,
            found: h.0.len(),
        });
    }
    let d = d as i64;
    Ok(FVector(
        (0..=d)
            .map(|j| (0..=j).map(|i| binom(d - i, j - i) * h.0[i as usize]).sum())
            .collect(),
    ))
}

/// `h_j = Σ_{i <= j} (-1)^{j-i} C(d - i, j - i) f_{i-1}`.
pub fn h_from_f(f: &FVector, d: usize) -> Result<HVector> {
    if f.0.len() != d + 1 {
        return Err(Error::LengthMismatch {
            expected: d + 1,
            found: f.0.len(),
        });
    }
    let d = d as i64;
    Ok(HVector(
        (0..=d)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sign * binom(d - i, j - i) * f.0[i as usize]
                    })
                    .sum()
            })
            .collect(),
    ))
}

/// f-vector straight from the Betti numbers, summing over `j` first:
/// `f_{k-1} = Σ_j B_j Σ_{i=j..k} C(d - i, k - i) C(n - d + i - j - 1, i - j)`.
pub fn f_from_betti(table: &BettiTable, n: usize, d: usize) -> FVector {
    let b = alternating_sums(table);
    let (n, d) = (n as i64, d as i64);
    FVector(
        (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|j| {
                        let inner: i64 = (j..=k)
                            .map(|i| binom(d - i, k - i) * series_coeff(n - d, i - j))
                            .sum();
                        b.get(j as usize).copied().unwrap_or(0) * inner
                    })
                    .sum()
            })
            .collect(),
    )
}

/// Persistent h- and f-vectors from `β^{t,t'}` with `n = |V|` and
/// `d = dim(Δ^{t'}) + 1`. An empty `Δ^t` gives `h = f = (1)`.
pub fn persistent_hf(
    filtration: &Filtration,
    t: f64,
    t_prime: f64,
    field: PrimeField,
) -> Result<(HVector, FVector)> {
    let table = persistent_hochster_table(filtration, t, t_prime, field)?;
    Ok(hf_from_persistent_table(filtration, &table))
}

/// The h-/f-vector pair for an already computed persistent table.
pub fn hf_from_persistent_table(filtration: &Filtration, table: &PersistentBettiTable) -> (HVector, FVector) {
    if filtration.sublevel(table.t).is_empty() {
        return (HVector(vec![1]), FVector(vec![1]));
    }
    let n = filtration.complex().vertex_set().len();
    let d = filtration.sublevel(table.t_prime).krull_dim();
    let h = h_vector_from_betti(&table.table, n, d);
    let f = f_from_h(&h, d).expect("h has length d + 1");
    (h, f)
}

pub fn persistent_h_vector(filtration: &Filtration, t: f64, t_prime: f64, field: PrimeField) -> Result<HVector> {
    persistent_hf(filtration, t, t_prime, field).map(|p| p.0)
}

pub fn persistent_f_vector(filtration: &Filtration, t: f64, t_prime: f64, field: PrimeField) -> Result<FVector> {
    persistent_hf(filtration, t, t_prime, field).map(|p| p.1)
}

/// Numerator `Q(s) = Σ_j B_j s^j` of the Hilbert series `Q(s) / (1 - s)^n`.
pub fn hilbert_numerator(table: &BettiTable) -> Vec<i64> {
    let mut q = alternating_sums(table);
    while q.len() > 1 && q.last() == Some(&0) {
        q.pop();
    }
    q
}

/// First `terms` coefficients of `numerator / (1 - s)^n`.
pub fn hilbert_series(numerator: &[i64], n: usize, terms: usize) -> Vec<i64> {
    (0..terms as i64)
        .map(|k| {
            numerator
                .iter()
                .enumerate()
                .map(|(j, &c)| c * series_coeff(n as i64, k - j as i64))
                .sum()
        })
        .collect()
}
