//! Random generators and brute-force oracles shared by the integration and
//! acceptance tests. Nothing here calls the algorithms under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use persr_core::metrics::ExtendedPoint;
use persr_core::{Filtration, Simplex, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random full-vertex complex on `0..n` with `n` drawn from `n_min..=n_max`
/// and facets of at most `max_facet` vertices.
pub fn random_complex(rng: &mut ChaCha8Rng, n_min: u32, n_max: u32, max_facet: usize) -> SimplicialComplex {
    let n = rng.gen_range(n_min..=n_max);
    let verts: Vec<u32> = (0..n).collect();
    let mut facets: Vec<Vec<u32>> = verts.iter().map(|&v| vec![v]).collect();
    let count = rng.gen_range(0..=n as usize + 2);
    for _ in 0..count {
        let size = rng.gen_range(1..=max_facet.min(n as usize));
        let mut pick = verts.clone();
        pick.shuffle(rng);
        pick.truncate(size);
        facets.push(pick);
    }
    SimplicialComplex::from_facets(n, facets).unwrap()
}

/// Monotone values on a random complex, drawn from a coarse grid so that
/// ties are common.
pub fn random_filtration(rng: &mut ChaCha8Rng, n_min: u32, n_max: u32, max_facet: usize) -> Filtration {
    let complex = random_complex(rng, n_min, n_max, max_facet);
    let mut values: BTreeMap<Simplex, f64> = BTreeMap::new();
    // Faces iterate by dimension, so boundaries are valued first.
    for s in complex.faces() {
        let own = rng.gen_range(0..=10) as f64 * 0.5;
        let floor = s
            .boundary()
            .map(|b| values[&b])
            .fold(f64::NEG_INFINITY, f64::max);
        values.insert(s.clone(), own.max(floor));
    }
    Filtration::from_values(complex.vertex_set().iter().copied(), values).unwrap()
}

/// Adds uniform noise in `[-eps, eps]` and restores monotonicity by taking
/// running maxima over faces, which keeps the sup distance at most `eps`.
pub fn perturb(rng: &mut ChaCha8Rng, f: &Filtration, eps: f64) -> Filtration {
    let mut values: BTreeMap<Simplex, f64> = BTreeMap::new();
    for s in f.complex().faces() {
        let noisy = f.value(s).unwrap() + rng.gen_range(-eps..=eps);
        let floor = s
            .boundary()
            .map(|b| values[&b])
            .fold(f64::NEG_INFINITY, f64::max);
        values.insert(s.clone(), noisy.max(floor));
    }
    Filtration::from_values(f.complex().vertex_set().iter().copied(), values).unwrap()
}

/// Sample points strictly between and beyond the sorted distinct values.
pub fn probe_points(f: &Filtration) -> Vec<f64> {
    let mut vals: Vec<f64> = f.values().values().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let mut out = vec![vals[0] - 1.0];
    for w in vals.windows(2) {
        out.push((w[0] + w[1]) / 2.0);
    }
    out.push(vals[vals.len() - 1] + 1.0);
    out
}

pub fn subsets(vertices: &[u32]) -> Vec<Vec<u32>> {
    (0u32..1 << vertices.len())
        .map(|mask| {
            vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

pub fn is_face(complex: &SimplicialComplex, s: &[u32]) -> bool {
    s.is_empty() || complex.contains(&Simplex::new(s.iter().copied()).unwrap())
}

/// Connected components of the subcomplex induced on `w` (0 when empty).
pub fn components(complex: &SimplicialComplex, w: &[u32]) -> usize {
    let mut parent: BTreeMap<u32, u32> = w.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut BTreeMap<u32, u32>, v: u32) -> u32 {
        let up = p[&v];
        if up == v {
            v
        } else {
            let r = find(p, up);
            p.insert(v, r);
            r
        }
    }
    let present: Vec<u32> = w.iter().copied().filter(|&v| is_face(complex, &[v])).collect();
    for (i, &a) in present.iter().enumerate() {
        for &b in &present[i + 1..] {
            if is_face(complex, &[a.min(b), a.max(b)]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent.insert(ra, rb);
            }
        }
    }
    let roots: BTreeSet<u32> = present.iter().map(|&v| find(&mut parent, v)).collect();
    roots.len()
}

fn faces_of_dim(complex: &SimplicialComplex, q: usize) -> Vec<Vec<u32>> {
    complex
        .faces()
        .filter(|s| s.dim() == q)
        .map(|s| s.vertices().to_vec())
        .collect()
}

fn gf2_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{x : A x = 0}` over GF(2), `A` given by its columns.
fn gf2_nullspace(columns: &[Vec<u8>], rows: usize) -> Vec<Vec<u8>> {
    let n = columns.len();
    // Row-reduce A (rows x n).
    let mut a: Vec<Vec<u8>> = (0..rows).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..rows).find(|&r| a[r][c] == 1) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u8; n];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = a[r][f];
            }
            x
        })
        .collect()
}

/// Boundary of a face over GF(2) in the coordinates of `target` faces; a
/// vertex maps onto the empty face (coordinate 0 of a one-element space).
fn boundary_vector(face: &[u32], target: &[Vec<u32>]) -> Vec<u8> {
    if face.len() == 1 {
        return vec![1];
    }
    let mut out = vec![0u8; target.len()];
    for i in 0..face.len() {
        let mut b = face.to_vec();
        b.remove(i);
        let pos = target.iter().position(|t| *t == b).expect("boundary face present");
        out[pos] ^= 1;
    }
    out
}

/// Rank of `H̃_q(Δ^t) -> H̃_q(Δ^{t'})` over GF(2), from explicit cycle and
/// boundary spaces: `dim(Z_q(t) + B_q(t')) - dim B_q(t')`.
pub fn induced_map_rank_gf2(f: &Filtration, q: i32, t: f64, t_prime: f64) -> u64 {
    let small = f.sublevel(t);
    let big = f.sublevel(t_prime);
    if q == -1 {
        // C_{-1} is one-dimensional and every chain there is a cycle.
        let z = vec![vec![1u8]];
        let b: Vec<Vec<u8>> = if faces_of_dim(&big, 0).is_empty() {
            vec![]
        } else {
            vec![vec![1u8]]
        };
        let both: Vec<Vec<u8>> = b.iter().chain(&z).cloned().collect();
        return (gf2_rank(both) - gf2_rank(b)) as u64;
    }
    let q = q as usize;
    let big_q = faces_of_dim(&big, q);
    if big_q.is_empty() {
        return 0;
    }
    let small_q = faces_of_dim(&small, q);
    let lower: Vec<Vec<u32>> = if q == 0 { vec![vec![]] } else { faces_of_dim(&small, q - 1) };
    let boundary_cols: Vec<Vec<u8>> = small_q.iter().map(|s| boundary_vector(s, &lower)).collect();
    let cycles = gf2_nullspace(&boundary_cols, lower.len());
    let embed = |x: &Vec<u8>| -> Vec<u8> {
        let mut out = vec![0u8; big_q.len()];
        for (i, s) in small_q.iter().enumerate() {
            if x[i] == 1 {
                out[big_q.iter().position(|b| b == s).unwrap()] = 1;
            }
        }
        out
    };
    let z: Vec<Vec<u8>> = cycles.iter().map(embed).collect();
    let b: Vec<Vec<u8>> = faces_of_dim(&big, q + 1)
        .iter()
        .map(|s| boundary_vector(s, &big_q))
        .collect();
    let both: Vec<Vec<u8>> = b.iter().chain(&z).cloned().collect();
    (gf2_rank(both) - gf2_rank(b)) as u64
}

/// Reduced Betti numbers over GF(2) from the same explicit spaces.
pub fn reduced_betti_gf2(f: &Filtration, q: i32, t: f64) -> u64 {
    induced_map_rank_gf2(f, q, t, t)
}

fn oracle_dist(u: &ExtendedPoint, v: &ExtendedPoint) -> f64 {
    let inf_b = |p: &ExtendedPoint| p.birth == f64::NEG_INFINITY;
    let inf_d = |p: &ExtendedPoint| p.death == f64::INFINITY;
    if inf_b(u) != inf_b(v) || inf_d(u) != inf_d(v) {
        return f64::INFINITY;
    }
    let db = if inf_b(u) { 0.0 } else { (u.birth - v.birth).abs() };
    let dd = if inf_d(u) { 0.0 } else { (u.death - v.death).abs() };
    db.max(dd)
}

fn oracle_diag(p: &ExtendedPoint) -> f64 {
    if p.birth.is_finite() && p.death.is_finite() {
        (p.death - p.birth) / 2.0
    } else {
        f64::INFINITY
    }
}

/// Minimum over every partial matching of the largest matched or diagonal
/// distance.
pub fn exhaustive_bottleneck(a: &[ExtendedPoint], b: &[ExtendedPoint]) -> f64 {
    fn go(i: usize, a: &[ExtendedPoint], b: &[ExtendedPoint], used: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if acc >= *best {
            return;
        }
        if i == a.len() {
            let rest = b
                .iter()
                .zip(used.iter())
                .filter(|(_, u)| !**u)
                .map(|(p, _)| oracle_diag(p))
                .fold(acc, f64::max);
            if rest < *best {
                *best = rest;
            }
            return;
        }
        go(i + 1, a, b, used, acc.max(oracle_diag(&a[i])), best);
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(i + 1, a, b, used, acc.max(oracle_dist(&a[i], &b[j])), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; b.len()];
    go(0, a, b, &mut used, 0.0, &mut best);
    // With infinitely distant leftovers every matching costs +∞.
    if best == f64::INFINITY {
        f64::INFINITY
    } else {
        best
    }
}

/// Random diagram with up to `max_points` points on a coarse grid, a few of
/// them essential.
pub fn random_diagram(rng: &mut ChaCha8Rng, max_points: usize) -> Vec<ExtendedPoint> {
    let n = rng.gen_range(0..=max_points);
    (0..n)
        .map(|_| {
            let b = rng.gen_range(0..8) as f64 * 0.5;
            if rng.gen_bool(0.2) {
                ExtendedPoint::new(b, f64::INFINITY)
            } else {
                ExtendedPoint::new(b, b + rng.gen_range(1..8) as f64 * 0.5)
            }
        })
        .collect()
}

/// Number of degree-`k` monomials whose support is a face.
pub fn count_monomials(complex: &SimplicialComplex, k: usize) -> i64 {
    fn go(complex: &SimplicialComplex, verts: &[u32], start: usize, left: usize, support: &mut Vec<u32>) -> i64 {
        if left == 0 {
            let mut s = support.clone();
            s.dedup();
            return i64::from(is_face(complex, &s));
        }
        let mut total = 0;
        for i in start..verts.len() {
            support.push(verts[i]);
            total += go(complex, verts, i, left - 1, support);
            support.pop();
        }
        total
    }
    go(complex, complex.vertex_set(), 0, k, &mut Vec::new())
}

/// Facets of `Δ^t` by comparing against every face, not just codimension-one
/// cofaces.
pub fn brute_facets(f: &Filtration, t: f64) -> BTreeSet<Vec<u32>> {
    let faces: Vec<Vec<u32>> = f
        .values()
        .iter()
        .filter(|(_, &v)| v <= t)
        .map(|(s, _)| s.vertices().to_vec())
        .collect();
    faces
        .iter()
        .filter(|s| {
            !faces
                .iter()
                .any(|o| o.len() > s.len() && s.iter().all(|v| o.contains(v)))
        })
        .cloned()
        .collect()
}
