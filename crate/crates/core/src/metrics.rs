//! Distances on the extended half-plane: `d∞`, bottleneck distance between
//! persistence diagrams, and Hausdorff distance between finite real sets.

use alloc::vec;
use alloc::vec::Vec;

use crate::facet::facet_barcode;
use crate::{Error, Filtration, Result};

/// Absolute tolerance used by [`stability_check`].
pub const STABILITY_TOLERANCE: f64 = 1e-9;

/// A point `(birth, death)` with `birth` possibly `-∞` and `death` possibly
/// `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedPoint {
    pub birth: f64,
    pub death: f64,
}

/// The four pieces of the extended half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Component {
    Interior,
    NegativeBirth,
    PositiveDeath,
    Corner,
}

impl ExtendedPoint {
    pub fn new(birth: f64, death: f64) -> Self {
        ExtendedPoint { birth, death }
    }

    /// `death = None` stands for `+∞`.
    pub fn from_bar(birth: f64, death: Option<f64>) -> Self {
        ExtendedPoint {
            birth,
            death: death.unwrap_or(f64::INFINITY),
        }
    }

    pub fn component(&self) -> Component {
        match (self.birth == f64::NEG_INFINITY, self.death == f64::INFINITY) {
            (false, false) => Component::Interior,
            (true, false) => Component::NegativeBirth,
            (false, true) => Component::PositiveDeath,
            (true, true) => Component::Corner,
        }
    }

    /// `d∞` to the diagonal: `(death - birth) / 2`, infinite off the interior.
    pub fn diagonal_distance(&self) -> f64 {
        match self.component() {
            Component::Interior => (self.death - self.birth) / 2.0,
            _ => f64::INFINITY,
        }
    }
}

/// `max(|p - r|, |q - s|)` within a component, `+∞` across components.
pub fn dist_inf(u: &ExtendedPoint, v: &ExtendedPoint) -> f64 {
    let (cu, cv) = (u.component(), v.component());
    if cu != cv {
        return f64::INFINITY;
    }
    match cu {
        Component::Interior => libm::fabs(u.birth - v.birth).max(libm::fabs(u.death - v.death)),
        Component::NegativeBirth => libm::fabs(u.death - v.death),
        Component::PositiveDeath => libm::fabs(u.birth - v.birth),
        Component::Corner => 0.0,
    }
}

/// A partial matching: pairs of indices into `A` and `B`, each index used
/// at most once. Unlisted points are matched to the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Smallest `δ` for which this is a `δ`-matching.
    pub fn cost(&self, a: &[ExtendedPoint], b: &[ExtendedPoint]) -> f64 {
        let mut used_a = vec![false; a.len()];
        let mut used_b = vec![false; b.len()];
        let mut cost: f64 = 0.0;
        for &(i, j) in &self.pairs {
            used_a[i] = true;
            used_b[j] = true;
            cost = cost.max(dist_inf(&a[i], &b[j]));
        }
        for (p, used) in a.iter().zip(&used_a).chain(b.iter().zip(&used_b)) {
            if !used {
                cost = cost.max(p.diagonal_distance());
            }
        }
        cost
    }
}

/// Bottleneck distance between two finite diagrams.
///
/// Points at infinity only ever match within their own component, so each
/// boundary component is solved on its own (sorted pairing on a line) and
/// the interior by binary search over candidate distances with a perfect
/// matching test.
pub fn bottleneck(a: &[ExtendedPoint], b: &[ExtendedPoint]) -> f64 {
    let split = |pts: &[ExtendedPoint], c: Component| -> Vec<ExtendedPoint> {
        pts.iter().copied().filter(|p| p.component() == c).collect()
    };
    let mut result = interior_bottleneck(&split(a, Component::Interior), &split(b, Component::Interior));
    for (c, key) in [
        (Component::NegativeBirth, (|p: &ExtendedPoint| p.death) as fn(&ExtendedPoint) -> f64),
        (Component::PositiveDeath, |p: &ExtendedPoint| p.birth),
        (Component::Corner, |_: &ExtendedPoint| 0.0),
    ] {
        let mut xa: Vec<f64> = a.iter().filter(|p| p.component() == c).map(key).collect();
        let mut xb: Vec<f64> = b.iter().filter(|p| p.component() == c).map(key).collect();
        if xa.len() != xb.len() {
            return f64::INFINITY;
        }
        xa.sort_by(f64::total_cmp);
        xb.sort_by(f64::total_cmp);
        for (x, y) in xa.iter().zip(&xb) {
            result = result.max(libm::fabs(x - y));
        }
    }
    result
}

fn interior_bottleneck(a: &[ExtendedPoint], b: &[ExtendedPoint]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates: Vec<f64> = vec![0.0];
    candidates.extend(a.iter().chain(b).map(ExtendedPoint::diagonal_distance));
    for p in a {
        candidates.extend(b.iter().map(|q| dist_inf(p, q)));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // The largest candidate (all points to the diagonal) is always feasible.
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Whether a `δ`-matching exists: a perfect matching between `A ∪ diag(B)`
/// and `B ∪ diag(A)`.
fn feasible(a: &[ExtendedPoint], b: &[ExtendedPoint], delta: f64) -> bool {
    let (na, nb) = (a.len(), b.len());
    let size = na + nb;
    // Left: a_0..a_{na-1}, then diagonal copies of b. Right: b_0..b_{nb-1},
    // then diagonal copies of a.
    let adjacency: Vec<Vec<usize>> = (0..size)
        .map(|l| {
            if l < na {
                let mut out: Vec<usize> = (0..nb).filter(|&r| dist_inf(&a[l], &b[r]) <= delta).collect();
                if a[l].diagonal_distance() <= delta {
                    out.push(nb + l);
                }
                out
            } else {
                let j = l - na;
                let mut out = Vec::new();
                if b[j].diagonal_distance() <= delta {
                    out.push(j);
                }
                out.extend(nb..nb + na);
                out
            }
        })
        .collect();
    let mut matched_right: Vec<Option<usize>> = vec![None; size];
    for l in 0..size {
        let mut seen = vec![false; size];
        if !augment(l, &adjacency, &mut seen, &mut matched_right) {
            return false;
        }
    }
    true
}

fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], matched_right: &mut [Option<usize>]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if matched_right[r].is_none_or(|other| augment(other, adj, seen, matched_right)) {
            matched_right[r] = Some(l);
            return true;
        }
    }
    false
}

/// `max(sup_a min_b |a - b|, sup_b min_a |a - b|)`.
pub fn hausdorff(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(directed_hausdorff(a, b).max(directed_hausdorff(b, a)))
}

fn directed_hausdorff(from: &[f64], to: &[f64]) -> f64 {
    from.iter()
        .map(|x| to.iter().map(|y| libm::fabs(x - y)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Outcome of comparing two facet diagrams against the sup-norm distance of
/// their filtrations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub bottleneck: f64,
    pub sup_norm: f64,
    pub passed: bool,
}

/// Facet diagram of `f` as extended points.
pub fn facet_diagram_points(f: &Filtration) -> Vec<ExtendedPoint> {
    facet_barcode(f, false)
        .bars
        .iter()
        .map(|b| ExtendedPoint::from_bar(b.birth, b.death))
        .collect()
}

/// Checks `d_b(dgm f, dgm g) <= ||f - g||∞` up to [`STABILITY_TOLERANCE`].
pub fn stability_check(f: &Filtration, g: &Filtration) -> Result<StabilityReport> {
    let sup_norm = f.sup_distance(g)?;
    let bottleneck = bottleneck(&facet_diagram_points(f), &facet_diagram_points(g));
    Ok(StabilityReport {
        bottleneck,
        sup_norm,
        passed: bottleneck <= sup_norm + STABILITY_TOLERANCE,
    })
}
