//! Monotone simplex functions and the sublevel complexes they induce.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result, Simplex, SimplicialComplex};

/// A monotone assignment of real values to the faces of a complex.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    complex: SimplicialComplex,
    values: BTreeMap<Simplex, f64>,
}

impl Filtration {
    /// Validates `values` on the vertex set spanned by its keys.
    pub fn from_explicit(values: BTreeMap<Simplex, f64>) -> Result<Self> {
        let vertex_set: BTreeSet<u32> = values
            .keys()
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        Self::from_values(vertex_set, values)
    }

    /// Validates `values` on an explicit vertex set. The key set must already
    /// be closed under taking faces and the values must be monotone.
    pub fn from_values(
        vertex_set: impl IntoIterator<Item = u32>,
        values: BTreeMap<Simplex, f64>,
    ) -> Result<Self> {
        let vertex_set: Vec<u32> = vertex_set
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for (sigma, &value) in &values {
            if !value.is_finite() {
                return Err(Error::NonFinite(value));
            }
            if let Some(&v) = sigma
                .vertices()
                .iter()
                .find(|v| vertex_set.binary_search(v).is_err())
            {
                return Err(Error::VertexOutOfRange(v));
            }
            for tau in sigma.boundary() {
                match values.get(&tau) {
                    None => return Err(Error::MissingValue(tau)),
                    Some(&tv) if tv > value => {
                        return Err(Error::NotMonotone {
                            face: tau,
                            coface: sigma.clone(),
                            face_value: tv,
                            coface_value: value,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        let faces = values.keys().cloned().collect();
        Ok(Filtration {
            complex: SimplicialComplex::from_parts(vertex_set, faces),
            values,
        })
    }

    /// The final complex.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn values(&self) -> &BTreeMap<Simplex, f64> {
        &self.values
    }

    pub fn value(&self, sigma: &Simplex) -> Option<f64> {
        self.values.get(sigma).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Faces with value at most `t`, on the full vertex set.
    pub fn sublevel(&self, t: f64) -> SimplicialComplex {
        let faces = self
            .values
            .iter()
            .filter(|(_, &v)| v <= t)
            .map(|(s, _)| s.clone())
            .collect();
        SimplicialComplex::from_parts(self.complex.vertex_set().to_vec(), faces)
    }

    /// Faces sorted by (value, dimension, lexicographic vertices). Every
    /// sublevel complex is a prefix of this order.
    pub fn ordered_faces(&self) -> Vec<(&Simplex, f64)> {
        let mut faces: Vec<(&Simplex, f64)> = self.values.iter().map(|(s, &v)| (s, v)).collect();
        faces.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(b.0)));
        faces
    }

    /// The filtration `f + c`.
    pub fn shifted(&self, c: f64) -> Filtration {
        Filtration {
            complex: self.complex.clone(),
            values: self.values.iter().map(|(s, &v)| (s.clone(), v + c)).collect(),
        }
    }

    /// `max |f(σ) - g(σ)|` over the common complex.
    pub fn sup_distance(&self, other: &Filtration) -> Result<f64> {
        if self.complex != other.complex {
            return Err(Error::MismatchedComplexes);
        }
        Ok(self
            .values
            .iter()
            .map(|(s, &v)| libm::fabs(v - other.values[s]))
            .fold(0.0, f64::max))
    }

    /// Distinct attained values, in increasing order.
    ///
    /// Adding a face always removes its monomial from the Stanley–Reisner
    /// ideal, so every attained value is a critical value. With
    /// `precision = Some(p)` values are rounded to `p` decimals before
    /// deduplication.
    pub fn critical_values(&self, precision: Option<u32>) -> CriticalValues {
        let mut vals: Vec<f64> = self
            .values
            .values()
            .map(|&v| precision.map_or(v, |p| round_to(v, p)))
            .collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        CriticalValues(vals)
    }
}

/// Rounds `x` to `digits` decimal places.
pub fn round_to(x: f64, digits: u32) -> f64 {
    let scale = (0..digits).fold(1.0f64, |acc, _| acc * 10.0);
    let r = libm::round(x * scale) / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Strictly increasing Stanley–Reisner critical values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CriticalValues(Vec<f64>);

impl CriticalValues {
    /// Sorts and deduplicates; rejects non-finite values.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        values.sort_by(f64::total_cmp);
        values.dedup();
        Ok(CriticalValues(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Values inside `[lo, hi]`.
    pub fn clipped(&self, lo: f64, hi: f64) -> CriticalValues {
        CriticalValues(self.0.iter().copied().filter(|&v| lo <= v && v <= hi).collect())
    }

    /// Sample points interleaving the critical values: one below the first,
    /// the midpoints, one above the last.
    pub fn interleaved_samples(&self) -> Vec<f64> {
        let Some((&first, &last)) = self.0.first().zip(self.0.last()) else {
            return Vec::new();
        };
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(first - 1.0);
        out.extend(self.0.windows(2).map(|w| w[0] + (w[1] - w[0]) / 2.0));
        out.push(last + 1.0);
        out
    }
}

/// A labelled point in 3-space (Ångström).
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub label: String,
    pub coords: [f64; 3],
}

impl Point {
    pub fn new(label: impl Into<String>, coords: [f64; 3]) -> Self {
        Point {
            label: label.into(),
            coords,
        }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        let d2: f64 = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        libm::sqrt(d2)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud {
    pub points: Vec<Point>,
}

impl PointCloud {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        for p in &points {
            if let Some(&c) = p.coords.iter().find(|c| !c.is_finite()) {
                return Err(Error::NonFinite(c));
            }
        }
        Ok(PointCloud { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points whose label matches one of `labels`, ignoring ASCII case.
    pub fn filter_labels<S: AsRef<str>>(&self, labels: &[S]) -> PointCloud {
        PointCloud {
            points: self
                .points
                .iter()
                .filter(|p| labels.iter().any(|l| l.as_ref().eq_ignore_ascii_case(&p.label)))
                .cloned()
                .collect(),
        }
    }
}

/// Whether Vietoris–Rips values are stored as diameters or half-diameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Diameter,
    Radius,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RipsConfig {
    pub max_dim: usize,
    /// Simplices with diameter above `2 * max_radius` are omitted.
    pub max_radius: f64,
    pub elements: Option<Vec<String>>,
    pub scale: Scale,
    /// Pairwise distances are rounded to this many decimals so that equal
    /// distances computed along different paths tie exactly.
    pub precision: Option<u32>,
}

impl Default for RipsConfig {
    fn default() -> Self {
        RipsConfig {
            max_dim: 2,
            max_radius: f64::INFINITY,
            elements: None,
            scale: Scale::Diameter,
            precision: Some(9),
        }
    }
}

/// Vietoris–Rips filtration: every subset of at most `max_dim + 1` points
/// with diameter `<= 2 * max_radius`, valued by its diameter (or half of it
/// under [`Scale::Radius`]). Vertices sit at 0.
pub fn vietoris_rips(cloud: &PointCloud, config: &RipsConfig) -> Result<Filtration> {
    if config.max_radius.is_nan() || config.max_radius <= 0.0 {
        return Err(Error::InvalidRadius(config.max_radius));
    }
    let filtered;
    let cloud = match &config.elements {
        Some(labels) => {
            filtered = cloud.filter_labels(labels);
            &filtered
        }
        None => cloud,
    };
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let n = cloud.len();
    let threshold = 2.0 * config.max_radius;
    let dist: Vec<Vec<f64>> = cloud
        .points
        .iter()
        .map(|p| {
            cloud
                .points
                .iter()
                .map(|q| {
                    let d = p.distance(q);
                    config.precision.map_or(d, |digits| round_to(d, digits))
                })
                .collect()
        })
        .collect();
    let factor = match config.scale {
        Scale::Diameter => 1.0,
        Scale::Radius => 0.5,
    };

    let mut values = BTreeMap::new();
    // Depth-first clique expansion over vertices in increasing order.
    let mut stack: Vec<(Vec<u32>, f64)> = (0..n as u32).rev().map(|v| (alloc::vec![v], 0.0)).collect();
    while let Some((clique, diam)) = stack.pop() {
        if clique.len() <= config.max_dim {
            let last = *clique.last().expect("non-empty") as usize;
            for w in (last + 1..n).rev() {
                let d = clique
                    .iter()
                    .map(|&u| dist[u as usize][w])
                    .fold(diam, f64::max);
                if d <= threshold {
                    let mut next = clique.clone();
                    next.push(w as u32);
                    stack.push((next, d));
                }
            }
        }
        values.insert(Simplex::from_sorted(clique), diam * factor);
    }
    Filtration::from_values(0..n as u32, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::tests_support::s;
    use alloc::vec;

    fn two_points() -> PointCloud {
        PointCloud::new(vec![
            Point::new("B", [0.0, 0.0, 0.0]),
            Point::new("B", [2.0, 0.0, 0.0]),
        ])
        .unwrap()
    }

    fn rips(cloud: &PointCloud, max_dim: usize) -> Filtration {
        vietoris_rips(
            cloud,
            &RipsConfig {
                max_dim,
                ..RipsConfig::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn two_point_rips() {
        let f = rips(&two_points(), 1);
        assert_eq!(f.value(&s(&[0])), Some(0.0));
        assert_eq!(f.value(&s(&[1])), Some(0.0));
        assert_eq!(f.value(&s(&[0, 1])), Some(2.0));
        let sub = f.sublevel(1.0);
        assert_eq!(sub.facets(), vec![s(&[0]), s(&[1])]);
        assert!(f.sublevel(-0.5).is_empty());
        assert_eq!(&f.sublevel(2.0), f.complex());
        assert_eq!(f.critical_values(Some(9)).as_slice(), &[0.0, 2.0]);
    }

    #[test]
    fn radius_scale_halves_values() {
        let cfg = RipsConfig {
            max_dim: 1,
            scale: Scale::Radius,
            ..RipsConfig::default()
        };
        let f = vietoris_rips(&two_points(), &cfg).unwrap();
        assert_eq!(f.value(&s(&[0, 1])), Some(1.0));
    }

    #[test]
    fn max_radius_truncates() {
        let cfg = RipsConfig {
            max_dim: 1,
            max_radius: 0.9,
            ..RipsConfig::default()
        };
        let f = vietoris_rips(&two_points(), &cfg).unwrap();
        assert_eq!(f.len(), 2);
        let cfg = RipsConfig {
            max_radius: 1.0,
            ..cfg
        };
        assert_eq!(vietoris_rips(&two_points(), &cfg).unwrap().len(), 3);
    }

    #[test]
    fn equilateral_triangle() {
        let h = libm::sqrt(3.0) / 2.0;
        let cloud = PointCloud::new(vec![
            Point::new("B", [0.0, 0.0, 0.0]),
            Point::new("B", [1.0, 0.0, 0.0]),
            Point::new("B", [0.5, h, 0.0]),
        ])
        .unwrap();
        let f = rips(&cloud, 2);
        assert_eq!(f.len(), 7);
        for (sigma, v) in f.values() {
            if sigma.dim() == 0 {
                assert_eq!(*v, 0.0);
            } else {
                assert!((v - 1.0).abs() < 1e-12, "{sigma} at {v}");
            }
        }
        assert_eq!(f.critical_values(Some(9)).as_slice(), &[0.0, 1.0]);
    }

    #[test]
    fn unit_square() {
        let cloud = PointCloud::new(vec![
            Point::new("X", [0.0, 0.0, 0.0]),
            Point::new("X", [1.0, 0.0, 0.0]),
            Point::new("X", [1.0, 1.0, 0.0]),
            Point::new("X", [0.0, 1.0, 0.0]),
        ])
        .unwrap();
        let f = rips(&cloud, 2);
        let r2 = round_to(libm::sqrt(2.0), 9);
        assert_eq!(f.value(&s(&[0, 1])), Some(1.0));
        assert_eq!(f.value(&s(&[0, 2])), Some(r2));
        assert_eq!(f.value(&s(&[1, 3])), Some(r2));
        for t in f.complex().faces_of_dim(2) {
            assert_eq!(f.value(t), Some(r2));
        }
        assert_eq!(f.complex().faces_of_dim(2).count(), 4);
        assert_eq!(f.complex().faces_of_dim(3).count(), 0);
    }

    #[test]
    fn rips_errors() {
        let cfg = RipsConfig {
            max_radius: 0.0,
            ..RipsConfig::default()
        };
        assert_eq!(vietoris_rips(&two_points(), &cfg), Err(Error::InvalidRadius(0.0)));
        let cfg = RipsConfig {
            elements: Some(vec!["C".into()]),
            ..RipsConfig::default()
        };
        assert_eq!(vietoris_rips(&two_points(), &cfg), Err(Error::EmptyCloud));
    }

    #[test]
    fn explicit_filtrations() {
        let single: BTreeMap<_, _> = [(s(&[0]), 0.0)].into_iter().collect();
        assert!(Filtration::from_explicit(single).is_ok());

        let bad: BTreeMap<_, _> = [(s(&[0]), 0.0), (s(&[1]), 0.0), (s(&[0, 1]), -1.0)]
            .into_iter()
            .collect();
        match Filtration::from_explicit(bad) {
            Err(Error::NotMonotone { coface, .. }) => assert_eq!(coface, s(&[0, 1])),
            other => panic!("unexpected {other:?}"),
        }

        let missing: BTreeMap<_, _> = [(s(&[0]), 0.0), (s(&[0, 1]), 1.0)].into_iter().collect();
        assert_eq!(
            Filtration::from_explicit(missing),
            Err(Error::MissingValue(s(&[1])))
        );
    }

    #[test]
    fn bipyramid_by_dimension() {
        let complex = SimplicialComplex::from_facets(
            5,
            [
                vec![0, 1, 3],
                vec![0, 1, 4],
                vec![0, 2, 3],
                vec![0, 2, 4],
                vec![1, 2, 3],
                vec![1, 2, 4],
            ],
        )
        .unwrap();
        let values = complex.faces().map(|s| (s.clone(), s.dim() as f64)).collect();
        let f = Filtration::from_explicit(values).unwrap();
        let at0 = f.sublevel(0.0);
        assert_eq!(at0.num_faces(), 5);
        assert_eq!(at0.facets().len(), 5);
        assert_eq!(f.critical_values(None).as_slice(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn constant_filtration_has_one_critical_value() {
        let values = SimplicialComplex::simplex(3)
            .faces()
            .map(|s| (s.clone(), 0.0))
            .collect();
        let f = Filtration::from_explicit(values).unwrap();
        assert_eq!(f.critical_values(Some(9)).as_slice(), &[0.0]);
    }

    #[test]
    fn precision_merges_last_ulp_noise() {
        let values: BTreeMap<_, _> = [(s(&[0]), 0.0), (s(&[1]), 0.1 + 0.2), (s(&[2]), 0.3)]
            .into_iter()
            .collect();
        let f = Filtration::from_explicit(values).unwrap();
        assert_eq!(f.critical_values(None).len(), 3);
        assert_eq!(f.critical_values(Some(9)).as_slice(), &[0.0, 0.3]);
    }

    #[test]
    fn interleaved_samples() {
        let c = CriticalValues::new(vec![2.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!(c.as_slice(), &[0.0, 1.0, 2.0]);
        assert_eq!(c.interleaved_samples(), vec![-1.0, 0.5, 1.5, 3.0]);
        assert_eq!(c.clipped(0.5, 2.0).as_slice(), &[1.0, 2.0]);
    }
}
