use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// A non-empty face given by its strictly increasing vertex ids.
///
/// Simplices order first by cardinality and then lexicographically, so a
/// sorted collection of faces is grouped by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Builds a simplex from vertex ids in any order.
    pub fn new(vertices: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut vertices: Vec<u32> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::EmptySimplex);
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(alloc::vec![v])
    }

    /// Caller guarantees the vertices are strictly increasing and non-empty.
    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    /// Smallest key of cardinality `len` under the simplex order. Only used
    /// as a range bound, never stored.
    pub(crate) fn range_bound(len: usize) -> Simplex {
        Simplex(alloc::vec![0; len])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// Codimension-one faces; the `i`-th one omits the `i`-th vertex.
    /// Vertices have no non-empty boundary faces.
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// The simplex with `v` added, or `None` if `v` is already a vertex.
    pub fn with_vertex(&self, v: u32) -> Option<Simplex> {
        match self.0.binary_search(&v) {
            Ok(_) => None,
            Err(pos) => {
                let mut out = Vec::with_capacity(self.0.len() + 1);
                out.extend_from_slice(&self.0[..pos]);
                out.push(v);
                out.extend_from_slice(&self.0[pos..]);
                Some(Simplex(out))
            }
        }
    }

    /// All non-empty subsets, the simplex itself included.
    pub fn subsets(&self) -> Vec<Simplex> {
        let k = self.0.len();
        assert!(k < 32, "simplex too large for subset enumeration");
        (1u32..(1u32 << k))
            .map(|mask| {
                Simplex(
                    (0..k)
                        .filter(|&i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn new_sorts_and_rejects_duplicates() {
        assert_eq!(Simplex::new([2, 0, 1]).unwrap().vertices(), &[0, 1, 2]);
        assert_eq!(Simplex::new([1, 1]), Err(Error::DuplicateVertex(1)));
        assert_eq!(Simplex::new([]), Err(Error::EmptySimplex));
    }

    #[test]
    fn ordering_groups_by_dimension() {
        let mut v = [
            Simplex::new([0, 1]).unwrap(),
            Simplex::vertex(5),
            Simplex::new([0, 1, 2]).unwrap(),
            Simplex::vertex(1),
        ];
        v.sort();
        let dims: Vec<usize> = v.iter().map(Simplex::dim).collect();
        assert_eq!(dims, vec![0, 0, 1, 2]);
        assert_eq!(v[0], Simplex::vertex(1));
    }

    #[test]
    fn boundary_and_subsets() {
        let s = Simplex::new([0, 1, 3]).unwrap();
        let b: Vec<Simplex> = s.boundary().collect();
        assert_eq!(b.len(), 3);
        assert_eq!(b[0].vertices(), &[1, 3]);
        assert_eq!(Simplex::vertex(4).boundary().count(), 0);
        assert_eq!(s.subsets().len(), 7);
        assert!(Simplex::new([0, 3]).unwrap().is_face_of(&s));
        assert!(!Simplex::new([2, 3]).unwrap().is_face_of(&s));
        assert_eq!(s.with_vertex(2).unwrap().vertices(), &[0, 1, 2, 3]);
        assert!(s.with_vertex(1).is_none());
    }
}
