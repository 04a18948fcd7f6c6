//! Abstract simplicial complexes on an explicit vertex set.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result, Simplex};

/// A hereditary family of faces on a fixed, sorted vertex set.
///
/// The empty face is implicit. A complex need not contain every singleton of
/// its vertex set: sublevel complexes of a filtration live on the full vertex
/// set before all vertices have appeared. [`is_full_vertex`] reports which
/// case applies.
///
/// [`is_full_vertex`]: SimplicialComplex::is_full_vertex
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_set: Vec<u32>,
    faces: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// The empty complex on `vertex_set`.
    pub fn new(vertex_set: impl IntoIterator<Item = u32>) -> Self {
        let vertex_set: BTreeSet<u32> = vertex_set.into_iter().collect();
        SimplicialComplex {
            vertex_set: vertex_set.into_iter().collect(),
            faces: BTreeSet::new(),
        }
    }

    /// The empty complex on `0..n`.
    pub fn on_vertices(n: u32) -> Self {
        Self::new(0..n)
    }

    /// Hereditary closure of `facets` on `0..n`.
    pub fn from_facets<I, F>(n: u32, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = u32>,
    {
        let mut complex = Self::on_vertices(n);
        for facet in facets {
            complex.insert_face(&Simplex::new(facet)?)?;
        }
        Ok(complex)
    }

    /// The full simplex on `0..n`.
    pub fn simplex(n: u32) -> Self {
        Self::from_facets(n, [(0..n).collect::<Vec<u32>>()]).expect("valid simplex")
    }

    pub(crate) fn from_parts(vertex_set: Vec<u32>, faces: BTreeSet<Simplex>) -> Self {
        SimplicialComplex { vertex_set, faces }
    }

    /// Adds `sigma` together with all of its non-empty subsets.
    pub fn insert_face(&mut self, sigma: &Simplex) -> Result<()> {
        if let Some(&v) = sigma
            .vertices()
            .iter()
            .find(|v| self.vertex_set.binary_search(v).is_err())
        {
            return Err(Error::VertexOutOfRange(v));
        }
        if self.faces.contains(sigma) {
            return Ok(());
        }
        for face in sigma.subsets() {
            self.faces.insert(face);
        }
        Ok(())
    }

    pub fn vertex_set(&self) -> &[u32] {
        &self.vertex_set
    }

    pub fn contains(&self, sigma: &Simplex) -> bool {
        self.faces.contains(sigma)
    }

    /// Faces in (dimension, lexicographic) order.
    pub fn faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter()
    }

    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = &Simplex> {
        let lo = Simplex::range_bound(dim + 1);
        let hi = Simplex::range_bound(dim + 2);
        self.faces.range(lo..hi)
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Largest face dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.last().map(Simplex::dim)
    }

    /// Krull dimension of the face ring: `dim + 1`, or 0 when empty.
    pub fn krull_dim(&self) -> usize {
        self.dim().map_or(0, |d| d + 1)
    }

    /// Whether every vertex of the vertex set is a face.
    pub fn is_full_vertex(&self) -> bool {
        self.vertex_set
            .iter()
            .all(|&v| self.faces.contains(&Simplex::vertex(v)))
    }

    /// Faces with no proper coface.
    pub fn facets(&self) -> Vec<Simplex> {
        self.faces
            .iter()
            .filter(|sigma| self.is_facet(sigma))
            .cloned()
            .collect()
    }

    /// `sigma` is a face and none of its codimension-one cofaces is.
    pub fn is_facet(&self, sigma: &Simplex) -> bool {
        self.faces.contains(sigma) && self.cofaces(sigma).next().is_none()
    }

    /// Codimension-one cofaces of `sigma` present in the complex.
    pub fn cofaces<'a>(&'a self, sigma: &'a Simplex) -> impl Iterator<Item = Simplex> + 'a {
        self.vertex_set
            .iter()
            .filter_map(move |&v| sigma.with_vertex(v))
            .filter(move |tau| self.faces.contains(tau))
    }

    /// Minimal non-faces: the generators of the Stanley–Reisner ideal.
    ///
    /// A vertex missing from the complex is itself a minimal non-face.
    pub fn minimal_nonfaces(&self) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for &v in &self.vertex_set {
            let s = Simplex::vertex(v);
            if !self.faces.contains(&s) {
                out.insert(s);
            }
        }
        // Every minimal non-face S with |S| >= 2 is tau + {v} where tau = S - {max S}.
        for tau in &self.faces {
            let top = *tau.vertices().last().expect("non-empty");
            for &v in self.vertex_set.iter().filter(|&&v| v > top) {
                let s = tau.with_vertex(v).expect("v is new");
                if !self.faces.contains(&s) && s.boundary().all(|b| self.faces.contains(&b)) {
                    out.insert(s);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Faces contained in `w`; the result lives on vertex set `w`.
    pub fn induced_subcomplex(&self, w: &[u32]) -> Result<Self> {
        let w: BTreeSet<u32> = w.iter().copied().collect();
        if let Some(&v) = w
            .iter()
            .find(|v| self.vertex_set.binary_search(v).is_err())
        {
            return Err(Error::VertexOutOfRange(v));
        }
        let faces = self
            .faces
            .iter()
            .filter(|s| s.vertices().iter().all(|v| w.contains(v)))
            .cloned()
            .collect();
        Ok(SimplicialComplex {
            vertex_set: w.into_iter().collect(),
            faces,
        })
    }

    /// `(f_{-1}, f_0, ..., f_{d-1})` with `f_{-1} = 1`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![1u64; 1];
        f.resize(self.krull_dim() + 1, 0);
        for s in &self.faces {
            f[s.len()] += 1;
        }
        f
    }
}
