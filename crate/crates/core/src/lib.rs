//! Persistent Stanley–Reisner invariants of filtered simplicial complexes.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`complex`]: simplicial complexes, facets, minimal non-faces, f-vectors;
//! * [`filtration`]: monotone simplex functions, sublevel complexes,
//!   Vietoris–Rips construction and Stanley–Reisner critical values;
//! * [`homology`]: reduced homology over prime fields and persistence
//!   barcodes by column reduction;
//! * [`algebra`]: graded Betti tables via Hochster's formula, their persistent
//!   counterparts, h-/f-vectors and Hilbert series numerators;
//! * [`facet`]: facet prime ideals, facet persistence barcodes and diagrams;
//! * [`metrics`]: the extended half-plane metric, bottleneck and Hausdorff
//!   distances, and the stability check;
//! * [`classify`]: critical-value features, distance matrices and k-NN
//!   evaluation.
//!
//! File formats, plotting and the command line live in the `persr` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod classify;
pub mod complex;
mod error;
pub mod facet;
pub mod field;
pub mod filtration;
pub mod homology;
pub mod metrics;
mod simplex;

pub use crate::complex::SimplicialComplex;
pub use crate::error::{Error, Result};
pub use crate::field::PrimeField;
pub use crate::filtration::{CriticalValues, Filtration, Point, PointCloud, RipsConfig, Scale};
pub use crate::simplex::Simplex;

/// Largest vertex count accepted by operations that enumerate every vertex
/// subset (Hochster tables and their persistent variants).
pub const SUBSET_ENUMERATION_CAP: usize = 24;
