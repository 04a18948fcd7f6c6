//! File formats, plotting, parallel drivers and the `persr` command line on
//! top of [`persr_core`].
//!
//! * [`xyz`]: XYZ coordinate files;
//! * [`json`]: JSON formats for complexes, filtrations, barcodes, Betti
//!   tables, diagrams, h-/f-vectors and classification results;
//! * [`tables`]: CSV Betti grids, distance matrices and dataset manifests;
//! * [`svg`]: barcode, diagram and step-curve figures;
//! * [`config`]: `key = value` configuration files;
//! * [`parallel`]: rayon versions of the expensive loops;
//! * [`cli`]: the command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod json;
pub mod parallel;
pub mod svg;
pub mod tables;
pub mod xyz;

pub use crate::error::{Error, Result};
