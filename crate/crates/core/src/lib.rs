//! Spectra, nodal domains and exact multi-way Cheeger constants of small
//! weighted and signed graphs.
//!
//! The crate is organised around [`WeightedGraph`], a finite simple graph
//! carrying positive edge weights, an optional edge signature, a positive
//! vertex measure `mu` and a real potential `kappa`. On top of it:
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`graph`] | data model, validation, structure queries, products, generators, file formats |
//! | [`spectral`] | Jacobi eigensolver, normalized Laplacian and normalized adjacency spectra |
//! | [`nodal`] | strong and weak nodal domains of vertex functions |
//! | [`cheeger`] | conductance, exact (signed) k-way Cheeger constants, nodal sweep certificates |
//! | [`perturb`] | seeded weight/potential perturbations and genericity experiments |
//! | [`bounds`] | executable checks of the spectral Cheeger bounds over graphs and corpora |
//! | [`cli`] | the `cheeger` command-line front end |
//!
//! Everything is deterministic: randomness only enters through explicit
//! 64-bit seeds (see [`rng`]).

pub mod bounds;
pub mod cheeger;
pub mod cli;
mod error;
pub mod graph;
pub mod nodal;
pub mod perturb;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Edge, Measure, Sign, WeightedGraph};
