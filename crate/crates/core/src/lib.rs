//! Exact computation of generalized Casimir invariants for Lie algebras with
//! a nontrivial Levi decomposition.
//!
//! Algebras are given by rational structure constants. The number of
//! functionally independent invariants comes from the generic rank of the
//! commutator matrix, and polynomial invariants are found as the exact kernel
//! of the coadjoint vector fields acting on homogeneous polynomials.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod format;
pub mod invariants;
pub mod linalg;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod reps;
pub mod semidirect;

pub use algebra::{LieAlgebra, Subspace};
pub use catalog::{catalog_entries, catalog_lookup, CatalogEntry, Instance};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use poly::{Monomial, Polynomial, VectorField};
pub use rational::Rational;
pub use reps::{RepLabel, Representation, Summand};
