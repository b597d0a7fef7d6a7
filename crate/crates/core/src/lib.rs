//! Koszul cohomology of curves over finite and rational fields, together
//! with the lattice and Brill-Noether computations that accompany it.

pub mod bn;
pub mod error;
pub mod field;
pub mod koszul;
pub mod lattices;
pub mod linalg;
pub mod models;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use koszul::{betti_table, green_verdict, BettiReport, BettiTable, Strategy, Verdict};
pub use lattices::{DivisorClass, IntegralLattice};
pub use linalg::{kernel_basis, quotient_basis, rank, PrimeFieldMatrix, QuotientBasis, SparseMatrix};
pub use models::{CurveModel, ModelKind, ModelSpec};
