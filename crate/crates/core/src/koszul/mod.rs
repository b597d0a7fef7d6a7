//! Koszul cohomology `K_{p,q}(C, L, W)` from explicit section rings.
//!
//! Each group is the middle cohomology of
//! `∧^{p+1}W ⊗ S_{q-1} → ∧^p W ⊗ S_q → ∧^{p-1}W ⊗ S_{q+1}`, so its
//! dimension is `dim(∧^p W ⊗ S_q) - rank d_{p,q} - rank d_{p+1,q-1}`.
//! Groups with `p < 0` or `q < 0` are zero.

mod betti;
mod complex;
pub mod wedge;

pub use betti::{
    betti_table, euler_strand_check, green_verdict, projection_inequality_check, BettiReport, BettiTable,
    DualityReport, EulerReport, EulerWeight, ProjectionReport, SpotCheck, Strategy, Verdict, EULER_MAX_WEIGHT, MAX_Q,
};
pub use complex::{koszul_differential, koszul_dim, KoszulModule};
pub use wedge::{binomial, colex_rank, colex_unrank, combinations_colex, WedgeIndex};
