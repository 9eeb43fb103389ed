//! Eta quotients on Γ₀(N): cusp-order matrices, holomorphic enumeration
//! and factorization into holomorphic eta quotients.

pub mod enumerate;
pub mod error;
pub mod factor;
pub mod eta;
pub mod guards;
pub mod lattice;
pub mod linalg;
pub mod matrices;
pub mod numtheory;
pub mod qseries;
pub mod tables;

pub use error::{Error, Result};
pub use numtheory::{factored, factorize, BoundValue, DivisorBasis, FactoredInt};
