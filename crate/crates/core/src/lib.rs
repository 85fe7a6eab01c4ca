//! Exact computations with type Q webs.
//!
//! Webs built from merges, splits and dots are evaluated as homomorphisms
//! between permutation supermodules of the Sergeev superalgebra `H_c(r)`.
//! Everything runs over the Gaussian rationals, so equalities are exact.

pub mod combinat;
pub mod error;
pub mod homspace;
pub mod linalg;
pub mod permod;
pub mod psi;
pub mod relcheck;
pub mod scalar;
pub mod schurq;
pub mod sergeev;
pub mod tabloid;
pub mod web;

/// Largest total thickness supported by the compact tabloid encoding.
pub const MAX_R: usize = 16;

pub use combinat::{Composition, CompositionMode, Permutation};
pub use error::{Error, Result};
pub use scalar::{GaussianRational, Parity};
pub use tabloid::{Entry, OmegaTabloid, Supertabloid};
