//! Exact computations for rank-two bundles on Hirzebruch surfaces: Picard
//! lattice arithmetic, line bundle cohomology, Čech hypercohomology of
//! monads, monad sampling and invariants, and dimension audits.

pub mod cech;
pub mod check;
pub mod cohomology;
pub mod cox;
pub mod error;
pub mod field;
pub mod linalg;
pub mod monad;
pub mod pic;
pub mod rationality;
pub mod report;
pub mod univariate;

pub use error::{HblError, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use pic::{ChernData, DivisorClass, Surface};

/// Prime field `F_p` with runtime modulus.
pub type Fp = PrimeField;
/// The rational numbers.
pub type Q = Rationals;
