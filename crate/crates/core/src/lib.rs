//! Exact virtual and geometric Tevelev degrees.
//!
//! Closed forms for projective spaces, hypersurfaces and quadrics are checked
//! against two independent engines: a fixed-domain TQFT over the small quantum
//! cohomology of `P^r`, and Schubert calculus on `Gr(2, d+1)` for the
//! geometric degrees of `P^1`. The [`certify`] module turns the known
//! enumerativity criteria into auditable certificates.

pub mod arith;
pub mod certify;
pub mod closed_forms;
pub mod error;
pub mod qh;
pub mod schubert;
pub mod targets;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
