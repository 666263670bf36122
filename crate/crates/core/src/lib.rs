//! Parameterized morphisms over monoidal base semantics.
//!
//! * [`param`] builds `Param(P, C)` for any [`param::Backend`]: pointwise
//!   composition and tensor, constant structural morphisms, evaluation,
//!   inclusion, seeded equivalence checking and an executable law suite.
//! * [`matrix`] is the complex-matrix backend with Kronecker tensor and the
//!   rotation gate families.
//! * [`lattice`] computes entailment graphs for categories enriched in a
//!   finite meet-semilattice.
//! * [`circuit`] parses and elaborates a small circuit language into
//!   parameterized matrix families.

pub mod circuit;
pub mod lattice;
pub mod matrix;
pub mod param;

pub use matrix::{CMatrix, Dim, MatrixBackend};
pub use param::{Param, ParamMor, ParamPoint, ParamSpace};
