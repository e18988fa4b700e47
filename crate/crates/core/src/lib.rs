//! Certified enclosures of low Dirichlet Laplacian eigenvalues of triangles,
//! and the machinery to verify sign conditions on eigenvalue quotients over
//! regions of the triangle moduli space.
//!
//! The crate is organised as a two-pass pipeline:
//!
//! * [`fem`] gives a rigorous lower bound for `λ_{k+1}` from a Crouzeix–Raviart
//!   discretization, which certifies spectral indices.
//! * [`mps`] finds accurate approximate eigenpairs with particular solutions,
//!   and [`certifier`] turns them into narrow rigorous enclosures.
//!
//! [`prover`] combines both over segments of moduli space.

pub mod bessel;
pub mod certifier;
pub mod error;
pub mod fem;
pub mod geometry;
pub mod interval;
pub mod mps;
pub mod plot;
pub mod prover;
pub mod records;
pub mod taylor;

pub use error::{Error, Result};
pub use interval::{IPoint, Interval, DEFAULT_PRECISION};
