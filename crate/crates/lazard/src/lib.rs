//! Exact formal-group-law and cobordism calculus.
//!
//! The crate computes the universal formal group law over ℤ[b], its
//! specializations, Conner–Floyd classes and Chern numbers on a catalog of
//! Chow-ring models, Quillen-type pushforwards along projective bundles, and
//! checks fixed-point congruences for involutions given as fixed-locus data.

pub mod algebra;
pub mod chow;
pub mod cobordism;
pub mod error;
pub mod fgl;
pub mod fixedpoint;
pub mod report;
pub mod symmfunc;

pub use error::{Error, Result};
