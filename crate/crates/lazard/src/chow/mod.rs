//! Chow-ring models of catalog varieties, Chern numbers, fundamental classes
//! and pushforwards along projective bundles.

pub mod model;
pub mod numbers;
pub mod quillen;
pub mod spec;

pub use model::{BundleLayer, ChowModel, ChowRing, LinearForm};
pub use numbers::*;
pub use quillen::*;
pub use spec::{VarietySpec, Variety};
