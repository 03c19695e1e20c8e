//! Exact coefficient rings, truncated series, Laurent residues and integer
//! lattices.

pub mod bpoly;
pub mod domain;
pub mod laurent;
pub mod lattice;
pub mod partition;
pub mod ring;
pub mod scalars;
pub mod series;
pub mod tpoly;

pub use bpoly::{BElem, BRing};
pub use domain::{poly_arith, series_terms, ArithOp, CoefficientDomain, DomainElem, DomainRing, ScalarTag, SeriesTerm};
pub use laurent::{LaurentRing, LaurentSeries};
pub use lattice::IntegerLattice;
pub use partition::{partition_count, partitions_of, partitions_up_to, Partition};
pub use ring::{Graded, Ring};
pub use scalars::{Dyadic, DyadicRing, IntMod, Integers};
pub use series::{Mono, SeriesRing, TruncatedSeries};
pub use tpoly::{TEps, TEpsRing, TPoly, TRing};
