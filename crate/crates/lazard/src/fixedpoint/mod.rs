//! Involutions given by their fixed-point data, and the checks that relate
//! the fixed locus to the cobordism class and Chern numbers of the ambient
//! variety.

pub mod action;
pub mod verify;

pub use action::{catalog, factorwise_p1n, linear_pn, swap_square, Builtin, BuiltAction, BuiltComponent, FixedComponent, MuTwoAction};
pub use verify::*;
