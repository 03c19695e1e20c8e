//! Symmetric functions and multiplicative classes of split bundles.

pub mod classes;
pub mod qpoly;

pub use classes::{b_coefficient, cf_class, cf_class_via_q, chern_class, chern_total, pi_series, power_sum_class, tangent_bundle, total_p, total_p_deformed, VirtualSplitBundle};
pub use qpoly::{epoly_mul, eval_epoly, lambda_coeffs, q_alpha, q_alpha_in, q_product_expansion, zero_one_count, EPoly};
