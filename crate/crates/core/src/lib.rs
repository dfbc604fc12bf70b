//! Numerical experiments on the values of the Riemann zeta-function along
//! discrete vertical sets.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beatty;
pub mod cli;
pub mod dirichlet_progressions;
pub mod equidistribution;
pub mod euler_product_model;
pub mod shift_search;
pub mod summation;
pub mod zeta_core;

pub use num_complex::Complex64;
