//! Complex and bicomplex matrices.

mod bicomplex;
mod complex;

pub use bicomplex::{complex_inner, inner_product, vector_hyperbolic_norm, BicomplexMatrix, BicomplexVector};
pub use complex::{Matrix, DEFAULT_SINGULAR_TOL};
