pub mod cli;
pub mod error;
pub mod field;
pub mod io;
pub mod jordan;
pub mod lattice;
pub mod matrix;
pub mod operator;
pub mod scalar;
pub mod spectral;
pub mod poly;
