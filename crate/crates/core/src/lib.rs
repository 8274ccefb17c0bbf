//! Spectra, resolvent norms, pseudospectra, numerical ranges and Riesz
//! projections of dense complex matrices, with tools to test the G1
//! condition `‖(z − a)⁻¹‖ = 1/d(z, σ(a))` under a chosen operator norm.

pub mod algebras;
pub mod calculus;
pub mod error;
pub mod g1;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod numrange;
pub mod plot;
pub mod pseudospec;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
