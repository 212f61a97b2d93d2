//! Spectral laboratory for the Dirichlet Laplacian of a planar domain observed
//! in a frame rotating with angular velocity `ω` about a point `(x₀, y₀)`:
//!
//! ```text
//! H_ω(x₀, y₀) = −Δ_D + iω((x − x₀)∂_y − (y − y₀)∂_x)
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`] – planar domains, star-shaped boundaries given by Fourier series.
//! * [`specfun`] – Bessel functions of integer order and their zeros.
//! * [`analytic`] – closed-form rotating disk/annulus spectra and the disk comparison bound.
//! * [`discretize`] – staircase finite-difference assembly of `H_ω` as an exactly Hermitian matrix.
//! * [`eigensolve`] – dense and shift-invert eigensolvers, inertia-based eigenvalue counting.
//! * [`experiments`] – landscape scans and verification drivers.
//! * [`cli`] – the `rotspec` command-line front end and result persistence.

pub mod analytic;
pub mod cli;
pub mod discretize;
pub mod eigensolve;
mod error;
pub mod experiments;
pub mod geometry;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
