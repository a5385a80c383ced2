//! Matrix-valued Fourier multiplier toolkit for the torus and SU(2):
//! spectral partitions, transforms, symbols, kernels, and Schatten-class
//! nuclearity diagnostics.

pub mod error;
pub mod fourier;
pub mod group;
pub mod io;
pub mod kernel;
pub mod linalg;
pub mod manifold;
pub mod nuclear;
pub mod random;
pub mod symbol;
pub mod wigner;

pub use error::{Error, Result};
