//! Design, verification and application of two-channel orthogonal
//! decomposition/reconstruction filter banks.
//!
//! A bank is fully determined by its decomposition low-pass filter `l_d`
//! (see [`filterbank`]). Valid `l_d` are found numerically by [`solver`] and
//! applied to signals and images by [`transform`]. [`io`] holds the file
//! formats used by the `wavegen` command-line tool.

pub mod error;
pub mod filterbank;
pub mod io;
pub mod solver;
pub mod transform;

pub use error::{Error, Result};
pub use filterbank::{derive_bank, Filter, FilterBank};
pub use solver::{solve, SolverConfig};
pub use transform::BoundaryMode;
