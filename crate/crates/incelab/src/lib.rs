//! Ince-Gauss structured-light toolkit.
//!
//! Computes Ince-Gauss optical modes on sampled grids, locates their phase
//! singularities, evaluates overlap integrals between modes of different
//! ellipticity, and simulates two-photon entanglement experiments in the
//! helical Ince-Gauss basis: coincidence fringes, a 2-qubit entanglement
//! witness and steering value, and a 3-dimensional correlation function with
//! proved separability bounds.
//!
//! The `incelab` binary exposes the same functionality as subcommands that
//! write CSV tables and PGM images.

pub mod error;
pub mod ince;
pub mod modefield;
mod numeric;
pub mod overlap;
pub mod qstate;
pub mod vortex;

pub use error::{Error, Result};

pub use nalgebra;
pub use num_complex;
