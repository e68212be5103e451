//! Capacitive power transfer (CPT) coupler toolkit.
//!
//! Three stages, each usable on its own:
//!
//! 1. [`analytic`]: parallel-plate capacitance and the ideal Pi-model;
//! 2. [`field_solver`]: boundary-element extraction of the four-plate Maxwell
//!    matrix, optionally with a dielectric slab in the gap, reduced to a
//!    Pi-model and coupling coefficient;
//! 3. [`circuit`]: steady-state phasor analysis of a series-inductor resonant
//!    link through the Pi-model.
//!
//! [`pipeline`] sweeps media and distances through all three and writes CSV.

pub mod analytic;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod field_solver;
pub mod geometry;
pub mod materials;
pub mod pipeline;

pub use error::{Error, Result};
