//! Magnetic and RF-dressed potentials of crossed carbon-nanotube wire
//! traps for cold atoms.
//!
//! Wires are straight filaments ([`model`]) whose Biot–Savart fields
//! ([`field`]) are turned into static or dressed adiabatic potentials
//! ([`potential`]). Potentials are sampled on regular grids and searched
//! for trapping extrema and barriers ([`landscape`]), currents can be
//! tuned against target points ([`tuner`]), and [`io`] holds the scene,
//! grid and report formats.

pub mod error;
pub mod field;
pub mod io;
pub mod landscape;
pub mod model;
pub mod potential;
pub mod tuner;

pub use error::{Error, Result};
pub use model::{AtomSpecies, Channel, PhysicalConstants, Scene, Vec3, Wire};
pub use potential::PotentialMode;
