//! Sampled potential landscapes and their analysis.

mod barrier;
mod extrema;
mod grid;

pub use barrier::{barrier_between, Barrier};
pub use extrema::{
    find_local_extrema, find_local_extrema_with_shell, isolation_check, Extremum, ExtremumKind, DEFAULT_SHELL_RADIUS,
};
pub use grid::{sample_grid, sample_grid_with, Execution, GridSpec, PotentialGrid};
