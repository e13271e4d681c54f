//! Scene configuration, grid files, slice images and JSON reports.

pub mod config;
pub mod gridfile;
pub mod render;
pub mod report;
pub mod units;

pub use config::{parse_scene_config, scene_hash, serialize_scene};
pub use gridfile::{read_grid, write_grid, GridFile, GRID_MAGIC};
pub use render::{render_slice, Axis, DEFAULT_CLAMP};
pub use report::{read_extrema_report, write_extrema_report, write_tune_report, ReportMeta};
pub use units::{parse_quantity, parse_vector, Dimension};
