//! PPM (P6) slices of a potential grid.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::landscape::PotentialGrid;

/// Default upper clamp for rendered potentials (J).
pub const DEFAULT_CLAMP: f64 = 7e-28;

pub const DARK_BLUE: [u8; 3] = [0, 0, 139];
pub const GREEN: [u8; 3] = [0, 255, 0];
pub const RED: [u8; 3] = [255, 0, 0];
/// Colour of masked cells.
pub const DARK_RED: [u8; 3] = [139, 0, 0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(Error::Argument(format!("unknown axis `{other}`"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["x", "y", "z"][self.index()])
    }
}

fn lerp(a: [u8; 3], b: [u8; 3], s: f64) -> [u8; 3] {
    let mut out = [0u8; 3];
    for c in 0..3 {
        out[c] = (a[c] as f64 + (b[c] as f64 - a[c] as f64) * s).round() as u8;
    }
    out
}

/// Dark blue at 0, green at 0.5, red at 1.
pub fn colormap(t: f64) -> [u8; 3] {
    let t = t.clamp(0.0, 1.0);
    if t <= 0.5 {
        lerp(DARK_BLUE, GREEN, 2.0 * t)
    } else {
        lerp(GREEN, RED, 2.0 * t - 1.0)
    }
}

/// Renders the plane `axis = index`, one pixel per cell, with the
/// remaining two axes as image columns and rows (rows run from the top,
/// i.e. the highest index of the vertical axis). Values are clamped to
/// `[slice minimum, clamp_max]` and masked cells are dark red.
pub fn render_slice(grid: &PotentialGrid, axis: Axis, index: usize, clamp_max: f64) -> Result<Vec<u8>> {
    let spec = grid.spec();
    let a = axis.index();
    if index >= spec.counts[a] {
        return Err(Error::Argument(format!(
            "slice index {index} out of range for axis {axis} with {} cells",
            spec.counts[a]
        )));
    }
    let (col_axis, row_axis) = match axis {
        Axis::X => (1, 2),
        Axis::Y => (0, 2),
        Axis::Z => (0, 1),
    };
    let width = spec.counts[col_axis];
    let height = spec.counts[row_axis];
    let cell = |c: usize, r: usize| {
        let mut idx = [0usize; 3];
        idx[a] = index;
        idx[col_axis] = c;
        idx[row_axis] = height - 1 - r;
        idx
    };

    let mut lo = f64::INFINITY;
    for r in 0..height {
        for c in 0..width {
            let idx = cell(c, r);
            if !grid.is_masked(idx) {
                lo = lo.min(grid.value(idx));
            }
        }
    }
    let hi = clamp_max;

    let header = format!("P6\n{width} {height}\n255\n");
    let mut out = Vec::with_capacity(header.len() + 3 * width * height);
    out.extend_from_slice(header.as_bytes());
    for r in 0..height {
        for c in 0..width {
            let idx = cell(c, r);
            let rgb = if grid.is_masked(idx) {
                DARK_RED
            } else if hi > lo {
                colormap((grid.value(idx).min(hi) - lo) / (hi - lo))
            } else {
                colormap(0.0)
            };
            out.extend_from_slice(&rgb);
        }
    }
    Ok(out)
}
