use std::cmp::Ordering;

use super::grid::PotentialGrid;
use crate::model::Vec3;

/// Shell radius (cells) used when none is given.
pub const DEFAULT_SHELL_RADIUS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremumKind {
    Min,
    Max,
}

impl ExtremumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExtremumKind::Min => "min",
            ExtremumKind::Max => "max",
        }
    }

    /// True when `value` lies strictly beyond `reference` in this kind's
    /// direction, i.e. `reference` is the better extremum.
    fn dominated(&self, reference: f64, value: f64) -> bool {
        match self {
            ExtremumKind::Max => value < reference,
            ExtremumKind::Min => value > reference,
        }
    }
}

/// A strict local extremum of a sampled landscape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub kind: ExtremumKind,
    pub index: [usize; 3],
    pub position: Vec3,
    pub value: f64,
    pub isolated_3d: bool,
    /// Smallest |value − shell value| over the unmasked isolation shell.
    pub shell_margin: f64,
}

pub(crate) const NEIGHBOURS: [[isize; 3]; 26] = {
    let mut out = [[0isize; 3]; 26];
    let mut n = 0;
    let mut dz = -1;
    while dz <= 1 {
        let mut dy = -1;
        while dy <= 1 {
            let mut dx = -1;
            while dx <= 1 {
                if dx != 0 || dy != 0 || dz != 0 {
                    out[n] = [dx, dy, dz];
                    n += 1;
                }
                dx += 1;
            }
            dy += 1;
        }
        dz += 1;
    }
    out
};

fn offset(idx: [usize; 3], d: [isize; 3]) -> [usize; 3] {
    [
        idx[0].wrapping_add_signed(d[0]),
        idx[1].wrapping_add_signed(d[1]),
        idx[2].wrapping_add_signed(d[2]),
    ]
}

fn classify(grid: &PotentialGrid, idx: [usize; 3]) -> Option<ExtremumKind> {
    let c = grid.value(idx);
    let mut above = true;
    let mut below = true;
    for d in NEIGHBOURS {
        let n = offset(idx, d);
        if grid.is_masked(n) {
            return None;
        }
        let v = grid.value(n);
        above &= c > v;
        below &= c < v;
        if !above && !below {
            return None;
        }
    }
    if above {
        Some(ExtremumKind::Max)
    } else {
        Some(ExtremumKind::Min)
    }
}

/// Strict local extrema over the 26-neighbourhood, with 3D isolation
/// evaluated at [`DEFAULT_SHELL_RADIUS`].
pub fn find_local_extrema(grid: &PotentialGrid) -> Vec<Extremum> {
    find_local_extrema_with_shell(grid, DEFAULT_SHELL_RADIUS)
}

/// Cells on the grid boundary or next to a masked cell are never
/// reported. Maxima come first by descending value, then minima by
/// ascending value; equal values keep linear-index order.
pub fn find_local_extrema_with_shell(grid: &PotentialGrid, shell_radius: usize) -> Vec<Extremum> {
    let spec = grid.spec();
    let [nx, ny, nz] = spec.counts;
    let mut out = Vec::new();
    for k in 1..nz - 1 {
        for j in 1..ny - 1 {
            for i in 1..nx - 1 {
                let idx = [i, j, k];
                if grid.is_masked(idx) {
                    continue;
                }
                if let Some(kind) = classify(grid, idx) {
                    let mut e = Extremum {
                        kind,
                        index: idx,
                        position: spec.position(idx),
                        value: grid.value(idx),
                        isolated_3d: false,
                        shell_margin: 0.0,
                    };
                    (e.isolated_3d, e.shell_margin) = isolation_check(grid, &e, shell_radius);
                    out.push(e);
                }
            }
        }
    }
    // Stable sort keeps scan (linear-index) order among ties.
    out.sort_by(|a, b| match (a.kind, b.kind) {
        (ExtremumKind::Max, ExtremumKind::Min) => Ordering::Less,
        (ExtremumKind::Min, ExtremumKind::Max) => Ordering::Greater,
        (ExtremumKind::Max, ExtremumKind::Max) => b.value.total_cmp(&a.value),
        (ExtremumKind::Min, ExtremumKind::Min) => a.value.total_cmp(&b.value),
    });
    out
}

/// Checks the cubic shell at Chebyshev distance `shell_radius` around the
/// extremum. Isolated when every unmasked shell cell is strictly below a
/// maximum (above a minimum). A shell reaching past the grid, or one with
/// no unmasked cell, gives `(false, 0)`.
pub fn isolation_check(grid: &PotentialGrid, e: &Extremum, shell_radius: usize) -> (bool, f64) {
    let spec = grid.spec();
    let r = shell_radius;
    if r == 0 || !spec.contains(e.index) || grid.is_masked(e.index) {
        return (false, 0.0);
    }
    for a in 0..3 {
        if e.index[a] < r || e.index[a] + r >= spec.counts[a] {
            return (false, 0.0);
        }
    }
    let centre = grid.value(e.index);
    let mut isolated = true;
    let mut margin = f64::INFINITY;
    let lo = e.index.map(|c| c - r);
    for k in lo[2]..=e.index[2] + r {
        for j in lo[1]..=e.index[1] + r {
            for i in lo[0]..=e.index[0] + r {
                let idx = [i, j, k];
                let cheb = (0..3).map(|a| idx[a].abs_diff(e.index[a])).max().unwrap();
                if cheb != r || grid.is_masked(idx) {
                    continue;
                }
                let v = grid.value(idx);
                isolated &= e.kind.dominated(centre, v);
                margin = margin.min((centre - v).abs());
            }
        }
    }
    if margin.is_infinite() {
        return (false, 0.0);
    }
    (isolated, margin)
}
