use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Scene, Vec3};
use crate::potential::{check_mode, is_excluded, potential, PotentialMode};

/// Axis-aligned sampling lattice. Cell `(i, j, k)` sits at
/// `origin + (i·sx, j·sy, k·sz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub origin: Vec3,
    pub spacing: Vec3,
    pub counts: [usize; 3],
}

impl GridSpec {
    pub fn new(origin: Vec3, spacing: Vec3, counts: [usize; 3]) -> Result<Self> {
        let spec = Self {
            origin,
            spacing,
            counts,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `counts` points per axis spanning `lo..=hi`.
    pub fn spanning(lo: Vec3, hi: Vec3, counts: [usize; 3]) -> Result<Self> {
        let mut spacing = Vec3::zeros();
        for a in 0..3 {
            if counts[a] < 2 {
                return Err(Error::Config(format!(
                    "grid needs >= 2 points per axis, axis {a} has {}",
                    counts[a]
                )));
            }
            spacing[a] = (hi[a] - lo[a]) / (counts[a] - 1) as f64;
        }
        Self::new(lo, spacing, counts)
    }

    /// Box around every wire crossing of `scene`, padded by `pad` on all
    /// sides.
    pub fn around_crossings(scene: &Scene, pad: f64, counts: [usize; 3]) -> Result<Self> {
        let pts = scene.crossing_points();
        if pts.is_empty() {
            return Err(Error::Config("scene has no wire crossings".into()));
        }
        let mut lo = pts[0];
        let mut hi = pts[0];
        for p in &pts[1..] {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        let pad = Vec3::repeat(pad);
        Self::spanning(lo - pad, hi + pad, counts)
    }

    pub fn validate(&self) -> Result<()> {
        for a in 0..3 {
            if self.counts[a] < 2 {
                return Err(Error::Config(format!(
                    "grid needs >= 2 points per axis, axis {a} has {}",
                    self.counts[a]
                )));
            }
            if !(self.spacing[a].is_finite() && self.spacing[a] > 0.0) {
                return Err(Error::Config(format!(
                    "grid spacing must be positive, axis {a} has {}",
                    self.spacing[a]
                )));
            }
            if !self.origin[a].is_finite() {
                return Err(Error::Config("grid origin must be finite".into()));
            }
        }
        self.counts
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::Config("grid is too large".into()))?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Linear index, x fastest.
    pub fn linear(&self, idx: [usize; 3]) -> usize {
        idx[0] + self.counts[0] * (idx[1] + self.counts[1] * idx[2])
    }

    pub fn unravel(&self, lin: usize) -> [usize; 3] {
        let nx = self.counts[0];
        let ny = self.counts[1];
        [lin % nx, (lin / nx) % ny, lin / (nx * ny)]
    }

    pub fn contains(&self, idx: [usize; 3]) -> bool {
        (0..3).all(|a| idx[a] < self.counts[a])
    }

    pub fn position(&self, idx: [usize; 3]) -> Vec3 {
        Vec3::new(
            self.origin.x + idx[0] as f64 * self.spacing.x,
            self.origin.y + idx[1] as f64 * self.spacing.y,
            self.origin.z + idx[2] as f64 * self.spacing.z,
        )
    }
}

/// Potential values on a [`GridSpec`]. Masked cells hold NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialGrid {
    spec: GridSpec,
    values: Vec<f64>,
    mask: Vec<bool>,
    mode: PotentialMode,
}

impl PotentialGrid {
    pub fn new(spec: GridSpec, values: Vec<f64>, mask: Vec<bool>, mode: PotentialMode) -> Result<Self> {
        spec.validate()?;
        let n = spec.len();
        if values.len() != n || mask.len() != n {
            return Err(Error::Config(format!(
                "grid arrays have {} values and {} mask cells, expected {n}",
                values.len(),
                mask.len()
            )));
        }
        if values.iter().zip(&mask).any(|(v, m)| !m && !v.is_finite()) {
            return Err(Error::Config("unmasked grid cell holds a non-finite value".into()));
        }
        Ok(Self {
            spec,
            values,
            mask,
            mode,
        })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn mode(&self) -> PotentialMode {
        self.mode
    }

    pub fn value(&self, idx: [usize; 3]) -> f64 {
        self.values[self.spec.linear(idx)]
    }

    pub fn is_masked(&self, idx: [usize; 3]) -> bool {
        self.mask[self.spec.linear(idx)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

fn sample_cell(scene: &Scene, spec: &GridSpec, mode: PotentialMode, lin: usize) -> (f64, bool) {
    let p = spec.position(spec.unravel(lin));
    if is_excluded(scene, &p) {
        return (f64::NAN, true);
    }
    match potential(scene, &p, mode) {
        Ok(v) if v.is_finite() => (v, false),
        // On an axis with zero standoff: invalid cell.
        _ => (f64::NAN, true),
    }
}

/// Samples the potential at every cell; cells inside the standoff are
/// masked.
pub fn sample_grid(scene: &Scene, spec: &GridSpec, mode: PotentialMode) -> Result<PotentialGrid> {
    sample_grid_with(scene, spec, mode, Execution::Parallel)
}

/// Cells are evaluated independently, so both execution strategies give
/// bit-identical grids.
pub fn sample_grid_with(scene: &Scene, spec: &GridSpec, mode: PotentialMode, exec: Execution) -> Result<PotentialGrid> {
    spec.validate()?;
    check_mode(scene, mode)?;
    let n = spec.len();
    let cells: Vec<(f64, bool)> = match exec {
        Execution::Sequential => (0..n).map(|i| sample_cell(scene, spec, mode, i)).collect(),
        Execution::Parallel => (0..n)
            .into_par_iter()
            .map(|i| sample_cell(scene, spec, mode, i))
            .collect(),
    };
    let (values, mask) = cells.into_iter().unzip();
    PotentialGrid::new(*spec, values, mask, mode)
}
