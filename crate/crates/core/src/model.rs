//! Domain types for crossed-wire traps and builders for the standard
//! cell, grid and stacked-grid geometries.
//!
//! Coordinates: the stacking axis (layer normal) is `x`; wires run along
//! `y` or `z`. Tubes are numbered the way they appear when the structure
//! is viewed along `+x` with `z` up: z-directed tubes left to right, which
//! is towards `-y`, and y-directed tubes bottom to top, towards `+z`.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Carbon nanotube radius used for the reference structures (m).
pub const DEFAULT_TUBE_RADIUS: f64 = 3.52e-10;

/// Exclusion distance from wire axes (m).
pub const DEFAULT_STANDOFF: f64 = 100e-9;

/// RF frequency used for the reference structures (Hz).
pub const DEFAULT_RF_FREQUENCY: f64 = 0.27e6;

const UNIT_TOLERANCE: f64 = 1e-12;

/// Angular frequency for a frequency in hertz.
pub fn angular_frequency(hz: f64) -> f64 {
    2.0 * PI * hz
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Vacuum permeability (T·m/A).
    pub mu0: f64,
    /// Bohr magneton (J/T).
    pub mu_b: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            mu0: 4.0 * PI * 1e-7,
            mu_b: 9.2740e-24,
            hbar: 1.0546e-34,
        }
    }
}

impl PhysicalConstants {
    pub fn new(mu0: f64, mu_b: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("mu0", mu0), ("mu_b", mu_b), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("constant {name} must be positive, got {v}")));
            }
        }
        Ok(Self { mu0, mu_b, hbar })
    }
}

/// Hyperfine state of the trapped atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpecies {
    g_f: f64,
    m_f: i32,
}

impl Default for AtomSpecies {
    /// ⁸⁷Rb, F = 2, m_F = 2.
    fn default() -> Self {
        Self { g_f: 0.5, m_f: 2 }
    }
}

impl AtomSpecies {
    pub fn new(g_f: f64, m_f: i32) -> Result<Self> {
        if !g_f.is_finite() || g_f == 0.0 {
            return Err(Error::Config(format!(
                "Landé factor g_F must be finite and nonzero, got {g_f}"
            )));
        }
        Ok(Self { g_f, m_f })
    }

    pub fn g_f(&self) -> f64 {
        self.g_f
    }

    pub fn m_f(&self) -> i32 {
        self.m_f
    }

    /// Weak-field seekers (m_F·g_F > 0) gather at minima of |B|.
    pub fn is_weak_field_seeker(&self) -> bool {
        self.m_f as f64 * self.g_f > 0.0
    }
}

/// Current channel of a wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Dc,
    Rf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WireGeometry {
    /// Infinite straight line through `point` along unit `direction`.
    Line { point: Vec3, direction: Vec3 },
    /// Finite segment from `a` to `b`; current flows from `a` to `b`.
    Segment { a: Vec3, b: Vec3 },
}

/// A straight current carrier.
///
/// `i_dc` is signed along the wire direction. `i_rf` is the RF amplitude;
/// its sign encodes a 0 or π phase relative to the other wires.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wire {
    geometry: WireGeometry,
    radius: f64,
    i_dc: f64,
    i_rf: f64,
}

fn finite_vec(v: &Vec3) -> bool {
    v.iter().all(|c| c.is_finite())
}

impl Wire {
    /// Infinite wire. `direction` is normalized unless it is already unit
    /// length to within 1e-12.
    pub fn line(point: Vec3, direction: Vec3, i_dc: f64, i_rf: f64) -> Result<Self> {
        if !finite_vec(&point) || !finite_vec(&direction) {
            return Err(Error::InvalidGeometry("non-finite wire coordinates".into()));
        }
        let norm = direction.norm();
        if norm == 0.0 {
            return Err(Error::InvalidGeometry("wire direction is the zero vector".into()));
        }
        let direction = if (norm - 1.0).abs() <= UNIT_TOLERANCE {
            direction
        } else {
            direction / norm
        };
        Self::checked(WireGeometry::Line { point, direction }, i_dc, i_rf)
    }

    pub fn segment(a: Vec3, b: Vec3, i_dc: f64, i_rf: f64) -> Result<Self> {
        if !finite_vec(&a) || !finite_vec(&b) {
            return Err(Error::InvalidGeometry("non-finite wire coordinates".into()));
        }
        if a == b {
            return Err(Error::InvalidGeometry("segment endpoints coincide".into()));
        }
        Self::checked(WireGeometry::Segment { a, b }, i_dc, i_rf)
    }

    fn checked(geometry: WireGeometry, i_dc: f64, i_rf: f64) -> Result<Self> {
        if !i_dc.is_finite() || !i_rf.is_finite() {
            return Err(Error::Config("wire currents must be finite".into()));
        }
        Ok(Self {
            geometry,
            radius: DEFAULT_TUBE_RADIUS,
            i_dc,
            i_rf,
        })
    }

    pub fn with_radius(mut self, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "wire radius must be >= 0, got {radius}"
            )));
        }
        self.radius = radius;
        Ok(self)
    }

    pub fn with_current(mut self, channel: Channel, value: f64) -> Self {
        match channel {
            Channel::Dc => self.i_dc = value,
            Channel::Rf => self.i_rf = value,
        }
        self
    }

    pub fn geometry(&self) -> &WireGeometry {
        &self.geometry
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn i_dc(&self) -> f64 {
        self.i_dc
    }

    pub fn i_rf(&self) -> f64 {
        self.i_rf
    }

    pub fn current(&self, channel: Channel) -> f64 {
        match channel {
            Channel::Dc => self.i_dc,
            Channel::Rf => self.i_rf,
        }
    }

    /// Unit vector along the direction of positive current.
    pub fn direction(&self) -> Vec3 {
        match self.geometry {
            WireGeometry::Line { direction, .. } => direction,
            WireGeometry::Segment { a, b } => (b - a).normalize(),
        }
    }

    /// Distance from `point` to the wire: perpendicular distance to the
    /// axis for lines, distance to the closed segment for segments.
    pub fn distance_to(&self, point: &Vec3) -> f64 {
        match self.geometry {
            WireGeometry::Line { point: p0, direction } => {
                let r = point - p0;
                (r - direction * r.dot(&direction)).norm()
            }
            WireGeometry::Segment { a, b } => {
                let ab = b - a;
                let t = ((point - a).dot(&ab) / ab.norm_squared()).clamp(0.0, 1.0);
                (point - (a + ab * t)).norm()
            }
        }
    }

    pub fn translated(&self, offset: &Vec3) -> Self {
        let geometry = match self.geometry {
            WireGeometry::Line { point, direction } => WireGeometry::Line {
                point: point + offset,
                direction,
            },
            WireGeometry::Segment { a, b } => WireGeometry::Segment {
                a: a + offset,
                b: b + offset,
            },
        };
        Self { geometry, ..*self }
    }
}

/// An immutable trap: wires, RF drive, atom species and physical constants.
///
/// Wire order is significant: every field sum runs over the wires in this
/// order so results are reproducible bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    wires: Vec<Wire>,
    omega_rf: f64,
    species: AtomSpecies,
    constants: PhysicalConstants,
    standoff: f64,
}

impl Scene {
    /// Scene with default constants and the default 100 nm standoff.
    pub fn new(wires: Vec<Wire>, omega_rf: f64, species: AtomSpecies) -> Result<Self> {
        if !(omega_rf.is_finite() && omega_rf >= 0.0) {
            return Err(Error::Config(format!(
                "RF angular frequency must be >= 0, got {omega_rf}"
            )));
        }
        Ok(Self {
            wires,
            omega_rf,
            species,
            constants: PhysicalConstants::default(),
            standoff: DEFAULT_STANDOFF,
        })
    }

    pub fn with_standoff(mut self, standoff: f64) -> Result<Self> {
        if !(standoff.is_finite() && standoff >= 0.0) {
            return Err(Error::Config(format!("standoff must be >= 0, got {standoff}")));
        }
        self.standoff = standoff;
        Ok(self)
    }

    pub fn with_constants(mut self, constants: PhysicalConstants) -> Self {
        self.constants = constants;
        self
    }

    pub fn with_omega_rf(mut self, omega_rf: f64) -> Result<Self> {
        if !(omega_rf.is_finite() && omega_rf >= 0.0) {
            return Err(Error::Config(format!(
                "RF angular frequency must be >= 0, got {omega_rf}"
            )));
        }
        self.omega_rf = omega_rf;
        Ok(self)
    }

    /// Copy of the scene with one wire current replaced.
    pub fn with_current(&self, wire: usize, channel: Channel, value: f64) -> Result<Self> {
        let mut out = self.clone();
        let w = out
            .wires
            .get_mut(wire)
            .ok_or_else(|| Error::Config(format!("wire index {wire} out of range")))?;
        *w = w.with_current(channel, value);
        Ok(out)
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn omega_rf(&self) -> f64 {
        self.omega_rf
    }

    pub fn species(&self) -> AtomSpecies {
        self.species
    }

    pub fn constants(&self) -> PhysicalConstants {
        self.constants
    }

    pub fn standoff(&self) -> f64 {
        self.standoff
    }

    /// Midpoints of closest approach between every pair of non-parallel
    /// infinite wires. For the crossed layers these are the points halfway
    /// between the layers above each wire crossing.
    pub fn crossing_points(&self) -> Vec<Vec3> {
        let lines: Vec<(Vec3, Vec3)> = self
            .wires
            .iter()
            .filter_map(|w| match w.geometry {
                WireGeometry::Line { point, direction } => Some((point, direction)),
                WireGeometry::Segment { .. } => None,
            })
            .collect();
        let mut out = Vec::new();
        for (i, (p1, u1)) in lines.iter().enumerate() {
            for (p2, u2) in &lines[i + 1..] {
                let b = u1.dot(u2);
                let denom = 1.0 - b * b;
                if denom < 1e-12 {
                    continue;
                }
                let w0 = p1 - p2;
                let d = u1.dot(&w0);
                let e = u2.dot(&w0);
                let s = (b * e - d) / denom;
                let t = (e - b * d) / denom;
                out.push(((p1 + u1 * s) + (p2 + u2 * t)) * 0.5);
            }
        }
        out
    }
}

fn check_spacing(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::InvalidGeometry(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

/// Two crossed pairs of infinite wires centred on the origin.
///
/// The z-directed pair lies in the plane `x = -h/2`, the y-directed pair in
/// `x = +h/2`; each pair is `d` apart. Currents are ordered
/// `[z-tube 1, z-tube 2, y-tube 1, y-tube 2]` using the tube numbering of
/// the module docs, so z-tube 1 sits at `y = +d/2` and y-tube 1 at
/// `z = -d/2`.
pub fn build_four_tube_cell(
    d: f64,
    h: f64,
    i_dc: [f64; 4],
    i_rf: [f64; 4],
    omega_rf: f64,
    species: AtomSpecies,
) -> Result<Scene> {
    check_spacing("lateral spacing d", d)?;
    check_spacing("layer gap h", h)?;
    let layout = CrossedGridLayout {
        y_positions: vec![-d / 2.0, d / 2.0],
        z_positions: vec![-d / 2.0, d / 2.0],
        h,
        i_dc_z: i_dc[..2].to_vec(),
        i_dc_y: i_dc[2..].to_vec(),
        i_rf_z: i_rf[..2].to_vec(),
        i_rf_y: i_rf[2..].to_vec(),
    };
    build_crossed_grid(&layout, omega_rf, species)
}

/// Parameters of a single crossed bilayer.
///
/// `y_positions` are the lateral offsets of the z-directed tubes measured
/// left to right (tube k sits at `y = -y_positions[k]`); `z_positions` are
/// the offsets of the y-directed tubes bottom to top (tube k sits at
/// `z = z_positions[k]`). Both lists must be strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossedGridLayout {
    pub y_positions: Vec<f64>,
    pub z_positions: Vec<f64>,
    pub h: f64,
    pub i_dc_z: Vec<f64>,
    pub i_dc_y: Vec<f64>,
    pub i_rf_z: Vec<f64>,
    pub i_rf_y: Vec<f64>,
}

fn check_positions(name: &str, p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::Config(format!("{name} is empty")));
    }
    if p.iter().any(|v| !v.is_finite()) {
        return Err(Error::Config(format!("{name} contains non-finite values")));
    }
    if p.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

fn check_len(name: &str, currents: &[f64], positions: usize) -> Result<()> {
    if currents.len() != positions {
        return Err(Error::Config(format!(
            "{name} has {} entries but there are {positions} tubes",
            currents.len()
        )));
    }
    Ok(())
}

/// One layer of z-directed wires at `x = -h/2` over one layer of
/// y-directed wires at `x = +h/2`. Wires are emitted z-tubes first, each
/// group in numbering order.
pub fn build_crossed_grid(layout: &CrossedGridLayout, omega_rf: f64, species: AtomSpecies) -> Result<Scene> {
    check_spacing("layer gap h", layout.h)?;
    check_positions("y_positions", &layout.y_positions)?;
    check_positions("z_positions", &layout.z_positions)?;
    check_len("i_dc_z", &layout.i_dc_z, layout.y_positions.len())?;
    check_len("i_rf_z", &layout.i_rf_z, layout.y_positions.len())?;
    check_len("i_dc_y", &layout.i_dc_y, layout.z_positions.len())?;
    check_len("i_rf_y", &layout.i_rf_y, layout.z_positions.len())?;

    let half = layout.h / 2.0;
    let mut wires = Vec::with_capacity(layout.y_positions.len() + layout.z_positions.len());
    for (k, &y) in layout.y_positions.iter().enumerate() {
        wires.push(Wire::line(
            Vec3::new(-half, -y, 0.0),
            Vec3::z(),
            layout.i_dc_z[k],
            layout.i_rf_z[k],
        )?);
    }
    for (k, &z) in layout.z_positions.iter().enumerate() {
        wires.push(Wire::line(
            Vec3::new(half, 0.0, z),
            Vec3::y(),
            layout.i_dc_y[k],
            layout.i_rf_y[k],
        )?);
    }
    Scene::new(wires, omega_rf, species)
}

/// Replicates the wire set `copies` times along `+x`, `pitch` apart.
/// Replica `k` is translated by `k·pitch`; currents are copied unchanged.
pub fn stack_grids(scene: &Scene, copies: usize, pitch: f64) -> Result<Scene> {
    if copies == 0 {
        return Err(Error::Config("stack needs at least one copy".into()));
    }
    if copies == 1 {
        return Ok(scene.clone());
    }
    if !(pitch.is_finite() && pitch > 0.0) {
        return Err(Error::Config(format!("stack pitch must be positive, got {pitch}")));
    }
    let mut out = scene.clone();
    out.wires = (0..copies)
        .flat_map(|k| {
            let offset = Vec3::new(k as f64 * pitch, 0.0, 0.0);
            scene.wires.iter().map(move |w| w.translated(&offset))
        })
        .collect();
    Ok(out)
}

/// Reference trap geometries.
pub mod presets {
    use super::*;

    /// Lateral spacing of the single cell (m).
    pub const CELL_SPACING: f64 = 355.6e-9;
    /// Layer gap of the single cell (m).
    pub const CELL_LAYER_GAP: f64 = 256.8e-9;
    /// Layer gap of the 6×6 grid (m).
    pub const GRID_LAYER_GAP: f64 = 237e-9;

    pub const CELL_DC: [f64; 4] = [-15e-6, 15e-6, 15e-6, -15e-6];
    pub const CELL_RF: [f64; 4] = [-4e-6, 4e-6, 4e-6, -4e-6];

    pub const GRID_DC_Z: [f64; 6] = [-13.43e-6, 15.08e-6, -15e-6, 15e-6, -15.08e-6, 13.43e-6];
    pub const GRID_DC_Y: [f64; 6] = [13.43e-6, -15.08e-6, 15e-6, -15e-6, 15.08e-6, -13.43e-6];
    pub const GRID_RF_Z: [f64; 6] = [-4e-6, 4e-6, -4e-6, 4e-6, -4e-6, 4e-6];
    pub const GRID_RF_Y: [f64; 6] = [4e-6, -4e-6, 4e-6, -4e-6, 4e-6, -4e-6];

    /// Gaps between neighbouring tubes of the 6×6 grid, mirror-completed
    /// about the centre (m).
    pub const GRID_GAPS: [f64; 5] = [337e-9, 328.6e-9, 329.9e-9, 328.6e-9, 337e-9];

    /// Four-tube cell with DC and RF drive at 0.27 MHz.
    pub fn single_cell() -> Scene {
        build_four_tube_cell(
            CELL_SPACING,
            CELL_LAYER_GAP,
            CELL_DC,
            CELL_RF,
            angular_frequency(DEFAULT_RF_FREQUENCY),
            AtomSpecies::default(),
        )
        .expect("preset geometry is valid")
    }

    /// Tube offsets of the 6×6 grid, centred on zero.
    pub fn grid_positions() -> Vec<f64> {
        let mut acc = vec![0.0];
        for g in GRID_GAPS {
            acc.push(acc.last().unwrap() + g);
        }
        let centre = acc[acc.len() - 1] / 2.0;
        acc.iter().map(|p| p - centre).collect()
    }

    pub fn grid_layout() -> CrossedGridLayout {
        let positions = grid_positions();
        CrossedGridLayout {
            y_positions: positions.clone(),
            z_positions: positions,
            h: GRID_LAYER_GAP,
            i_dc_z: GRID_DC_Z.to_vec(),
            i_dc_y: GRID_DC_Y.to_vec(),
            i_rf_z: GRID_RF_Z.to_vec(),
            i_rf_y: GRID_RF_Y.to_vec(),
        }
    }

    /// The 6×6 crossed grid with DC and RF drive.
    pub fn six_by_six() -> Scene {
        build_crossed_grid(
            &grid_layout(),
            angular_frequency(DEFAULT_RF_FREQUENCY),
            AtomSpecies::default(),
        )
        .expect("preset geometry is valid")
    }

    /// Default grid-to-grid pitch: one bilayer period, 2h.
    pub fn stack_pitch() -> f64 {
        2.0 * GRID_LAYER_GAP
    }

    /// Three 6×6 grids stacked along x.
    pub fn stacked_six_by_six() -> Scene {
        stack_grids(&six_by_six(), 3, stack_pitch()).expect("preset geometry is valid")
    }
}
