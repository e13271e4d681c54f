//! Biot–Savart fields of straight line currents and their superposition.
//!
//! Wires are ideal filaments; the tube radius only enters the exclusion
//! mask. RF amplitudes are treated quasi-statically.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{Channel, Scene, Vec3, Wire, WireGeometry};

/// DC field and RF amplitude at a point (T).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub b_dc: Vec3,
    pub b_rf: Vec3,
}

/// Field of an infinite line through `point0` along unit `direction`
/// carrying `current`, evaluated at `point`.
///
/// `|B| = μ0·I / (2πρ)`, azimuthal and right-handed about the current.
pub fn infinite_line_field(mu0: f64, point0: &Vec3, direction: &Vec3, current: f64, point: &Vec3) -> Option<Vec3> {
    let r = point - point0;
    let radial = r - direction * r.dot(direction);
    let rho2 = radial.norm_squared();
    if rho2 == 0.0 {
        return None;
    }
    if current == 0.0 {
        return Some(Vec3::zeros());
    }
    Some(direction.cross(&radial) * (mu0 * current / (2.0 * PI * rho2)))
}

/// Field of an infinite [`Wire`] at `point` for the given current.
pub fn field_of_infinite_wire(wire: &Wire, point: &Vec3, current: f64, mu0: f64) -> Result<Vec3> {
    let (p0, u) = match *wire.geometry() {
        WireGeometry::Line { point, direction } => (point, direction),
        WireGeometry::Segment { a, b } => (a, (b - a).normalize()),
    };
    infinite_line_field(mu0, &p0, &u, current, point).ok_or(Error::Singularity { wire: 0 })
}

/// Field of a finite segment from `a` to `b` carrying `current`.
///
/// Magnitude `μ0·I/(4πρ)·(sinθ₂ − sinθ₁)`, with the angles measured from
/// the perpendicular foot of `point` on the segment axis. Points on the
/// axis extension beyond the segment see zero field.
pub fn field_of_segment(a: &Vec3, b: &Vec3, current: f64, point: &Vec3, mu0: f64) -> Result<Vec3> {
    if a == b {
        return Err(Error::InvalidGeometry("segment endpoints coincide".into()));
    }
    let axis = b - a;
    let len = axis.norm();
    let u = axis / len;
    let ra = point - a;
    let along = ra.dot(&u);
    let radial = ra - u * along;
    let rho2 = radial.norm_squared();
    if rho2 == 0.0 {
        if (0.0..=len).contains(&along) {
            return Err(Error::Singularity { wire: 0 });
        }
        return Ok(Vec3::zeros());
    }
    if current == 0.0 {
        return Ok(Vec3::zeros());
    }
    let rb = point - b;
    // sinθ measured from the foot: component of (endpoint - point) along u.
    let sin2 = -rb.dot(&u) / rb.norm();
    let sin1 = -ra.dot(&u) / ra.norm();
    Ok(u.cross(&radial) * (mu0 * current * (sin2 - sin1) / (4.0 * PI * rho2)))
}

fn wire_field(wire: &Wire, index: usize, point: &Vec3, current: f64, mu0: f64) -> Result<Vec3> {
    let out = match wire.geometry() {
        WireGeometry::Line { point: p0, direction } => {
            infinite_line_field(mu0, p0, direction, current, point).ok_or(Error::Singularity { wire: index })
        }
        WireGeometry::Segment { a, b } => field_of_segment(a, b, current, point, mu0),
    };
    out.map_err(|e| match e {
        Error::Singularity { .. } => Error::Singularity { wire: index },
        other => other,
    })
}

/// Superposed field of every wire for one current channel, summed in
/// wire order.
pub fn channel_field(scene: &Scene, point: &Vec3, channel: Channel) -> Result<Vec3> {
    let mu0 = scene.constants().mu0;
    let mut total = Vec3::zeros();
    for (i, w) in scene.wires().iter().enumerate() {
        total += wire_field(w, i, point, w.current(channel), mu0)?;
    }
    Ok(total)
}

pub fn dc_field(scene: &Scene, point: &Vec3) -> Result<Vec3> {
    channel_field(scene, point, Channel::Dc)
}

/// RF magnetic amplitude; all wires share one frequency and a 0/π phase.
pub fn rf_field_amplitude(scene: &Scene, point: &Vec3) -> Result<Vec3> {
    channel_field(scene, point, Channel::Rf)
}

pub fn field_sample(scene: &Scene, point: &Vec3) -> Result<FieldSample> {
    Ok(FieldSample {
        b_dc: dc_field(scene, point)?,
        b_rf: rf_field_amplitude(scene, point)?,
    })
}
