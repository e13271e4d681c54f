//! Effective potentials: static Zeeman and RF-dressed adiabatic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{dc_field, field_sample};
use crate::model::{Scene, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialMode {
    /// `m_F g_F μ_B |B_DC|`.
    Dc,
    /// Adiabatic RF-dressed level, requires `omega_rf > 0`.
    Dressed,
}

impl PotentialMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            PotentialMode::Dc => "dc",
            PotentialMode::Dressed => "dressed",
        }
    }
}

impl fmt::Display for PotentialMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PotentialMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dc" => Ok(PotentialMode::Dc),
            "dressed" => Ok(PotentialMode::Dressed),
            other => Err(Error::Argument(format!("unknown potential mode `{other}`"))),
        }
    }
}

/// Fails for dressed mode without an RF drive.
pub fn check_mode(scene: &Scene, mode: PotentialMode) -> Result<()> {
    if mode == PotentialMode::Dressed && scene.omega_rf() <= 0.0 {
        return Err(Error::Mode("dressed potential needs omega_rf > 0".into()));
    }
    Ok(())
}

pub fn dc_potential(scene: &Scene, point: &Vec3) -> Result<f64> {
    let b = dc_field(scene, point)?.norm();
    Ok(zeeman_energy(scene, b))
}

fn zeeman_energy(scene: &Scene, b_dc: f64) -> f64 {
    let sp = scene.species();
    sp.m_f() as f64 * (sp.g_f() * scene.constants().mu_b * b_dc)
}

/// Energy of the dressed level with quantum number `m_f` given the
/// detuning and coupling energies (J).
pub fn dressed_level(m_f: i32, detuning: f64, coupling: f64) -> f64 {
    m_f as f64 * detuning.hypot(coupling)
}

/// Component of `b_rf` perpendicular to `b_dc`. With `b_dc = 0` there is
/// no quantization axis and the whole amplitude counts.
pub fn perpendicular_rf(b_dc: &Vec3, b_rf: &Vec3) -> Vec3 {
    let n = b_dc.norm();
    if n == 0.0 {
        return *b_rf;
    }
    let axis = b_dc / n;
    b_rf - axis * b_rf.dot(&axis)
}

/// `m_F · sqrt(Δ² + C²)` with detuning `Δ = g_F μ_B |B_DC| − ħω` and
/// coupling `C = g_F μ_B |B_RF,⊥| / 2`.
pub fn dressed_potential(scene: &Scene, point: &Vec3) -> Result<f64> {
    check_mode(scene, PotentialMode::Dressed)?;
    let f = field_sample(scene, point)?;
    let sp = scene.species();
    let c = scene.constants();
    let g_mu = sp.g_f() * c.mu_b;
    let detuning = g_mu * f.b_dc.norm() - c.hbar * scene.omega_rf();
    let coupling = g_mu * perpendicular_rf(&f.b_dc, &f.b_rf).norm() / 2.0;
    Ok(dressed_level(sp.m_f(), detuning, coupling))
}

pub fn potential(scene: &Scene, point: &Vec3, mode: PotentialMode) -> Result<f64> {
    match mode {
        PotentialMode::Dc => dc_potential(scene, point),
        PotentialMode::Dressed => dressed_potential(scene, point),
    }
}

/// True when `point` is closer than the scene standoff to any wire.
pub fn is_excluded(scene: &Scene, point: &Vec3) -> bool {
    let s = scene.standoff();
    scene.wires().iter().any(|w| w.distance_to(point) < s)
}
