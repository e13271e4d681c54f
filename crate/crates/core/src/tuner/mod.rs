//! Tuning wire currents to shape the potential at chosen points.

pub mod simplex;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::model::{Channel, Scene, Vec3};
use crate::potential::{check_mode, is_excluded, potential, PotentialMode};

pub use simplex::{minimize_in_box, SimplexOptions, SimplexOutcome};

/// Default absolute tolerance on the objective spread (J).
pub const DEFAULT_TOLERANCE: f64 = 1e-32;
pub const DEFAULT_MAX_EVALS: usize = 10_000;
pub const DEFAULT_RESTARTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A current the search may change, with its admissible range (A).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeCurrent {
    pub wire: usize,
    pub channel: Channel,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Start {
    /// The template scene's currents, clamped into the bounds.
    #[default]
    Scene,
    Midpoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuneProblem {
    pub scene: Scene,
    pub free: Vec<FreeCurrent>,
    pub targets: Vec<Vec3>,
    pub mode: PotentialMode,
    pub sense: Sense,
    pub tolerance: f64,
    pub max_evals: usize,
    pub restarts: usize,
    pub seed: u64,
    pub start: Start,
}

impl TuneProblem {
    /// Minimization problem with default tolerance, budget and restarts.
    pub fn new(scene: Scene, free: Vec<FreeCurrent>, targets: Vec<Vec3>, mode: PotentialMode) -> Self {
        Self {
            scene,
            free,
            targets,
            mode,
            sense: Sense::Minimize,
            tolerance: DEFAULT_TOLERANCE,
            max_evals: DEFAULT_MAX_EVALS,
            restarts: DEFAULT_RESTARTS,
            seed: 0,
            start: Start::Scene,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.free.is_empty() {
            return Err(Error::Config("no free currents".into()));
        }
        let mut seen = HashSet::new();
        for f in &self.free {
            if f.wire >= self.scene.wires().len() {
                return Err(Error::Config(format!("free current refers to missing wire {}", f.wire)));
            }
            if !seen.insert((f.wire, f.channel)) {
                return Err(Error::Config(format!("wire {} {:?} listed twice", f.wire, f.channel)));
            }
            if !(f.lo.is_finite() && f.hi.is_finite() && f.lo < f.hi) {
                return Err(Error::Config(format!(
                    "infeasible bounds [{}, {}] for wire {}",
                    f.lo, f.hi, f.wire
                )));
            }
        }
        if self.targets.is_empty() {
            return Err(Error::Config("no target points".into()));
        }
        if let Some(p) = self.targets.iter().find(|p| is_excluded(&self.scene, p)) {
            return Err(Error::Config(format!("target {p:?} lies inside the standoff")));
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return Err(Error::Config("tolerance must be >= 0".into()));
        }
        check_mode(&self.scene, self.mode)
    }

    /// Template scene with the free currents set to `values`.
    pub fn scene_with(&self, values: &[f64]) -> Result<Scene> {
        let mut s = self.scene.clone();
        for (f, &v) in self.free.iter().zip(values) {
            s = s.with_current(f.wire, f.channel, v)?;
        }
        Ok(s)
    }

    fn start_point(&self) -> Vec<f64> {
        self.free
            .iter()
            .map(|f| match self.start {
                Start::Scene => self.scene.wires()[f.wire].current(f.channel).clamp(f.lo, f.hi),
                Start::Midpoint => 0.5 * (f.lo + f.hi),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    /// Optimized values of the free currents, in problem order (A).
    pub currents: Vec<f64>,
    pub objective: f64,
    pub initial_objective: f64,
    pub evals: usize,
    /// `(evaluations, best objective so far)` at each improvement.
    pub trace: Vec<(usize, f64)>,
    pub scene: Scene,
}

/// Sum of the potential over the target points (J).
pub fn objective(scene: &Scene, targets: &[Vec3], mode: PotentialMode) -> Result<f64> {
    targets
        .iter()
        .try_fold(0.0, |acc, p| Ok(acc + potential(scene, p, mode)?))
}

pub fn optimize_currents(problem: &TuneProblem) -> Result<TuneResult> {
    problem.validate()?;
    optimize_with(problem, |values| {
        let s = problem.scene_with(values)?;
        objective(&s, &problem.targets, problem.mode)
    })
}

/// Runs the search of [`optimize_currents`] against an arbitrary
/// objective of the free-current vector.
pub fn optimize_with<F>(problem: &TuneProblem, mut f: F) -> Result<TuneResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    if problem.free.is_empty() {
        return Err(Error::Config("no free currents".into()));
    }
    let bounds: Vec<(f64, f64)> = problem.free.iter().map(|f| (f.lo, f.hi)).collect();
    let sign = match problem.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let opts = SimplexOptions {
        f_tolerance: problem.tolerance,
        max_evals: problem.max_evals,
        restarts: problem.restarts,
        seed: problem.seed,
        ..Default::default()
    };
    let out = minimize_in_box(|x| Ok(sign * f(x)?), &problem.start_point(), &bounds, &opts)?;
    let initial_objective = sign * out.trace[0].1;
    Ok(TuneResult {
        scene: problem.scene_with(&out.x)?,
        currents: out.x,
        objective: sign * out.f,
        initial_objective,
        evals: out.evals,
        trace: out.trace.into_iter().map(|(n, v)| (n, sign * v)).collect(),
    })
}

/// The four crossing targets of a four-tube cell: halfway between the
/// layers above each wire crossing.
pub fn cell_crossing_targets(scene: &Scene) -> Vec<Vec3> {
    scene.crossing_points()
}
