//! Bounded Nelder–Mead simplex search.
//!
//! The search runs in the unit cube; candidate vertices are clamped to the
//! cube and mapped affinely onto the caller's box before evaluation. After
//! convergence it restarts around the best point with a randomly scaled
//! simplex.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOptions {
    /// Initial edge length as a fraction of each bound range.
    pub initial_step: f64,
    /// Stop when the objective spread over the simplex is at most this.
    pub f_tolerance: f64,
    /// Stop when every vertex lies within this normalized distance of
    /// the best vertex.
    pub x_tolerance: f64,
    pub max_evals: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.1,
            f_tolerance: 0.0,
            x_tolerance: 1e-12,
            max_evals: 10_000,
            restarts: 3,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    /// `(evaluations so far, best value so far)` at every improvement.
    pub trace: Vec<(usize, f64)>,
}

struct Evaluator<'a, F> {
    f: F,
    bounds: &'a [(f64, f64)],
    evals: usize,
    best_u: Vec<f64>,
    best_f: f64,
    trace: Vec<(usize, f64)>,
}

impl<F: FnMut(&[f64]) -> Result<f64>> Evaluator<'_, F> {
    fn map(&self, u: &[f64]) -> Vec<f64> {
        u.iter()
            .zip(self.bounds)
            .map(|(&t, &(lo, hi))| lo + t * (hi - lo))
            .collect()
    }

    fn eval(&mut self, u: &[f64]) -> Result<f64> {
        let x = self.map(u);
        let v = (self.f)(&x)?;
        if v.is_nan() {
            return Err(Error::Config("objective returned NaN".into()));
        }
        self.evals += 1;
        if v < self.best_f {
            self.best_f = v;
            self.best_u = u.to_vec();
            self.trace.push((self.evals, v));
        }
        Ok(v)
    }
}

fn clamp_unit(u: &mut [f64]) {
    for t in u {
        *t = t.clamp(0.0, 1.0);
    }
}

fn combine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a), clamped into the cube
    let mut out: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
    clamp_unit(&mut out);
    out
}

/// Minimizes `f` over the box `bounds` starting from `start` (clamped into
/// the box).
pub fn minimize_in_box<F>(f: F, start: &[f64], bounds: &[(f64, f64)], opts: &SimplexOptions) -> Result<SimplexOutcome>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    if start.len() != bounds.len() {
        return Err(Error::Config("start point and bounds differ in length".into()));
    }
    for &(lo, hi) in bounds {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Config(format!("infeasible bounds [{lo}, {hi}]")));
        }
    }
    if opts.max_evals == 0 {
        return Err(Error::Config("max_evals must be at least 1".into()));
    }
    let n = start.len();
    let mut u0: Vec<f64> = start
        .iter()
        .zip(bounds)
        .map(|(&x, &(lo, hi))| (x - lo) / (hi - lo))
        .collect();
    clamp_unit(&mut u0);

    let mut ev = Evaluator {
        f,
        bounds,
        evals: 0,
        best_u: u0.clone(),
        best_f: f64::INFINITY,
        trace: Vec::new(),
    };
    ev.eval(&u0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut step = vec![opts.initial_step; n];

    for round in 0..=opts.restarts {
        if n == 0 || ev.evals >= opts.max_evals {
            break;
        }
        if round > 0 {
            for s in step.iter_mut() {
                let scale: f64 = rng.random_range(0.5..1.5);
                let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                *s = sign * opts.initial_step * scale;
            }
        }
        let base = ev.best_u.clone();
        let base_f = ev.best_f;
        let mut simplex: Vec<(Vec<f64>, f64)> = vec![(base.clone(), base_f)];
        for i in 0..n {
            if ev.evals >= opts.max_evals {
                break;
            }
            let mut v = base.clone();
            let mut t = v[i] + step[i];
            if !(0.0..=1.0).contains(&t) {
                t = v[i] - step[i];
            }
            v[i] = t.clamp(0.0, 1.0);
            let fv = ev.eval(&v)?;
            simplex.push((v, fv));
        }
        if simplex.len() < n + 1 {
            break;
        }
        run_simplex(&mut ev, &mut simplex, opts)?;
    }

    let x = ev.map(&ev.best_u);
    Ok(SimplexOutcome {
        x,
        f: ev.best_f,
        evals: ev.evals,
        trace: ev.trace,
    })
}

fn run_simplex<F>(ev: &mut Evaluator<'_, F>, simplex: &mut [(Vec<f64>, f64)], opts: &SimplexOptions) -> Result<()>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;
    let n = simplex.len() - 1;

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .flat_map(|(v, _)| v.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread <= opts.f_tolerance || size <= opts.x_tolerance || ev.evals >= opts.max_evals {
            return Ok(());
        }

        let mut centroid = vec![0.0; n];
        for (v, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x;
            }
        }
        for c in centroid.iter_mut() {
            *c /= n as f64;
        }

        let worst = simplex[n].clone();
        let reflected = combine(&centroid, &worst.0, -REFLECT);
        let fr = ev.eval(&reflected)?;

        if fr < simplex[0].1 {
            if ev.evals >= opts.max_evals {
                simplex[n] = (reflected, fr);
                continue;
            }
            let expanded = combine(&centroid, &reflected, EXPAND);
            let fe = ev.eval(&expanded)?;
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        if ev.evals >= opts.max_evals {
            return Ok(());
        }
        let contracted = if fr < worst.1 {
            combine(&centroid, &reflected, CONTRACT)
        } else {
            combine(&centroid, &worst.0, CONTRACT)
        };
        let fc = ev.eval(&contracted)?;
        if fc < fr.min(worst.1) {
            simplex[n] = (contracted, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex[1..].iter_mut() {
            if ev.evals >= opts.max_evals {
                return Ok(());
            }
            let v = combine(&best, &vertex.0, SHRINK);
            let fv = ev.eval(&v)?;
            *vertex = (v, fv);
        }
    }
}
