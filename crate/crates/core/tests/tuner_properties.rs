use nanotrap::model::presets;
use nanotrap::potential::potential;
use nanotrap::tuner::{
    cell_crossing_targets, objective, optimize_currents, optimize_with, FreeCurrent, Sense, TuneProblem,
};
use nanotrap::{Channel, PotentialMode, Scene, Vec3};

fn cell_problem(scene: Scene, mode: PotentialMode) -> TuneProblem {
    let free = (0..4)
        .map(|w| {
            let i = scene.wires()[w].i_dc();
            let (a, b) = (0.8 * i, 1.2 * i);
            FreeCurrent {
                wire: w,
                channel: Channel::Dc,
                lo: a.min(b),
                hi: a.max(b),
            }
        })
        .collect();
    let targets = cell_crossing_targets(&scene);
    TuneProblem::new(scene, free, targets, mode)
}

fn scaled_cell(alpha: f64) -> Scene {
    let mut s = presets::single_cell();
    for w in 0..4 {
        let i = s.wires()[w].i_dc();
        s = s.with_current(w, Channel::Dc, alpha * i).unwrap();
    }
    s
}

#[test]
fn synthetic_quadratic_reaches_its_optimum() {
    let c = [3e-6, -7e-6, 11e-6, 0.5e-6];
    let s = presets::single_cell();
    let free: Vec<FreeCurrent> = (0..4)
        .map(|w| FreeCurrent {
            wire: w,
            channel: Channel::Dc,
            lo: -20e-6,
            hi: 20e-6,
        })
        .collect();
    let p = TuneProblem::new(s, free, vec![Vec3::zeros()], PotentialMode::Dc);
    let r = optimize_with(&p, |x| Ok(x.iter().zip(c).map(|(a, b)| (a - b).powi(2)).sum())).unwrap();
    for (x, target) in r.currents.iter().zip(c) {
        assert!((x - target).abs() <= 1e-6 * 40e-6, "{x:e} vs {target:e}");
    }
}

#[test]
fn tuned_cell_does_not_get_worse() {
    let p = cell_problem(presets::single_cell(), PotentialMode::Dressed);
    let start = objective(&p.scene, &p.targets, p.mode).unwrap();
    assert!(start.is_finite() && start > 0.0);
    let r = optimize_currents(&p).unwrap();
    assert_eq!(r.initial_objective, start);
    assert!(r.objective <= start);
    let again = objective(&r.scene, &p.targets, p.mode).unwrap();
    assert!((again - r.objective).abs() <= 1e-12 * r.objective.abs());
    for (x, f) in r.currents.iter().zip(&p.free) {
        assert!(f.lo <= *x && *x <= f.hi);
    }
    assert!(r.trace.windows(2).all(|w| w[1].1 <= w[0].1 && w[1].0 > w[0].0));
}

#[test]
fn search_is_deterministic() {
    let mut p = cell_problem(presets::single_cell(), PotentialMode::Dressed);
    p.max_evals = 400;
    p.seed = 42;
    assert_eq!(optimize_currents(&p).unwrap(), optimize_currents(&p).unwrap());
}

#[test]
fn dc_search_is_scale_covariant() {
    let mut base = cell_problem(scaled_cell(1.0), PotentialMode::Dc);
    base.tolerance = 0.0;
    base.max_evals = 600;
    for alpha in [0.25, 2.0, 8.0] {
        let mut scaled = cell_problem(scaled_cell(alpha), PotentialMode::Dc);
        scaled.tolerance = 0.0;
        scaled.max_evals = 600;
        let a = optimize_currents(&base).unwrap();
        let b = optimize_currents(&scaled).unwrap();
        assert_eq!(a.evals, b.evals);
        assert_eq!(a.trace.len(), b.trace.len());
        for ((na, fa), (nb, fb)) in a.trace.iter().zip(&b.trace) {
            assert_eq!(na, nb);
            assert_eq!(fa * alpha, *fb);
        }
        for (x, y) in a.currents.iter().zip(&b.currents) {
            assert_eq!(x * alpha, *y);
        }
    }
}

#[test]
fn maximizing_reports_raw_objective() {
    let mut p = cell_problem(presets::single_cell(), PotentialMode::Dc);
    p.sense = Sense::Maximize;
    p.max_evals = 300;
    let r = optimize_currents(&p).unwrap();
    assert!(r.objective >= r.initial_objective);
    assert!(r.trace.windows(2).all(|w| w[1].1 >= w[0].1));
    let single = potential(&r.scene, &p.targets[0], p.mode).unwrap();
    assert!(single > 0.0);
}
