//! Straightforward reference implementations for the landscape search.

use std::collections::VecDeque;

use nanotrap::landscape::{ExtremumKind, GridSpec, PotentialGrid};
use nanotrap::{PotentialMode, Vec3};
use rand::Rng;

/// Random grid with at most `max_n` cells per axis. About half the grids
/// take small integer values so ties are common.
pub fn random_grid<R: Rng>(rng: &mut R, max_n: usize, mask_p: f64) -> PotentialGrid {
    let counts = [0; 3].map(|_| rng.random_range(2..=max_n));
    let spec = GridSpec::new(Vec3::new(-1.0, 0.0, 2.0), Vec3::new(0.5, 1.0, 0.25), counts).unwrap();
    let ties = rng.random_bool(0.5);
    let mut values = Vec::with_capacity(spec.len());
    let mut mask = Vec::with_capacity(spec.len());
    for _ in 0..spec.len() {
        let m = rng.random_bool(mask_p);
        mask.push(m);
        values.push(if m {
            f64::NAN
        } else if ties {
            rng.random_range(0..6) as f64
        } else {
            rng.random_range(-1.0..1.0)
        });
    }
    PotentialGrid::new(spec, values, mask, PotentialMode::Dc).unwrap()
}

fn at(grid: &PotentialGrid, i: isize, j: isize, k: isize) -> Option<f64> {
    let c = grid.spec().counts;
    if i < 0 || j < 0 || k < 0 || i >= c[0] as isize || j >= c[1] as isize || k >= c[2] as isize {
        return None;
    }
    let idx = [i as usize, j as usize, k as usize];
    (!grid.is_masked(idx)).then(|| grid.value(idx))
}

/// `(kind, index, isolated, margin)` for every strict 26-neighbour
/// extremum, in scan order.
pub fn brute_extrema(grid: &PotentialGrid, shell: usize) -> Vec<(ExtremumKind, [usize; 3], bool, f64)> {
    let c = grid.spec().counts;
    let mut out = Vec::new();
    for k in 0..c[2] as isize {
        for j in 0..c[1] as isize {
            for i in 0..c[0] as isize {
                let Some(v) = at(grid, i, j, k) else { continue };
                let mut greater = 0;
                let mut less = 0;
                let mut complete = true;
                for dk in -1..=1 {
                    for dj in -1..=1 {
                        for di in -1..=1 {
                            if (di, dj, dk) == (0, 0, 0) {
                                continue;
                            }
                            match at(grid, i + di, j + dj, k + dk) {
                                Some(n) if v > n => greater += 1,
                                Some(n) if v < n => less += 1,
                                Some(_) => {}
                                None => complete = false,
                            }
                        }
                    }
                }
                if !complete {
                    continue;
                }
                let kind = if greater == 26 {
                    ExtremumKind::Max
                } else if less == 26 {
                    ExtremumKind::Min
                } else {
                    continue;
                };
                let (iso, margin) = brute_shell(grid, [i, j, k], kind, shell as isize);
                out.push((kind, [i as usize, j as usize, k as usize], iso, margin));
            }
        }
    }
    out
}

fn brute_shell(grid: &PotentialGrid, c: [isize; 3], kind: ExtremumKind, r: isize) -> (bool, f64) {
    let n = grid.spec().counts;
    if r == 0 || (0..3).any(|a| c[a] - r < 0 || c[a] + r >= n[a] as isize) {
        return (false, 0.0);
    }
    let v = at(grid, c[0], c[1], c[2]).unwrap();
    let mut iso = true;
    let mut margin = f64::INFINITY;
    for dk in -r..=r {
        for dj in -r..=r {
            for di in -r..=r {
                if di.abs().max(dj.abs()).max(dk.abs()) != r {
                    continue;
                }
                if let Some(s) = at(grid, c[0] + di, c[1] + dj, c[2] + dk) {
                    iso &= match kind {
                        ExtremumKind::Max => s < v,
                        ExtremumKind::Min => s > v,
                    };
                    margin = margin.min((v - s).abs());
                }
            }
        }
    }
    if margin.is_infinite() {
        (false, 0.0)
    } else {
        (iso, margin)
    }
}

fn connected_below(grid: &PotentialGrid, a: [usize; 3], b: [usize; 3], key: &dyn Fn(f64) -> f64, t: f64) -> bool {
    let spec = grid.spec();
    let ok = |idx: [usize; 3]| !grid.is_masked(idx) && key(grid.value(idx)) <= t;
    if !ok(a) || !ok(b) {
        return false;
    }
    let mut seen = vec![false; spec.len()];
    let mut queue = VecDeque::from([a]);
    seen[spec.linear(a)] = true;
    while let Some(u) = queue.pop_front() {
        if u == b {
            return true;
        }
        for dk in -1isize..=1 {
            for dj in -1isize..=1 {
                for di in -1isize..=1 {
                    let n = [u[0] as isize + di, u[1] as isize + dj, u[2] as isize + dk];
                    if n.iter().zip(spec.counts).any(|(&x, c)| x < 0 || x >= c as isize) {
                        continue;
                    }
                    let n = n.map(|x| x as usize);
                    let l = spec.linear(n);
                    if !seen[l] && ok(n) {
                        seen[l] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
    }
    false
}

/// Minimax (Min) or maximin (Max) path value found by bisecting over the
/// sorted distinct cell values with a flood fill at each threshold.
pub fn threshold_barrier(grid: &PotentialGrid, a: [usize; 3], b: [usize; 3], kind: ExtremumKind) -> Option<f64> {
    let key = move |v: f64| match kind {
        ExtremumKind::Min => v,
        ExtremumKind::Max => -v,
    };
    let mut levels: Vec<f64> = grid
        .values()
        .iter()
        .zip(grid.mask())
        .filter(|(_, m)| !**m)
        .map(|(v, _)| key(*v))
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    if !connected_below(grid, a, b, &key, *levels.last()?) {
        return None;
    }
    let (mut lo, mut hi) = (0, levels.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if connected_below(grid, a, b, &key, levels[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(match kind {
        ExtremumKind::Min => levels[lo],
        ExtremumKind::Max => -levels[lo],
    })
}

/// Random unmasked cell, if any.
pub fn random_open_cell<R: Rng>(rng: &mut R, grid: &PotentialGrid) -> Option<[usize; 3]> {
    let open: Vec<usize> = (0..grid.spec().len()).filter(|&l| !grid.mask()[l]).collect();
    if open.is_empty() {
        return None;
    }
    Some(grid.spec().unravel(open[rng.random_range(0..open.len())]))
}
