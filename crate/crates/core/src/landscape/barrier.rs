use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::extrema::{ExtremumKind, NEIGHBOURS};
use super::grid::PotentialGrid;
use crate::error::{Error, Result};

/// Result of a minimax (or maximin) path search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Barrier {
    /// Path extremum value: the lowest possible path maximum between two
    /// minima, or the highest possible path minimum between two maxima.
    pub value: f64,
    /// Cell attaining `value` on the selected path.
    pub saddle: [usize; 3],
}

impl Barrier {
    /// Barrier height above the higher of two minima (or depth below the
    /// lower of two maxima, as a positive number).
    pub fn height(&self, grid: &PotentialGrid, a: [usize; 3], b: [usize; 3], kind: ExtremumKind) -> f64 {
        match kind {
            ExtremumKind::Min => self.value - grid.value(a).max(grid.value(b)),
            ExtremumKind::Max => grid.value(a).min(grid.value(b)) - self.value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

fn check_endpoint(grid: &PotentialGrid, idx: [usize; 3]) -> Result<()> {
    if !grid.spec().contains(idx) {
        return Err(Error::Argument(format!("cell {idx:?} is outside the grid")));
    }
    if grid.is_masked(idx) {
        return Err(Error::Argument(format!("cell {idx:?} is masked")));
    }
    Ok(())
}

/// Minimax path value between two cells over 26-connected unmasked
/// cells (`Min` wells), or the maximin dual (`Max` peaks).
///
/// Bottleneck variant of Dijkstra; equal path costs are settled in
/// linear-index order, so the returned saddle is deterministic.
pub fn barrier_between(grid: &PotentialGrid, a: [usize; 3], b: [usize; 3], kind: ExtremumKind) -> Result<Barrier> {
    check_endpoint(grid, a)?;
    check_endpoint(grid, b)?;
    let spec = grid.spec();
    let values = grid.values();
    let mask = grid.mask();
    let key = |lin: usize| match kind {
        ExtremumKind::Min => values[lin],
        ExtremumKind::Max => -values[lin],
    };
    let start = spec.linear(a);
    let goal = spec.linear(b);
    let n = spec.len();
    let mut best = vec![f64::INFINITY; n];
    let mut saddle = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    best[start] = key(start);
    saddle[start] = start;
    heap.push(Reverse(Key(best[start], start)));

    while let Some(Reverse(Key(cost, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == goal {
            let value = match kind {
                ExtremumKind::Min => cost,
                ExtremumKind::Max => -cost,
            };
            return Ok(Barrier {
                value,
                saddle: spec.unravel(saddle[u]),
            });
        }
        let ui = spec.unravel(u);
        for d in NEIGHBOURS {
            let ni = [
                ui[0].wrapping_add_signed(d[0]),
                ui[1].wrapping_add_signed(d[1]),
                ui[2].wrapping_add_signed(d[2]),
            ];
            if !spec.contains(ni) {
                continue;
            }
            let v = spec.linear(ni);
            if mask[v] || done[v] {
                continue;
            }
            let kv = key(v);
            let (next, via) = if kv > cost { (kv, v) } else { (cost, saddle[u]) };
            if next < best[v] {
                best[v] = next;
                saddle[v] = via;
                heap.push(Reverse(Key(next, v)));
            }
        }
    }
    Err(Error::NoPath { from: a, to: b })
}
