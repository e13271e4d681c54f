mod common;

use std::f64::consts::PI;
use std::fs;

use common::scene_path;
use nanotrap::io::{
    parse_scene_config, read_grid, render_slice, scene_hash, serialize_scene, write_grid, Axis, DEFAULT_CLAMP,
};
use nanotrap::landscape::{sample_grid, GridSpec};
use nanotrap::model::{presets, WireGeometry};
use nanotrap::{PotentialMode, Scene};

fn load(name: &str) -> Scene {
    parse_scene_config(&fs::read_to_string(scene_path(name)).unwrap()).unwrap()
}

fn assert_close(a: &Scene, b: &Scene) {
    assert_eq!(a.wires().len(), b.wires().len());
    assert_eq!(a.omega_rf(), b.omega_rf());
    assert_eq!(a.standoff(), b.standoff());
    for (wa, wb) in a.wires().iter().zip(b.wires()) {
        assert_eq!((wa.i_dc(), wa.i_rf(), wa.radius()), (wb.i_dc(), wb.i_rf(), wb.radius()));
        match (wa.geometry(), wb.geometry()) {
            (WireGeometry::Line { point: p, direction: u }, WireGeometry::Line { point: q, direction: v }) => {
                assert!((p - q).norm() < 1e-20, "{p:?} {q:?}");
                assert_eq!(u, v);
            }
            _ => panic!("unexpected geometry"),
        }
    }
}

#[test]
fn cell_fixture_is_the_builder() {
    let s = load("fig1.trap");
    assert_eq!(s, presets::single_cell());
    assert_eq!(scene_hash(&s), scene_hash(&presets::single_cell()));
}

#[test]
fn grid_fixtures_match_presets() {
    assert_close(&load("grid6x6.trap"), &presets::six_by_six());
    assert_close(&load("stack3.trap"), &presets::stacked_six_by_six());
}

#[test]
fn fixtures_round_trip_through_serialization() {
    for name in ["fig1.trap", "grid6x6.trap", "stack3.trap"] {
        let s = load(name);
        assert_eq!(parse_scene_config(&serialize_scene(&s)).unwrap(), s, "{name}");
    }
}

fn cell_grid(n: usize, mode: PotentialMode) -> nanotrap::landscape::PotentialGrid {
    let s = presets::single_cell();
    let spec = GridSpec::around_crossings(&s, presets::CELL_SPACING / 2.0, [n; 3]).unwrap();
    sample_grid(&s, &spec, mode).unwrap()
}

#[test]
fn sampled_grid_round_trips_bit_exactly() {
    let g = cell_grid(33, PotentialMode::Dressed);
    let hash = scene_hash(&presets::single_cell());
    let mut buf = Vec::new();
    write_grid(&mut buf, &g, Some(&hash)).unwrap();
    let back = read_grid(&mut buf.as_slice()).unwrap();
    assert_eq!(back.scene_hash.as_deref(), Some(hash.as_str()));
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(back.grid.values()), bits(g.values()));
    assert_eq!(back.grid.mask(), g.mask());
    let mut again = Vec::new();
    write_grid(&mut again, &back.grid, back.scene_hash.as_deref()).unwrap();
    assert_eq!(again, buf);
}

/// Area of a disc of radius `r` on the near side of a chord at distance
/// `a` from its centre.
fn clipped_disc(r: f64, a: f64) -> f64 {
    let cap = r * r * (a / r).acos() - a * (r * r - a * a).sqrt();
    PI * r * r - cap
}

#[test]
fn mask_volume_matches_cylinders() {
    let g = cell_grid(81, PotentialMode::Dc);
    let spec = g.spec();
    let cell = spec.spacing.x * spec.spacing.y * spec.spacing.z;
    let masked = g.mask().iter().filter(|m| **m).count() as f64 * cell;

    // Four tubes, each running the full lateral width of the box and
    // clipped by the box faces normal to x.
    let s = presets::single_cell();
    let x_max = spec.origin.x + spec.spacing.x * (spec.counts[0] - 1) as f64;
    let wire_x = presets::CELL_LAYER_GAP / 2.0;
    let length = spec.spacing.y * spec.counts[1] as f64;
    let estimate = 4.0 * clipped_disc(s.standoff(), x_max - wire_x) * length;
    let ratio = masked / estimate;
    assert!((0.9..=1.1).contains(&ratio), "masked {masked:e} estimate {estimate:e}");
}

#[test]
fn fig1_slice_shows_the_expected_pattern() {
    let g = cell_grid(81, PotentialMode::Dressed);
    let spec = *g.spec();
    // z = 0 plane: x in columns, y in rows with +y at the top.
    let img = render_slice(&g, Axis::Z, 40, DEFAULT_CLAMP).unwrap();
    let header = b"P6\n81 81\n255\n";
    assert_eq!(&img[..header.len()], header);
    let px = |x: f64, y: f64| {
        let c = ((x - spec.origin.x) / spec.spacing.x).round() as usize;
        let r = 80 - ((y - spec.origin.y) / spec.spacing.y).round() as usize;
        let o = header.len() + 3 * (r * 81 + c);
        [img[o], img[o + 1], img[o + 2]]
    };
    let centre = px(0.0, 0.0);
    assert!(centre[1] > 200 && centre[2] < 40, "{centre:?}");
    // Every direction out of the centre falls to a much lower (bluer)
    // level before reaching the tubes.
    for k in 0..8 {
        let phi = k as f64 * std::f64::consts::FRAC_PI_4;
        let lowest = (1..=16)
            .map(|n| {
                let r = n as f64 * 10e-9;
                px(r * phi.cos(), r * phi.sin())
            })
            .filter(|p| *p != [139, 0, 0])
            .map(|p| p[1])
            .min()
            .unwrap();
        assert!(lowest + 100 < centre[1], "direction {k}: {lowest}");
    }
    let darkest = img[header.len()..]
        .chunks(3)
        .filter(|p| p[0] == 0)
        .map(|p| p[1])
        .min()
        .unwrap();
    assert!(darkest < 10);
    let half = presets::CELL_SPACING / 2.0;
    let tube_x = -presets::CELL_LAYER_GAP / 2.0;
    assert_eq!(px(tube_x, half), [139, 0, 0]);
    assert_eq!(px(tube_x, -half), [139, 0, 0]);
    let dark_red = img[header.len()..].chunks(3).filter(|p| *p == [139, 0, 0]).count();
    assert!(dark_red > 200, "{dark_red}");
}
