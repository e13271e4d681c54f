//! Scene configuration files (TOML).
//!
//! Exactly one builder section is required: `[four_tube_cell]`,
//! `[crossed_grid]` or a `[[wires]]` list. An optional `[stack]` table
//! replicates the result along x. Dimensioned values accept either a bare
//! SI number or a string with a unit suffix (`"355.6 nm"`, `"-15 uA"`,
//! `"0.27 MHz"`).
//!
//! ```toml
//! rf_frequency = "0.27 MHz"
//! standoff = "100 nm"
//!
//! [species]
//! g_f = 0.5
//! m_f = 2
//!
//! [four_tube_cell]
//! d = "355.6 nm"
//! h = "256.8 nm"
//! i_dc = ["-15 uA", "15 uA", "15 uA", "-15 uA"]
//! i_rf = ["-4 uA", "4 uA", "4 uA", "-4 uA"]
//! ```

use std::fmt::{self, Write as _};
use std::marker::PhantomData;
use std::ops::Range;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use sha2::{Digest, Sha256};
use toml::Spanned;

use super::units::{parse_quantity, Dimension};
use crate::error::{Error, Result};
use crate::model::{
    angular_frequency, build_crossed_grid, build_four_tube_cell, stack_grids, AtomSpecies, CrossedGridLayout,
    PhysicalConstants, Scene, Vec3, Wire, WireGeometry, DEFAULT_STANDOFF,
};

trait Unit {
    const DIM: Option<Dimension>;
}

struct LengthUnit;
struct CurrentUnit;
struct FrequencyUnit;
struct Plain;

impl Unit for LengthUnit {
    const DIM: Option<Dimension> = Some(Dimension::Length);
}
impl Unit for CurrentUnit {
    const DIM: Option<Dimension> = Some(Dimension::Current);
}
impl Unit for FrequencyUnit {
    const DIM: Option<Dimension> = Some(Dimension::Frequency);
}
impl Unit for Plain {
    const DIM: Option<Dimension> = None;
}

/// A float in SI units, read from a number or a unit-suffixed string.
struct Quantity<U>(f64, PhantomData<U>);

impl<U> Quantity<U> {
    fn get(&self) -> f64 {
        self.0
    }
}

impl<'de, U: Unit> Deserialize<'de> for Quantity<U> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<U>(PhantomData<U>);

        impl<U: Unit> Visitor<'_> for V<U> {
            type Value = f64;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                match U::DIM {
                    Some(dim) => write!(f, "a number or a string with a {dim} unit"),
                    None => f.write_str("a number"),
                }
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<f64, E> {
                Ok(v)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<f64, E> {
                Ok(v as f64)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<f64, E> {
                Ok(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<f64, E> {
                match U::DIM {
                    Some(dim) => parse_quantity(v, dim).map_err(E::custom),
                    None => Err(E::invalid_type(de::Unexpected::Str(v), &self)),
                }
            }
        }

        d.deserialize_any(V::<U>(PhantomData)).map(|v| Quantity(v, PhantomData))
    }
}

type Length = Quantity<LengthUnit>;
type Current = Quantity<CurrentUnit>;
type Frequency = Quantity<FrequencyUnit>;
type Number = Quantity<Plain>;

fn values<U>(q: &[Quantity<U>]) -> Vec<f64> {
    q.iter().map(Quantity::get).collect()
}

fn vec3<U>(q: &[Quantity<U>; 3]) -> Vec3 {
    Vec3::new(q[0].get(), q[1].get(), q[2].get())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneConfig {
    rf_frequency: Option<Frequency>,
    rf_omega: Option<Number>,
    standoff: Option<Length>,
    species: Option<SpeciesConfig>,
    constants: Option<ConstantsConfig>,
    four_tube_cell: Option<Spanned<FourTubeCellConfig>>,
    crossed_grid: Option<Spanned<CrossedGridConfig>>,
    wires: Option<Spanned<Vec<Spanned<WireConfig>>>>,
    stack: Option<Spanned<StackConfig>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpeciesConfig {
    g_f: Number,
    m_f: i32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantsConfig {
    mu0: Option<Number>,
    mu_b: Option<Number>,
    hbar: Option<Number>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FourTubeCellConfig {
    d: Length,
    h: Length,
    i_dc: [Current; 4],
    i_rf: Option<[Current; 4]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossedGridConfig {
    y_positions: Vec<Length>,
    z_positions: Vec<Length>,
    h: Length,
    i_dc_z: Vec<Current>,
    i_dc_y: Vec<Current>,
    i_rf_z: Option<Vec<Current>>,
    i_rf_y: Option<Vec<Current>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireConfig {
    point: Option<[Length; 3]>,
    direction: Option<[Number; 3]>,
    a: Option<[Length; 3]>,
    b: Option<[Length; 3]>,
    radius: Option<Length>,
    i_dc: Current,
    i_rf: Option<Current>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StackConfig {
    copies: usize,
    pitch: Option<Length>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

struct Locator<'a>(&'a str);

impl Locator<'_> {
    fn at(&self, span: Range<usize>, e: Error) -> Error {
        let line = line_of(self.0, span.start);
        match e {
            Error::Config(m) | Error::InvalidGeometry(m) => Error::Config(format!("line {line}: {m}")),
            other => other,
        }
    }
}

/// Parses a scene description. Errors carry the line of the offending
/// entry.
pub fn parse_scene_config(text: &str) -> Result<Scene> {
    let cfg: SceneConfig = toml::from_str(text).map_err(|e| Error::Parse {
        line: e.span().map_or(0, |s| line_of(text, s.start)),
        message: e.message().trim().to_string(),
    })?;
    let loc = Locator(text);

    let species = match &cfg.species {
        Some(s) => AtomSpecies::new(s.g_f.get(), s.m_f)?,
        None => AtomSpecies::default(),
    };
    let omega = match (&cfg.rf_frequency, &cfg.rf_omega) {
        (Some(_), Some(_)) => return Err(Error::Config("give either rf_frequency or rf_omega, not both".into())),
        (Some(f), None) => angular_frequency(f.get()),
        (None, Some(w)) => w.get(),
        (None, None) => 0.0,
    };

    let builders = [
        cfg.four_tube_cell.is_some(),
        cfg.crossed_grid.is_some(),
        cfg.wires.is_some(),
    ];
    match builders.iter().filter(|b| **b).count() {
        0 => {
            return Err(Error::Config(
                "no builder: expected [four_tube_cell], [crossed_grid] or [[wires]]".into(),
            ))
        }
        1 => {}
        _ => return Err(Error::Config("more than one builder section given".into())),
    }

    let mut natural_pitch = None;
    let mut scene = if let Some(cell) = &cfg.four_tube_cell {
        let c = cell.get_ref();
        let i_rf = c.i_rf.as_ref().map_or([0.0; 4], |v| v.each_ref().map(Quantity::get));
        natural_pitch = Some(2.0 * c.h.get());
        build_four_tube_cell(
            c.d.get(),
            c.h.get(),
            c.i_dc.each_ref().map(Quantity::get),
            i_rf,
            omega,
            species,
        )
        .map_err(|e| loc.at(cell.span(), e))?
    } else if let Some(grid) = &cfg.crossed_grid {
        let g = grid.get_ref();
        let zeros = |n: usize| vec![0.0; n];
        let layout = CrossedGridLayout {
            y_positions: values(&g.y_positions),
            z_positions: values(&g.z_positions),
            h: g.h.get(),
            i_dc_z: values(&g.i_dc_z),
            i_dc_y: values(&g.i_dc_y),
            i_rf_z: g.i_rf_z.as_deref().map_or_else(|| zeros(g.y_positions.len()), values),
            i_rf_y: g.i_rf_y.as_deref().map_or_else(|| zeros(g.z_positions.len()), values),
        };
        natural_pitch = Some(2.0 * g.h.get());
        build_crossed_grid(&layout, omega, species).map_err(|e| loc.at(grid.span(), e))?
    } else {
        let list = cfg.wires.as_ref().expect("one builder present");
        if list.get_ref().is_empty() {
            return Err(loc.at(list.span(), Error::Config("explicit wire list is empty".into())));
        }
        let wires = list
            .get_ref()
            .iter()
            .map(|w| wire_from(w.get_ref()).map_err(|e| loc.at(w.span(), e)))
            .collect::<Result<Vec<_>>>()?;
        Scene::new(wires, omega, species)?
    };

    if let Some(stack) = &cfg.stack {
        let s = stack.get_ref();
        let pitch = match (&s.pitch, natural_pitch) {
            (Some(p), _) => p.get(),
            (None, Some(p)) => p,
            (None, None) if s.copies <= 1 => 0.0,
            (None, None) => {
                return Err(loc.at(
                    stack.span(),
                    Error::Config("stack pitch is required for explicit wires".into()),
                ))
            }
        };
        scene = stack_grids(&scene, s.copies, pitch).map_err(|e| loc.at(stack.span(), e))?;
    }

    let standoff = cfg.standoff.as_ref().map_or(DEFAULT_STANDOFF, Quantity::get);
    scene = scene.with_standoff(standoff)?;
    if let Some(c) = &cfg.constants {
        let d = PhysicalConstants::default();
        let get = |q: &Option<Number>, dflt: f64| q.as_ref().map_or(dflt, Quantity::get);
        scene = scene.with_constants(PhysicalConstants::new(
            get(&c.mu0, d.mu0),
            get(&c.mu_b, d.mu_b),
            get(&c.hbar, d.hbar),
        )?);
    }
    Ok(scene)
}

fn wire_from(w: &WireConfig) -> Result<Wire> {
    let i_rf = w.i_rf.as_ref().map_or(0.0, Quantity::get);
    let wire = match (&w.point, &w.direction, &w.a, &w.b) {
        (Some(p), Some(u), None, None) => Wire::line(vec3(p), vec3(u), w.i_dc.get(), i_rf)?,
        (None, None, Some(a), Some(b)) => Wire::segment(vec3(a), vec3(b), w.i_dc.get(), i_rf)?,
        _ => {
            return Err(Error::Config(
                "a wire needs either `point` and `direction` or endpoints `a` and `b`".into(),
            ))
        }
    };
    match &w.radius {
        Some(r) => wire.with_radius(r.get()),
        None => Ok(wire),
    }
}

fn triple(v: &Vec3) -> String {
    format!("[{:?}, {:?}, {:?}]", v.x, v.y, v.z)
}

/// Canonical text form of a scene as an explicit wire list in SI units.
/// Parsing the output reproduces the scene exactly.
pub fn serialize_scene(scene: &Scene) -> String {
    let mut out = String::new();
    let c = scene.constants();
    let sp = scene.species();
    let _ = writeln!(out, "rf_omega = {:?}", scene.omega_rf());
    let _ = writeln!(out, "standoff = {:?}", scene.standoff());
    let _ = writeln!(out, "\n[species]\ng_f = {:?}\nm_f = {}", sp.g_f(), sp.m_f());
    let _ = writeln!(
        out,
        "\n[constants]\nmu0 = {:?}\nmu_b = {:?}\nhbar = {:?}",
        c.mu0, c.mu_b, c.hbar
    );
    for w in scene.wires() {
        out.push_str("\n[[wires]]\n");
        match w.geometry() {
            WireGeometry::Line { point, direction } => {
                let _ = writeln!(out, "point = {}\ndirection = {}", triple(point), triple(direction));
            }
            WireGeometry::Segment { a, b } => {
                let _ = writeln!(out, "a = {}\nb = {}", triple(a), triple(b));
            }
        }
        let _ = writeln!(
            out,
            "radius = {:?}\ni_dc = {:?}\ni_rf = {:?}",
            w.radius(),
            w.i_dc(),
            w.i_rf()
        );
    }
    out
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn scene_hash(scene: &Scene) -> String {
    Sha256::digest(serialize_scene(scene).as_bytes())
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::presets;

    const FIG1: &str = r#"
rf_frequency = "0.27 MHz"
standoff = "100 nm"

[species]
g_f = 0.5
m_f = 2

[four_tube_cell]
d = "355.6 nm"
h = "256.8 nm"
i_dc = ["-15 uA", "15 uA", "15 uA", "-15 uA"]
i_rf = ["-4 uA", "4 uA", "4 uA", "-4 uA"]
"#;

    #[test]
    fn cell_config_matches_builder() {
        assert_eq!(parse_scene_config(FIG1).unwrap(), presets::single_cell());
    }

    #[test]
    fn serialization_round_trip() {
        for s in [presets::single_cell(), presets::stacked_six_by_six()] {
            let text = serialize_scene(&s);
            let back = parse_scene_config(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(serialize_scene(&back), text);
            assert_eq!(scene_hash(&back), scene_hash(&s));
        }
    }

    #[test]
    fn segments_round_trip() {
        let text = r#"
rf_omega = 1e6
[[wires]]
a = ["0 nm", "0 nm", "-1 um"]
b = [0, 0, 1e-6]
i_dc = "2 uA"
radius = "1 nm"
"#;
        let s = parse_scene_config(text).unwrap();
        assert!(matches!(s.wires()[0].geometry(), WireGeometry::Segment { .. }));
        assert_eq!(s.wires()[0].radius(), 1e-9);
        assert_eq!(parse_scene_config(&serialize_scene(&s)).unwrap(), s);
    }

    #[test]
    fn empty_wire_list_is_a_config_error() {
        let err = parse_scene_config("wires = []\n").unwrap_err();
        assert!(matches!(err, Error::Config(ref m) if m.contains("empty")), "{err}");
    }

    #[test]
    fn unknown_field_is_located() {
        let text = "rf_frequency = 1\n[species]\ng_f = 0.5\nm_f = 2\ncolour = 3\n";
        match parse_scene_config(text).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 5, "{message}");
                assert!(message.contains("colour"));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn malformed_number_is_located() {
        let text = FIG1.replace("\"256.8 nm\"", "\"25x6.8 nm\"");
        match parse_scene_config(&text).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 11),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn missing_field_is_reported() {
        let text = FIG1.replace("h = \"256.8 nm\"\n", "");
        let err = parse_scene_config(&text).unwrap_err();
        assert!(
            matches!(err, Error::Parse { ref message, .. } if message.contains('h')),
            "{err}"
        );
    }

    #[test]
    fn builder_errors_carry_lines() {
        let text = FIG1.replace("\"256.8 nm\"", "\"-1 nm\"");
        let err = parse_scene_config(&text).unwrap_err();
        assert!(matches!(err, Error::Config(ref m) if m.starts_with("line 9")), "{err}");
    }

    #[test]
    fn exactly_one_builder() {
        assert!(matches!(parse_scene_config("rf_omega = 1.0\n"), Err(Error::Config(_))));
        let two = format!("{FIG1}\n[[wires]]\npoint = [0,0,0]\ndirection = [0,0,1]\ni_dc = 1\n");
        assert!(parse_scene_config(&two).is_err());
    }

    #[test]
    fn stacked_grid_config() {
        let mut text = String::from("rf_frequency = \"0.27 MHz\"\n\n[crossed_grid]\n");
        let list = |v: &[f64], unit: &str, scale: f64| {
            let items: Vec<String> = v.iter().map(|x| format!("\"{} {unit}\"", x * scale)).collect();
            format!("[{}]", items.join(", "))
        };
        let l = presets::grid_layout();
        let _ = writeln!(text, "y_positions = {}", list(&l.y_positions, "m", 1.0));
        let _ = writeln!(text, "z_positions = {}", list(&l.z_positions, "m", 1.0));
        text.push_str("h = \"237 nm\"\n");
        let _ = writeln!(text, "i_dc_z = {}", list(&l.i_dc_z, "A", 1.0));
        let _ = writeln!(text, "i_dc_y = {}", list(&l.i_dc_y, "A", 1.0));
        let _ = writeln!(text, "i_rf_z = {}", list(&l.i_rf_z, "A", 1.0));
        let _ = writeln!(text, "i_rf_y = {}", list(&l.i_rf_y, "A", 1.0));
        text.push_str("\n[stack]\ncopies = 3\n");
        assert_eq!(parse_scene_config(&text).unwrap(), presets::stacked_six_by_six());
    }
}
