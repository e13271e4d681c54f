//! Decimal quantities with optional SI unit suffixes.
//!
//! Suffixes shift the decimal exponent before the number is parsed, so
//! `355.6 nm` yields exactly the double nearest to 355.6e-9.

use std::fmt;

use crate::model::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Current,
    Frequency,
    Energy,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::Length => "length",
            Dimension::Current => "current",
            Dimension::Frequency => "frequency",
            Dimension::Energy => "energy",
        })
    }
}

const UNITS: &[(&str, Dimension, i32)] = &[
    ("m", Dimension::Length, 0),
    ("cm", Dimension::Length, -2),
    ("mm", Dimension::Length, -3),
    ("um", Dimension::Length, -6),
    ("μm", Dimension::Length, -6),
    ("µm", Dimension::Length, -6),
    ("nm", Dimension::Length, -9),
    ("pm", Dimension::Length, -12),
    ("Å", Dimension::Length, -10),
    ("angstrom", Dimension::Length, -10),
    ("A", Dimension::Current, 0),
    ("mA", Dimension::Current, -3),
    ("uA", Dimension::Current, -6),
    ("μA", Dimension::Current, -6),
    ("µA", Dimension::Current, -6),
    ("nA", Dimension::Current, -9),
    ("pA", Dimension::Current, -12),
    ("Hz", Dimension::Frequency, 0),
    ("kHz", Dimension::Frequency, 3),
    ("MHz", Dimension::Frequency, 6),
    ("GHz", Dimension::Frequency, 9),
    ("J", Dimension::Energy, 0),
];

/// Length of the leading decimal literal in `s`.
fn numeric_prefix(s: &str) -> usize {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let digits_start = i;
    while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
        i += 1;
    }
    if i == digits_start {
        return 0;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        let exp_digits = j;
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
        if j > exp_digits {
            i = j;
        }
    }
    i
}

/// Parses `"<number>[ ]<unit>"` or a bare SI number.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let s = text.trim();
    let n = numeric_prefix(s);
    if n == 0 {
        return Err(format!("malformed number `{text}`"));
    }
    let (num, unit) = s.split_at(n);
    let unit = unit.trim();
    let shift = if unit.is_empty() {
        0
    } else {
        match UNITS.iter().find(|(name, _, _)| *name == unit) {
            Some((_, d, e)) if *d == dim => *e,
            Some((_, d, _)) => return Err(format!("unit `{unit}` is a {d}, expected a {dim}")),
            None => return Err(format!("unknown unit `{unit}`")),
        }
    };
    let (mantissa, exponent) = match num.find(['e', 'E']) {
        Some(p) => {
            let e: i32 = num[p + 1..]
                .parse()
                .map_err(|_| format!("malformed exponent in `{text}`"))?;
            (&num[..p], e)
        }
        None => (num, 0),
    };
    let value: f64 = format!("{mantissa}e{}", exponent + shift)
        .parse()
        .map_err(|_| format!("malformed number `{text}`"))?;
    if !value.is_finite() {
        return Err(format!("number out of range `{text}`"));
    }
    Ok(value)
}

/// Parses `x,y,z` with per-component unit suffixes.
pub fn parse_vector(text: &str, dim: Dimension) -> Result<Vec3, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated components, got `{text}`"));
    }
    Ok(Vec3::new(
        parse_quantity(parts[0], dim)?,
        parse_quantity(parts[1], dim)?,
        parse_quantity(parts[2], dim)?,
    ))
}
