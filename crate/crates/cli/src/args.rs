//! Parsers for the compound command-line values.

use nanotrap::io::{parse_quantity, parse_vector, Dimension};
use nanotrap::landscape::GridSpec;
use nanotrap::tuner::FreeCurrent;
use nanotrap::{Channel, Error, Result, Vec3};

fn arg_err(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

pub fn point(text: &str) -> Result<Vec3> {
    parse_vector(text, Dimension::Length).map_err(arg_err)
}

/// `ox,oy,oz:sx,sy,sz:nx,ny,nz`.
pub fn gridspec(text: &str) -> Result<GridSpec> {
    let parts: Vec<&str> = text.split(':').collect();
    let [origin, spacing, counts] = parts[..] else {
        return Err(arg_err(format!("gridspec `{text}` needs origin:spacing:counts")));
    };
    let origin = point(origin)?;
    let spacing = point(spacing)?;
    let counts: Vec<usize> = counts
        .split(',')
        .map(|c| c.trim().parse().map_err(|_| arg_err(format!("bad grid count `{c}`"))))
        .collect::<Result<_>>()?;
    let [nx, ny, nz] = counts[..] else {
        return Err(arg_err("gridspec needs three counts"));
    };
    GridSpec::new(origin, spacing, [nx, ny, nz]).map_err(|e| arg_err(e.to_string()))
}

/// One free current, `wire:dc|rf:lo:hi`, bounds with optional unit suffix.
pub fn free_current(text: &str) -> Result<FreeCurrent> {
    let parts: Vec<&str> = text.split(':').collect();
    let [wire, channel, lo, hi] = parts[..] else {
        return Err(arg_err(format!("free current `{text}` needs wire:channel:lo:hi")));
    };
    let wire = wire
        .trim()
        .parse()
        .map_err(|_| arg_err(format!("bad wire index `{wire}`")))?;
    let channel = match channel.trim() {
        "dc" => Channel::Dc,
        "rf" => Channel::Rf,
        other => return Err(arg_err(format!("unknown channel `{other}`"))),
    };
    let lo = parse_quantity(lo, Dimension::Current).map_err(arg_err)?;
    let hi = parse_quantity(hi, Dimension::Current).map_err(arg_err)?;
    Ok(FreeCurrent { wire, channel, lo, hi })
}

/// Comma-separated free currents.
pub fn free_list(text: &str) -> Result<Vec<FreeCurrent>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(free_current)
        .collect()
}

/// Target points, one `x,y,z` per line. Blank lines and `#` comments
/// are skipped.
pub fn targets(text: &str) -> Result<Vec<Vec3>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = parse_vector(line, Dimension::Length).map_err(|message| Error::Parse { line: n + 1, message })?;
        out.push(p);
    }
    Ok(out)
}
