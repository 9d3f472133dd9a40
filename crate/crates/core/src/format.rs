//! GGRID instance files.
//!
//! ```text
//! ggrid 1
//! <n>
//! <x> <y>      (n lines)
//! ```
//!
//! UTF-8 with LF endings. Lines starting with `#` and blank lines are
//! ignored. Coordinates are written in the shortest form that parses back
//! to the same `f64`.

use crate::error::{Error, Result};
use crate::geometry::{build_instance, Instance, Point};

pub const HEADER: &str = "ggrid 1";

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a GGRID document. Error line numbers are 1-based.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((no, l)) => {
            return Err(parse_err(
                no,
                format!("expected header {HEADER:?}, found {l:?}"),
            ))
        }
        None => return Err(parse_err(1, "missing header")),
    }
    let (count_line, n) = match lines.next() {
        Some((no, l)) => (
            no,
            l.parse::<usize>()
                .map_err(|_| parse_err(no, format!("expected point count, found {l:?}")))?,
        ),
        None => return Err(parse_err(1, "missing point count")),
    };
    let mut points = Vec::with_capacity(n);
    for (no, l) in lines {
        let mut it = l.split_whitespace();
        let (Some(xs), Some(ys), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err(
                no,
                format!("expected two coordinates, found {l:?}"),
            ));
        };
        let coord = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(no, format!("invalid coordinate {s:?}")))
        };
        let p = Point::new(coord(xs)?, coord(ys)?);
        p.validate().map_err(|e| parse_err(no, e.to_string()))?;
        points.push(p);
    }
    if points.len() != n {
        return Err(parse_err(
            count_line,
            format!("header declares {n} points, file has {}", points.len()),
        ));
    }
    build_instance(points)
}

/// Canonical GGRID text for `inst`.
pub fn serialize_instance(inst: &Instance) -> String {
    serialize_points(inst.points())
}

pub fn serialize_points(points: &[Point]) -> String {
    let mut out = format!("{HEADER}\n{}\n", points.len());
    for p in points {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}
