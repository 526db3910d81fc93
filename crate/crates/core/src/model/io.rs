//! Plain-text coloring files.
//!
//! ```text
//! antiramsey-coloring v1
//! n <n>
//! c <color_count>
//! e <u> <v> <color>      (one line per edge, in edge-index order)
//! ```

use std::io::{BufRead, Write};

use super::{edge_count, edges, EdgeColoring};
use crate::error::{Error, Result};

pub const COLORING_HEADER: &str = "antiramsey-coloring v1";

pub fn write_coloring<W: Write>(coloring: &EdgeColoring, mut out: W) -> Result<()> {
    writeln!(out, "{COLORING_HEADER}")?;
    writeln!(out, "n {}", coloring.n())?;
    writeln!(out, "c {}", coloring.color_count())?;
    for ((u, v), c) in edges(coloring.n()).zip(coloring.colors()) {
        writeln!(out, "e {u} {v} {c}")?;
    }
    Ok(())
}

fn keyed_value(line: &str, key: &str, lineno: usize) -> Result<usize> {
    let mut fields = line.split(' ');
    match (fields.next(), fields.next(), fields.next()) {
        (Some(k), Some(value), None) if k == key => value
            .parse()
            .map_err(|_| Error::parse(lineno, format!("malformed header: bad value {value:?} for `{key}`"))),
        _ => Err(Error::parse(
            lineno,
            format!("malformed header: expected `{key} <value>`, got {line:?}"),
        )),
    }
}

pub fn read_coloring<R: BufRead>(input: R) -> Result<EdgeColoring> {
    let mut lines = input.lines();
    let mut next_line = || lines.next().transpose();

    match next_line()? {
        Some(line) if line == COLORING_HEADER => {}
        Some(line) => {
            return Err(Error::parse(
                1,
                format!("malformed header: expected {COLORING_HEADER:?}, got {line:?}"),
            ))
        }
        None => return Err(Error::parse(1, "malformed header: empty input")),
    }
    let n_line = next_line()?.ok_or_else(|| Error::parse(2, "malformed header: missing `n` line"))?;
    let n = keyed_value(&n_line, "n", 2)?;
    if n == 0 {
        return Err(Error::parse(2, "malformed header: n must be at least 1"));
    }
    let c_line = next_line()?.ok_or_else(|| Error::parse(3, "malformed header: missing `c` line"))?;
    let declared = keyed_value(&c_line, "c", 3)?;
    let declared = u32::try_from(declared).map_err(|_| Error::parse(3, "malformed header: color count too large"))?;

    let mut colors = Vec::with_capacity(edge_count(n));
    let mut lineno = 3;
    for (u, v) in edges(n) {
        lineno += 1;
        let line = next_line()?.ok_or_else(|| Error::parse(lineno, format!("edge ({u},{v}) absent")))?;
        let fields: Vec<&str> = line.split(' ').collect();
        let parsed = match fields.as_slice() {
            ["e", a, b, c] => match (a.parse::<usize>(), b.parse::<usize>(), c.parse::<u32>()) {
                (Ok(a), Ok(b), Ok(c)) => Some((a, b, c)),
                _ => None,
            },
            _ => None,
        };
        let (a, b, c) = parsed.ok_or_else(|| {
            Error::parse(
                lineno,
                format!("malformed edge line {line:?}, expected `e <u> <v> <color>`"),
            )
        })?;
        if (a, b) != (u, v) {
            return Err(Error::parse(lineno, format!("edge ({u},{v}) absent")));
        }
        if c >= declared {
            return Err(Error::parse(
                lineno,
                format!("color {c} out of range for declared c = {declared}"),
            ));
        }
        colors.push(c);
    }
    while let Some(line) = next_line()? {
        lineno += 1;
        if !line.is_empty() {
            return Err(Error::parse(lineno, format!("unexpected trailing line {line:?}")));
        }
    }

    let mut used = vec![false; declared as usize];
    for &c in &colors {
        used[c as usize] = true;
    }
    if let Some(unused) = used.iter().position(|&u| !u) {
        return Err(Error::parse(3, format!("color {unused} unused")));
    }
    EdgeColoring::with_color_count(n, colors, declared).map_err(|e| Error::parse(3, e.to_string()))
}
