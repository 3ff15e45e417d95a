//! Plain-text generator matrix files.
//!
//! ```text
//! # optional comment lines
//! q k n
//! <k rows of n integers in [0, q)>
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::arith::{Modulus, ResidueVector};
use crate::code::GeneratorMatrix;
use crate::error::{Error, Result};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_number(line: usize, column: usize, tok: &str) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| {
        parse_error(
            line,
            column,
            format!("expected a non-negative integer, found '{tok}'"),
        )
    })
}

pub fn parse_matrix(text: &str) -> Result<GeneratorMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing header line 'q k n'"))?;
    let htoks = tokens(header);
    if htoks.len() != 3 {
        let col = htoks.get(3).map_or(header.len() + 1, |t| t.0);
        return Err(parse_error(
            hline,
            col,
            format!("header must be 'q k n', found {} fields", htoks.len()),
        ));
    }
    let q = parse_number(hline, htoks[0].0, htoks[0].1)?;
    let k = parse_number(hline, htoks[1].0, htoks[1].1)? as usize;
    let n = parse_number(hline, htoks[2].0, htoks[2].1)? as usize;
    if !(2..=u32::MAX as u64).contains(&q) {
        return Err(parse_error(
            hline,
            htoks[0].0,
            format!("modulus must be at least 2, found {q}"),
        ));
    }
    if k == 0 || n == 0 {
        let col = if k == 0 { htoks[1].0 } else { htoks[2].0 };
        return Err(parse_error(hline, col, "k and n must be positive"));
    }
    let modulus = Modulus::new(q as u32)?;

    let mut rows = Vec::with_capacity(k);
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        if rows.len() == k {
            return Err(parse_error(
                lineno,
                1,
                format!("expected {k} rows, found more"),
            ));
        }
        let toks = tokens(line);
        if toks.len() != n {
            let col = toks.get(n).map_or(line.len() + 1, |t| t.0);
            return Err(parse_error(
                lineno,
                col,
                format!(
                    "row {} has {} entries, expected {n}",
                    rows.len() + 1,
                    toks.len()
                ),
            ));
        }
        let mut entries = Vec::with_capacity(n);
        for (col, tok) in toks {
            let v = parse_number(lineno, col, tok)?;
            if v >= q {
                return Err(parse_error(
                    lineno,
                    col,
                    format!(
                        "entry {v} in row {}, column {} is not in [0, {q})",
                        rows.len() + 1,
                        entries.len() + 1
                    ),
                ));
            }
            entries.push(v as u32);
        }
        rows.push(ResidueVector::new(modulus, entries)?);
    }
    if rows.len() != k {
        return Err(parse_error(
            last_line + 1,
            1,
            format!("expected {k} rows, found {}", rows.len()),
        ));
    }
    GeneratorMatrix::new(modulus, rows)
}

pub fn format_matrix(g: &GeneratorMatrix) -> String {
    let mut out = format!("{} {} {}\n", g.q(), g.k(), g.n());
    for row in g.rows() {
        let mut first = true;
        for e in row.entries() {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{e}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<GeneratorMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn write_matrix(g: &GeneratorMatrix, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_matrix(g))?;
    Ok(())
}
