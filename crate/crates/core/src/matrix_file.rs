//! Plain-text generator matrix files.
//!
//! ```text
//! p e c_0 c_1 ... c_e      field: characteristic, degree, modulus low to high
//! q m n
//! g_11 g_12 ... g_1n       m rows of n element encodings
//! ...
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::code::LinearCode;
use crate::field::{Elem, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    /// 1-based token position on the line; 0 when the whole line is at fault.
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

pub fn write_matrix(code: &LinearCode) -> String {
    let f = code.field();
    let mut out = String::new();
    let modulus: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
    writeln!(out, "{} {} {}", f.p(), f.e(), modulus.join(" ")).unwrap();
    writeln!(out, "{} {} {}", f.q(), code.m(), code.n()).unwrap();
    for row in code.rows() {
        let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<u64>, ParseError> {
    line.split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            tok.parse::<u64>()
                .map_err(|_| err(line_no, i + 1, format!("expected a nonnegative integer, found {tok:?}")))
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<LinearCode, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (ln, header) = lines.next().ok_or_else(|| err(1, 0, "empty file"))?;
    let header = numbers(ln, header)?;
    if header.len() < 3 {
        return Err(err(ln, 0, "field line needs p, e and the modulus coefficients"));
    }
    let (p, e) = (header[0], header[1]);
    if p > u32::MAX as u64 || e > 32 {
        return Err(err(ln, 1, "field parameters out of range"));
    }
    let modulus: Vec<u32> = header[2..].iter().map(|&c| c as u32).collect();
    let field = Field::new(p as u32, e as u32, Some(modulus)).map_err(|e| err(ln, 0, e.to_string()))?;

    let (ln, dims) = lines.next().ok_or_else(|| err(ln + 1, 0, "missing \"q m n\" line"))?;
    let dims = numbers(ln, dims)?;
    if dims.len() != 3 {
        return Err(err(ln, 0, format!("expected \"q m n\", found {} values", dims.len())));
    }
    let (q, m, n) = (dims[0], dims[1] as usize, dims[2] as usize);
    if q != field.q() as u64 {
        return Err(err(ln, 1, format!("q = {q} does not match p^e = {}", field.q())));
    }
    if m == 0 {
        return Err(err(ln, 2, "m must be positive"));
    }
    if n == 0 {
        return Err(err(ln, 3, "n must be positive"));
    }

    let mut rows = Vec::with_capacity(m);
    let mut last = ln;
    for r in 0..m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| err(last + 1, 0, format!("missing matrix row {} of {m}", r + 1)))?;
        last = ln;
        let vals = numbers(ln, line)?;
        if vals.len() != n {
            return Err(err(ln, vals.len().min(n) + 1, format!("expected {n} entries, found {}", vals.len())));
        }
        let row = vals
            .iter()
            .enumerate()
            .map(|(c, &v)| {
                if v < q {
                    Ok(Elem(v as u32))
                } else {
                    Err(err(ln, c + 1, format!("entry {v} is not an element of GF({q})")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, 0, "unexpected content after the matrix rows"));
    }
    LinearCode::from_rows(field, rows).map_err(|e| err(1, 0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pg_points;

    #[test]
    fn simplex_file_is_bit_exact() {
        let f = Field::with_order(2).unwrap();
        let code = LinearCode::from_points(&f, &pg_points(3, &f).unwrap()).unwrap();
        let text = write_matrix(&code);
        assert_eq!(
            text,
            "2 1 0 1\n2 3 7\n0 0 0 1 1 1 1\n0 1 1 0 0 1 1\n1 0 1 0 1 0 1\n"
        );
        let back = parse_matrix(&text).unwrap();
        assert_eq!(back.rows(), code.rows());
        assert_eq!(back.field(), code.field());
    }

    #[test]
    fn diagnostics() {
        assert_eq!(parse_matrix("").unwrap_err().message, "empty file");
        let e = parse_matrix("2 2 1 1 1\n4 1 2\n0 5\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 2));
        let e = parse_matrix("2 2 1 0 1\n4 1 2\n0 1\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("reducible"));
        let e = parse_matrix("2 1 0 1\n2 2 3\n0 1 x\n1 1 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        let e = parse_matrix("2 1 0 1\n2 2 3\n0 1 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_matrix("2 1 0 1\n3 1 1\n1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_matrix("2 1 0 1\n2 1 2\n1 1 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_matrix("2 1 0 1\n2 1 1\n1\n1\n").unwrap_err();
        assert_eq!(e.line, 4);
    }
}
