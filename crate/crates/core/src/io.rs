//! Plain-text matrix files.
//!
//! The format is line-oriented with LF endings and single spaces:
//!
//! ```text
//! p k n
//! <row 1: n symbols in 0..p>
//! ...
//! <row k>
//! ```
//!
//! A file with k = 0 consists of the header alone. Writing then reading
//! is the identity, and the writer's output is byte-stable: no trailing
//! spaces, every line terminated by a single LF.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::gf::PrimeField;
use crate::linalg::Matrix;

#[derive(Debug, Error)]
pub enum IoError {
    /// Malformed content; `line` and `column` are 1-based and the column
    /// counts bytes (the format is ASCII).
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse {
        line,
        column,
        message: message.into(),
    })
}

/// Splits a line on single spaces, yielding (1-based column, token).
/// Empty tokens mark doubled, leading, or trailing spaces.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in line.split(' ') {
        out.push((offset + 1, tok));
        offset += tok.len() + 1;
    }
    out
}

fn reject_carriage_return(lineno: usize, line: &str) -> Result<(), IoError> {
    if line.ends_with('\r') {
        return parse_err(
            lineno,
            line.len(),
            "carriage return found; lines must end with LF only",
        );
    }
    Ok(())
}

fn parse_number<T: std::str::FromStr>(
    lineno: usize,
    column: usize,
    token: &str,
    what: &str,
) -> Result<T, IoError> {
    if token.is_empty() {
        return parse_err(
            lineno,
            column,
            "empty field (check for doubled or trailing spaces)",
        );
    }
    token
        .parse()
        .or_else(|_| parse_err(lineno, column, format!("malformed {what} {token:?}")))
}

/// Parses the text form of a matrix.
pub fn parse_matrix(text: &str) -> Result<Matrix, IoError> {
    let mut lines: Vec<&str> = text.split('\n').collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    if lines.is_empty() {
        return parse_err(1, 1, "empty input; expected a `p k n` header");
    }

    reject_carriage_return(1, lines[0])?;
    let header = fields(lines[0]);
    match header.len() {
        3 => {}
        short if short < 3 => {
            return parse_err(
                1,
                lines[0].len() + 1,
                format!("header must be `p k n`, found {short} fields"),
            )
        }
        long => {
            return parse_err(
                1,
                header[3].0,
                format!("header must be `p k n`, found {long} fields"),
            )
        }
    }
    let p: u32 = parse_number(1, header[0].0, header[0].1, "modulus")?;
    let k: usize = parse_number(1, header[1].0, header[1].1, "row count")?;
    let n: usize = parse_number(1, header[2].0, header[2].1, "column count")?;
    let field = match PrimeField::new(p) {
        Ok(f) => f,
        Err(e) => return parse_err(1, header[0].0, e.to_string()),
    };

    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k);
    for i in 0..k {
        let lineno = i + 2;
        let Some(&line) = lines.get(lineno - 1) else {
            return parse_err(lines.len() + 1, 1, format!("expected {k} rows, found {i}"));
        };
        reject_carriage_return(lineno, line)?;
        if n == 0 {
            if !line.is_empty() {
                return parse_err(lineno, 1, "expected an empty row (0 columns)");
            }
            rows.push(Vec::new());
            continue;
        }
        let toks = fields(line);
        if toks.len() < n {
            return parse_err(
                lineno,
                line.len() + 1,
                format!("expected {n} symbols, found {}", toks.len()),
            );
        }
        if toks.len() > n {
            return parse_err(
                lineno,
                toks[n].0,
                format!("expected {n} symbols, found {}", toks.len()),
            );
        }
        let mut row = Vec::with_capacity(n);
        for &(col, tok) in &toks {
            let v: u32 = parse_number(lineno, col, tok, "symbol")?;
            if v >= p {
                return parse_err(lineno, col, format!("symbol {v} out of range for Z_{p}"));
            }
            row.push(u64::from(v));
        }
        rows.push(row);
    }
    if lines.len() > k + 1 {
        return parse_err(k + 2, 1, format!("expected {k} rows; extra content follows"));
    }

    if k == 0 {
        return Ok(Matrix::zero(0, n, field));
    }
    Ok(Matrix::from_rows(field, &rows).expect("rows validated rectangular"))
}

/// Renders a matrix in the text format; inverse of [`parse_matrix`].
pub fn format_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", m.field().modulus(), m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", m.get(i, j).value());
        }
        out.push('\n');
    }
    out
}

/// Reads a matrix file.
pub fn read_matrix(path: &Path) -> Result<Matrix, IoError> {
    parse_matrix(&fs::read_to_string(path)?)
}

/// Writes a matrix file (creating or truncating `path`).
pub fn write_matrix(path: &Path, m: &Matrix) -> Result<(), IoError> {
    fs::write(path, format_matrix(m))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m2(rows: &[Vec<u64>]) -> Matrix {
        Matrix::from_rows(f(2), rows).unwrap()
    }

    #[track_caller]
    fn assert_parse_error(text: &str, line: usize, column: usize, needle: &str) {
        match parse_matrix(text) {
            Err(IoError::Parse {
                line: l,
                column: c,
                message,
            }) => {
                assert_eq!((l, c), (line, column), "position for {text:?}: {message}");
                assert!(
                    message.contains(needle),
                    "message {message:?} should mention {needle:?}"
                );
            }
            other => panic!("expected parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_examples() {
        let g = m2(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let text = "2 2 3\n1 0 1\n0 1 1\n";
        assert_eq!(format_matrix(&g), text);
        assert_eq!(parse_matrix(text).unwrap(), g);

        let id = Matrix::identity(2, f(3));
        assert_eq!(format_matrix(&id), "3 2 2\n1 0\n0 1\n");
        assert_eq!(parse_matrix("3 2 2\n1 0\n0 1\n").unwrap(), id);
    }

    #[test]
    fn final_newline_is_optional_when_parsing() {
        let g = parse_matrix("2 1 2\n1 0").unwrap();
        assert_eq!(g, m2(&[vec![1, 0]]));
    }

    #[test]
    fn degenerate_shapes_round_trip() {
        let empty = Matrix::zero(0, 4, f(5));
        assert_eq!(format_matrix(&empty), "5 0 4\n");
        assert_eq!(parse_matrix("5 0 4\n").unwrap(), empty);

        let thin = Matrix::zero(2, 0, f(2));
        assert_eq!(format_matrix(&thin), "2 2 0\n\n\n");
        assert_eq!(parse_matrix("2 2 0\n\n\n").unwrap(), thin);
    }

    #[test]
    fn wide_matrix_round_trips() {
        let p = 65521;
        let wide = Matrix::from_fn(8, 512, f(p), |i, j| (i as u64 * 7 + j as u64 * 13) % 65521);
        assert_eq!(parse_matrix(&format_matrix(&wide)).unwrap(), wide);
    }

    #[test]
    fn header_errors_carry_positions() {
        assert_parse_error("", 1, 1, "empty input");
        assert_parse_error("2 2\n", 1, 4, "found 2 fields");
        assert_parse_error("2 2 3 9\n", 1, 7, "found 4 fields");
        assert_parse_error("x 1 1\n0\n", 1, 1, "malformed modulus");
        assert_parse_error("2 -1 1\n0\n", 1, 3, "malformed row count");
        assert_parse_error("6 1 1\n0\n", 1, 1, "not prime");
        assert_parse_error("65537 1 1\n0\n", 1, 1, "supported bound");
    }

    #[test]
    fn row_errors_carry_positions() {
        assert_parse_error("2 1 2\n1 2\n", 2, 3, "out of range");
        assert_parse_error("2 1 2\n1\n", 2, 2, "expected 2 symbols, found 1");
        assert_parse_error("2 1 2\n1 0 1\n", 2, 5, "expected 2 symbols, found 3");
        assert_parse_error("2 1 2\n1  0\n", 2, 4, "expected 2 symbols, found 3");
        assert_parse_error("2 1 2\n1 0 \n", 2, 5, "expected 2 symbols, found 3");
        assert_parse_error("2 1 2\nq 0\n", 2, 1, "malformed symbol");
        assert_parse_error("2 2 2\n1 0\n", 3, 1, "expected 2 rows, found 1");
        assert_parse_error("2 1 1\n1\n0\n", 3, 1, "extra content");
        assert_parse_error("2 1 1\r\n1\n", 1, 6, "carriage return");
    }

    #[test]
    fn files_round_trip_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        let g = m2(&[vec![1, 0, 1], vec![0, 1, 1]]);
        write_matrix(&path, &g).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "2 2 3\n1 0 1\n0 1 1\n");
        assert_eq!(read_matrix(&path).unwrap(), g);

        let missing = read_matrix(&dir.path().join("absent.txt"));
        assert!(matches!(missing, Err(IoError::Io(_))));
    }
}
