//! Dense Matrix Market (`array`) reader and writer.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use structsvd::ComplexMatrix;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Complex,
}

pub fn read_matrix(path: &Path) -> CliResult<ComplexMatrix> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_matrix(&text).map_err(|(line, message)| CliError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    })
}

/// Parses the text of an array-format file. Errors carry a 1-based line.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, (usize, String)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.next().ok_or((1, "empty file".to_string()))?;
    let field = parse_header(header).map_err(|m| (1, m))?;

    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = body.next().ok_or((1, "missing size line".to_string()))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    if dims.len() != 2 {
        return Err((size_line, format!("expected `rows cols`, found {size:?}")));
    }
    let parse_dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| (size_line, format!("invalid dimension {s:?}")))
    };
    let (rows, cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
    let total = rows
        .checked_mul(cols)
        .ok_or((size_line, "dimensions overflow".to_string()))?;

    let width = if field == Field::Complex { 2 } else { 1 };
    let mut data = Vec::with_capacity(total);
    let mut last_line = size_line;
    for (line_no, line) in body {
        if data.len() == total {
            return Err((line_no, format!("unexpected data after {total} entries")));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != width {
            return Err((
                line_no,
                format!("entry {} needs {width} value(s), found {}", data.len() + 1, tokens.len()),
            ));
        }
        let num = |s: &str| -> Result<f64, (usize, String)> {
            let v = s
                .parse::<f64>()
                .map_err(|_| (line_no, format!("invalid number {s:?}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err((line_no, format!("non-finite value {s:?}")))
            }
        };
        let re = num(tokens[0])?;
        let im = if width == 2 { num(tokens[1])? } else { 0.0 };
        data.push(Complex64::new(re, im));
        last_line = line_no;
    }
    if data.len() < total {
        return Err((
            last_line + 1,
            format!("truncated: missing entry {} of {total}", data.len() + 1),
        ));
    }
    ComplexMatrix::from_col_major(rows, cols, data).map_err(|e| (size_line, e.to_string()))
}

fn parse_header(header: &str) -> Result<Field, String> {
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err("missing %%MatrixMarket header".into());
    }
    if words.len() != 5 || words[1] != "matrix" || words[2] != "array" {
        return Err(format!("unsupported header {header:?}; expected `%%MatrixMarket matrix array <field> general`"));
    }
    if words[4] != "general" {
        return Err(format!("unsupported symmetry {:?}; only `general` is read", words[4]));
    }
    match words[3].as_str() {
        "complex" => Ok(Field::Complex),
        "real" | "double" | "integer" => Ok(Field::Real),
        other => Err(format!("unsupported field {other:?}")),
    }
}

/// Array complex general text with shortest round-trip floats.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::from("%%MatrixMarket matrix array complex general\n");
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for z in m.as_slice() {
        let _ = writeln!(out, "{:?} {:?}", z.re, z.im);
    }
    out
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> CliResult<()> {
    fs::write(path, format_matrix(m)).map_err(|e| CliError::io(path, e))
}

pub fn write_values(path: &Path, values: &[f64]) -> CliResult<()> {
    let mut out = String::new();
    for v in values {
        let _ = writeln!(out, "{v:?}");
    }
    fs::write(path, out).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_array_is_column_major() {
        let text = "%%MatrixMarket matrix array complex general\n% comment\n2 2\n1 0\n2 0\n3 1\n4 -1\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m[(1, 0)], Complex64::new(2.0, 0.0));
        assert_eq!(m[(0, 1)], Complex64::new(3.0, 1.0));
        assert_eq!(m[(1, 1)], Complex64::new(4.0, -1.0));
    }

    #[test]
    fn real_is_promoted() {
        let m = parse_matrix("%%MatrixMarket matrix array real general\n1 2\n0.5\n-2\n").unwrap();
        assert_eq!(m.as_slice(), &[Complex64::new(0.5, 0.0), Complex64::new(-2.0, 0.0)]);
    }

    #[test]
    fn truncated_names_missing_entry() {
        let err = parse_matrix("%%MatrixMarket matrix array complex general\n2 2\n1 0\n2 0\n3 0\n").unwrap_err();
        assert_eq!(err.0, 6);
        assert!(err.1.contains("missing entry 4 of 4"), "{}", err.1);
    }

    #[test]
    fn bad_number_reports_line() {
        let err = parse_matrix("%%MatrixMarket matrix array real general\n1 1\n\nabc\n").unwrap_err();
        assert_eq!(err.0, 4);
    }

    #[test]
    fn rejects_coordinate_and_symmetric() {
        assert!(parse_matrix("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1\n").is_err());
        assert!(parse_matrix("%%MatrixMarket matrix array real symmetric\n1 1\n1\n").is_err());
        assert!(parse_matrix("1 1\n1\n").is_err());
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let m = ComplexMatrix::from_fn(3, 2, |i, j| {
            Complex64::new((i as f64 + 0.1).powi(7) / 3.0, -(j as f64 + 1e-300) * std::f64::consts::PI)
        });
        let back = parse_matrix(&format_matrix(&m)).unwrap();
        assert_eq!(back, m);
    }
}
