//! Plain-text matrix files.
//!
//! ```text
//! % optional comment lines
//! <rows> <cols>
//! <rows lines of cols whitespace-separated decimals, row-major>
//! ```
//!
//! Values are written in shortest round-trip form, so write→read is bit-exact.
//! LF and CRLF line endings are accepted. A Matrix Market `array real general`
//! reader is provided as a convenience.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matcore::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Native,
    MatrixMarket,
}

/// Numbered lines with line terminators (LF or CRLF) stripped.
fn numbered_lines<R: BufRead>(source: R) -> impl Iterator<Item = Result<(usize, String)>> {
    source.lines().enumerate().map(|(k, line)| {
        let mut line = line?;
        if line.ends_with('\r') {
            line.pop();
        }
        Ok((k + 1, line))
    })
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('%')
}

fn parse_value(token: &str, line: usize) -> Result<f64> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(Error::ValueAt { line, message: format!("'{token}' is {v}; only finite values are allowed") }),
        Err(_) => Err(Error::Parse { line, message: format!("'{token}' is not a number") }),
    }
}

fn parse_dims(text: &str, line: usize) -> Result<(usize, usize)> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let bad = || Error::Parse { line, message: format!("expected '<rows> <cols>', found '{}'", text.trim()) };
    if tokens.len() != 2 {
        return Err(bad());
    }
    let rows = tokens[0].parse().map_err(|_| bad())?;
    let cols = tokens[1].parse().map_err(|_| bad())?;
    Ok((rows, cols))
}

pub fn read_matrix<R: BufRead>(source: R) -> Result<Mat> {
    let mut lines = numbered_lines(source);
    let mut last_line = 0;
    let mut next_content = |last: &mut usize| -> Result<Option<(usize, String)>> {
        for item in lines.by_ref() {
            let (no, text) = item?;
            *last = no;
            if !is_skippable(&text) {
                return Ok(Some((no, text)));
            }
        }
        Ok(None)
    };

    let Some((dims_line, dims_text)) = next_content(&mut last_line)? else {
        return Err(Error::Parse { line: last_line + 1, message: "missing '<rows> <cols>' line".into() });
    };
    let (rows, cols) = parse_dims(&dims_text, dims_line)?;
    let mut row_major = Vec::new();
    if cols > 0 {
        for r in 0..rows {
            let Some((no, text)) = next_content(&mut last_line)? else {
                return Err(Error::Parse {
                    line: last_line + 1,
                    message: format!("unexpected end of input: expected {rows} rows, found {r}"),
                });
            };
            let tokens: Vec<&str> = text.split_whitespace().collect();
            if tokens.len() != cols {
                return Err(Error::Parse {
                    line: no,
                    message: format!("expected {cols} entries, found {}", tokens.len()),
                });
            }
            for t in tokens {
                row_major.push(parse_value(t, no)?);
            }
        }
    }
    if let Some((no, _)) = next_content(&mut last_line)? {
        return Err(Error::DimensionAt { line: no, message: format!("data beyond the declared {rows} x {cols}") });
    }
    Mat::from_row_major(rows, cols, &row_major)
}

pub fn read_matrix_str(text: &str) -> Result<Mat> {
    read_matrix(text.as_bytes())
}

/// Reads a Matrix Market `array real general` file (column-major values).
pub fn read_matrix_market<R: BufRead>(source: R) -> Result<Mat> {
    let mut lines = numbered_lines(source);
    let (first_no, header) = match lines.next() {
        Some(item) => item?,
        None => return Err(Error::Parse { line: 1, message: "empty Matrix Market file".into() }),
    };
    let fields: Vec<String> = header.split_whitespace().map(|s| s.to_ascii_lowercase()).collect();
    if fields != ["%%matrixmarket", "matrix", "array", "real", "general"] {
        return Err(Error::Parse {
            line: first_no,
            message: "only '%%MatrixMarket matrix array real general' is supported".into(),
        });
    }
    let mut dims: Option<(usize, usize)> = None;
    let mut values = Vec::new();
    let mut last_line = first_no;
    for item in lines {
        let (no, text) = item?;
        last_line = no;
        if is_skippable(&text) {
            continue;
        }
        match dims {
            None => dims = Some(parse_dims(&text, no)?),
            Some((r, c)) => {
                for t in text.split_whitespace() {
                    if values.len() == r.saturating_mul(c) {
                        return Err(Error::DimensionAt { line: no, message: format!("more than {} values", r.saturating_mul(c)) });
                    }
                    values.push(parse_value(t, no)?);
                }
            }
        }
    }
    let Some((rows, cols)) = dims else {
        return Err(Error::Parse { line: last_line + 1, message: "missing '<rows> <cols>' line".into() });
    };
    if values.len() != rows.saturating_mul(cols) {
        return Err(Error::Parse {
            line: last_line + 1,
            message: format!("expected {} values, found {}", rows * cols, values.len()),
        });
    }
    Mat::from_col_major(rows, cols, values)
}

/// Shortest decimal that parses back to the same bits.
pub fn format_value(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn write_matrix<W: Write>(m: &Mat, sink: &mut W) -> Result<()> {
    writeln!(sink, "{} {}", m.rows(), m.cols())?;
    let mut line = String::new();
    for i in 0..m.rows() {
        line.clear();
        for j in 0..m.cols() {
            if j > 0 {
                line.push(' ');
            }
            line.push_str(&format_value(m[(i, j)]));
        }
        line.push('\n');
        sink.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn write_matrix_string(m: &Mat) -> String {
    let mut buf = Vec::new();
    write_matrix(m, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("output is ASCII")
}

pub fn read_matrix_file(path: impl AsRef<Path>, format: Format) -> Result<Mat> {
    let reader = BufReader::new(File::open(path)?);
    match format {
        Format::Native => read_matrix(reader),
        Format::MatrixMarket => read_matrix_market(reader),
    }
}

pub fn write_matrix_file(path: impl AsRef<Path>, m: &Mat) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_matrix(m, &mut w)?;
    w.flush()?;
    Ok(())
}
