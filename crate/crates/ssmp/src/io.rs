//! Plain-CSV matrix files: one matrix row per line, comma-separated decimal
//! values, no header. Ragged rows, empty files, and non-finite values are
//! rejected.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::linalg::DenseMatrix;

#[derive(Debug)]
pub enum MatrixCsvError {
    Io(std::io::Error),
    /// 1-based line number and what went wrong there.
    Format { line: usize, message: String },
    Empty,
}

impl fmt::Display for MatrixCsvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixCsvError::Io(e) => e.fmt(f),
            MatrixCsvError::Format { line, message } => write!(f, "line {line}: {message}"),
            MatrixCsvError::Empty => f.write_str("matrix file has no rows"),
        }
    }
}

impl std::error::Error for MatrixCsvError {}

impl From<std::io::Error> for MatrixCsvError {
    fn from(e: std::io::Error) -> Self {
        MatrixCsvError::Io(e)
    }
}

/// Parse matrix CSV text.
pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix, MatrixCsvError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split(',') {
            let value: f64 = field.trim().parse().map_err(|_| MatrixCsvError::Format {
                line: idx + 1,
                message: format!("cannot parse '{}' as a number", field.trim()),
            })?;
            if !value.is_finite() {
                return Err(MatrixCsvError::Format {
                    line: idx + 1,
                    message: "non-finite value".into(),
                });
            }
            row.push(value);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(MatrixCsvError::Format {
                    line: idx + 1,
                    message: format!("ragged row: {} fields, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(MatrixCsvError::Empty);
    }
    let cols = rows[0].len();
    let data: Vec<f64> = rows.into_iter().flatten().collect();
    Ok(DenseMatrix::from_row_major(data.len() / cols, cols, data))
}

/// Serialize a matrix as CSV. Values print in shortest round-trip form, so
/// reading the text back reproduces the matrix bit for bit.
pub fn matrix_to_csv(matrix: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..matrix.rows() {
        let row: Vec<String> = matrix.row(i).iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn read_matrix_csv(path: impl AsRef<Path>) -> Result<DenseMatrix, MatrixCsvError> {
    parse_matrix_csv(&fs::read_to_string(path)?)
}

pub fn write_matrix_csv(path: impl AsRef<Path>, matrix: &DenseMatrix) -> Result<(), MatrixCsvError> {
    fs::write(path, matrix_to_csv(matrix))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn parse_simple_matrix() {
        let m = parse_matrix_csv("1,2,3\n4,5,6\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.get(1, 2), 6.0);
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = parse_matrix_csv("1,2\n3\n").unwrap_err();
        assert!(matches!(err, MatrixCsvError::Format { line: 2, .. }));
    }

    #[test]
    fn rejects_garbage_and_non_finite() {
        assert!(parse_matrix_csv("1,abc\n").is_err());
        assert!(parse_matrix_csv("1,inf\n").is_err());
        assert!(parse_matrix_csv("").is_err());
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let mut rng = SplitMix64::new(0x10);
        let m = DenseMatrix::from_fn(5, 7, |_, _| rng.next_gaussian());
        let back = parse_matrix_csv(&matrix_to_csv(&m)).unwrap();
        assert_eq!(&m, &back);
    }
}
