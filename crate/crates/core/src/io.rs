//! Plain CSV matrices and vectors: comma separated, one matrix row per
//! line, one vector entry per line, no header.

use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("malformed CSV: {0}")]
    Malformed(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn reader<R: Read>(source: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(source)
}

fn parse_rows<R: Read>(source: R) -> Result<Vec<Vec<f64>>, CsvError> {
    let mut rows = Vec::new();
    for (line, record) in reader(source).records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field.parse::<f64>().map_err(|_| {
                    CsvError::Malformed(format!(
                        "record {}, field {}: {:?} is not a number",
                        line + 1,
                        col + 1,
                        field
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_matrix<R: Read>(source: R) -> Result<DMatrix<f64>, CsvError> {
    let rows = parse_rows(source)?;
    let Some(first) = rows.first() else {
        return Err(CsvError::Malformed("matrix is empty".into()));
    };
    let ncols = first.len();
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(CsvError::Malformed(format!(
            "row {} has {} columns, expected {}",
            i + 1,
            row.len(),
            ncols
        )));
    }
    Ok(DMatrix::from_row_iterator(
        rows.len(),
        ncols,
        rows.into_iter().flatten(),
    ))
}

/// Reads one value per line. A single comma-separated row is also accepted.
pub fn read_vector<R: Read>(source: R) -> Result<DVector<f64>, CsvError> {
    let rows = parse_rows(source)?;
    if rows.is_empty() {
        return Err(CsvError::Malformed("vector is empty".into()));
    }
    let values: Vec<f64> = if rows.len() == 1 {
        rows.into_iter().next().unwrap()
    } else if rows.iter().all(|r| r.len() == 1) {
        rows.into_iter().flatten().collect()
    } else {
        return Err(CsvError::Malformed(
            "vector must have one value per line".into(),
        ));
    };
    Ok(DVector::from_vec(values))
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_matrix<W: Write>(mut sink: W, m: &DMatrix<f64>) -> std::io::Result<()> {
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(|&v| format_f64(v)).collect();
        writeln!(sink, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_vector<W: Write>(mut sink: W, v: &DVector<f64>) -> std::io::Result<()> {
    for &x in v.iter() {
        writeln!(sink, "{}", format_f64(x))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_matrix_rows() {
        let m = read_matrix("1, 2,3\n4,5,6\n\n".as_bytes()).unwrap();
        assert_eq!(m.shape(), (2, 3));
        assert_eq!(m[(1, 0)], 4.0);
        assert_eq!(m[(0, 2)], 3.0);
    }

    #[test]
    fn ragged_or_garbage_rejected() {
        assert!(matches!(
            read_matrix("1,2\n3\n".as_bytes()),
            Err(CsvError::Malformed(_))
        ));
        assert!(matches!(
            read_matrix("1,x\n".as_bytes()),
            Err(CsvError::Malformed(_))
        ));
        assert!(matches!(
            read_matrix("".as_bytes()),
            Err(CsvError::Malformed(_))
        ));
        assert!(matches!(
            read_vector("1\n2,3\n".as_bytes()),
            Err(CsvError::Malformed(_))
        ));
    }

    #[test]
    fn vector_layouts() {
        assert_eq!(
            read_vector("1\n2\n".as_bytes()).unwrap().as_slice(),
            &[1.0, 2.0]
        );
        assert_eq!(
            read_vector("1,2,3".as_bytes()).unwrap().as_slice(),
            &[1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn written_values_round_trip() {
        let m = DMatrix::from_row_slice(2, 2, &[0.1, -1.0 / 3.0, 1e-300, 6.02e23]);
        let mut buf = Vec::new();
        write_matrix(&mut buf, &m).unwrap();
        assert_eq!(read_matrix(buf.as_slice()).unwrap(), m);

        let v = DVector::from_vec(vec![std::f64::consts::PI, 2f64.sqrt()]);
        let mut buf = Vec::new();
        write_vector(&mut buf, &v).unwrap();
        assert_eq!(read_vector(buf.as_slice()).unwrap(), v);
    }
}
