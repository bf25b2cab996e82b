//! Matrix serialization.
//!
//! JSON carries shape plus row-major `data`; likelihood matrices add
//! `targets` and `measurements` and are re-validated (block diagonality
//! included) on load. CSV is a bare numeric grid: comma-separated values,
//! one row per line, no header.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{LikelihoodMatrix, ThinMatrix};

/// Serialized matrix formats supported by `load`/`save`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Csv,
}

impl MatrixFormat {
    /// Picks a format from a file extension, defaulting to JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => MatrixFormat::Csv,
            _ => MatrixFormat::Json,
        }
    }
}

/// A matrix loaded from disk: GLMB-structured or a plain thin grid.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedMatrix {
    Likelihood(LikelihoodMatrix),
    Thin(ThinMatrix),
}

impl LoadedMatrix {
    /// The thin view used by the permanent and approximation code.
    pub fn to_thin(&self) -> ThinMatrix {
        match self {
            LoadedMatrix::Likelihood(l) => l.to_thin(),
            LoadedMatrix::Thin(z) => z.clone(),
        }
    }
}

/// Provenance recorded next to generated matrices.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GenProvenance {
    pub prng: &'static str,
    pub seed: u64,
}

#[derive(Serialize)]
struct MatrixJsonOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    targets: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measurements: Option<usize>,
    rows: usize,
    cols: usize,
    data: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prng: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Deserialize)]
struct MatrixJsonIn {
    targets: Option<usize>,
    measurements: Option<usize>,
    rows: usize,
    cols: usize,
    data: Vec<Vec<f64>>,
}

fn grid_of<M: GridSource>(m: &M) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m.at(i, j)).collect())
        .collect()
}

trait GridSource {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn at(&self, i: usize, j: usize) -> f64;
}

impl GridSource for LikelihoodMatrix {
    fn nrows(&self) -> usize {
        self.num_rows()
    }
    fn ncols(&self) -> usize {
        self.num_cols()
    }
    fn at(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }
}

impl GridSource for ThinMatrix {
    fn nrows(&self) -> usize {
        self.num_rows()
    }
    fn ncols(&self) -> usize {
        self.num_cols()
    }
    fn at(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }
}

/// Writes a likelihood matrix as JSON, optionally recording how it was
/// generated.
pub fn save_likelihood_json<W: Write>(
    l: &LikelihoodMatrix,
    provenance: Option<GenProvenance>,
    mut w: W,
) -> Result<()> {
    let out = MatrixJsonOut {
        targets: Some(l.num_targets()),
        measurements: Some(l.num_measurements()),
        rows: l.num_rows(),
        cols: l.num_cols(),
        data: grid_of(l),
        prng: provenance.map(|p| p.prng),
        seed: provenance.map(|p| p.seed),
    };
    serde_json::to_writer_pretty(&mut w, &out)?;
    w.write_all(b"\n")?;
    Ok(())
}

/// Writes a plain thin matrix as JSON.
pub fn save_thin_json<W: Write>(
    z: &ThinMatrix,
    provenance: Option<GenProvenance>,
    mut w: W,
) -> Result<()> {
    let out = MatrixJsonOut {
        targets: None,
        measurements: None,
        rows: z.num_rows(),
        cols: z.num_cols(),
        data: grid_of(z),
        prng: provenance.map(|p| p.prng),
        seed: provenance.map(|p| p.seed),
    };
    serde_json::to_writer_pretty(&mut w, &out)?;
    w.write_all(b"\n")?;
    Ok(())
}

/// Parses a matrix from JSON text. The presence of `targets` selects the
/// likelihood interpretation; shape and invariant checks run either way.
pub fn load_json<R: Read>(r: R) -> Result<LoadedMatrix> {
    let parsed: MatrixJsonIn = serde_json::from_reader(r)?;
    if parsed.data.len() != parsed.rows {
        return Err(Error::DimensionMismatch(format!(
            "data has {} rows, header says {}",
            parsed.data.len(),
            parsed.rows
        )));
    }
    for (i, row) in parsed.data.iter().enumerate() {
        if row.len() != parsed.cols {
            return Err(Error::DimensionMismatch(format!(
                "data row {} has {} columns, header says {}",
                i,
                row.len(),
                parsed.cols
            )));
        }
    }
    match (parsed.targets, parsed.measurements) {
        (Some(t), Some(m)) => {
            if parsed.rows != t || parsed.cols != m + 2 * t {
                return Err(Error::DimensionMismatch(format!(
                    "likelihood header {}x{} does not match targets={} measurements={}",
                    parsed.rows, parsed.cols, t, m
                )));
            }
            Ok(LoadedMatrix::Likelihood(LikelihoodMatrix::from_grid(
                t,
                m,
                &parsed.data,
            )?))
        }
        (None, None) => Ok(LoadedMatrix::Thin(ThinMatrix::from_rows(&parsed.data)?)),
        _ => Err(Error::DimensionMismatch(
            "targets and measurements must be given together".into(),
        )),
    }
}

/// Writes a bare CSV grid (no header).
pub fn save_csv<W: Write>(grid: &[Vec<f64>], w: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    for row in grid {
        writer.serialize(row)?;
    }
    writer.flush().map_err(Error::Io)?;
    Ok(())
}

/// Parses a bare CSV grid into a thin matrix, reporting the 1-based line of
/// the first ragged or malformed row.
pub fn load_csv<R: Read>(r: R) -> Result<LoadedMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(r);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, record) in reader.records().enumerate() {
        let line = idx + 1;
        let record = record.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let mut row = Vec::with_capacity(record.len());
        for field in record.iter() {
            let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                line,
                message: format!("not a number: {field:?}"),
            })?;
            row.push(v);
        }
        if let Some(w) = width {
            if row.len() != w {
                return Err(Error::Parse {
                    line,
                    message: format!("row has {} fields, expected {}", row.len(), w),
                });
            }
        } else {
            width = Some(row.len());
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    Ok(LoadedMatrix::Thin(ThinMatrix::from_rows(&rows)?))
}

/// Loads a matrix from a file, inferring the format from the extension.
pub fn load_path(path: &Path) -> Result<LoadedMatrix> {
    let file = BufReader::new(File::open(path)?);
    match MatrixFormat::from_path(path) {
        MatrixFormat::Json => load_json(file),
        MatrixFormat::Csv => load_csv(file),
    }
}

/// Saves a loaded matrix to a file, inferring the format from the extension.
pub fn save_path(
    m: &LoadedMatrix,
    provenance: Option<GenProvenance>,
    path: &Path,
) -> Result<()> {
    let file = BufWriter::new(File::create(path)?);
    match (MatrixFormat::from_path(path), m) {
        (MatrixFormat::Json, LoadedMatrix::Likelihood(l)) => {
            save_likelihood_json(l, provenance, file)
        }
        (MatrixFormat::Json, LoadedMatrix::Thin(z)) => save_thin_json(z, provenance, file),
        (MatrixFormat::Csv, LoadedMatrix::Likelihood(l)) => save_csv(&grid_of(l), file),
        (MatrixFormat::Csv, LoadedMatrix::Thin(z)) => save_csv(&grid_of(z), file),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_plain_matrix_round_trip() {
        let text = r#"{"rows":2,"cols":2,"data":[[1,2],[3,4]]}"#;
        let m = load_json(text.as_bytes()).unwrap();
        let z = match &m {
            LoadedMatrix::Thin(z) => z.clone(),
            _ => panic!("expected plain matrix"),
        };
        assert_eq!(z.get(0, 1), 2.0);
        let mut buf = Vec::new();
        save_thin_json(&z, None, &mut buf).unwrap();
        let again = load_json(buf.as_slice()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn csv_parse_and_shape() {
        let m = load_csv("1,2\n3,4\n".as_bytes()).unwrap();
        match m {
            LoadedMatrix::Thin(z) => {
                assert_eq!((z.num_rows(), z.num_cols()), (2, 2));
                assert_eq!(z.get(1, 0), 3.0);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn ragged_csv_reports_line() {
        let err = load_csv("1,2\n3\n".as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected: {other}"),
        }
    }

    #[test]
    fn csv_bad_number_reports_line() {
        let err = load_csv("1,2\n3,x\n".as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected: {other}"),
        }
    }

    #[test]
    fn likelihood_json_validates_blocks() {
        // valid 1x3 likelihood
        let good = r#"{"targets":1,"measurements":1,"rows":1,"cols":3,"data":[[0.7,0.2,0.1]]}"#;
        assert!(matches!(
            load_json(good.as_bytes()).unwrap(),
            LoadedMatrix::Likelihood(_)
        ));
        // off-diagonal violation in the missed block
        let bad = r#"{"targets":2,"measurements":0,"rows":2,"cols":4,"data":[[1,1,1,0],[0,1,0,1]]}"#;
        let err = load_json(bad.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::BlockNotDiagonal { .. }));
    }

    #[test]
    fn save_load_full_precision() {
        let z = ThinMatrix::from_rows(&[
            vec![0.123456789012345678, std::f64::consts::PI],
            vec![1e-300, 2.5e17],
        ])
        .unwrap();
        let mut buf = Vec::new();
        save_thin_json(&z, None, &mut buf).unwrap();
        let back = match load_json(buf.as_slice()).unwrap() {
            LoadedMatrix::Thin(z) => z,
            _ => panic!(),
        };
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(back.get(i, j).to_bits(), z.get(i, j).to_bits());
            }
        }
    }
}
