//! Block-structured likelihood matrices and their thin transposes.
//!
//! A likelihood matrix is wide: one row per target, and a column per
//! measurement followed by a missed-detection diagonal block and a death
//! diagonal block. The permanent machinery works on the transpose (a thin
//! matrix with at least as many rows as columns), so both layouts live here
//! together with the negative-log cost transform used by the assignment
//! solvers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};

/// Identifier of the PRNG behind [`gen_random`], stored alongside generated
/// matrices so experiments stay replayable across implementations.
pub const PRNG_ALGORITHM: &str = "chacha12";

fn check_entry(row: usize, col: usize, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidEntry { row, col, value });
    }
    Ok(())
}

/// Wide, block-structured nonnegative matrix: `targets` rows and
/// `measurements + 2 * targets` columns.
///
/// Columns `[0, M)` hold per-measurement detection likelihoods, columns
/// `[M, M+T)` the missed-detection diagonal, and `[M+T, M+2T)` the death
/// diagonal. Off-diagonal entries of the two diagonal blocks are exactly 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodMatrix {
    targets: usize,
    measurements: usize,
    entries: Vec<f64>, // row-major, targets x (measurements + 2*targets)
}

impl LikelihoodMatrix {
    /// Builds a likelihood matrix from its three blocks.
    ///
    /// `detection` has one row per target with `measurements` entries each;
    /// `missed` and `death` hold the two diagonals.
    pub fn from_blocks(detection: &[Vec<f64>], missed: &[f64], death: &[f64]) -> Result<Self> {
        let targets = missed.len();
        if targets == 0 {
            return Err(Error::Empty);
        }
        if death.len() != targets || detection.len() != targets {
            return Err(Error::DimensionMismatch(format!(
                "expected {} detection rows and {} death entries, got {} and {}",
                targets,
                targets,
                detection.len(),
                death.len()
            )));
        }
        let measurements = detection[0].len();
        let cols = measurements + 2 * targets;
        let mut entries = vec![0.0; targets * cols];
        for (i, row) in detection.iter().enumerate() {
            if row.len() != measurements {
                return Err(Error::DimensionMismatch(format!(
                    "detection row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    measurements
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                check_entry(i, j, v)?;
                entries[i * cols + j] = v;
            }
        }
        for (i, &v) in missed.iter().enumerate() {
            check_entry(i, measurements + i, v)?;
            entries[i * cols + measurements + i] = v;
        }
        for (i, &v) in death.iter().enumerate() {
            check_entry(i, measurements + targets + i, v)?;
            entries[i * cols + measurements + targets + i] = v;
        }
        Ok(Self {
            targets,
            measurements,
            entries,
        })
    }

    /// Builds from a full dense grid, validating nonnegativity and the
    /// diagonal structure of the missed-detection and death blocks.
    pub fn from_grid(targets: usize, measurements: usize, rows: &[Vec<f64>]) -> Result<Self> {
        if targets == 0 {
            return Err(Error::Empty);
        }
        let cols = measurements + 2 * targets;
        if rows.len() != targets {
            return Err(Error::DimensionMismatch(format!(
                "expected {} rows, got {}",
                targets,
                rows.len()
            )));
        }
        let mut entries = Vec::with_capacity(targets * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} columns, expected measurements + 2*targets = {}",
                    i,
                    row.len(),
                    cols
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                check_entry(i, j, v)?;
                entries.push(v);
            }
        }
        let m = Self {
            targets,
            measurements,
            entries,
        };
        m.check_diagonal_blocks()?;
        Ok(m)
    }

    fn check_diagonal_blocks(&self) -> Result<()> {
        let m = self.measurements;
        let t = self.targets;
        for i in 0..t {
            for j in 0..t {
                if i == j {
                    continue;
                }
                let missed = self.get(i, m + j);
                if missed != 0.0 {
                    return Err(Error::BlockNotDiagonal {
                        block: "missed-detection",
                        row: i,
                        col: m + j,
                        value: missed,
                    });
                }
                let death = self.get(i, m + t + j);
                if death != 0.0 {
                    return Err(Error::BlockNotDiagonal {
                        block: "death",
                        row: i,
                        col: m + t + j,
                        value: death,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn num_targets(&self) -> usize {
        self.targets
    }

    pub fn num_measurements(&self) -> usize {
        self.measurements
    }

    pub fn num_rows(&self) -> usize {
        self.targets
    }

    pub fn num_cols(&self) -> usize {
        self.measurements + 2 * self.targets
    }

    /// Column indices of the block edges: `[0, M, M+T, M+2T]`.
    pub fn block_boundaries(&self) -> [usize; 4] {
        let (m, t) = (self.measurements, self.targets);
        [0, m, m + t, m + 2 * t]
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.num_cols() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let c = self.num_cols();
        &self.entries[row * c..(row + 1) * c]
    }

    /// Transpose into the thin layout the permanent algorithms expect.
    pub fn to_thin(&self) -> ThinMatrix {
        let rows = self.num_cols();
        let cols = self.num_rows();
        let mut entries = vec![0.0; rows * cols];
        for i in 0..self.num_rows() {
            for j in 0..self.num_cols() {
                entries[j * cols + i] = self.get(i, j);
            }
        }
        ThinMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Negative-log transform: `c = -ln z` for positive entries, `+inf` where
    /// the likelihood is exactly 0 (structurally forbidden association).
    pub fn neg_log_cost(&self) -> CostMatrix {
        let entries = self.entries.iter().map(|&z| neg_log(z)).collect();
        CostMatrix {
            rows: self.num_rows(),
            cols: self.num_cols(),
            entries,
            origin: CostOrigin::NegLogLikelihood {
                targets: self.targets,
                measurements: self.measurements,
            },
        }
    }
}

pub(crate) fn neg_log(z: f64) -> f64 {
    if z == 0.0 {
        f64::INFINITY
    } else {
        -z.ln()
    }
}

/// Dense nonnegative matrix with `rows >= cols >= 1`; the computational
/// representation for permanents (the transpose of a likelihood matrix).
#[derive(Debug, Clone, PartialEq)]
pub struct ThinMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>, // row-major
}

impl ThinMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if rows < cols {
            return Err(Error::NotThin { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for {}x{}, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        for (idx, &v) in entries.iter().enumerate() {
            check_entry(idx / cols, idx % cols, v)?;
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Empty);
        }
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} columns, expected {}",
                    i,
                    row.len(),
                    cols
                )));
            }
            entries.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Sum of column `col` over all rows.
    pub fn col_sum(&self, col: usize) -> f64 {
        (0..self.rows).map(|i| self.get(i, col)).sum()
    }
}

/// How a cost matrix came to be; negative-log matrices remember the block
/// shape of their source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostOrigin {
    NegLogLikelihood { targets: usize, measurements: usize },
    Direct,
}

/// Extended-real cost matrix: finite entries or `+inf` for forbidden pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
    origin: CostOrigin,
}

impl CostMatrix {
    /// Builds a cost matrix directly; entries must be finite or `+inf`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Empty);
        }
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} columns, expected {}",
                    i,
                    row.len(),
                    cols
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v.is_nan() || v == f64::NEG_INFINITY {
                    return Err(Error::InvalidCost {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                entries.push(v);
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
            origin: CostOrigin::Direct,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.cols + col]
    }

    pub fn origin(&self) -> CostOrigin {
        self.origin
    }
}

/// Entry distribution for random matrix generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntryDistribution {
    /// Uniform on `[low, high)`.
    Uniform { low: f64, high: f64 },
}

impl Default for EntryDistribution {
    fn default() -> Self {
        EntryDistribution::Uniform {
            low: 0.0,
            high: 1.0,
        }
    }
}

impl EntryDistribution {
    fn sample(&self, rng: &mut ChaCha12Rng) -> f64 {
        match *self {
            EntryDistribution::Uniform { low, high } => rng.gen_range(low..high),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            EntryDistribution::Uniform { low, high } => {
                if !(low.is_finite() && high.is_finite()) || low < 0.0 || high <= low {
                    return Err(Error::DimensionMismatch(format!(
                        "uniform range [{low}, {high}) must be nonnegative and nonempty"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Generates a seeded random GLMB-structured likelihood matrix.
///
/// Deterministic for a fixed seed: a ChaCha12 stream fills the detection
/// block row-major, then the missed-detection diagonal, then the death
/// diagonal. Off-diagonal block entries stay exactly 0.
pub fn gen_random(
    targets: usize,
    measurements: usize,
    seed: u64,
    dist: EntryDistribution,
) -> Result<LikelihoodMatrix> {
    if targets == 0 {
        return Err(Error::Empty);
    }
    dist.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let detection: Vec<Vec<f64>> = (0..targets)
        .map(|_| (0..measurements).map(|_| dist.sample(&mut rng)).collect())
        .collect();
    let missed: Vec<f64> = (0..targets).map(|_| dist.sample(&mut rng)).collect();
    let death: Vec<f64> = (0..targets).map(|_| dist.sample(&mut rng)).collect();
    LikelihoodMatrix::from_blocks(&detection, &missed, &death)
}

/// Generates a fully dense random wide matrix of the same shape a
/// `targets x (measurements + 2*targets)` likelihood would have, returned as
/// its thin transpose. The draw order matches [`gen_random`]: the wide matrix
/// is filled row-major from a ChaCha12 stream.
pub fn gen_random_dense(
    targets: usize,
    measurements: usize,
    seed: u64,
    dist: EntryDistribution,
) -> Result<ThinMatrix> {
    if targets == 0 {
        return Err(Error::Empty);
    }
    dist.validate()?;
    let cols = measurements + 2 * targets;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut wide = vec![0.0; targets * cols];
    for v in wide.iter_mut() {
        *v = dist.sample(&mut rng);
    }
    let mut entries = vec![0.0; cols * targets];
    for i in 0..targets {
        for j in 0..cols {
            entries[j * targets + i] = wide[i * cols + j];
        }
    }
    ThinMatrix::new(cols, targets, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_single_target() {
        let l =
            LikelihoodMatrix::from_blocks(&[vec![0.7]], &[0.2], &[0.1]).unwrap();
        assert_eq!(l.num_rows(), 1);
        assert_eq!(l.num_cols(), 3);
        assert_eq!(l.row(0), &[0.7, 0.2, 0.1]);
        assert_eq!(l.block_boundaries(), [0, 1, 2, 3]);
    }

    #[test]
    fn build_no_measurements_places_diagonals() {
        let l = LikelihoodMatrix::from_blocks(&[vec![], vec![]], &[1.0, 2.0], &[3.0, 4.0])
            .unwrap();
        assert_eq!(l.num_cols(), 4);
        assert_eq!(l.row(0), &[1.0, 0.0, 3.0, 0.0]);
        assert_eq!(l.row(1), &[0.0, 2.0, 0.0, 4.0]);
    }

    #[test]
    fn build_rejects_negative_entry() {
        let err = LikelihoodMatrix::from_blocks(&[vec![-1.0]], &[0.2], &[0.1]).unwrap_err();
        assert!(matches!(err, Error::InvalidEntry { row: 0, col: 0, .. }));
    }

    #[test]
    fn build_rejects_non_finite() {
        let err =
            LikelihoodMatrix::from_blocks(&[vec![f64::NAN]], &[0.2], &[0.1]).unwrap_err();
        assert!(matches!(err, Error::InvalidEntry { .. }));
    }

    #[test]
    fn from_grid_rejects_off_diagonal() {
        // M=1, T=2 -> blocks [0,1,3,5]; (0,2) lies off the missed diagonal
        let rows = vec![vec![0.5, 0.2, 0.1, 0.3, 0.0], vec![0.5, 0.0, 0.2, 0.0, 0.3]];
        let err = LikelihoodMatrix::from_grid(2, 1, &rows).unwrap_err();
        assert!(matches!(
            err,
            Error::BlockNotDiagonal {
                block: "missed-detection",
                ..
            }
        ));
    }

    #[test]
    fn to_thin_is_transpose() {
        let l = LikelihoodMatrix::from_blocks(&[vec![0.7]], &[0.2], &[0.1]).unwrap();
        let z = l.to_thin();
        assert_eq!((z.num_rows(), z.num_cols()), (3, 1));
        assert_eq!(z.get(0, 0), 0.7);
        assert_eq!(z.get(1, 0), 0.2);
        assert_eq!(z.get(2, 0), 0.1);
    }

    #[test]
    fn double_transpose_identity() {
        let l = gen_random(3, 5, 42, EntryDistribution::default()).unwrap();
        let z = l.to_thin();
        for i in 0..l.num_rows() {
            for j in 0..l.num_cols() {
                assert_eq!(l.get(i, j), z.get(j, i));
            }
        }
    }

    #[test]
    fn neg_log_zero_maps_to_infinity() {
        let l = LikelihoodMatrix::from_blocks(&[vec![1.0, 0.0]], &[(-2.0f64).exp()], &[0.5])
            .unwrap();
        let c = l.neg_log_cost();
        assert_eq!(c.get(0, 0), 0.0);
        assert_eq!(c.get(0, 1), f64::INFINITY);
        assert!((c.get(0, 2) - 2.0).abs() < 1e-12);
        assert_eq!(
            c.origin(),
            CostOrigin::NegLogLikelihood {
                targets: 1,
                measurements: 2
            }
        );
    }

    #[test]
    fn gen_random_is_deterministic() {
        let a = gen_random(4, 4, 7, EntryDistribution::default()).unwrap();
        let b = gen_random(4, 4, 7, EntryDistribution::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.num_rows(), a.num_cols()), (4, 12));
    }

    #[test]
    fn gen_random_off_diagonals_exactly_zero() {
        let l = gen_random(5, 3, 99, EntryDistribution::default()).unwrap();
        let [_, m, mt, _] = l.block_boundaries();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(l.get(i, m + j), 0.0);
                    assert_eq!(l.get(i, mt + j), 0.0);
                }
            }
        }
    }

    #[test]
    fn thin_rejects_wide() {
        let err = ThinMatrix::from_rows(&[vec![1.0, 2.0, 3.0]]).unwrap_err();
        assert!(matches!(err, Error::NotThin { rows: 1, cols: 3 }));
    }

    #[test]
    fn cost_matrix_rejects_nan() {
        let err = CostMatrix::from_rows(&[vec![1.0, f64::NAN]]).unwrap_err();
        assert!(matches!(err, Error::InvalidCost { .. }));
    }

    #[test]
    fn cost_matrix_allows_infinity() {
        let c = CostMatrix::from_rows(&[vec![1.0, f64::INFINITY]]).unwrap();
        assert_eq!(c.get(0, 1), f64::INFINITY);
    }
}
