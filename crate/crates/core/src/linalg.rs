//! Dense matrices over a prime field, with the exact-arithmetic kernels
//! (rank, inverse, solve, nullspace) the code constructions rely on.
//!
//! Matrices are immutable after construction and store canonical
//! representatives row-major. Entry indices in this API are 0-based;
//! codeword *positions* reported elsewhere (window starts, burst starts)
//! are 1-based.

use std::ops::Range;

use thiserror::Error;

use crate::gf::{FieldElement, PrimeField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrices are over different fields (Z_{0} and Z_{1})")]
    FieldMismatch(u32, u32),
    #[error("shape mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("nullspace has dimension {found}, expected exactly 1")]
    NullspaceDimension { found: usize },
    #[error("scaling factor for column {column} is zero")]
    ZeroScalar { column: usize },
    #[error("index out of range for a {rows}x{cols} matrix")]
    OutOfRange { rows: usize, cols: usize },
    #[error("vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("no rows given")]
    NoRows,
}

/// A dense matrix over Z_p.
///
/// Empty shapes (0 rows or 0 columns) are permitted so that operations
/// like the dual of a full-dimension code stay closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    entries: Vec<u32>,
}

impl Matrix {
    /// All-zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize, field: PrimeField) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![0; rows * cols],
        }
    }

    /// Builds a matrix entry by entry; values are reduced mod p.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: PrimeField,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Matrix {
        let p = u64::from(field.modulus());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push((f(r, c) % p) as u32);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Builds a matrix from explicit rows; values are reduced mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Matrix, LinalgError> {
        let Some(first) = rows.first() else {
            return Err(LinalgError::NoRows);
        };
        let cols = first.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::RaggedRow {
                    row: i + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        Ok(Matrix::from_fn(rows.len(), cols, field, |r, c| rows[r][c]))
    }

    /// The k x k identity.
    pub fn identity(k: usize, field: PrimeField) -> Matrix {
        Matrix::from_fn(k, k, field, |r, c| u64::from(r == c))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Entry at 0-based (r, c).
    ///
    /// # Panics
    ///
    /// Panics if the index is out of range.
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        self.field.element(u64::from(self.entries[r * self.cols + c]))
    }

    #[inline]
    pub(crate) fn at(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    /// True if the first `rows` columns form the identity (the matrix is
    /// in systematic form).
    pub fn starts_with_identity(&self) -> bool {
        if self.cols < self.rows {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.rows {
                if self.at(r, c) != u32::from(r == c) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| {
            u64::from(self.at(c, r))
        })
    }

    /// Horizontal concatenation `(self | right)`.
    pub fn hconcat(&self, right: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(right)?;
        if self.rows != right.rows {
            return Err(self.shape_mismatch(right));
        }
        Ok(Matrix::from_fn(
            self.rows,
            self.cols + right.cols,
            self.field,
            |r, c| {
                u64::from(if c < self.cols {
                    self.at(r, c)
                } else {
                    right.at(r, c - self.cols)
                })
            },
        ))
    }

    /// Vertical concatenation, `self` on top.
    pub fn vconcat(&self, bottom: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(bottom)?;
        if self.cols != bottom.cols {
            return Err(self.shape_mismatch(bottom));
        }
        Ok(Matrix::from_fn(
            self.rows + bottom.rows,
            self.cols,
            self.field,
            |r, c| {
                u64::from(if r < self.rows {
                    self.at(r, c)
                } else {
                    bottom.at(r - self.rows, c)
                })
            },
        ))
    }

    /// Rotates columns `s` places to the right: result column j is input
    /// column (j - s) mod cols.
    pub fn cyclic_shift_columns(&self, s: usize) -> Matrix {
        if self.cols == 0 {
            return self.clone();
        }
        let s = s % self.cols;
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            u64::from(self.at(r, (c + self.cols - s) % self.cols))
        })
    }

    /// Multiplies column j by `scalars[j]`. All scalars must be nonzero
    /// (the error reports the offending column 1-based).
    pub fn scale_columns(&self, scalars: &[FieldElement]) -> Result<Matrix, LinalgError> {
        if scalars.len() != self.cols {
            return Err(LinalgError::VectorLength {
                expected: self.cols,
                found: scalars.len(),
            });
        }
        for (j, s) in scalars.iter().enumerate() {
            if s.field() != self.field {
                return Err(LinalgError::FieldMismatch(
                    self.field.modulus(),
                    s.field().modulus(),
                ));
            }
            if s.is_zero() {
                return Err(LinalgError::ZeroScalar { column: j + 1 });
            }
        }
        Ok(Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            u64::from(self.field.mul_raw(self.at(r, c), scalars[c].value()))
        }))
    }

    /// Contiguous submatrix over 0-based half-open ranges.
    pub fn submatrix(
        &self,
        row_range: Range<usize>,
        col_range: Range<usize>,
    ) -> Result<Matrix, LinalgError> {
        if row_range.start > row_range.end
            || col_range.start > col_range.end
            || row_range.end > self.rows
            || col_range.end > self.cols
        {
            return Err(LinalgError::OutOfRange {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(Matrix::from_fn(
            row_range.end - row_range.start,
            col_range.end - col_range.start,
            self.field,
            |r, c| u64::from(self.at(row_range.start + r, col_range.start + c)),
        ))
    }

    /// Gathers the given 0-based columns, in order (repeats allowed).
    pub fn columns(&self, indices: &[usize]) -> Result<Matrix, LinalgError> {
        if indices.iter().any(|&c| c >= self.cols) {
            return Err(LinalgError::OutOfRange {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(Matrix::from_fn(self.rows, indices.len(), self.field, |r, c| {
            u64::from(self.at(r, indices[c]))
        }))
    }

    /// Matrix product.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(self.shape_mismatch(rhs));
        }
        let p = u64::from(self.field.modulus());
        Ok(Matrix::from_fn(self.rows, rhs.cols, self.field, |r, c| {
            let mut acc = 0u64;
            for i in 0..self.cols {
                acc += u64::from(self.at(r, i)) * u64::from(rhs.at(i, c));
            }
            acc % p
        }))
    }

    /// Rank by Gaussian elimination (first nonzero entry as pivot).
    pub fn rank(&self) -> usize {
        let mut scratch = self.to_scratch();
        rref(&mut scratch, self.cols, self.field).len()
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let k = self.rows;
        let mut scratch: Vec<Vec<u32>> = (0..k)
            .map(|r| {
                let mut row: Vec<u32> = (0..k).map(|c| self.at(r, c)).collect();
                row.extend((0..k).map(|c| u32::from(r == c)));
                row
            })
            .collect();
        let pivots = rref(&mut scratch, k, self.field);
        if pivots.len() < k {
            return Err(LinalgError::Singular);
        }
        Ok(Matrix::from_fn(k, k, self.field, |r, c| {
            u64::from(scratch[r][k + c])
        }))
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(LinalgError::VectorLength {
                expected: self.rows,
                found: b.len(),
            });
        }
        for e in b {
            if e.field() != self.field {
                return Err(LinalgError::FieldMismatch(
                    self.field.modulus(),
                    e.field().modulus(),
                ));
            }
        }
        let k = self.rows;
        let mut scratch: Vec<Vec<u32>> = (0..k)
            .map(|r| {
                let mut row: Vec<u32> = (0..k).map(|c| self.at(r, c)).collect();
                row.push(b[r].value());
                row
            })
            .collect();
        let pivots = rref(&mut scratch, k, self.field);
        if pivots.len() < k {
            return Err(LinalgError::Singular);
        }
        // After full reduction row i has its pivot in column i.
        Ok((0..k)
            .map(|i| self.field.element(u64::from(scratch[i][k])))
            .collect())
    }

    /// The unique (up to scale) kernel vector of a matrix whose nullspace
    /// has dimension exactly 1, normalized so its first nonzero
    /// coordinate is 1.
    pub fn nullspace_vector(&self) -> Result<Vec<FieldElement>, LinalgError> {
        let mut scratch = self.to_scratch();
        let pivots = rref(&mut scratch, self.cols, self.field);
        let free = self.cols - pivots.len();
        if free != 1 {
            return Err(LinalgError::NullspaceDimension { found: free });
        }
        let free_col = (0..self.cols)
            .find(|c| !pivots.contains(c))
            .expect("exactly one free column");
        let mut x = vec![0u32; self.cols];
        x[free_col] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = self.field.neg_raw(scratch[row][free_col]);
        }
        let lead = x.iter().position(|&v| v != 0).expect("kernel vector is nonzero");
        let scale = self.field.inv_raw(x[lead]);
        Ok(x.iter()
            .map(|&v| self.field.element(u64::from(self.field.mul_raw(v, scale))))
            .collect())
    }

    fn to_scratch(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c)).collect())
            .collect()
    }

    fn same_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    fn shape_mismatch(&self, other: &Matrix) -> LinalgError {
        LinalgError::ShapeMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            if r + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Reduces `rows` to reduced row echelon form, searching for pivots in
/// the first `pivot_cols` columns only (row tails beyond that bound are
/// carried along, which is how the augmented solves reuse this).
/// Returns the pivot columns in increasing order.
fn rref(rows: &mut [Vec<u32>], pivot_cols: usize, field: PrimeField) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv_raw(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = field.mul_raw(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..rows[i].len() {
                    let t = field.mul_raw(factor, rows[r][j]);
                    rows[i][j] = field.sub_raw(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
