//! Dense row-major `f64` matrices.
//!
//! Construction is the validation gate: a [`RealMatrix`] always has positive
//! dimensions and finite entries, so the numeric kernels downstream never
//! re-check.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fmath;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    ZeroDimension,
    LengthMismatch { expected: usize, got: usize },
    NonFinite { index: usize },
    DimMismatch { left: (usize, usize), right: (usize, usize) },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::ZeroDimension => write!(f, "matrix dimensions must be positive"),
            MatrixError::LengthMismatch { expected, got } => {
                write!(f, "entry count {got} does not match rows*cols = {expected}")
            }
            MatrixError::NonFinite { index } => {
                write!(f, "non-finite entry at flat index {index}")
            }
            MatrixError::DimMismatch { left, right } => {
                write!(
                    f,
                    "incompatible dimensions {}x{} vs {}x{}",
                    left.0, left.1, right.0, right.1
                )
            }
        }
    }
}

impl core::error::Error for MatrixError {}

/// Row-major matrix with positive dimensions and finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::ZeroDimension);
        }
        let expected = rows * cols;
        if data.len() != expected {
            return Err(MatrixError::LengthMismatch {
                expected,
                got: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(MatrixError::NonFinite { index });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds entry (i, j) from `f`; validates the result like [`Self::new`].
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::ZeroDimension);
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::ZeroDimension);
        }
        Ok(Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        })
    }

    pub fn identity(n: usize) -> Result<Self, MatrixError> {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.data[row * self.cols + col]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, row: usize) -> &[f64] {
        assert!(row < self.rows, "row out of bounds");
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    /// Copies column `col` into a fresh vector.
    pub fn column(&self, col: usize) -> Vec<f64> {
        assert!(col < self.cols, "column out of bounds");
        (0..self.rows).map(|i| self.data[i * self.cols + col]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j]);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut data = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += aik * other.data[k * other.cols + j];
                }
            }
        }
        Self::new(self.rows, other.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn frobenius_norm(&self) -> f64 {
        fmath::sqrt(self.data.iter().map(|v| v * v).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_validates_shape_and_entries() {
        assert!(matches!(
            RealMatrix::new(0, 3, vec![]),
            Err(MatrixError::ZeroDimension)
        ));
        assert!(matches!(
            RealMatrix::new(2, 2, vec![1.0; 3]),
            Err(MatrixError::LengthMismatch { expected: 4, got: 3 })
        ));
        assert!(matches!(
            RealMatrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(MatrixError::NonFinite { index: 1 })
        ));
        assert!(RealMatrix::new(2, 2, vec![0.0; 4]).is_ok());
    }

    #[test]
    fn transpose_and_multiply() {
        let a = RealMatrix::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let at = a.transpose();
        assert_eq!(at.rows(), 3);
        assert_eq!(at.get(0, 1), 4.0);

        let prod = a.multiply(&at).unwrap();
        // [[14, 32], [32, 77]]
        assert_eq!(prod.get(0, 0), 14.0);
        assert_eq!(prod.get(0, 1), 32.0);
        assert_eq!(prod.get(1, 0), 32.0);
        assert_eq!(prod.get(1, 1), 77.0);

        assert!(matches!(
            a.multiply(&a),
            Err(MatrixError::DimMismatch { .. })
        ));
    }

    #[test]
    fn frobenius_norm_of_3_4() {
        let a = RealMatrix::new(1, 2, vec![3.0, 4.0]).unwrap();
        assert_eq!(a.frobenius_norm(), 5.0);
    }
}
