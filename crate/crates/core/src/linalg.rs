//! Minimal dense complex linear algebra: just enough for 5-qubit state
//! vectors and their gates. Everything is value-semantic and double
//! precision; at dimension 32 nothing fancier is warranted.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub type Complex = Complex64;

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    elements: Vec<Complex>,
}

impl CVector {
    pub fn new(elements: Vec<Complex>) -> Self {
        assert!(!elements.is_empty(), "vector must have at least one element");
        Self { elements }
    }

    pub fn from_reals(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&v| Complex::new(v, 0.0)).collect())
    }

    /// Basis vector of the given dimension with a 1 at `index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut elements = vec![Complex::new(0.0, 0.0); dim];
        elements[index] = Complex::new(1.0, 0.0);
        Self { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[Complex] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> Complex {
        self.elements[i]
    }

    /// Sum of squared moduli of the elements.
    pub fn norm2(&self) -> f64 {
        self.elements.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, factor: Complex) -> CVector {
        CVector::new(self.elements.iter().map(|c| c * factor).collect())
    }

    /// Kronecker product; the left operand varies slowest, so the leftmost
    /// qubit is the most significant bit of the combined index.
    pub fn kron(&self, other: &CVector) -> CVector {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.elements {
            for b in &other.elements {
                out.push(a * b);
            }
        }
        CVector::new(out)
    }

    /// Entrywise comparison with absolute tolerance per component.
    pub fn approx_eq(&self, other: &CVector, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .elements
                .iter()
                .zip(other.elements.iter())
                .all(|(a, b)| (a.re - b.re).abs() <= tol && (a.im - b.im).abs() <= tol)
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex>) -> Self {
        assert!(rows >= 1 && cols >= 1);
        assert_eq!(entries.len(), rows * cols);
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: &[&[Complex]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            entries.extend_from_slice(row);
        }
        Self::new(r, c, entries)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex::new(1.0, 0.0);
        }
        Self::new(dim, dim, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Complex::new(0.0, 0.0); rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex) {
        self.entries[i * self.cols + j] = value;
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &CVector) -> Result<CVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                rows: self.rows,
                cols: self.cols,
                len: v.len(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut sum = Complex::new(0.0, 0.0);
            for j in 0..self.cols {
                sum += self.get(i, j) * v.get(j);
            }
            out.push(sum);
        }
        Ok(CVector::new(out))
    }

    /// Matrix-matrix product.
    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                rows: self.rows,
                cols: self.cols,
                len: other.rows,
            });
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; the left operand varies slowest.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = CMatrix::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out.set(i1 * other.rows + i2, j1 * other.cols + j2, a * other.get(i2, j2));
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose: entry (i, j) is the conjugate of input (j, i).
    pub fn conj_transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| (a.re - b.re).abs() <= tol && (a.im - b.im).abs() <= tol)
    }
}
