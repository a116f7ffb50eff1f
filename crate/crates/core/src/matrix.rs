//! Dense exact matrices.
//!
//! Storage indices on [`Matrix`] are zero-based like any Rust container. The
//! Lie-theoretic constructors in [`crate::basis`] take the one-based indices
//! used in the literature.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// A `rows × cols` matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ExactScalar::ZERO; rows * cols] }
    }

    pub fn zero_square(n: usize) -> Self {
        Self::zeros(n, n)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ExactScalar::ONE;
        }
        m
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| ExactScalar::from_int(x)));
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    /// Inverse of [`Matrix::to_coords`] for an `n × n` matrix.
    pub fn from_coords(n: usize, coords: &[ExactScalar]) -> Result<Self> {
        if coords.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: coords.len() });
        }
        Ok(Matrix { rows: n, cols: n, data: coords.to_vec() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.data[r * self.cols + c] = v;
    }

    /// Row-major flattening; the coordinate convention used by every span computation.
    pub fn to_coords(&self) -> Vec<ExactScalar> {
        self.data.clone()
    }

    pub fn as_coords(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    /// Nonzero entries as `(row, col, value)`, zero-based, row-major.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> + '_ {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (r, c, v) in self.nonzero_entries() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: &ExactScalar, other: &Matrix) -> Result<()> {
        self.check_same_shape(other)?;
        if s.is_zero() {
            return Ok(());
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(s * b);
            }
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Matrix) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        self.check_same_shape(other)?;
        let n = self.rows;
        let mut out = Matrix::zero_square(n);
        let lhs: Vec<_> = self.nonzero_entries().collect();
        let rhs: Vec<_> = other.nonzero_entries().collect();
        // (XY)_{ij} += X_{ik} Y_{kj};  (YX)_{ij} += Y_{ik} X_{kj}
        for &(i, k, a) in &lhs {
            for &(k2, j, b) in &rhs {
                if k == k2 {
                    out.data[i * n + j] += &(a * b);
                }
            }
        }
        for &(i, k, b) in &rhs {
            for &(k2, j, a) in &lhs {
                if k == k2 {
                    out.data[i * n + j] -= &(b * a);
                }
            }
        }
        Ok(out)
    }

    /// Copies the block with top-left corner `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(Error::IndexOutOfRange(format!(
                "block {rows}x{cols} at ({r0},{c0}) in a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut out = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| self.get(i, i).is_zero() && (i + 1..self.cols).all(|j| *self.get(i, j) == -self.get(j, i)))
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix shapes differ")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix shapes differ")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|c| format!("{:>width$}", cells[r * self.cols + c])).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Serialized as a row-major array of rows of `"num/den"` strings.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<ExactScalar>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn commutator_matches_product_definition() {
        let x = m(&[vec![1, 2, 0], vec![0, -1, 3], vec![4, 0, 0]]);
        let y = m(&[vec![0, 1, 1], vec![2, 0, 0], vec![0, -3, 5]]);
        let expected = &x.try_mul(&y).unwrap() - &y.try_mul(&x).unwrap();
        assert_eq!(x.commutator(&y).unwrap(), expected);
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::zeros(2, 3);
        let b = Matrix::zeros(2, 2);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&a).is_err());
        assert!(a.commutator(&a).is_err());
        assert!(b.submatrix(1, 1, 2, 1).is_err());
        assert!(Matrix::from_int_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let x = Matrix::from_rows(vec![
            vec![ExactScalar::new(1, 2).unwrap(), ExactScalar::from_int(-3)],
            vec![ExactScalar::ZERO, ExactScalar::ONE],
        ])
        .unwrap();
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"[["1/2","-3"],["0","1"]]"#);
        assert_eq!(serde_json::from_str::<Matrix>(&json).unwrap(), x);
    }

    #[test]
    fn symmetry_predicates() {
        assert!(m(&[vec![0, 2], vec![-2, 0]]).is_skew_symmetric());
        assert!(!m(&[vec![1, 2], vec![-2, 0]]).is_skew_symmetric());
        assert!(m(&[vec![1, 2], vec![2, 5]]).is_symmetric());
        assert_eq!(m(&[vec![1, 2], vec![2, 5]]).trace(), ExactScalar::from_int(6));
    }
}
