use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::Field;
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Row-major sparse matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<T>>,
}

/// Integer matrix. Matrices over `Q` or `F_p` built from integral data are
/// stored this way and reduced into the target domain on use.
pub type ExactMatrix = SparseMatrix<BigInt>;

impl<T: Clone> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds a matrix from its rows. Each row must be sorted, in range and
    /// free of explicit zeros (the caller filters them).
    pub fn from_rows(rows: usize, cols: usize, data: Vec<SparseVec<T>>) -> Result<Self> {
        if data.len() != rows {
            return Err(Error::structural(format!("expected {rows} rows, got {}", data.len())));
        }
        for row in &data {
            if row.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::structural("sparse row not strictly sorted"));
            }
            if row.last().is_some_and(|(j, _)| *j >= cols) {
                return Err(Error::structural("column index out of range"));
            }
        }
        Ok(SparseMatrix { rows, cols, data })
    }

    /// Builds a matrix from its columns (the usual output of a boundary
    /// map: one image vector per source basis element).
    pub fn from_columns(rows: usize, cols: usize, columns: Vec<SparseVec<T>>) -> Result<Self> {
        if columns.len() != cols {
            return Err(Error::structural(format!(
                "expected {cols} columns, got {}",
                columns.len()
            )));
        }
        let mut data: Vec<SparseVec<T>> = vec![Vec::new(); rows];
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col {
                if i >= rows {
                    return Err(Error::structural("row index out of range"));
                }
                data[i].push((j, v));
            }
        }
        Ok(SparseMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec<T>] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec<T>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn get_or(&self, i: usize, j: usize, zero: T) -> T {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => zero,
        }
    }

    pub fn map<U, G: Fn(&T) -> U>(&self, g: G, keep: impl Fn(&U) -> bool) -> SparseMatrix<U> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(j, v)| (*j, g(v))).filter(|(_, u)| keep(u)).collect())
                .collect(),
        }
    }
}

impl ExactMatrix {
    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, BigInt::one())]).collect(),
        }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Result<Self> {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::structural("ragged dense matrix"));
        }
        let data = dense
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j, BigInt::from(*v)))
                    .collect()
            })
            .collect();
        Ok(SparseMatrix { rows, cols, data })
    }

    pub fn from_dense_big(rows: usize, cols: usize, dense: Vec<Vec<BigInt>>) -> Self {
        let data = dense
            .into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.get_or(i, j, BigInt::zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    if acc[*j].is_zero() {
                        touched.push(*j);
                    }
                    acc[*j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &j in &touched {
                let v = std::mem::take(&mut acc[j]);
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Reduces every entry into `field`.
    pub fn over<F: Field>(&self, field: &F) -> SparseMatrix<F::Elem> {
        self.map(|v| field.from_int(v), |u| !field.is_zero(u))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_and_transpose() {
        let m = ExactMatrix::from_columns(
            2,
            3,
            vec![
                vec![(0, BigInt::from(1))],
                vec![(0, BigInt::from(2)), (1, BigInt::from(3))],
                vec![],
            ],
        )
        .unwrap();
        assert_eq!(m.get(0, 1), BigInt::from(2));
        assert_eq!(m.get(1, 1), BigInt::from(3));
        assert_eq!(m.transpose().get(1, 0), BigInt::from(2));
        assert_eq!(m.nnz(), 3);
    }

    #[test]
    fn product() {
        let a = ExactMatrix::from_dense(&[vec![1, 2], vec![3, 4]]).unwrap();
        let b = ExactMatrix::from_dense(&[vec![0, 1], vec![1, 0]]).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c, ExactMatrix::from_dense(&[vec![2, 1], vec![4, 3]]).unwrap());
        assert!(a.mul(&ExactMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(ExactMatrix::from_rows(1, 2, vec![vec![(1, BigInt::one()), (0, BigInt::one())]]).is_err());
        assert!(ExactMatrix::from_rows(1, 2, vec![vec![(2, BigInt::one())]]).is_err());
    }
}
