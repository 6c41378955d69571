use rayon::prelude::*;

use super::LinError;
use crate::exactnum::{Scalar, ScalarField};

/// Row count above which products are split across rayon workers.
const PAR_ROWS: usize = 64;

/// Dense row-major exact matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: ScalarField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &ScalarField, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &ScalarField, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: &ScalarField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows, checking that every entry lies in `field`.
    pub fn from_rows(field: &ScalarField, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinError::DimMismatch {
                    left: c,
                    right: row.len(),
                });
            }
            for x in row {
                if x.field() != *field {
                    return Err(LinError::FieldMismatch);
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(field: &ScalarField, diag: &[Scalar]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    /// Column vector.
    pub fn column_vector(field: &ScalarField, v: &[Scalar]) -> Matrix {
        Matrix {
            field: field.clone(),
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    fn same_shape(&self, other: &Matrix) -> Result<(), LinError> {
        if self.field != other.field {
            return Err(LinError::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinError::DimMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinError> {
        self.same_shape(other)?;
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinError> {
        self.same_shape(other)?;
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Result<Matrix, LinError> {
        if s.field() != self.field {
            return Err(LinError::FieldMismatch);
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| if x.is_zero() { x.clone() } else { x * s }).collect(),
        })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Matrix product `self · other`.
    ///
    /// Zero entries are skipped on both sides; each output row is accumulated
    /// in a fixed order, so the parallel and sequential results coincide.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.field != other.field {
            return Err(LinError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinError::DimMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let sparse_rows: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| (0..other.cols).filter(|&j| !other.get(k, j).is_zero()).collect())
            .collect();
        let zero = self.field.zero();
        let row_product = |i: usize| -> Vec<Scalar> {
            let mut out = vec![zero.clone(); other.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &j in &sparse_rows[k] {
                    out[j] = &out[j] + &(a * other.get(k, j));
                }
            }
            out
        };
        let rows: Vec<Vec<Scalar>> = if self.rows >= PAR_ROWS {
            (0..self.rows).into_par_iter().map(row_product).collect()
        } else {
            (0..self.rows).map(row_product).collect()
        };
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: other.cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Kronecker product: `(A⊗B)[i·rB + j, k·cB + l] = A[i,k]·B[j,l]`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.field != other.field {
            return Err(LinError::FieldMismatch);
        }
        let (rb, cb) = (other.rows, other.cols);
        let mut out = Matrix::zeros(&self.field, self.rows * rb, self.cols * cb);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rb {
                    for l in 0..cb {
                        let b = other.get(j, l);
                        if !b.is_zero() {
                            out.set(i * rb + j, k * cb + l, a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// First entry (row-major order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|idx| (idx / self.cols, idx % self.cols))
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &(&factor * pv);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : self · v = 0 }`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let zero = self.field.zero();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![zero.clone(); self.cols];
            v[free] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Exact inverse by Gauss-Jordan elimination; the pivot is the first
    /// nonzero entry of the column.
    pub fn inverse(&self) -> Result<Matrix, LinError> {
        if !self.is_square() {
            return Err(LinError::DimMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(&self.field, n);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                let kernel = self.nullspace().into_iter().next().expect("singular matrix has a kernel");
                return Err(LinError::Singular { kernel });
            };
            a.swap_rows(col, p);
            inv.swap_rows(col, p);
            let pinv = a.get(col, col).inverse().expect("pivot is nonzero");
            for c in 0..n {
                let v = a.get(col, c) * &pinv;
                a.set(col, c, v);
                let w = inv.get(col, c) * &pinv;
                inv.set(col, c, w);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in 0..n {
                    if !a.get(col, c).is_zero() {
                        let v = a.get(r, c) - &(&factor * a.get(col, c));
                        a.set(r, c, v);
                    }
                    if !inv.get(col, c).is_zero() {
                        let w = inv.get(r, c) - &(&factor * inv.get(col, c));
                        inv.set(r, c, w);
                    }
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}
