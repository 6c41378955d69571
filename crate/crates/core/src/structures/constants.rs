use crate::exactnum::{Scalar, ScalarField};
use crate::tensorlin::Matrix;

/// Structure constants of a bilinear product on an N-dimensional space:
/// `e_i · e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    field: ScalarField,
    dim: usize,
    data: Vec<Scalar>,
}

impl StructureConstants {
    pub fn zero(field: &ScalarField, dim: usize) -> Self {
        StructureConstants {
            field: field.clone(),
            dim,
            data: vec![field.zero(); dim * dim * dim],
        }
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.data[start..start + self.dim]
    }

    pub fn set_product(&mut self, i: usize, j: usize, coords: Vec<Scalar>) {
        assert_eq!(coords.len(), self.dim);
        let start = (i * self.dim + j) * self.dim;
        for (k, c) in coords.into_iter().enumerate() {
            self.data[start + k] = c;
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.data[(i * self.dim + j) * self.dim + k] = v;
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Product of two coordinate vectors, extended bilinearly.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&ab * c);
                    }
                }
            }
        }
        out
    }

    /// The N × N² matrix of the linear map V⊗V → V, x⊗y ↦ x·y.
    pub fn as_matrix(&self) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(&self.field, n, n * n, |k, col| self.get(col / n, col % n, k).clone())
    }

    /// Every nonzero-or-zero slot `(i, j, k)` in lexicographic order.
    pub fn slots(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.dim;
        (0..n * n * n).map(move |idx| (idx / (n * n), (idx / n) % n, idx % n))
    }
}

pub fn basis_vector(field: &ScalarField, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}
