//! Exact dense linear algebra on V⊗V and V⊗V⊗V.
//!
//! Basis convention: v_i⊗v_j has index `i·N + j`, v_i⊗v_j⊗v_k has index
//! `i·N² + j·N + k`. Matrices act on column vectors, so column `c` of an
//! operator is the image of basis vector `c`. `compose_chain(&[A, B, C])` is
//! A∘B∘C: C is applied first.

mod matrix;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{FieldSpec, NumError, Scalar, ScalarField};
pub use matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("dimension {0} is not N² or N³ for the base dimension")]
    BadDimension(usize),
    #[error("matrix is singular")]
    Singular { kernel: Vec<Scalar> },
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("malformed matrix record: {0}")]
    Format(String),
}

/// Which factors of V⊗V⊗V a two-tensor operator is placed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    P12,
    P13,
    P23,
}

/// A square exact matrix acting on V⊗V or V⊗V⊗V, recording N = dim V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOperator {
    base_dim: usize,
    matrix: Matrix,
}

impl LinearOperator {
    /// Wraps a square matrix of side N² or N³.
    pub fn new(base_dim: usize, matrix: Matrix) -> Result<LinearOperator, LinError> {
        let d = matrix.rows();
        if !matrix.is_square() {
            return Err(LinError::DimMismatch {
                left: matrix.rows(),
                right: matrix.cols(),
            });
        }
        if base_dim == 0 || (d != base_dim * base_dim && d != base_dim.pow(3)) {
            return Err(LinError::BadDimension(d));
        }
        Ok(LinearOperator { base_dim, matrix })
    }

    /// Wraps a square matrix, taking N as the integer square root of its side.
    pub fn on_pairs(matrix: Matrix) -> Result<LinearOperator, LinError> {
        let d = matrix.rows();
        let n = integer_root(d, 2).ok_or(LinError::BadDimension(d))?;
        LinearOperator::new(n, matrix)
    }

    pub fn identity(field: &ScalarField, base_dim: usize, factors: u32) -> LinearOperator {
        LinearOperator {
            base_dim,
            matrix: Matrix::identity(field, base_dim.pow(factors)),
        }
    }

    pub fn zero(field: &ScalarField, base_dim: usize, factors: u32) -> LinearOperator {
        let d = base_dim.pow(factors);
        LinearOperator {
            base_dim,
            matrix: Matrix::zeros(field, d, d),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Side length D of the matrix.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_on_pairs(&self) -> bool {
        self.dim() == self.base_dim * self.base_dim
    }

    pub fn field(&self) -> &ScalarField {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        self.matrix.get(r, c)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn compatible(&self, other: &LinearOperator) -> Result<(), LinError> {
        if self.field() != other.field() {
            return Err(LinError::FieldMismatch);
        }
        if self.dim() != other.dim() || self.base_dim != other.base_dim {
            return Err(LinError::DimMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator, LinError> {
        self.compatible(other)?;
        Ok(LinearOperator {
            base_dim: self.base_dim,
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator, LinError> {
        self.compatible(other)?;
        Ok(LinearOperator {
            base_dim: self.base_dim,
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator, LinError> {
        self.compatible(other)?;
        Ok(LinearOperator {
            base_dim: self.base_dim,
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> Result<LinearOperator, LinError> {
        Ok(LinearOperator {
            base_dim: self.base_dim,
            matrix: self.matrix.scale(s)?,
        })
    }

    /// Exchange-format record `{field, n, rows}` (plus `base_dim`).
    pub fn to_record(&self) -> MatrixRecord {
        MatrixRecord {
            field: self.field().spec(),
            n: self.dim(),
            base_dim: Some(self.base_dim),
            rows: (0..self.dim())
                .map(|r| self.matrix.row(r).iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn from_record(record: &MatrixRecord) -> Result<LinearOperator, LinError> {
        let field = record.field.to_field()?;
        if record.rows.len() != record.n {
            return Err(LinError::Format(format!(
                "expected {} rows, got {}",
                record.n,
                record.rows.len()
            )));
        }
        let mut rows = Vec::with_capacity(record.n);
        for (r, row) in record.rows.iter().enumerate() {
            if row.len() != record.n {
                return Err(LinError::Format(format!("row {r} has {} entries", row.len())));
            }
            rows.push(row.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>, _>>()?);
        }
        let matrix = Matrix::from_rows(&field, rows)?;
        match record.base_dim {
            Some(n) => LinearOperator::new(n, matrix),
            None => LinearOperator::on_pairs(matrix.clone()).or_else(|_| {
                let n = integer_root(record.n, 3).ok_or(LinError::BadDimension(record.n))?;
                LinearOperator::new(n, matrix)
            }),
        }
    }
}

/// Matrix exchange format: `{"field": {...}, "n": side, "rows": [[scalar strings]]}`.
/// `base_dim` is optional; without it a perfect-square side is read as V⊗V.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub field: FieldSpec,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_dim: Option<usize>,
    pub rows: Vec<Vec<String>>,
}

fn integer_root(d: usize, k: u32) -> Option<usize> {
    (1..=d).take_while(|n| n.pow(k) <= d).find(|n| n.pow(k) == d)
}

/// Kronecker product of two matrices.
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix, LinError> {
    a.kron(b)
}

/// The flip v⊗w ↦ w⊗v on V⊗V, dim V = `n`.
pub fn twist(n: usize, field: &ScalarField) -> LinearOperator {
    let d = n * n;
    let mut m = Matrix::zeros(field, d, d);
    for i in 0..n {
        for j in 0..n {
            m.set(j * n + i, i * n + j, field.one());
        }
    }
    LinearOperator { base_dim: n, matrix: m }
}

/// Places an operator on V⊗V onto the given pair of factors of V⊗V⊗V:
/// R¹² = R⊗I, R²³ = I⊗R, R¹³ = (I⊗τ)(R⊗I)(I⊗τ).
pub fn lift(r: &LinearOperator, position: Position) -> Result<LinearOperator, LinError> {
    let n = r.base_dim;
    if !r.is_on_pairs() {
        return Err(LinError::BadDimension(r.dim()));
    }
    let field = r.field();
    let d3 = n * n * n;
    let mut out = Matrix::zeros(field, d3, d3);
    // R[(a,b),(a',b')] with the spectator factor s carried along unchanged.
    let place = |a: usize, b: usize, s: usize| -> usize {
        match position {
            Position::P12 => (a * n + b) * n + s,
            Position::P23 => (s * n + a) * n + b,
            Position::P13 => (a * n + s) * n + b,
        }
    };
    for row in 0..n * n {
        for col in 0..n * n {
            let v = r.get(row, col);
            if v.is_zero() {
                continue;
            }
            let (a, b) = (row / n, row % n);
            let (a2, b2) = (col / n, col % n);
            for s in 0..n {
                out.set(place(a, b, s), place(a2, b2, s), v.clone());
            }
        }
    }
    Ok(LinearOperator { base_dim: n, matrix: out })
}

/// Product A∘B∘... of equal-sized operators; the last one is applied first.
pub fn compose_chain(ops: &[&LinearOperator]) -> Result<LinearOperator, LinError> {
    let (first, rest) = ops.split_first().ok_or(LinError::DimMismatch { left: 0, right: 0 })?;
    rest.iter().try_fold((*first).clone(), |acc, op| acc.compose(op))
}

/// Exact inverse; a singular input yields a nonzero kernel vector.
pub fn invert(a: &LinearOperator) -> Result<LinearOperator, LinError> {
    Ok(LinearOperator {
        base_dim: a.base_dim,
        matrix: a.matrix.inverse()?,
    })
}

/// AB − BA.
pub fn commutator(a: &LinearOperator, b: &LinearOperator) -> Result<LinearOperator, LinError> {
    a.compose(b)?.sub(&b.compose(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(&ScalarField::Rationals, n)
    }

    fn diag(v: &[Scalar]) -> Matrix {
        Matrix::diagonal(&ScalarField::Rationals, v)
    }

    fn qf() -> ScalarField {
        ScalarField::Rationals
    }

    #[test]
    fn kron_examples() {
        let i2 = Matrix::identity(&qf(), 2);
        assert_eq!(kron(&i2, &i2).unwrap(), Matrix::identity(&qf(), 4));
        let d = diag(&[q(1), q(-1)]);
        assert_eq!(kron(&d, &i2).unwrap(), diag(&[q(1), q(1), q(-1), q(-1)]));
    }

    #[test]
    fn kron_twist_identity_permutes_first_two_factors() {
        let t = twist(2, &qf());
        let k = kron(t.matrix(), &Matrix::identity(&qf(), 2)).unwrap();
        for (i, j, l) in itertools_triples(2) {
            let src = (i * 2 + j) * 2 + l;
            let dst = (j * 2 + i) * 2 + l;
            let col = k.column(src);
            for (r, x) in col.iter().enumerate() {
                assert_eq!(x.is_one(), r == dst);
            }
        }
    }

    fn itertools_triples(n: usize) -> Vec<(usize, usize, usize)> {
        let mut v = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    v.push((i, j, k));
                }
            }
        }
        v
    }

    #[test]
    fn twist_examples() {
        assert!(twist(1, &qf()).is_identity());
        let t = twist(2, &qf());
        for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            assert!(t.get(r, c).is_one());
        }
        assert_eq!(t.matrix().nonzero_count(), 4);
        for n in 1..4 {
            let t = twist(n, &qf());
            assert!(t.compose(&t).unwrap().is_identity());
        }
    }

    #[test]
    fn lift_of_twist_at_13_swaps_outer_factors() {
        let l = lift(&twist(2, &qf()), Position::P13).unwrap();
        for (i, j, k) in itertools_triples(2) {
            let src = (i * 2 + j) * 2 + k;
            let dst = (k * 2 + j) * 2 + i;
            assert!(l.get(dst, src).is_one());
        }
        assert_eq!(l.matrix().nonzero_count(), 8);
    }

    #[test]
    fn lift_identity_everywhere() {
        let id = LinearOperator::identity(&qf(), 3, 2);
        for p in [Position::P12, Position::P13, Position::P23] {
            assert!(lift(&id, p).unwrap().is_identity());
        }
    }

    #[test]
    fn lift_rejects_non_pair_operators() {
        let op = LinearOperator::identity(&qf(), 2, 3);
        assert_eq!(lift(&op, Position::P12), Err(LinError::BadDimension(8)));
        assert!(LinearOperator::on_pairs(Matrix::identity(&qf(), 5)).is_err());
    }

    #[test]
    fn compose_chain_examples() {
        let t = twist(2, &qf());
        let a = LinearOperator::on_pairs(diag(&[q(1), q(2), q(3), q(4)])).unwrap();
        let id = LinearOperator::identity(&qf(), 2, 2);
        assert_eq!(compose_chain(&[&id, &a]).unwrap(), a);
        assert!(compose_chain(&[&t, &t]).unwrap().is_identity());
        let ainv = invert(&a).unwrap();
        assert!(compose_chain(&[&a, &ainv]).unwrap().is_identity());
        let big = LinearOperator::identity(&qf(), 2, 3);
        assert!(matches!(compose_chain(&[&a, &big]), Err(LinError::DimMismatch { .. })));
    }

    #[test]
    fn invert_examples() {
        let half = Scalar::parse("1/2", &qf()).unwrap();
        let third = Scalar::parse("1/3", &qf()).unwrap();
        let m = diag(&[q(2), third]);
        assert_eq!(m.inverse().unwrap(), diag(&[half, q(3)]));
        let t = twist(2, &qf());
        assert_eq!(invert(&t).unwrap(), t);
        assert!(invert(&LinearOperator::identity(&qf(), 2, 2)).unwrap().is_identity());
    }

    #[test]
    fn singular_certificate_is_a_kernel_vector() {
        let m = Matrix::from_rows(
            &qf(),
            vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]],
        )
        .unwrap();
        match m.inverse() {
            Err(LinError::Singular { kernel }) => {
                assert!(kernel.iter().any(|x| !x.is_zero()));
                assert!(m.apply(&kernel).iter().all(Scalar::is_zero));
            }
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn commutator_of_diagonal_and_twist() {
        // diag(1,2) ⊗ I against τ on N = 2: a signed permutation pattern.
        let d = kron(&diag(&[q(1), q(2)]), &Matrix::identity(&qf(), 2)).unwrap();
        let dop = LinearOperator::on_pairs(d).unwrap();
        let t = twist(2, &qf());
        let c = commutator(&dop, &t).unwrap();
        // DT − TD: entry (1,2) = D11 − D22 = 1 − 2, entry (2,1) = D22 − D11.
        assert_eq!(*c.get(1, 2), q(-1));
        assert_eq!(*c.get(2, 1), q(1));
        assert_eq!(c.matrix().nonzero_count(), 2);
        assert!(commutator(&dop, &dop).unwrap().is_zero());
        let id = LinearOperator::identity(&qf(), 2, 2);
        assert!(commutator(&id, &t).unwrap().is_zero());
    }

    #[test]
    fn record_round_trip() {
        let f = ScalarField::cyclotomic(4).unwrap();
        let t = twist(2, &f).scale(&crate::exactnum::root_of_unity(&f, 1).unwrap()).unwrap();
        let rec = t.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: MatrixRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(LinearOperator::from_record(&back).unwrap(), t);
    }
}
