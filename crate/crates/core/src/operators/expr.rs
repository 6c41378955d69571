use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactnum::{Scalar, ScalarField};
use crate::structures::StructureConstants;
use crate::tensorlin::{kron, twist, LinError, LinearOperator, Matrix};

/// Which tensor factor receives the bilinear product in a [`Term::Place`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `P(a,b) ⊗ w`
    Left,
    /// `w ⊗ P(a,b)`
    Right,
}

/// One basic map on V⊗V, before coefficient and phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    /// `a⊗b ↦ a⊗b`
    Identity,
    /// `a⊗b ↦ b⊗a`
    Twist,
    /// `a⊗b ↦ P(a,b)⊗w` or `w⊗P(a,b)`; with `swap`, `P(b,a)` instead.
    Place {
        product: Arc<StructureConstants>,
        swap: bool,
        side: Side,
        vector: Arc<Vec<Scalar>>,
    },
    /// An explicit N²×N² matrix.
    Literal(Arc<Matrix>),
}

/// `coeff · term ∘ diag(phase)`, where `phase[i·N+j]` multiplies `e_i⊗e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub coeff: Scalar,
    pub term: Term,
    pub phase: Option<Arc<Vec<Scalar>>>,
}

/// A linear map on V⊗V written as a sum of [`Summand`]s.
///
/// It has two independent evaluations: [`OperatorExpr::to_operator`] assembles
/// block matrices (Kronecker products, twist and diagonal factors), while
/// [`OperatorExpr::image`] applies the defining formula to one basis pair
/// directly from the structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorExpr {
    field: ScalarField,
    n: usize,
    summands: Vec<Summand>,
}

/// Sparse vector over basis tensors.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub(crate) fn accumulate<K: Ord>(acc: &mut SparseVec<K>, key: K, v: Scalar) {
    if v.is_zero() {
        return;
    }
    match acc.get_mut(&key) {
        Some(slot) => {
            *slot = &*slot + &v;
            if slot.is_zero() {
                acc.remove(&key);
            }
        }
        None => {
            acc.insert(key, v);
        }
    }
}

impl OperatorExpr {
    pub fn new(field: &ScalarField, n: usize) -> Self {
        OperatorExpr {
            field: field.clone(),
            n,
            summands: Vec::new(),
        }
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn summands_mut(&mut self) -> &mut [Summand] {
        &mut self.summands
    }

    pub fn with(mut self, coeff: Scalar, term: Term) -> Self {
        self.summands.push(Summand {
            coeff,
            term,
            phase: None,
        });
        self
    }

    pub fn with_phase(mut self, coeff: Scalar, term: Term, phase: Arc<Vec<Scalar>>) -> Self {
        debug_assert_eq!(phase.len(), self.n * self.n);
        self.summands.push(Summand {
            coeff,
            term,
            phase: Some(phase),
        });
        self
    }

    /// An explicit matrix as an expression.
    pub fn literal(op: &LinearOperator) -> Self {
        OperatorExpr::new(op.field(), op.base_dim()).with(op.field().one(), Term::Literal(Arc::new(op.matrix().clone())))
    }

    /// Matrix path: Σ coeff · block(term) · diag(phase).
    pub fn to_operator(&self) -> Result<LinearOperator, LinError> {
        let n = self.n;
        let d = n * n;
        let f = &self.field;
        let mut total = Matrix::zeros(f, d, d);
        for s in &self.summands {
            let block = match &s.term {
                Term::Identity => Matrix::identity(f, d),
                Term::Twist => twist(n, f).into_matrix(),
                Term::Place {
                    product,
                    swap,
                    side,
                    vector,
                } => {
                    let p = product.as_matrix();
                    let w = Matrix::column_vector(f, vector);
                    let placed = match side {
                        Side::Left => kron(&p, &w)?,
                        Side::Right => kron(&w, &p)?,
                    };
                    if *swap {
                        placed.mul(twist(n, f).matrix())?
                    } else {
                        placed
                    }
                }
                Term::Literal(m) => (**m).clone(),
            };
            let block = match &s.phase {
                Some(ph) => block.mul(&Matrix::diagonal(f, ph))?,
                None => block,
            };
            total = total.add(&block.scale(&s.coeff)?)?;
        }
        LinearOperator::new(n, total)
    }

    /// Direct path: image of `e_i ⊗ e_j` as a sparse vector keyed by `(k, l)`.
    pub fn image(&self, i: usize, j: usize) -> SparseVec<(usize, usize)> {
        let n = self.n;
        let mut out = SparseVec::new();
        for s in &self.summands {
            let c = match &s.phase {
                Some(ph) => &s.coeff * &ph[i * n + j],
                None => s.coeff.clone(),
            };
            if c.is_zero() {
                continue;
            }
            match &s.term {
                Term::Identity => accumulate(&mut out, (i, j), c),
                Term::Twist => accumulate(&mut out, (j, i), c),
                Term::Place {
                    product,
                    swap,
                    side,
                    vector,
                } => {
                    let (a, b) = if *swap { (j, i) } else { (i, j) };
                    for (k, pk) in product.product(a, b).iter().enumerate() {
                        if pk.is_zero() {
                            continue;
                        }
                        let cp = &c * pk;
                        for (l, wl) in vector.iter().enumerate() {
                            if wl.is_zero() {
                                continue;
                            }
                            let key = match side {
                                Side::Left => (k, l),
                                Side::Right => (l, k),
                            };
                            accumulate(&mut out, key, &cp * wl);
                        }
                    }
                }
                Term::Literal(m) => {
                    for r in 0..n * n {
                        let v = m.get(r, i * n + j);
                        if !v.is_zero() {
                            accumulate(&mut out, (r / n, r % n), &c * v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Adds `delta` to one structure constant of the first placed product;
    /// `None` if the expression has no placed product.
    pub fn perturbed(&self, slot: (usize, usize, usize), delta: &Scalar) -> Option<OperatorExpr> {
        let mut out = self.clone();
        let s = out
            .summands
            .iter_mut()
            .find(|s| matches!(s.term, Term::Place { .. }) && !s.coeff.is_zero())?;
        if let Term::Place { product, .. } = &mut s.term {
            let mut p = (**product).clone();
            let (i, j, k) = slot;
            let v = p.get(i, j, k) + delta;
            p.set(i, j, k, v);
            *product = Arc::new(p);
        }
        Some(out)
    }
}
