use std::time::Instant;

use crate::exactnum::{Scalar, ScalarField};
use crate::operators::{accumulate, OperatorExpr, SparseVec};
use crate::tensorlin::{lift, LinError, LinearOperator, Matrix, Position};

use super::report::{Outcome, VerificationReport, Witness};

/// `ops[0] ∘ ops[1] ∘ …` on V⊗V; the last one is applied first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composite(pub Vec<OperatorExpr>);

impl From<OperatorExpr> for Composite {
    fn from(e: OperatorExpr) -> Self {
        Composite(vec![e])
    }
}

impl Composite {
    /// `self ∘ other`.
    pub fn then_after(&self, other: &Composite) -> Composite {
        Composite(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn field(&self) -> &ScalarField {
        self.0[0].field()
    }

    pub fn base_dim(&self) -> usize {
        self.0[0].base_dim()
    }

    pub fn to_operator(&self) -> Result<LinearOperator, LinError> {
        let mut acc = self.0[0].to_operator()?;
        for e in &self.0[1..] {
            acc = acc.compose(&e.to_operator()?)?;
        }
        Ok(acc)
    }

    /// Direct image of `e_i ⊗ e_j`.
    pub fn image(&self, i: usize, j: usize) -> SparseVec<(usize, usize)> {
        let mut v = SparseVec::new();
        accumulate(&mut v, (i, j), self.field().one());
        for e in self.0.iter().rev() {
            let mut next = SparseVec::new();
            for ((a, b), c) in &v {
                for ((k, l), d) in e.image(*a, *b) {
                    accumulate(&mut next, (k, l), c * &d);
                }
            }
            v = next;
        }
        v
    }

    fn map(&self, f: &impl Fn(&OperatorExpr) -> OperatorExpr) -> Composite {
        Composite(self.0.iter().map(f).collect())
    }
}

/// Where a factor acts: on V⊗V itself, or on two factors of V⊗V⊗V.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Whole,
    At(Position),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub op: Composite,
    pub slot: Slot,
}

impl Factor {
    pub fn at(op: &Composite, p: Position) -> Factor {
        Factor {
            op: op.clone(),
            slot: Slot::At(p),
        }
    }

    pub fn whole(op: &Composite) -> Factor {
        Factor {
            op: op.clone(),
            slot: Slot::Whole,
        }
    }

    /// Matrix path: the composite's matrix, lifted if placed in V⊗V⊗V.
    pub fn matrix(&self) -> Result<LinearOperator, LinError> {
        let m = self.op.to_operator()?;
        match self.slot {
            Slot::Whole => Ok(m),
            Slot::At(p) => lift(&m, p),
        }
    }

    /// Direct path on a basis-tensor-keyed sparse vector (3 slots; the third
    /// is 0 when acting on V⊗V).
    pub fn apply(&self, v: &SparseVec<[usize; 3]>) -> SparseVec<[usize; 3]> {
        let mut out = SparseVec::new();
        for (key, c) in v {
            let [a, b, s] = *key;
            let (x, y) = match self.slot {
                Slot::Whole | Slot::At(Position::P12) => (a, b),
                Slot::At(Position::P23) => (b, s),
                Slot::At(Position::P13) => (a, s),
            };
            for ((k, l), d) in self.op.image(x, y) {
                let key = match self.slot {
                    Slot::Whole | Slot::At(Position::P12) => [k, l, s],
                    Slot::At(Position::P23) => [a, k, l],
                    Slot::At(Position::P13) => [k, b, l],
                };
                accumulate(&mut out, key, c * &d);
            }
        }
        out
    }
}

/// Σ coeff · (f_1 ∘ f_2 ∘ …); an empty product is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<(i64, Vec<Factor>)>);

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial(Vec::new())
    }

    pub fn product(factors: Vec<Factor>) -> Self {
        Polynomial(vec![(1, factors)])
    }

    pub fn plus(mut self, other: Polynomial) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn minus(mut self, other: Polynomial) -> Self {
        self.0.extend(other.0.into_iter().map(|(c, f)| (-c, f)));
        self
    }

    fn factors(&self) -> impl Iterator<Item = &Factor> {
        self.0.iter().flat_map(|(_, fs)| fs.iter())
    }

    fn map(&self, f: &impl Fn(&OperatorExpr) -> OperatorExpr) -> Polynomial {
        Polynomial(
            self.0
                .iter()
                .map(|(c, fs)| {
                    let fs = fs
                        .iter()
                        .map(|x| Factor {
                            op: x.op.map(f),
                            slot: x.slot,
                        })
                        .collect();
                    (*c, fs)
                })
                .collect(),
        )
    }
}

/// `lhs = rhs` as operators on V⊗V (arity 2) or V⊗V⊗V (arity 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl Identity {
    pub fn equation(name: &str, lhs: Polynomial, rhs: Polynomial) -> Self {
        Identity {
            name: name.to_string(),
            lhs,
            rhs,
        }
    }

    pub fn vanishing(name: &str, lhs: Polynomial) -> Self {
        Identity::equation(name, lhs, Polynomial::zero())
    }

    fn first_factor(&self) -> &Factor {
        self.lhs.factors().chain(self.rhs.factors()).next().expect("identity mentions an operator")
    }

    pub fn field(&self) -> &ScalarField {
        self.first_factor().op.field()
    }

    pub fn base_dim(&self) -> usize {
        self.first_factor().op.base_dim()
    }

    /// 2 when every factor acts on V⊗V as a whole, 3 otherwise.
    pub fn arity(&self) -> u32 {
        if self.lhs.factors().chain(self.rhs.factors()).all(|f| f.slot == Slot::Whole) {
            2
        } else {
            3
        }
    }

    pub fn factors(&self) -> Vec<&Factor> {
        self.lhs.factors().chain(self.rhs.factors()).collect()
    }

    /// Applies `f` to every operator expression.
    pub fn map_exprs(&self, f: impl Fn(&OperatorExpr) -> OperatorExpr) -> Identity {
        Identity {
            name: self.name.clone(),
            lhs: self.lhs.map(&f),
            rhs: self.rhs.map(&f),
        }
    }

    pub fn side(&self, lhs: bool) -> &Polynomial {
        if lhs {
            &self.lhs
        } else {
            &self.rhs
        }
    }

    /// Matrix path: lifts each factor and multiplies full matrices.
    pub fn side_matrix(&self, lhs: bool) -> Result<Matrix, LinError> {
        let f = self.field();
        let d = self.base_dim().pow(self.arity());
        let mut total = Matrix::zeros(f, d, d);
        for (c, factors) in &self.side(lhs).0 {
            let mut acc = Matrix::identity(f, d);
            for x in factors {
                acc = acc.mul(x.matrix()?.matrix())?;
            }
            total = total.add(&acc.scale(&Scalar::from_integer(f, *c))?)?;
        }
        Ok(total)
    }

    /// Direct path: image of one basis tensor, never forming a lifted matrix.
    pub fn side_image(&self, lhs: bool, basis: [usize; 3]) -> SparseVec<[usize; 3]> {
        let f = self.field();
        let mut out = SparseVec::new();
        for (c, factors) in &self.side(lhs).0 {
            let mut v = SparseVec::new();
            accumulate(&mut v, basis, f.one());
            for x in factors.iter().rev() {
                v = x.apply(&v);
            }
            let c = Scalar::from_integer(f, *c);
            for (k, val) in v {
                accumulate(&mut out, k, &c * &val);
            }
        }
        out
    }

    /// Basis tensor `[i, j, k]` of flat index `idx`; k = 0 for arity 2.
    pub fn unflatten(&self, idx: usize) -> [usize; 3] {
        let n = self.base_dim();
        match self.arity() {
            2 => [idx / n, idx % n, 0],
            _ => [idx / (n * n), (idx / n) % n, idx % n],
        }
    }

    pub fn flatten(&self, t: [usize; 3]) -> usize {
        let n = self.base_dim();
        match self.arity() {
            2 => t[0] * n + t[1],
            _ => (t[0] * n + t[1]) * n + t[2],
        }
    }

    pub(crate) fn tuple(&self, t: [usize; 3]) -> Vec<usize> {
        t[..self.arity() as usize].to_vec()
    }

    /// Exact comparison of both sides through the matrix path; a failure names
    /// the first differing entry in row-major order.
    pub fn check(&self) -> Result<VerificationReport, LinError> {
        let start = Instant::now();
        let (l, r) = (self.side_matrix(true)?, self.side_matrix(false)?);
        let witness = l.first_difference(&r).map(|(row, col)| Witness {
            part: None,
            column: self.tuple(self.unflatten(col)),
            row: self.tuple(self.unflatten(row)),
            lhs: l.get(row, col).to_string(),
            rhs: r.get(row, col).to_string(),
        });
        let outcome = if witness.is_none() { Outcome::Holds } else { Outcome::Fails };
        Ok(VerificationReport::new(&self.name, outcome, witness, start.elapsed()))
    }

    /// The same comparison through the direct path only.
    pub fn check_direct(&self) -> VerificationReport {
        let start = Instant::now();
        let n = self.base_dim().pow(self.arity());
        let zero = self.field().zero();
        // Row-major first difference, matching the matrix path.
        let mut first: Option<(usize, usize, String, String)> = None;
        for col in 0..n {
            let t = self.unflatten(col);
            let (l, r) = (self.side_image(true, t), self.side_image(false, t));
            if l == r {
                continue;
            }
            for k in l.keys().chain(r.keys()) {
                let (a, b) = (l.get(k).unwrap_or(&zero), r.get(k).unwrap_or(&zero));
                let row = self.flatten(*k);
                if a != b && first.as_ref().map_or(true, |f| (row, col) < (f.0, f.1)) {
                    first = Some((row, col, a.to_string(), b.to_string()));
                }
            }
        }
        let witness = first.map(|(row, col, lhs, rhs)| Witness {
            part: None,
            column: self.tuple(self.unflatten(col)),
            row: self.tuple(self.unflatten(row)),
            lhs,
            rhs,
        });
        let outcome = if witness.is_none() { Outcome::Holds } else { Outcome::Fails };
        VerificationReport::new(&format!("{} (direct)", self.name), outcome, witness, start.elapsed())
    }
}
