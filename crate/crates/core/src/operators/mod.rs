//! Constructors for the operator families, their closed-form inverses and
//! validity predicates. Every constructor has an `*_expr` form returning an
//! [`OperatorExpr`] (usable by the direct-application oracle) and a `build_*`
//! form returning the assembled [`LinearOperator`].

mod expr;
mod params;
pub mod recipe;

use std::sync::Arc;

use thiserror::Error;

use crate::exactnum::{NumError, Scalar, ScalarField};
use crate::structures::{
    is_zero_vector, AssociativeAlgebra, GThetaLieAlgebra, GradedBracket, LieSuperalgebra, StructureConstants,
    StructureError,
};
use crate::tensorlin::{LinError, LinearOperator, Matrix};

pub use expr::{OperatorExpr, Side, SparseVec, Summand, Term};
pub(crate) use expr::accumulate;
pub use params::ParamTable;
pub use recipe::{Built, ConstantOp, Recipe, RecipeError, RecipeParams, ScalarText, ZSpec, FAMILIES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("algebra has dimension {0}; the construction needs dimension at least 2")]
    DimTooSmall(usize),
    #[error("parameters (α,β,γ) = ({alpha}, {beta}, {gamma}) match none of the three cases")]
    InvalidCase { alpha: String, beta: String, gamma: String },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("operator is not invertible at these parameters: {0}")]
    NotInvertibleParams(String),
    #[error("z is not an even central element")]
    NotEvenCentral,
    #[error("z is not central")]
    NotCentral,
    #[error("z is not homogeneous")]
    InhomogeneousZ,
    #[error("color {0} is not in the color set")]
    UnknownColor(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Num(#[from] NumError),
}

fn place(product: &Arc<StructureConstants>, swap: bool, side: Side, vector: &Arc<Vec<Scalar>>) -> Term {
    Term::Place {
        product: product.clone(),
        swap,
        side,
        vector: vector.clone(),
    }
}

fn int(f: &ScalarField, n: i64) -> Scalar {
    Scalar::from_integer(f, n)
}

fn mult_parts(a: &AssociativeAlgebra) -> (Arc<StructureConstants>, Arc<Vec<Scalar>>) {
    (Arc::new(a.constants().clone()), Arc::new(a.unit().to_vec()))
}

fn require_dim2(a: &AssociativeAlgebra) -> Result<(), OpError> {
    if a.dim() < 2 {
        return Err(OpError::DimTooSmall(a.dim()));
    }
    Ok(())
}

fn nonzero(x: &Scalar, what: &str) -> Result<(), OpError> {
    if x.is_zero() {
        return Err(OpError::BadParameter(format!("{what} must be nonzero")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Associative algebras

/// `a⊗b ↦ α·ab⊗1 + β·1⊗ab − γ·a⊗b`.
pub fn dn_expr(
    a: &AssociativeAlgebra,
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
) -> Result<OperatorExpr, OpError> {
    require_dim2(a)?;
    let (m, u) = mult_parts(a);
    Ok(OperatorExpr::new(a.field(), a.dim())
        .with(alpha.clone(), place(&m, false, Side::Left, &u))
        .with(beta.clone(), place(&m, false, Side::Right, &u))
        .with(-gamma, Term::Identity))
}

pub fn build_dn(a: &AssociativeAlgebra, alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(dn_expr(a, alpha, beta, gamma)?.to_operator()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DnCase {
    /// α = γ ≠ 0, β ≠ 0
    CaseI,
    /// β = γ ≠ 0, α ≠ 0
    CaseII,
    /// α = β = 0, γ ≠ 0
    CaseIII,
    Invalid,
}

/// Case I is reported when both I and II apply.
pub fn dn_case(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> DnCase {
    if alpha == gamma && !gamma.is_zero() && !beta.is_zero() {
        DnCase::CaseI
    } else if beta == gamma && !gamma.is_zero() && !alpha.is_zero() {
        DnCase::CaseII
    } else if alpha.is_zero() && beta.is_zero() && !gamma.is_zero() {
        DnCase::CaseIII
    } else {
        DnCase::Invalid
    }
}

/// R_{1/β,1/α,1/γ} in cases I and II, R_{0,0,1/γ} in case III.
pub fn dn_inverse_expr(
    a: &AssociativeAlgebra,
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
) -> Result<OperatorExpr, OpError> {
    match dn_case(alpha, beta, gamma) {
        DnCase::CaseI | DnCase::CaseII => dn_expr(a, &beta.inverse()?, &alpha.inverse()?, &gamma.inverse()?),
        DnCase::CaseIII => {
            let zero = a.field().zero();
            dn_expr(a, &zero, &zero, &gamma.inverse()?)
        }
        DnCase::Invalid => Err(OpError::InvalidCase {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            gamma: gamma.to_string(),
        }),
    }
}

pub fn dn_inverse(a: &AssociativeAlgebra, alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(dn_inverse_expr(a, alpha, beta, gamma)?.to_operator()?)
}

/// The 4×4 matrix with rows (1,0,0,0), (0,1,0,0), (0,1−q,q,0), (η,0,0,−q).
pub fn dim2_canonical_expr(q: &Scalar, eta: &Scalar) -> Result<OperatorExpr, OpError> {
    let f = q.field();
    nonzero(q, "q")?;
    if !(eta.is_zero() || eta.is_one()) {
        return Err(OpError::BadParameter(format!("η must be 0 or 1, got {eta}")));
    }
    let (z, o) = (f.zero(), f.one());
    let rows = vec![
        vec![o.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone()],
        vec![z.clone(), &o - q, q.clone(), z.clone()],
        vec![eta.clone(), z.clone(), z, -q],
    ];
    let m = Matrix::from_rows(&f, rows)?;
    Ok(OperatorExpr::literal(&LinearOperator::new(2, m)?))
}

pub fn build_dim2_canonical(q: &Scalar, eta: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(dim2_canonical_expr(q, eta)?.to_operator()?)
}

/// `a⊗b ↦ p(u−v)·1⊗ab + q(u−v)·ab⊗1 − (pu−qv)·b⊗a`.
pub fn colored_expr(
    a: &AssociativeAlgebra,
    p: &Scalar,
    q: &Scalar,
    u: &Scalar,
    v: &Scalar,
) -> Result<OperatorExpr, OpError> {
    require_dim2(a)?;
    let (m, unit) = mult_parts(a);
    let d = u - v;
    Ok(OperatorExpr::new(a.field(), a.dim())
        .with(p * &d, place(&m, false, Side::Right, &unit))
        .with(q * &d, place(&m, false, Side::Left, &unit))
        .with(-(&(p * u) - &(q * v)), Term::Twist))
}

pub fn build_colored(a: &AssociativeAlgebra, p: &Scalar, q: &Scalar, u: &Scalar, v: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(colored_expr(a, p, q, u, v)?.to_operator()?)
}

/// `a⊗b ↦ p(u−v)/D·ba⊗1 + q(u−v)/D·1⊗ba − 1/(pu−qv)·b⊗a` with D = (qu−pv)(pu−qv).
pub fn colored_inverse_expr(
    a: &AssociativeAlgebra,
    p: &Scalar,
    q: &Scalar,
    u: &Scalar,
    v: &Scalar,
) -> Result<OperatorExpr, OpError> {
    require_dim2(a)?;
    let puqv = &(p * u) - &(q * v);
    let qupv = &(q * u) - &(p * v);
    if puqv.is_zero() || qupv.is_zero() {
        return Err(OpError::NotInvertibleParams("needs pu ≠ qv and qu ≠ pv".into()));
    }
    let (m, unit) = mult_parts(a);
    let d = u - v;
    let den = (&qupv * &puqv).inverse()?;
    Ok(OperatorExpr::new(a.field(), a.dim())
        .with(&(p * &d) * &den, place(&m, true, Side::Left, &unit))
        .with(&(q * &d) * &den, place(&m, true, Side::Right, &unit))
        .with(-puqv.inverse()?, Term::Twist))
}

pub fn colored_inverse(a: &AssociativeAlgebra, p: &Scalar, q: &Scalar, u: &Scalar, v: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(colored_inverse_expr(a, p, q, u, v)?.to_operator()?)
}

/// `a⊗b ↦ (s−1)·1⊗ab + q(s−1)·ab⊗1 − (s−q)·b⊗a`, with s standing for e^λ.
pub fn one_param_expr(a: &AssociativeAlgebra, q: &Scalar, s: &Scalar) -> Result<OperatorExpr, OpError> {
    require_dim2(a)?;
    nonzero(s, "s = e^λ")?;
    let (m, unit) = mult_parts(a);
    let s1 = s - &a.field().one();
    Ok(OperatorExpr::new(a.field(), a.dim())
        .with(s1.clone(), place(&m, false, Side::Right, &unit))
        .with(q * &s1, place(&m, false, Side::Left, &unit))
        .with(-(s - q), Term::Twist))
}

pub fn build_one_param(a: &AssociativeAlgebra, q: &Scalar, s: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(one_param_expr(a, q, s)?.to_operator()?)
}

/// True when s ∈ {q, 1/q}, where the operator is not invertible.
pub fn one_param_boundary(q: &Scalar, s: &Scalar) -> bool {
    let one = s.field().one();
    (s - q).is_zero() || (&(q * s) - &one).is_zero()
}

/// `a⊗b ↦ (s−1)/D·ba⊗1 + q(s−1)/D·1⊗ba − 1/(s−q)·b⊗a` with D = (qs−1)(s−q).
pub fn one_param_inverse_expr(a: &AssociativeAlgebra, q: &Scalar, s: &Scalar) -> Result<OperatorExpr, OpError> {
    require_dim2(a)?;
    nonzero(s, "s = e^λ")?;
    if one_param_boundary(q, s) {
        return Err(OpError::NotInvertibleParams("needs e^λ ≠ q, 1/q".into()));
    }
    let (m, unit) = mult_parts(a);
    let one = a.field().one();
    let s1 = s - &one;
    let sq = s - q;
    let den = (&(&(q * s) - &one) * &sq).inverse()?;
    Ok(OperatorExpr::new(a.field(), a.dim())
        .with(&s1 * &den, place(&m, true, Side::Left, &unit))
        .with(&(q * &s1) * &den, place(&m, true, Side::Right, &unit))
        .with(-sq.inverse()?, Term::Twist))
}

pub fn one_param_inverse(a: &AssociativeAlgebra, q: &Scalar, s: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(one_param_inverse_expr(a, q, s)?.to_operator()?)
}

/// Three operators on the same space, checked against the four WXZ conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WxzTriple {
    pub w: OperatorExpr,
    pub x: OperatorExpr,
    pub z: OperatorExpr,
}

impl WxzTriple {
    pub fn build(&self) -> Result<[LinearOperator; 3], OpError> {
        Ok([self.w.to_operator()?, self.x.to_operator()?, self.z.to_operator()?])
    }
}

/// W = ab⊗1 + λ1⊗ab − b⊗a, Z = μab⊗1 + 1⊗ab − b⊗a, X = ab⊗1 + 1⊗ab − b⊗a.
pub fn wxz_algebra_expr(a: &AssociativeAlgebra, lambda: &Scalar, mu: &Scalar) -> WxzTriple {
    let (m, unit) = mult_parts(a);
    let f = a.field();
    let op = |l: Scalar, r: Scalar| {
        OperatorExpr::new(f, a.dim())
            .with(l, place(&m, false, Side::Left, &unit))
            .with(r, place(&m, false, Side::Right, &unit))
            .with(int(f, -1), Term::Twist)
    };
    WxzTriple {
        w: op(f.one(), lambda.clone()),
        x: op(f.one(), f.one()),
        z: op(mu.clone(), f.one()),
    }
}

pub fn build_wxz_algebra(a: &AssociativeAlgebra, lambda: &Scalar, mu: &Scalar) -> Result<[LinearOperator; 3], OpError> {
    wxz_algebra_expr(a, lambda, mu).build()
}

// ---------------------------------------------------------------------------
// Colored families

/// A colored operator R(u, v) with colors in k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoredFamily {
    /// R(u,v)(a⊗b) = p(u−v)1⊗ab + q(u−v)ab⊗1 − (pu−qv)b⊗a
    Algebra {
        algebra: AssociativeAlgebra,
        p: Scalar,
        q: Scalar,
    },
    /// R(u,v)(a⊗b) = α(u,v)[a,b]⊗z + β(u,v)(−1)^{|a||b|}a⊗b
    Super {
        algebra: LieSuperalgebra,
        z: Vec<Scalar>,
        table: ParamTable,
    },
}

impl ColoredFamily {
    pub fn field(&self) -> &ScalarField {
        match self {
            ColoredFamily::Algebra { algebra, .. } => algebra.field(),
            ColoredFamily::Super { algebra, .. } => algebra.field(),
        }
    }

    pub fn base_dim(&self) -> usize {
        match self {
            ColoredFamily::Algebra { algebra, .. } => algebra.dim(),
            ColoredFamily::Super { algebra, .. } => algebra.dim(),
        }
    }

    pub fn eval(&self, u: &Scalar, v: &Scalar) -> Result<OperatorExpr, OpError> {
        match self {
            ColoredFamily::Algebra { algebra, p, q } => colored_expr(algebra, p, q, u, v),
            ColoredFamily::Super { algebra, z, table } => super_colored_expr(algebra, z, table, u, v),
        }
    }

    /// W = R(s,s), X = R(s,t), Z = R(t,t).
    pub fn wxz(&self, s: &Scalar, t: &Scalar) -> Result<WxzTriple, OpError> {
        Ok(WxzTriple {
            w: self.eval(s, s)?,
            x: self.eval(s, t)?,
            z: self.eval(t, t)?,
        })
    }
}

pub fn wxz_from_colored(family: &ColoredFamily, s: &Scalar, t: &Scalar) -> Result<[LinearOperator; 3], OpError> {
    family.wxz(s, t)?.build()
}

/// S(s) on a fixed algebra, s = e^λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneParamFamily {
    pub algebra: AssociativeAlgebra,
    pub q: Scalar,
}

impl OneParamFamily {
    pub fn eval(&self, s: &Scalar) -> Result<OperatorExpr, OpError> {
        one_param_expr(&self.algebra, &self.q, s)
    }

    pub fn inverse(&self, s: &Scalar) -> Result<OperatorExpr, OpError> {
        one_param_inverse_expr(&self.algebra, &self.q, s)
    }
}

// ---------------------------------------------------------------------------
// Split solutions

/// `v⊗w ↦ f(v⊗w)⊗c + c⊗g(v⊗w)` where c = e_{c_index}; f and g must vanish on
/// V⊗c + c⊗V.
pub fn split_expr(
    c_index: usize,
    f: &StructureConstants,
    g: &StructureConstants,
) -> Result<OperatorExpr, OpError> {
    let n = f.dim();
    if g.dim() != n || g.field() != f.field() {
        return Err(OpError::BadParameter("f and g must act on the same space".into()));
    }
    if c_index >= n {
        return Err(OpError::BadParameter(format!("c index {c_index} out of range for dimension {n}")));
    }
    for (name, t) in [("f", f), ("g", g)] {
        for i in 0..n {
            for (a, b) in [(i, c_index), (c_index, i)] {
                if !is_zero_vector(t.product(a, b)) {
                    return Err(OpError::HypothesisViolated(format!("{name}(e{a}⊗e{b}) ≠ 0")));
                }
            }
        }
    }
    let field = f.field();
    let c = Arc::new(crate::structures::basis_vector(field, n, c_index));
    Ok(OperatorExpr::new(field, n)
        .with(field.one(), place(&Arc::new(f.clone()), false, Side::Left, &c))
        .with(field.one(), place(&Arc::new(g.clone()), false, Side::Right, &c)))
}

pub fn build_split(c_index: usize, f: &StructureConstants, g: &StructureConstants) -> Result<LinearOperator, OpError> {
    Ok(split_expr(c_index, f, g)?.to_operator()?)
}

// ---------------------------------------------------------------------------
// Lie superalgebras

fn check_even_central(l: &LieSuperalgebra, z: &[Scalar]) -> Result<(), OpError> {
    if z.len() != l.dim() {
        return Err(OpError::BadParameter(format!("z has {} coordinates, expected {}", z.len(), l.dim())));
    }
    let even = z.iter().enumerate().all(|(i, c)| c.is_zero() || l.parity(i) == 0);
    if !even || !l.is_central(z) {
        return Err(OpError::NotEvenCentral);
    }
    Ok(())
}

fn sign_table(l: &LieSuperalgebra) -> Arc<Vec<Scalar>> {
    let n = l.dim();
    Arc::new((0..n * n).map(|x| l.sign(x / n, x % n)).collect())
}

fn bracket_parts(l: &LieSuperalgebra, z: &[Scalar]) -> (Arc<StructureConstants>, Arc<Vec<Scalar>>) {
    (Arc::new(l.constants().clone()), Arc::new(z.to_vec()))
}

/// φ_{α,β}: `x⊗y ↦ α[x,y]⊗z + (−1)^{|x||y|}β·y⊗x`.
pub fn super_phi_ab_expr(l: &LieSuperalgebra, z: &[Scalar], alpha: &Scalar, beta: &Scalar) -> Result<OperatorExpr, OpError> {
    nonzero(beta, "β")?;
    check_even_central(l, z)?;
    let (b, zv) = bracket_parts(l, z);
    Ok(OperatorExpr::new(l.field(), l.dim())
        .with(alpha.clone(), place(&b, false, Side::Left, &zv))
        .with_phase(beta.clone(), Term::Twist, sign_table(l)))
}

/// `x⊗y ↦ (α/β²)z⊗[x,y] + (−1)^{|x||y|}(1/β)·y⊗x`.
pub fn super_phi_ab_inverse_expr(
    l: &LieSuperalgebra,
    z: &[Scalar],
    alpha: &Scalar,
    beta: &Scalar,
) -> Result<OperatorExpr, OpError> {
    nonzero(beta, "β")?;
    check_even_central(l, z)?;
    let (b, zv) = bracket_parts(l, z);
    let inv = beta.inverse()?;
    Ok(OperatorExpr::new(l.field(), l.dim())
        .with(&(alpha * &inv) * &inv, place(&b, false, Side::Right, &zv))
        .with_phase(inv, Term::Twist, sign_table(l)))
}

/// φ_α: `x⊗y ↦ α[x,y]⊗z + (−1)^{|x||y|}y⊗x`.
pub fn super_phi_expr(l: &LieSuperalgebra, z: &[Scalar], alpha: &Scalar) -> Result<OperatorExpr, OpError> {
    super_phi_ab_expr(l, z, alpha, &l.field().one())
}

/// `x⊗y ↦ αz⊗[x,y] + (−1)^{|x||y|}y⊗x`.
pub fn super_phi_inverse_expr(l: &LieSuperalgebra, z: &[Scalar], alpha: &Scalar) -> Result<OperatorExpr, OpError> {
    super_phi_ab_inverse_expr(l, z, alpha, &l.field().one())
}

pub fn build_super_phi(l: &LieSuperalgebra, z: &[Scalar], alpha: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(super_phi_expr(l, z, alpha)?.to_operator()?)
}

pub fn super_phi_inverse(l: &LieSuperalgebra, z: &[Scalar], alpha: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(super_phi_inverse_expr(l, z, alpha)?.to_operator()?)
}

pub fn build_super_phi_ab(l: &LieSuperalgebra, z: &[Scalar], alpha: &Scalar, beta: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(super_phi_ab_expr(l, z, alpha, beta)?.to_operator()?)
}

pub fn super_phi_ab_inverse(
    l: &LieSuperalgebra,
    z: &[Scalar],
    alpha: &Scalar,
    beta: &Scalar,
) -> Result<LinearOperator, OpError> {
    Ok(super_phi_ab_inverse_expr(l, z, alpha, beta)?.to_operator()?)
}

/// `a⊗b ↦ α(u,v)[a,b]⊗z + β(u,v)(−1)^{|a||b|}a⊗b` (no twist in the second term).
pub fn super_colored_expr(
    l: &LieSuperalgebra,
    z: &[Scalar],
    table: &ParamTable,
    u: &Scalar,
    v: &Scalar,
) -> Result<OperatorExpr, OpError> {
    check_even_central(l, z)?;
    let (b, zv) = bracket_parts(l, z);
    Ok(OperatorExpr::new(l.field(), l.dim())
        .with(table.alpha(u, v)?.clone(), place(&b, false, Side::Left, &zv))
        .with_phase(table.beta(u, v)?.clone(), Term::Identity, sign_table(l)))
}

pub fn build_super_colored(
    l: &LieSuperalgebra,
    z: &[Scalar],
    table: &ParamTable,
    u: &Scalar,
    v: &Scalar,
) -> Result<LinearOperator, OpError> {
    Ok(super_colored_expr(l, z, table, u, v)?.to_operator()?)
}

// ---------------------------------------------------------------------------
// (G,θ)-Lie algebras

/// Grade of a central, homogeneous z; zero counts as the identity grade.
fn central_grade(l: &GThetaLieAlgebra, z: &[Scalar]) -> Result<Vec<u32>, OpError> {
    if z.len() != GradedBracket::dim(l) {
        return Err(OpError::BadParameter(format!("z has {} coordinates, expected {}", z.len(), GradedBracket::dim(l))));
    }
    if !l.is_central(z) {
        return Err(OpError::NotCentral);
    }
    if is_zero_vector(z) {
        return Ok(l.theta().group().identity());
    }
    l.grade_of(z).ok_or(OpError::InhomogeneousZ)
}

fn theta_table(l: &GThetaLieAlgebra, reversed: bool) -> Result<Arc<Vec<Scalar>>, OpError> {
    let n = GradedBracket::dim(l);
    let mut t = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            t.push(if reversed { l.theta_basis(j, i)? } else { l.theta_basis(i, j)? });
        }
    }
    Ok(Arc::new(t))
}

/// θ(g,a) = θ(a,g) = θ(g,g) = 1 for g = |z| and every grade a carried by a basis vector.
pub fn gtheta_condition(l: &GThetaLieAlgebra, z: &[Scalar]) -> Result<bool, OpError> {
    let g = central_grade(l, z)?;
    let th = l.theta();
    Ok(th.is_one(&g, &g) && l.occurring_grades().iter().all(|a| th.is_one(&g, a) && th.is_one(a, &g)))
}

/// `x⊗y ↦ α[x,y]⊗z + θ(a,b)·x⊗y` for x ∈ L_a, y ∈ L_b.
pub fn gtheta_expr(l: &GThetaLieAlgebra, z: &[Scalar], alpha: &Scalar) -> Result<OperatorExpr, OpError> {
    central_grade(l, z)?;
    let b = Arc::new(l.constants().clone());
    let zv = Arc::new(z.to_vec());
    Ok(OperatorExpr::new(GradedBracket::field(l), GradedBracket::dim(l))
        .with(alpha.clone(), place(&b, false, Side::Left, &zv))
        .with_phase(GradedBracket::field(l).one(), Term::Identity, theta_table(l, false)?))
}

/// `x⊗y ↦ α[y,x]⊗z + θ(b,a)·x⊗y`.
pub fn gtheta_inverse_expr(l: &GThetaLieAlgebra, z: &[Scalar], alpha: &Scalar) -> Result<OperatorExpr, OpError> {
    central_grade(l, z)?;
    let b = Arc::new(l.constants().clone());
    let zv = Arc::new(z.to_vec());
    Ok(OperatorExpr::new(GradedBracket::field(l), GradedBracket::dim(l))
        .with(alpha.clone(), place(&b, true, Side::Left, &zv))
        .with_phase(GradedBracket::field(l).one(), Term::Identity, theta_table(l, true)?))
}

pub fn build_gtheta(l: &GThetaLieAlgebra, z: &[Scalar], alpha: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(gtheta_expr(l, z, alpha)?.to_operator()?)
}

pub fn gtheta_inverse(l: &GThetaLieAlgebra, z: &[Scalar], alpha: &Scalar) -> Result<LinearOperator, OpError> {
    Ok(gtheta_inverse_expr(l, z, alpha)?.to_operator()?)
}

// ---------------------------------------------------------------------------
// Classical r-matrices

/// The Lie algebra used by the classical construction: L itself when purely
/// even, otherwise its even part with z restricted to even coordinates.
pub fn classical_setting(l: &LieSuperalgebra, z: &[Scalar]) -> Result<(LieSuperalgebra, Vec<Scalar>), OpError> {
    if z.len() != l.dim() {
        return Err(OpError::BadParameter(format!("z has {} coordinates, expected {}", z.len(), l.dim())));
    }
    if l.is_purely_even() {
        return Ok((l.clone(), z.to_vec()));
    }
    if z.iter().enumerate().any(|(i, c)| !c.is_zero() && l.parity(i) == 1) {
        return Err(OpError::BadParameter("z must lie in the even part".into()));
    }
    let zr = (0..l.dim()).filter(|&i| l.parity(i) == 0).map(|i| z[i].clone()).collect();
    Ok((l.even_part(), zr))
}

/// `x⊗y ↦ [x,y]⊗z` without checking that z is central.
pub fn classical_r_unchecked_expr(l: &LieSuperalgebra, z: &[Scalar]) -> OperatorExpr {
    let (b, zv) = bracket_parts(l, z);
    OperatorExpr::new(l.field(), l.dim()).with(l.field().one(), place(&b, false, Side::Left, &zv))
}

/// `x⊗y ↦ [x,y]⊗z` on L (or its even part), z central.
pub fn classical_r_expr(l: &LieSuperalgebra, z: &[Scalar]) -> Result<OperatorExpr, OpError> {
    let (e, z) = classical_setting(l, z)?;
    if !e.is_central(&z) {
        return Err(OpError::NotCentral);
    }
    Ok(classical_r_unchecked_expr(&e, &z))
}

pub fn build_classical_r(l: &LieSuperalgebra, z: &[Scalar]) -> Result<LinearOperator, OpError> {
    Ok(classical_r_expr(l, z)?.to_operator()?)
}

pub fn build_classical_r_unchecked(l: &LieSuperalgebra, z: &[Scalar]) -> Result<LinearOperator, OpError> {
    Ok(classical_r_unchecked_expr(l, z).to_operator()?)
}
