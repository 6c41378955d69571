//! Exact decision procedures for the operator identities, the independent
//! direct-application oracle and the dimension-2 exhaustive search.

mod identity;
mod oracle;
mod report;
pub mod search;
pub mod suite;

use thiserror::Error;

use crate::exactnum::Scalar;
use crate::operators::{ColoredFamily, OneParamFamily, OpError, OperatorExpr, WxzTriple};
use crate::tensorlin::{lift, LinError, LinearOperator, Position};

pub use identity::{Composite, Factor, Identity, Polynomial, Slot};
pub use oracle::{mutation_test, oracle_compare, oracle_equivalence, MutationOutcome};
pub use report::{Outcome, ReportRecord, VerificationReport, Witness};
pub use search::{search_dim2, SearchHit, SEARCH_FIELDS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("operator acts on a space of dimension {0}, expected V⊗V")]
    BadDimension(usize),
    #[error("operators act on different spaces ({left} vs {right})")]
    DimMismatch { left: usize, right: usize },
    #[error("unsupported field for the search: {0}")]
    UnsupportedField(String),
    #[error("search hit failed exact re-verification: {0}")]
    Reverification(String),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Lin(#[from] LinError),
}

fn require_pairs(r: &LinearOperator) -> Result<(), VerifyError> {
    if !r.is_on_pairs() {
        return Err(VerifyError::BadDimension(r.dim()));
    }
    Ok(())
}

fn same_space(ops: &[&LinearOperator]) -> Result<(), VerifyError> {
    for op in ops {
        require_pairs(op)?;
        if op.dim() != ops[0].dim() || op.field() != ops[0].field() {
            return Err(VerifyError::DimMismatch {
                left: ops[0].dim(),
                right: op.dim(),
            });
        }
    }
    Ok(())
}

fn lit(r: &LinearOperator) -> Composite {
    Composite::from(OperatorExpr::literal(r))
}

// ---------------------------------------------------------------------------
// Identity builders

/// R¹²R²³R¹² = R²³R¹²R²³.
pub fn braid_identity(r: &Composite) -> Identity {
    let f = |p| Factor::at(r, p);
    Identity::equation(
        "braid",
        Polynomial::product(vec![f(Position::P12), f(Position::P23), f(Position::P12)]),
        Polynomial::product(vec![f(Position::P23), f(Position::P12), f(Position::P23)]),
    )
}

/// R¹²R¹³R²³ = R²³R¹³R¹².
pub fn qybe_identity(r: &Composite) -> Identity {
    colored_identity_named("qybe", r, r, r)
}

fn colored_identity_named(name: &str, r_uv: &Composite, r_uw: &Composite, r_vw: &Composite) -> Identity {
    Identity::equation(
        name,
        Polynomial::product(vec![
            Factor::at(r_uv, Position::P12),
            Factor::at(r_uw, Position::P13),
            Factor::at(r_vw, Position::P23),
        ]),
        Polynomial::product(vec![
            Factor::at(r_vw, Position::P23),
            Factor::at(r_uw, Position::P13),
            Factor::at(r_uv, Position::P12),
        ]),
    )
}

/// R¹²(u,v)R¹³(u,w)R²³(v,w) = R²³(v,w)R¹³(u,w)R¹²(u,v).
pub fn colored_identity(r_uv: &Composite, r_uw: &Composite, r_vw: &Composite) -> Identity {
    colored_identity_named("colored-qybe", r_uv, r_uw, r_vw)
}

/// [R,S,T] = R¹²S¹³T²³ − T²³S¹³R¹² = 0.
pub fn commutator_identity(name: &str, r: &Composite, s: &Composite, t: &Composite) -> Identity {
    let lhs = Polynomial::product(vec![Factor::at(r, Position::P12), Factor::at(s, Position::P13), Factor::at(t, Position::P23)]);
    let rhs = Polynomial::product(vec![Factor::at(t, Position::P23), Factor::at(s, Position::P13), Factor::at(r, Position::P12)]);
    Identity::vanishing(name, lhs.minus(rhs))
}

/// [r¹²,r¹³] + [r¹²,r²³] + [r¹³,r²³] = 0.
pub fn classical_identity(r: &Composite) -> Identity {
    let f = |p| Factor::at(r, p);
    let mut poly = Polynomial::zero();
    for (a, b) in [
        (Position::P12, Position::P13),
        (Position::P12, Position::P23),
        (Position::P13, Position::P23),
    ] {
        poly = poly
            .plus(Polynomial::product(vec![f(a), f(b)]))
            .minus(Polynomial::product(vec![f(b), f(a)]));
    }
    Identity::vanishing("classical", poly)
}

/// R∘S = I (on V⊗V).
pub fn inverse_identity(name: &str, r: &Composite, s: &Composite) -> Identity {
    Identity::equation(
        name,
        Polynomial::product(vec![Factor::whole(r), Factor::whole(s)]),
        Polynomial::product(vec![]),
    )
}

/// The four WXZ conditions as separate identities.
pub fn wxz_identities(w: &Composite, x: &Composite, z: &Composite) -> Vec<Identity> {
    vec![
        commutator_identity("[W,W,W]", w, w, w),
        commutator_identity("[Z,Z,Z]", z, z, z),
        commutator_identity("[W,X,X]", w, x, x),
        commutator_identity("[X,X,Z]", x, x, z),
    ]
}

/// Standard one-parameter form with spectral ratios:
/// S¹²(s1/s2)S¹³(s1/s3)S²³(s2/s3) = S²³(s2/s3)S¹³(s1/s3)S¹²(s1/s2).
pub fn one_param_identity(family: &OneParamFamily, s: [&Scalar; 3]) -> Result<Identity, VerifyError> {
    let [s1, s2, s3] = s;
    let ratio = |a: &Scalar, b: &Scalar| -> Result<Composite, VerifyError> {
        let q = a.try_div(b).map_err(OpError::from)?;
        Ok(family.eval(&q)?.into())
    };
    let (a, b, c) = (ratio(s1, s2)?, ratio(s1, s3)?, ratio(s2, s3)?);
    Ok(colored_identity_named("one-param", &a, &b, &c))
}

/// The right-hand side as printed, with S¹³(s1/s2) in place of S¹³(s1/s3).
pub fn one_param_printed_identity(family: &OneParamFamily, s: [&Scalar; 3]) -> Result<Identity, VerifyError> {
    let [s1, s2, s3] = s;
    let ev = |a: &Scalar, b: &Scalar| -> Result<Composite, VerifyError> {
        Ok(family.eval(&a.try_div(b).map_err(OpError::from)?)?.into())
    };
    let (s12, s13, s23) = (ev(s1, s2)?, ev(s1, s3)?, ev(s2, s3)?);
    Ok(Identity::equation(
        "one-param-printed",
        Polynomial::product(vec![
            Factor::at(&s12, Position::P12),
            Factor::at(&s13, Position::P13),
            Factor::at(&s23, Position::P23),
        ]),
        Polynomial::product(vec![
            Factor::at(&s23, Position::P23),
            Factor::at(&s12, Position::P13),
            Factor::at(&s12, Position::P12),
        ]),
    ))
}

// ---------------------------------------------------------------------------
// Checks on explicit operators

pub fn check_braid(r: &LinearOperator) -> Result<VerificationReport, VerifyError> {
    require_pairs(r)?;
    Ok(braid_identity(&lit(r)).check()?)
}

pub fn check_qybe(r: &LinearOperator) -> Result<VerificationReport, VerifyError> {
    require_pairs(r)?;
    Ok(qybe_identity(&lit(r)).check()?)
}

/// R¹²S¹³T²³ − T²³S¹³R¹².
pub fn yb_commutator(r: &LinearOperator, s: &LinearOperator, t: &LinearOperator) -> Result<LinearOperator, VerifyError> {
    same_space(&[r, s, t])?;
    let lhs = lift(r, Position::P12)?
        .compose(&lift(s, Position::P13)?)?
        .compose(&lift(t, Position::P23)?)?;
    let rhs = lift(t, Position::P23)?
        .compose(&lift(s, Position::P13)?)?
        .compose(&lift(r, Position::P12)?)?;
    Ok(lhs.sub(&rhs)?)
}

/// All four commutators; the report carries the first non-vanishing one.
pub fn check_wxz(w: &LinearOperator, x: &LinearOperator, z: &LinearOperator) -> Result<VerificationReport, VerifyError> {
    same_space(&[w, x, z])?;
    let ids = wxz_identities(&lit(w), &lit(x), &lit(z));
    Ok(VerificationReport::combine("wxz", ids.iter().map(|i| i.check()).collect::<Result<Vec<_>, _>>()?))
}

pub fn check_classical(r: &LinearOperator) -> Result<VerificationReport, VerifyError> {
    require_pairs(r)?;
    Ok(classical_identity(&lit(r)).check()?)
}

/// R·R⁻¹ = R⁻¹·R = I.
pub fn check_inverse_pair(r: &LinearOperator, rinv: &LinearOperator) -> Result<VerificationReport, VerifyError> {
    same_space(&[r, rinv])?;
    let (a, b) = (lit(r), lit(rinv));
    let parts = vec![
        inverse_identity("R·R⁻¹", &a, &b).check()?,
        inverse_identity("R⁻¹·R", &b, &a).check()?,
    ];
    Ok(VerificationReport::combine("inverse", parts))
}

// ---------------------------------------------------------------------------
// Checks on families

pub fn check_colored_qybe(
    family: &ColoredFamily,
    u: &Scalar,
    v: &Scalar,
    w: &Scalar,
) -> Result<VerificationReport, VerifyError> {
    let id = colored_identity(&family.eval(u, v)?.into(), &family.eval(u, w)?.into(), &family.eval(v, w)?.into());
    Ok(id
        .check()?
        .with_param("u", u)
        .with_param("v", v)
        .with_param("w", w))
}

/// Runs every color triple over `colors`, in lexicographic order.
pub fn colored_suite(family: &ColoredFamily, colors: &[Scalar]) -> Result<Vec<VerificationReport>, VerifyError> {
    let mut out = Vec::new();
    for u in colors {
        for v in colors {
            for w in colors {
                out.push(check_colored_qybe(family, u, v, w)?);
            }
        }
    }
    Ok(out)
}

pub fn check_one_param(
    family: &OneParamFamily,
    s1: &Scalar,
    s2: &Scalar,
    s3: &Scalar,
) -> Result<VerificationReport, VerifyError> {
    for s in [s1, s2, s3] {
        if s.is_zero() {
            return Err(OpError::BadParameter("spectral parameters s_i must be nonzero".into()).into());
        }
    }
    Ok(one_param_identity(family, [s1, s2, s3])?
        .check()?
        .with_param("q", &family.q)
        .with_param("s1", s1)
        .with_param("s2", s2)
        .with_param("s3", s3))
}

pub fn check_wxz_triple(t: &WxzTriple) -> Result<VerificationReport, VerifyError> {
    let ids = wxz_identities(&t.w.clone().into(), &t.x.clone().into(), &t.z.clone().into());
    Ok(VerificationReport::combine("wxz", ids.iter().map(|i| i.check()).collect::<Result<Vec<_>, _>>()?))
}

#[cfg(test)]
mod tests;
