//! Exact scalars over ℚ, cyclotomic fields ℚ(ζ_m) and prime fields F_p.
//!
//! A [`Scalar`] always knows which field it lives in. Checked arithmetic
//! (`try_add`, `try_mul`, ...) reports field mismatches; the `std::ops`
//! impls panic on mismatch and are meant for code that has already checked
//! that its operands share a field (the matrix layer does this per matrix).

mod parse;
pub mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::parse_rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("operation needs a cyclotomic field, got {0}")]
    WrongFieldKind(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
}

/// Data for ℚ(ζ_m): the order, degree d = φ(m) and Φ_m (constant term first).
#[derive(Debug)]
pub struct Cyclotomic {
    order: u64,
    degree: usize,
    modulus: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_m, constant term first; monic of length d + 1.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

#[derive(Debug, Clone)]
pub enum ScalarField {
    Rationals,
    Cyclotomic(Arc<Cyclotomic>),
    Prime(u64),
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ScalarField::Rationals, ScalarField::Rationals) => true,
            (ScalarField::Cyclotomic(a), ScalarField::Cyclotomic(b)) => a.order == b.order,
            (ScalarField::Prime(p), ScalarField::Prime(q)) => p == q,
            _ => false,
        }
    }
}

impl Eq for ScalarField {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl ScalarField {
    /// ℚ(ζ_m) for `m >= 2`.
    pub fn cyclotomic(m: u64) -> Result<Self, NumError> {
        if m < 2 {
            return Err(NumError::InvalidField(format!(
                "cyclotomic order must be at least 2, got {m}"
            )));
        }
        let modulus = poly::cyclotomic_polynomial(m);
        Ok(ScalarField::Cyclotomic(Arc::new(Cyclotomic {
            order: m,
            degree: modulus.len() - 1,
            modulus,
        })))
    }

    /// F_p; `p` must be a prime below 2^31 so products fit in a u64.
    pub fn prime(p: u64) -> Result<Self, NumError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(NumError::InvalidField(format!(
                "{p} is not a supported prime"
            )));
        }
        Ok(ScalarField::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_integer(self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_integer(self, 1)
    }

    /// The field as an exchange-format record.
    pub fn spec(&self) -> FieldSpec {
        match self {
            ScalarField::Rationals => FieldSpec {
                kind: FieldKind::Rationals,
                order: None,
                p: None,
            },
            ScalarField::Cyclotomic(c) => FieldSpec {
                kind: FieldKind::Cyclotomic,
                order: Some(c.order),
                p: None,
            },
            ScalarField::Prime(p) => FieldSpec {
                kind: FieldKind::Prime,
                order: None,
                p: Some(*p),
            },
        }
    }

    /// Parses a scalar in this field; see [`Scalar::parse`].
    pub fn parse(&self, text: &str) -> Result<Scalar, NumError> {
        Scalar::parse(text, self)
    }

    fn check(&self, other: &ScalarField) -> Result<(), NumError> {
        if self == other {
            Ok(())
        } else {
            Err(NumError::FieldMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rationals => write!(f, "Q"),
            ScalarField::Cyclotomic(c) => write!(f, "Q(zeta_{})", c.order),
            ScalarField::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rationals,
    Cyclotomic,
    Prime,
}

/// JSON shape of a field: `{"kind": "rationals"}`, `{"kind": "cyclotomic", "order": 4}`
/// or `{"kind": "prime", "p": 3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<ScalarField, NumError> {
        let missing = |what: &str| NumError::InvalidField(format!("missing `{what}`"));
        match self.kind {
            FieldKind::Rationals => Ok(ScalarField::Rationals),
            FieldKind::Cyclotomic => ScalarField::cyclotomic(self.order.ok_or_else(|| missing("order"))?),
            FieldKind::Prime => ScalarField::prime(self.p.ok_or_else(|| missing("p"))?),
        }
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Rational(BigRational),
    Cyclotomic(Arc<Cyclotomic>, Box<[BigRational]>),
    Prime { value: u64, p: u64 },
}

/// An exact field element.
///
/// Rationals are kept in lowest terms; cyclotomic elements are coefficient
/// vectors of 1, ζ, ..., ζ^(d−1) reduced modulo Φ_m; prime-field elements are
/// residues in `[0, p)`.
#[derive(Clone, Debug)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn from_integer(field: &ScalarField, n: i64) -> Scalar {
        match field {
            ScalarField::Rationals => Scalar(Repr::Rational(BigRational::from_integer(n.into()))),
            ScalarField::Cyclotomic(c) => {
                let mut coeffs = vec![BigRational::zero(); c.degree];
                coeffs[0] = BigRational::from_integer(n.into());
                Scalar(Repr::Cyclotomic(c.clone(), coeffs.into_boxed_slice()))
            }
            ScalarField::Prime(p) => Scalar(Repr::Prime {
                value: n.rem_euclid(*p as i64) as u64,
                p: *p,
            }),
        }
    }

    /// Embeds a rational; in F_p this is `num · den⁻¹`, failing if p divides den.
    pub fn from_rational(field: &ScalarField, q: &BigRational) -> Result<Scalar, NumError> {
        match field {
            ScalarField::Rationals => Ok(Scalar(Repr::Rational(q.clone()))),
            ScalarField::Cyclotomic(c) => {
                let mut coeffs = vec![BigRational::zero(); c.degree];
                coeffs[0] = q.clone();
                Ok(Scalar(Repr::Cyclotomic(c.clone(), coeffs.into_boxed_slice())))
            }
            ScalarField::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = q.numer().mod_floor(&pb).to_u64().expect("residue fits");
                let den = q.denom().mod_floor(&pb).to_u64().expect("residue fits");
                if den == 0 {
                    return Err(NumError::DivisionByZero);
                }
                Ok(Scalar(Repr::Prime {
                    value: num * mod_inverse(den, *p) % p,
                    p: *p,
                }))
            }
        }
    }

    /// Builds a cyclotomic element from its coefficients of 1, ζ, ζ², ...;
    /// longer lists are reduced modulo Φ_m.
    pub fn from_coefficients(field: &ScalarField, coeffs: Vec<BigRational>) -> Result<Scalar, NumError> {
        match field {
            ScalarField::Cyclotomic(c) => {
                let mut coeffs = coeffs;
                poly::reduce_mod_monic(&mut coeffs, &c.modulus);
                Ok(Scalar(Repr::Cyclotomic(c.clone(), coeffs.into_boxed_slice())))
            }
            other => Err(NumError::WrongFieldKind(other.to_string())),
        }
    }

    pub fn field(&self) -> ScalarField {
        match &self.0 {
            Repr::Rational(_) => ScalarField::Rationals,
            Repr::Cyclotomic(c, _) => ScalarField::Cyclotomic(c.clone()),
            Repr::Prime { p, .. } => ScalarField::Prime(*p),
        }
    }

    fn same_field(&self, other: &Scalar) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rational(_), Repr::Rational(_)) => true,
            (Repr::Cyclotomic(a, _), Repr::Cyclotomic(b, _)) => a.order == b.order,
            (Repr::Prime { p, .. }, Repr::Prime { p: q, .. }) => p == q,
            _ => false,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), NumError> {
        if self.same_field(other) {
            Ok(())
        } else {
            self.field().check(&other.field())
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Cyclotomic(_, c) => c.iter().all(Zero::is_zero),
            Repr::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Cyclotomic(_, c) => c[0].is_one() && c[1..].iter().all(Zero::is_zero),
            Repr::Prime { value, .. } => *value == 1,
        }
    }

    /// The rational value, if this element lies in the prime subfield ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q.clone()),
            Repr::Cyclotomic(_, c) if c[1..].iter().all(Zero::is_zero) => Some(c[0].clone()),
            _ => None,
        }
    }

    /// Residue for prime-field elements.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Prime { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// Coefficients of 1, ζ, ..., ζ^(d−1) for cyclotomic elements.
    pub fn coefficients(&self) -> Option<&[BigRational]> {
        match &self.0 {
            Repr::Cyclotomic(_, c) => Some(c),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, NumError> {
        self.check(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            (Repr::Cyclotomic(f, a), Repr::Cyclotomic(_, b)) => Scalar(Repr::Cyclotomic(
                f.clone(),
                a.iter().zip(b.iter()).map(|(x, y)| x + y).collect(),
            )),
            (Repr::Prime { value: a, p }, Repr::Prime { value: b, .. }) => Scalar(Repr::Prime {
                value: (a + b) % p,
                p: *p,
            }),
            _ => unreachable!("fields checked"),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, NumError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, NumError> {
        self.check(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            (Repr::Cyclotomic(f, a), Repr::Cyclotomic(_, b)) => {
                let mut prod = poly::mul(a, b);
                poly::reduce_mod_monic(&mut prod, &f.modulus);
                Scalar(Repr::Cyclotomic(f.clone(), prod.into_boxed_slice()))
            }
            (Repr::Prime { value: a, p }, Repr::Prime { value: b, .. }) => Scalar(Repr::Prime {
                value: a * b % p,
                p: *p,
            }),
            _ => unreachable!("fields checked"),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, NumError> {
        self.check(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Scalar, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(a) => Scalar(Repr::Rational(a.recip())),
            Repr::Cyclotomic(f, a) => {
                let inv = poly::inverse_mod(a, &f.modulus).ok_or(NumError::DivisionByZero)?;
                Scalar(Repr::Cyclotomic(f.clone(), inv.into_boxed_slice()))
            }
            Repr::Prime { value, p } => Scalar(Repr::Prime {
                value: mod_inverse(*value, *p),
                p: *p,
            }),
        })
    }

    fn neg_ref(&self) -> Scalar {
        match &self.0 {
            Repr::Rational(a) => Scalar(Repr::Rational(-a)),
            Repr::Cyclotomic(f, a) => Scalar(Repr::Cyclotomic(f.clone(), a.iter().map(|x| -x).collect())),
            Repr::Prime { value, p } => Scalar(Repr::Prime {
                value: (p - value) % p,
                p: *p,
            }),
        }
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Scalar, NumError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::from_integer(&self.field(), 1);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Parses a scalar of `field`.
    ///
    /// Grammar: rationals `[-]digits[/digits]`; cyclotomic elements
    /// `[c0,c1,...,c_{d-1}]` (a bare rational is accepted as a constant);
    /// prime-field elements as decimal residues (rationals are reduced mod p).
    pub fn parse(text: &str, field: &ScalarField) -> Result<Scalar, NumError> {
        parse::parse_scalar(text, field)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// ζ_m^k in ℚ(ζ_m), reduced modulo Φ_m.
pub fn root_of_unity(field: &ScalarField, k: i64) -> Result<Scalar, NumError> {
    let ScalarField::Cyclotomic(c) = field else {
        return Err(NumError::WrongFieldKind(field.to_string()));
    };
    let k = k.rem_euclid(c.order as i64) as usize;
    let mut coeffs = vec![BigRational::zero(); k + 1];
    coeffs[k] = BigRational::one();
    Scalar::from_coefficients(field, coeffs)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (Repr::Cyclotomic(f, a), Repr::Cyclotomic(g, b)) => f.order == g.order && a == b,
            (Repr::Prime { value: a, p }, Repr::Prime { value: b, p: q }) => p == q && a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => fmt_rational(q, f),
            Repr::Cyclotomic(_, c) => {
                write!(f, "[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    fmt_rational(x, f)?;
                }
                write!(f, "]")
            }
            Repr::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// Sign helper for graded formulas: `(-1)^k` as a scalar.
pub fn sign(field: &ScalarField, odd: bool) -> Scalar {
    Scalar::from_integer(field, if odd { -1 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        Scalar::parse(s, &ScalarField::Rationals).unwrap()
    }

    #[test]
    fn rational_division() {
        assert_eq!(q("1").try_div(&q("2")).unwrap(), q("1/2"));
        assert_eq!(q("1").try_div(&q("0")), Err(NumError::DivisionByZero));
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let f = ScalarField::cyclotomic(4).unwrap();
        let z = root_of_unity(&f, 1).unwrap();
        assert_eq!(&z * &z, Scalar::from_integer(&f, -1));
    }

    #[test]
    fn zeta3_division() {
        let f = ScalarField::cyclotomic(3).unwrap();
        let z = root_of_unity(&f, 1).unwrap();
        let one = f.one();
        let r = one.try_div(&(&one + &z)).unwrap();
        assert_eq!(r, -&z);
    }

    #[test]
    fn roots_of_unity_examples() {
        for (m, k) in [(2u64, 1i64), (4, 2), (6, 3)] {
            let f = ScalarField::cyclotomic(m).unwrap();
            assert_eq!(root_of_unity(&f, k).unwrap(), Scalar::from_integer(&f, -1), "m={m} k={k}");
        }
        let f = ScalarField::cyclotomic(5).unwrap();
        assert!(root_of_unity(&f, 0).unwrap().is_one());
        assert_eq!(root_of_unity(&f, -1).unwrap(), root_of_unity(&f, 4).unwrap());
        assert!(matches!(
            root_of_unity(&ScalarField::Rationals, 1),
            Err(NumError::WrongFieldKind(_))
        ));
    }

    #[test]
    fn multiplicative_order_of_roots() {
        let f = ScalarField::cyclotomic(12).unwrap();
        for k in 0..12i64 {
            let z = root_of_unity(&f, k).unwrap();
            let expected = 12 / num_integer::gcd(12, k);
            let order = (1..=12).find(|&n| z.pow(n).unwrap().is_one()).unwrap();
            assert_eq!(order, expected, "k={k}");
        }
    }

    #[test]
    fn field_mismatch_is_reported() {
        let f = ScalarField::cyclotomic(4).unwrap();
        let err = q("1").try_add(&f.one()).unwrap_err();
        assert!(matches!(err, NumError::FieldMismatch { .. }));
        let g = ScalarField::cyclotomic(3).unwrap();
        assert!(f.one().try_mul(&g.one()).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = ScalarField::prime(7).unwrap();
        let a = Scalar::from_integer(&f, 3);
        assert_eq!((&a * &a.inverse().unwrap()), f.one());
        assert_eq!(Scalar::from_integer(&f, -1).as_residue(), Some(6));
        assert!(ScalarField::prime(9).is_err());
        let half = Scalar::from_rational(&f, &BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(&half * &Scalar::from_integer(&f, 2), f.one());
    }

    #[test]
    fn cyclotomic_order_one_is_rejected() {
        assert!(ScalarField::cyclotomic(1).is_err());
    }
}
