use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{NumError, Scalar, ScalarField};

fn err(position: usize, message: impl Into<String>) -> NumError {
    NumError::Parse {
        position,
        message: message.into(),
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, NumError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected digits"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }

    fn rational(&mut self) -> Result<BigRational, NumError> {
        self.skip_ws();
        let neg = self.eat(b'-');
        let num = self.digits()?;
        let den = if self.eat(b'/') {
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(err(at, "zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        self.skip_ws();
        let q = BigRational::new(num, den);
        Ok(if neg { -q } else { q })
    }

    fn finish(&mut self) -> Result<(), NumError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(b) => Err(err(self.pos, format!("unexpected character `{}`", b as char))),
        }
    }
}

/// Parses `[-]digits[/digits]` into a rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<BigRational, NumError> {
    let mut cur = Cursor::new(text);
    let q = cur.rational()?;
    cur.finish()?;
    Ok(q)
}

pub(super) fn parse_scalar(text: &str, field: &ScalarField) -> Result<Scalar, NumError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let value = match field {
        ScalarField::Cyclotomic(c) if cur.peek() == Some(b'[') => {
            cur.pos += 1;
            let mut coeffs = Vec::with_capacity(c.degree());
            loop {
                coeffs.push(cur.rational()?);
                if cur.eat(b',') {
                    continue;
                }
                if cur.eat(b']') {
                    break;
                }
                return Err(err(cur.pos, "expected `,` or `]`"));
            }
            if coeffs.len() != c.degree() {
                return Err(err(
                    cur.pos,
                    format!("expected {} coefficients, got {}", c.degree(), coeffs.len()),
                ));
            }
            Scalar::from_coefficients(field, coeffs)?
        }
        _ => {
            let start = cur.pos;
            let q = cur.rational()?;
            Scalar::from_rational(field, &q).map_err(|_| err(start, "denominator vanishes in this field"))?
        }
    };
    cur.finish()?;
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::root_of_unity;

    #[test]
    fn rational_examples() {
        let q = ScalarField::Rationals;
        let v = Scalar::parse("-3/7", &q).unwrap();
        assert_eq!(v.as_rational().unwrap(), BigRational::new((-3).into(), 7.into()));
        assert_eq!(Scalar::parse("2/4", &q).unwrap().to_string(), "1/2");
        assert_eq!(Scalar::parse(" 5 ", &q).unwrap().to_string(), "5");
    }

    #[test]
    fn cyclotomic_vector() {
        let f = ScalarField::cyclotomic(4).unwrap();
        let z = Scalar::parse("[0/1,1/1]", &f).unwrap();
        assert_eq!(z, root_of_unity(&f, 1).unwrap());
        assert_eq!(z.to_string(), "[0,1]");
        assert_eq!(Scalar::parse("3", &f).unwrap().to_string(), "[3,0]");
    }

    #[test]
    fn prime_residues() {
        let f = ScalarField::prime(3).unwrap();
        assert_eq!(Scalar::parse("2", &f).unwrap().as_residue(), Some(2));
        assert_eq!(Scalar::parse("-1", &f).unwrap().as_residue(), Some(2));
        assert_eq!(Scalar::parse("5", &f).unwrap().as_residue(), Some(2));
        assert!(Scalar::parse("1/3", &f).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let q = ScalarField::Rationals;
        assert_eq!(
            Scalar::parse("1/x", &q).unwrap_err(),
            NumError::Parse {
                position: 2,
                message: "expected digits".into()
            }
        );
        assert!(matches!(Scalar::parse("1/0", &q), Err(NumError::Parse { position: 2, .. })));
        assert!(matches!(Scalar::parse("12 3", &q), Err(NumError::Parse { position: 3, .. })));
        assert!(matches!(Scalar::parse("", &q), Err(NumError::Parse { position: 0, .. })));
        let f = ScalarField::cyclotomic(3).unwrap();
        assert!(matches!(Scalar::parse("[1,2,3]", &f), Err(NumError::Parse { .. })));
        assert!(matches!(Scalar::parse("[1;2]", &f), Err(NumError::Parse { position: 2, .. })));
    }
}
