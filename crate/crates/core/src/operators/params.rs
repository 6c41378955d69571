use crate::exactnum::Scalar;

use super::OpError;

/// Finite tables α, β : X × X → k over an explicit color set X.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamTable {
    colors: Vec<Scalar>,
    alpha: Vec<Scalar>,
    beta: Vec<Scalar>,
}

impl ParamTable {
    /// Tabulates α and β on every ordered pair of colors.
    pub fn from_fn(
        colors: Vec<Scalar>,
        alpha: impl Fn(&Scalar, &Scalar) -> Scalar,
        beta: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Self, OpError> {
        for (i, c) in colors.iter().enumerate() {
            if colors[..i].contains(c) {
                return Err(OpError::BadParameter(format!("color {c} is listed twice")));
            }
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for u in &colors {
            for v in &colors {
                a.push(alpha(u, v));
                b.push(beta(u, v));
            }
        }
        Ok(ParamTable {
            colors,
            alpha: a,
            beta: b,
        })
    }

    /// The single-argument form α(u,v) = f(v), β(u,v) = g(v).
    pub fn from_single(
        colors: Vec<Scalar>,
        f: impl Fn(&Scalar) -> Scalar,
        g: impl Fn(&Scalar) -> Scalar,
    ) -> Result<Self, OpError> {
        Self::from_fn(colors, |_, v| f(v), |_, v| g(v))
    }

    pub fn colors(&self) -> &[Scalar] {
        &self.colors
    }

    pub fn index(&self, c: &Scalar) -> Result<usize, OpError> {
        self.colors
            .iter()
            .position(|x| x == c)
            .ok_or_else(|| OpError::UnknownColor(c.to_string()))
    }

    pub fn alpha(&self, u: &Scalar, v: &Scalar) -> Result<&Scalar, OpError> {
        let n = self.colors.len();
        Ok(&self.alpha[self.index(u)? * n + self.index(v)?])
    }

    pub fn beta(&self, u: &Scalar, v: &Scalar) -> Result<&Scalar, OpError> {
        let n = self.colors.len();
        Ok(&self.beta[self.index(u)? * n + self.index(v)?])
    }

    /// β(u,w)α(v,w) = α(u,w)β(v,w) on all color triples; the first failing
    /// `(u, v, w)` otherwise.
    pub fn constraint_witness(&self) -> Option<(Scalar, Scalar, Scalar)> {
        let n = self.colors.len();
        let at = |t: &[Scalar], x: usize, y: usize| t[x * n + y].clone();
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let lhs = &at(&self.beta, u, w) * &at(&self.alpha, v, w);
                    let rhs = &at(&self.alpha, u, w) * &at(&self.beta, v, w);
                    if lhs != rhs {
                        let c = &self.colors;
                        return Some((c[u].clone(), c[v].clone(), c[w].clone()));
                    }
                }
            }
        }
        None
    }

    pub fn constraint_holds(&self) -> bool {
        self.constraint_witness().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ScalarField;

    fn ints(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_integer(&ScalarField::Rationals, x)).collect()
    }

    #[test]
    fn single_argument_tables_satisfy_the_constraint() {
        let one = ScalarField::Rationals.one();
        let t = ParamTable::from_single(ints(&[1, 2, 3]), |v| v.clone(), |_| one.clone()).unwrap();
        assert!(t.constraint_holds());
        assert_eq!(t.alpha(&ints(&[1])[0], &ints(&[3])[0]).unwrap(), &ints(&[3])[0]);
    }

    #[test]
    fn first_argument_dependence_breaks_it() {
        let one = ScalarField::Rationals.one();
        let t = ParamTable::from_fn(ints(&[1, 2]), |u, _| u.clone(), |_, _| one.clone()).unwrap();
        let (u, v, _) = t.constraint_witness().unwrap();
        assert_ne!(u, v);
    }

    #[test]
    fn colors_are_distinct_and_known() {
        let one = ScalarField::Rationals.one();
        assert!(ParamTable::from_single(ints(&[1, 1]), |v| v.clone(), |_| one.clone()).is_err());
        let t = ParamTable::from_single(ints(&[1]), |v| v.clone(), |_| one.clone()).unwrap();
        assert!(matches!(t.alpha(&ints(&[4])[0], &ints(&[1])[0]), Err(OpError::UnknownColor(_))));
    }
}
