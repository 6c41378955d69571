use super::{
    basis_vector, default_names, names_of, ColorFunction, GThetaLieAlgebra, GradedBracket, Rule,
    StructureConstants, StructureError, ValidationReport, Violation,
};
use crate::exactnum::{sign, Scalar, ScalarField};

/// A Lie superalgebra on a homogeneous basis: parity `|e_i| ∈ {0,1}` and
/// bracket constants `[e_i, e_j] = Σ_k b[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSuperalgebra {
    names: Vec<String>,
    parity: Vec<u8>,
    bracket: StructureConstants,
}

impl LieSuperalgebra {
    pub fn new(names: Vec<String>, parity: Vec<u8>, bracket: StructureConstants) -> Result<Self, StructureError> {
        let n = bracket.dim();
        let names = if names.is_empty() { default_names(n) } else { names };
        if names.len() != n || parity.len() != n {
            return Err(StructureError::Shape(format!(
                "dimension {n} does not match {} names / {} grades",
                names.len(),
                parity.len()
            )));
        }
        if parity.iter().any(|&p| p > 1) {
            return Err(StructureError::Shape("superalgebra grades must be 0 or 1".into()));
        }
        Ok(LieSuperalgebra { names, parity, bracket })
    }

    /// An ordinary Lie algebra: every basis vector even.
    pub fn lie(names: Vec<String>, bracket: StructureConstants) -> Result<Self, StructureError> {
        let n = bracket.dim();
        Self::new(names, vec![0; n], bracket)
    }

    pub fn field(&self) -> &ScalarField {
        self.bracket.field()
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.bracket
    }

    pub fn constants_mut(&mut self) -> &mut StructureConstants {
        &mut self.bracket
    }

    pub fn is_purely_even(&self) -> bool {
        self.parity.iter().all(|&p| p == 0)
    }

    /// `(−1)^{|e_i||e_j|}`.
    pub fn sign(&self, i: usize, j: usize) -> Scalar {
        sign(self.field(), self.parity[i] & self.parity[j] == 1)
    }

    /// The even subalgebra L_0 on the even basis vectors, in their original order.
    pub fn even_part(&self) -> LieSuperalgebra {
        let even: Vec<usize> = (0..self.dim()).filter(|&i| self.parity[i] == 0).collect();
        let mut b = StructureConstants::zero(self.field(), even.len());
        for (a, &i) in even.iter().enumerate() {
            for (c, &j) in even.iter().enumerate() {
                let coords = even.iter().map(|&k| self.bracket.get(i, j, k).clone()).collect();
                b.set_product(a, c, coords);
            }
        }
        LieSuperalgebra {
            names: names_of(&self.names, &even),
            parity: vec![0; even.len()],
            bracket: b,
        }
    }

    /// The same data as a (Z_2, sign)-Lie algebra; a purely even algebra
    /// becomes a (Z_1, trivial)-Lie algebra instead.
    pub fn as_gtheta(&self) -> GThetaLieAlgebra {
        let (theta, grades) = if self.is_purely_even() {
            (ColorFunction::trivial(), vec![vec![0]; self.dim()])
        } else {
            (ColorFunction::sign(), self.parity.iter().map(|&p| vec![p as u32]).collect())
        };
        GThetaLieAlgebra::new(self.names.clone(), grades, theta, self.bracket.clone())
            .expect("parity data is a valid grading")
    }

    /// Grading, super antisymmetry on all pairs and super Jacobi on all triples.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let f = self.field();
        let e = |i| basis_vector(f, n, i);
        let mut violations = Vec::new();
        for (i, j, k) in self.bracket.slots() {
            if !self.bracket.get(i, j, k).is_zero() && self.parity[k] != (self.parity[i] ^ self.parity[j]) {
                violations.push(Violation::new(
                    Rule::Grading,
                    names_of(&self.names, &[i, j, k]),
                    vec![i, j, k],
                    "|[x,y]| ≠ |x|+|y|",
                ));
            }
        }
        for i in 0..n {
            for j in i..n {
                let lhs = self.bracket.product(i, j);
                let s = -self.sign(i, j);
                let rhs: Vec<Scalar> = self.bracket.product(j, i).iter().map(|c| &s * c).collect();
                if lhs != &rhs[..] {
                    violations.push(Violation::new(
                        Rule::Antisymmetry,
                        names_of(&self.names, &[i, j]),
                        vec![i, j],
                        "[x,y] ≠ −(−1)^{|x||y|}[y,x]",
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x_yz = self.bracket.apply(&e(i), self.bracket.product(j, k));
                    let y_zx = self.bracket.apply(&e(j), self.bracket.product(k, i));
                    let z_xy = self.bracket.apply(&e(k), self.bracket.product(i, j));
                    let (s1, s2, s3) = (self.sign(k, i), self.sign(i, j), self.sign(j, k));
                    let total: Vec<Scalar> = (0..n)
                        .map(|t| &(&(&s1 * &x_yz[t]) + &(&s2 * &y_zx[t])) + &(&s3 * &z_xy[t]))
                        .collect();
                    if total.iter().any(|c| !c.is_zero()) {
                        violations.push(Violation::new(
                            Rule::Jacobi,
                            names_of(&self.names, &[i, j, k]),
                            vec![i, j, k],
                            "super Jacobi sum is nonzero",
                        ));
                    }
                }
            }
        }
        ValidationReport {
            kind: "Lie superalgebra",
            violations,
        }
    }
}

impl GradedBracket for LieSuperalgebra {
    fn bracket_constants(&self) -> &StructureConstants {
        &self.bracket
    }

    fn grade_key(&self, i: usize) -> Vec<u32> {
        vec![self.parity[i] as u32]
    }
}
