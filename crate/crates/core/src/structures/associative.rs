use super::{basis_vector, default_names, names_of, Rule, StructureConstants, StructureError, ValidationReport, Violation};
use crate::exactnum::{Scalar, ScalarField};

/// A unital associative algebra `e_i e_j = Σ_k c[i][j][k] e_k` with unit
/// given by its coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativeAlgebra {
    names: Vec<String>,
    mult: StructureConstants,
    unit: Vec<Scalar>,
}

impl AssociativeAlgebra {
    pub fn new(names: Vec<String>, mult: StructureConstants, unit: Vec<Scalar>) -> Result<Self, StructureError> {
        let n = mult.dim();
        let names = if names.is_empty() { default_names(n) } else { names };
        if names.len() != n || unit.len() != n {
            return Err(StructureError::Shape(format!(
                "dimension {n} does not match {} names / {} unit coordinates",
                names.len(),
                unit.len()
            )));
        }
        if unit.iter().any(|u| u.field() != *mult.field()) {
            return Err(StructureError::Shape("unit lies in a different field".into()));
        }
        Ok(AssociativeAlgebra { names, mult, unit })
    }

    pub fn field(&self) -> &ScalarField {
        self.mult.field()
    }

    pub fn dim(&self) -> usize {
        self.mult.dim()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.mult
    }

    pub fn constants_mut(&mut self) -> &mut StructureConstants {
        &mut self.mult
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mult.apply(x, y)
    }

    /// Checks all N³ associativity triples, then both unit laws.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let f = self.field();
        let e = |i| basis_vector(f, n, i);
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mult.product(i, j).to_vec();
                for k in 0..n {
                    let left = self.multiply(&ij, &e(k));
                    let right = self.multiply(&e(i), self.mult.product(j, k));
                    if left != right {
                        violations.push(Violation::new(
                            Rule::Associativity,
                            names_of(&self.names, &[i, j, k]),
                            vec![i, j, k],
                            "(ab)c ≠ a(bc)",
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            if self.multiply(&self.unit, &e(i)) != e(i) {
                violations.push(Violation::new(Rule::LeftUnit, names_of(&self.names, &[i]), vec![i], "1·a ≠ a"));
            }
        }
        for i in 0..n {
            if self.multiply(&e(i), &self.unit) != e(i) {
                violations.push(Violation::new(Rule::RightUnit, names_of(&self.names, &[i]), vec![i], "a·1 ≠ a"));
            }
        }
        ValidationReport {
            kind: "associative algebra",
            violations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::catalog;
    use crate::structures::Structure;

    fn assoc(name: &str) -> AssociativeAlgebra {
        match catalog(name).unwrap() {
            Structure::Associative(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn catalog_algebras_are_valid() {
        for name in ["dual-numbers", "m2", "poly3"] {
            let r = assoc(name).validate();
            assert!(r.is_valid(), "{name}: {r}");
        }
    }

    #[test]
    fn matrix_units_multiply_by_brute_force() {
        // e_{ij} e_{kl} = δ_{jk} e_{il}, index of e_{ij} = 2i + j.
        let a = assoc("m2");
        let q = ScalarField::Rationals;
        for (i, j, k, l) in (0..16).map(|x| (x >> 3 & 1, x >> 2 & 1, x >> 1 & 1, x & 1)) {
            let mut expected = vec![q.zero(); 4];
            if j == k {
                expected[2 * i + l] = q.one();
            }
            assert_eq!(a.constants().product(2 * i + j, 2 * k + l), &expected[..]);
        }
    }

    #[test]
    fn perturbed_dual_numbers_are_rejected() {
        // x·x = 1 and x·1 = 0.
        let mut a = assoc("dual-numbers");
        let q = ScalarField::Rationals;
        a.constants_mut().set_product(1, 1, vec![q.one(), q.zero()]);
        a.constants_mut().set_product(1, 0, vec![q.zero(), q.zero()]);
        let r = a.validate();
        assert!(!r.is_valid());
        assert!(r.has(Rule::Associativity, &[1, 1, 1]));
        assert!(r.has(Rule::RightUnit, &[1]));
        assert_eq!(r.first().unwrap().indices, vec![1, 0, 1]);
    }
}
