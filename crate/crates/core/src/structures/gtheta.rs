use super::{
    basis_vector, default_names, format_element, names_of, ColorFunction, GradedBracket, GroupElement, Rule,
    StructureConstants, StructureError, ValidationReport, Violation,
};
use crate::exactnum::Scalar;

/// A (G,θ)-Lie algebra: a G-graded space with homogeneous basis, a color
/// function θ and bracket constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GThetaLieAlgebra {
    names: Vec<String>,
    grades: Vec<GroupElement>,
    theta: ColorFunction,
    bracket: StructureConstants,
}

impl GThetaLieAlgebra {
    pub fn new(
        names: Vec<String>,
        grades: Vec<GroupElement>,
        theta: ColorFunction,
        bracket: StructureConstants,
    ) -> Result<Self, StructureError> {
        let n = bracket.dim();
        let names = if names.is_empty() { default_names(n) } else { names };
        if names.len() != n || grades.len() != n {
            return Err(StructureError::Shape(format!(
                "dimension {n} does not match {} names / {} grades",
                names.len(),
                grades.len()
            )));
        }
        if let Some(g) = grades.iter().find(|g| !theta.group().contains(g)) {
            return Err(StructureError::Shape(format!(
                "grade {} is not an element of the grading group",
                format_element(g)
            )));
        }
        Ok(GThetaLieAlgebra {
            names,
            grades,
            theta,
            bracket,
        })
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn grade(&self, i: usize) -> &[u32] {
        &self.grades[i]
    }

    pub fn grades(&self) -> &[GroupElement] {
        &self.grades
    }

    pub fn theta(&self) -> &ColorFunction {
        &self.theta
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.bracket
    }

    pub fn constants_mut(&mut self) -> &mut StructureConstants {
        &mut self.bracket
    }

    /// θ(grade(e_i), grade(e_j)) in the algebra's field.
    pub fn theta_basis(&self, i: usize, j: usize) -> Result<Scalar, StructureError> {
        self.theta.value(self.bracket.field(), &self.grades[i], &self.grades[j])
    }

    pub fn theta_value(&self, a: &[u32], b: &[u32]) -> Result<Scalar, StructureError> {
        self.theta.value(self.bracket.field(), a, b)
    }

    /// Distinct grades carried by basis vectors, in first-appearance order.
    pub fn occurring_grades(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = Vec::new();
        for g in &self.grades {
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_seeded(0)
    }

    /// Color-function axioms (seeded sampling), representability of θ in the
    /// field, graduation, θ-antisymmetry and θ-Jacobi on basis triples.
    pub fn validate_seeded(&self, seed: u64) -> ValidationReport {
        let mut violations = self.theta.validate(seed);
        let n = GradedBracket::dim(self);
        let field = self.bracket.field().clone();
        let group = self.theta.group();
        let mut theta = vec![field.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                match self.theta_basis(i, j) {
                    Ok(v) => theta[i * n + j] = v,
                    Err(e) => {
                        violations.push(Violation::new(
                            Rule::Skew,
                            names_of(&self.names, &[i, j]),
                            vec![i, j],
                            &e.to_string(),
                        ));
                        return ValidationReport {
                            kind: "(G,θ)-Lie algebra",
                            violations,
                        };
                    }
                }
            }
        }
        let th = |i: usize, j: usize| &theta[i * n + j];
        for (i, j, k) in self.bracket.slots() {
            if !self.bracket.get(i, j, k).is_zero() && self.grades[k] != group.add(&self.grades[i], &self.grades[j]) {
                violations.push(Violation::new(
                    Rule::Grading,
                    names_of(&self.names, &[i, j, k]),
                    vec![i, j, k],
                    "⟨L_a,L_b⟩ ⊄ L_{a+b}",
                ));
            }
        }
        for i in 0..n {
            for j in i..n {
                let s = -th(i, j);
                let rhs: Vec<Scalar> = self.bracket.product(j, i).iter().map(|c| &s * c).collect();
                if self.bracket.product(i, j) != &rhs[..] {
                    violations.push(Violation::new(
                        Rule::Antisymmetry,
                        names_of(&self.names, &[i, j]),
                        vec![i, j],
                        "⟨x,y⟩ ≠ −θ(a,b)⟨y,x⟩",
                    ));
                }
            }
        }
        let e = |i| basis_vector(&field, n, i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // x ∈ L_a, y ∈ L_b, z ∈ L_c.
                    let x_yz = self.bracket.apply(&e(i), self.bracket.product(j, k));
                    let z_xy = self.bracket.apply(&e(k), self.bracket.product(i, j));
                    let y_zx = self.bracket.apply(&e(j), self.bracket.product(k, i));
                    let nonzero = (0..n).any(|t| {
                        !(&(&(th(k, i) * &x_yz[t]) + &(th(j, k) * &z_xy[t])) + &(th(i, j) * &y_zx[t])).is_zero()
                    });
                    if nonzero {
                        violations.push(Violation::new(
                            Rule::Jacobi,
                            names_of(&self.names, &[i, j, k]),
                            vec![i, j, k],
                            "θ-Jacobi sum is nonzero",
                        ));
                    }
                }
            }
        }
        ValidationReport {
            kind: "(G,θ)-Lie algebra",
            violations,
        }
    }
}

impl GradedBracket for GThetaLieAlgebra {
    fn bracket_constants(&self) -> &StructureConstants {
        &self.bracket
    }

    fn grade_key(&self, i: usize) -> Vec<u32> {
        self.grades[i].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ScalarField;
    use crate::structures::{catalog, compute_center, FiniteAbelianGroup, Structure};

    fn gt(name: &str) -> GThetaLieAlgebra {
        match catalog(name).unwrap() {
            Structure::GTheta(l) => l,
            Structure::Super(l) => l.as_gtheta(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn catalog_entries_validate() {
        for name in ["gtheta-z4z4", "gtheta-bad"] {
            let r = gt(name).validate();
            assert!(r.is_valid(), "{name}: {r}");
        }
    }

    #[test]
    fn superalgebra_reinterpreted_over_z2() {
        let l = gt("super-d2");
        assert_eq!(l.theta().group().orders(), &[2]);
        assert!(l.validate().is_valid());
    }

    #[test]
    fn lie_algebra_over_trivial_group() {
        let l = gt("heisenberg3");
        assert_eq!(l.theta().group().orders(), &[1]);
        assert!(l.validate().is_valid());
    }

    #[test]
    fn cubic_color_is_rejected() {
        let f = ScalarField::cyclotomic(3).unwrap();
        let g = FiniteAbelianGroup::new(vec![3]).unwrap();
        let theta = ColorFunction::new(g, vec![vec![1]]).unwrap();
        let l = GThetaLieAlgebra::new(vec![], vec![vec![1]], theta, StructureConstants::zero(&f, 1)).unwrap();
        let r = l.validate();
        assert_eq!(r.first().unwrap().rule, Rule::Skew);
    }

    #[test]
    fn z4z4_center_is_z_only() {
        let l = gt("gtheta-z4z4");
        let c = compute_center(&l, false);
        assert_eq!(c.len(), 1);
        assert_eq!(l.grade_of(&c[0]), Some(vec![0, 0]));
        assert!(c[0][4].is_one());
    }

    #[test]
    fn bad_center_has_odd_grade() {
        let l = gt("gtheta-bad");
        let c = compute_center(&l, false);
        assert_eq!(c.len(), 1);
        assert_eq!(l.grade_of(&c[0]), Some(vec![1]));
        assert!(compute_center(&l, true).is_empty());
    }

    #[test]
    fn grades_must_lie_in_group() {
        let q = ScalarField::Rationals;
        let r = GThetaLieAlgebra::new(vec![], vec![vec![2]], ColorFunction::sign(), StructureConstants::zero(&q, 1));
        assert!(r.is_err());
    }
}
