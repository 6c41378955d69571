//! Named, pre-validated structures over ℚ (or ℚ(i) where θ needs it).

use super::{
    AssociativeAlgebra, ColorFunction, FiniteAbelianGroup, GThetaLieAlgebra, LieSuperalgebra, Structure,
    StructureConstants, StructureError,
};
use crate::exactnum::{Scalar, ScalarField};

pub const CATALOG_NAMES: &[&str] = &[
    "dual-numbers",
    "m2",
    "poly3",
    "heisenberg3",
    "super-d2",
    "aff1-center",
    "sl2",
    "gtheta-z4z4",
    "gtheta-bad",
];

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Sets `[e_i, e_j] = c·e_k` and `[e_j, e_i] = −c·e_k` (skew pair).
fn skew(b: &mut StructureConstants, i: usize, j: usize, k: usize, c: i64) {
    let f = b.field().clone();
    b.set(i, j, k, Scalar::from_integer(&f, c));
    b.set(j, i, k, Scalar::from_integer(&f, -c));
}

/// k[x]/(x^n) on the monomial basis 1, x, ..., x^{n−1}.
fn truncated_polynomials(n: usize, basis: &[&str]) -> AssociativeAlgebra {
    let q = ScalarField::Rationals;
    let mut m = StructureConstants::zero(&q, n);
    for i in 0..n {
        for j in 0..n - i {
            m.set(i, j, i + j, q.one());
        }
    }
    let mut unit = vec![q.zero(); n];
    unit[0] = q.one();
    AssociativeAlgebra::new(names(basis), m, unit).expect("truncated polynomial algebra")
}

fn matrix_units() -> AssociativeAlgebra {
    // e_{ab} has index 2a + b.
    let q = ScalarField::Rationals;
    let mut m = StructureConstants::zero(&q, 4);
    for a in 0..2 {
        for b in 0..2 {
            for d in 0..2 {
                m.set(2 * a + b, 2 * b + d, 2 * a + d, q.one());
            }
        }
    }
    let unit = [1, 0, 0, 1].iter().map(|&x| Scalar::from_integer(&q, x)).collect();
    AssociativeAlgebra::new(names(&["e11", "e12", "e21", "e22"]), m, unit).expect("m2")
}

fn heisenberg() -> LieSuperalgebra {
    let mut b = StructureConstants::zero(&ScalarField::Rationals, 3);
    skew(&mut b, 0, 1, 2, 1);
    LieSuperalgebra::lie(names(&["e", "f", "z"]), b).expect("heisenberg3")
}

fn super_d2() -> LieSuperalgebra {
    let q = ScalarField::Rationals;
    let mut b = StructureConstants::zero(&q, 2);
    b.set(0, 0, 1, q.one());
    LieSuperalgebra::new(names(&["u", "z"]), vec![1, 0], b).expect("super-d2")
}

/// The affine Lie algebra aff(1) ⊕ k: [h, e] = e with c central.
fn aff1_center() -> LieSuperalgebra {
    let mut b = StructureConstants::zero(&ScalarField::Rationals, 3);
    skew(&mut b, 0, 1, 1, 1);
    LieSuperalgebra::lie(names(&["h", "e", "c"]), b).expect("aff1-center")
}

/// [h,e] = 2e, [h,f] = −2f, [e,f] = h; centerless.
fn sl2() -> LieSuperalgebra {
    let mut b = StructureConstants::zero(&ScalarField::Rationals, 3);
    skew(&mut b, 0, 1, 1, 2);
    skew(&mut b, 0, 2, 2, -2);
    skew(&mut b, 1, 2, 0, 1);
    LieSuperalgebra::lie(names(&["h", "e", "f"]), b).expect("sl2")
}

fn gtheta_z4z4() -> GThetaLieAlgebra {
    let f = ScalarField::cyclotomic(4).expect("Q(i)");
    let group = FiniteAbelianGroup::new(vec![4, 4]).expect("Z4xZ4");
    let theta = ColorFunction::new(group, vec![vec![0, 1], vec![-1, 0]]).expect("symplectic exponents");
    let grades = vec![vec![1, 0], vec![3, 0], vec![0, 1], vec![0, 3], vec![0, 0]];
    let mut b = StructureConstants::zero(&f, 5);
    skew(&mut b, 0, 1, 4, 1);
    skew(&mut b, 2, 3, 4, 1);
    GThetaLieAlgebra::new(names(&["x", "w", "y", "y'", "z"]), grades, theta, b).expect("gtheta-z4z4")
}

/// Valid, but its central z has θ(|z|,|z|) = −1.
fn gtheta_bad() -> GThetaLieAlgebra {
    let mut b = StructureConstants::zero(&ScalarField::Rationals, 3);
    skew(&mut b, 0, 1, 2, 1);
    GThetaLieAlgebra::new(names(&["x", "y", "z"]), vec![vec![0], vec![1], vec![1]], ColorFunction::sign(), b)
        .expect("gtheta-bad")
}

pub fn catalog(name: &str) -> Result<Structure, StructureError> {
    Ok(match name {
        "dual-numbers" => Structure::Associative(truncated_polynomials(2, &["1", "x"])),
        "m2" => Structure::Associative(matrix_units()),
        "poly3" => Structure::Associative(truncated_polynomials(3, &["1", "x", "x2"])),
        "heisenberg3" => Structure::Super(heisenberg()),
        "super-d2" => Structure::Super(super_d2()),
        "aff1-center" => Structure::Super(aff1_center()),
        "sl2" => Structure::Super(sl2()),
        "gtheta-z4z4" => Structure::GTheta(gtheta_z4z4()),
        "gtheta-bad" => Structure::GTheta(gtheta_bad()),
        _ => return Err(StructureError::UnknownName(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates() {
        for name in CATALOG_NAMES {
            let s = catalog(name).unwrap();
            let r = s.validate(0);
            assert!(r.is_valid(), "{name}: {r}");
        }
    }

    #[test]
    fn dual_numbers_have_dim_two() {
        assert_eq!(catalog("dual-numbers").unwrap().dim(), 2);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(catalog("so3"), Err(StructureError::UnknownName("so3".into())));
    }
}
