//! Finite-dimensional algebraic inputs given by structure constants:
//! unital associative algebras, Lie superalgebras and (G,θ)-Lie algebras.

mod associative;
pub mod catalog;
mod constants;
mod file;
mod group;
mod gtheta;
mod superalgebra;

use std::fmt;

use thiserror::Error;

use crate::exactnum::{NumError, Scalar, ScalarField};
use crate::tensorlin::Matrix;

pub use associative::AssociativeAlgebra;
pub use catalog::{catalog, CATALOG_NAMES};
pub use constants::{basis_vector, is_zero_vector, StructureConstants};
pub use file::{Grades, GroupSpec, ProductEntry, StructureFile, StructureKind};
pub use group::{format_element, ColorFunction, FiniteAbelianGroup, GroupElement, BIADDITIVITY_SAMPLES};
pub use gtheta::GThetaLieAlgebra;
pub use superalgebra::LieSuperalgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("malformed structure: {0}")]
    Shape(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("θ({a},{b}) is not representable in {field}")]
    UnrepresentableTheta { field: String, a: String, b: String },
    #[error("structure file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Associativity,
    LeftUnit,
    RightUnit,
    Grading,
    Antisymmetry,
    Jacobi,
    Biadditivity,
    Skew,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Associativity => "associativity",
            Rule::LeftUnit => "left unit",
            Rule::RightUnit => "right unit",
            Rule::Grading => "grading",
            Rule::Antisymmetry => "antisymmetry",
            Rule::Jacobi => "jacobi",
            Rule::Biadditivity => "biadditivity",
            Rule::Skew => "skew symmetry",
        };
        f.write_str(s)
    }
}

/// One failed axiom instance: the axiom, the basis vectors (or group
/// elements) involved, and a short description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub witness: Vec<String>,
    pub indices: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(rule: Rule, witness: Vec<String>, indices: Vec<usize>, detail: &str) -> Self {
        Violation {
            rule,
            witness,
            indices,
            detail: detail.to_string(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({}): {}", self.rule, self.witness.join(","), self.detail)
    }
}

/// Outcome of validating a structure. Violations are listed by axiom in the
/// order the validator checks them, each in lexicographic basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub kind: &'static str,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has(&self, rule: Rule, indices: &[usize]) -> bool {
        self.violations.iter().any(|v| v.rule == rule && v.indices == indices)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "{}: valid", self.kind);
        }
        writeln!(f, "{}: invalid ({} violations)", self.kind, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// A bracket on a homogeneous basis, graded by some abelian group.
pub trait GradedBracket {
    fn bracket_constants(&self) -> &StructureConstants;

    /// Grade of basis vector `i` as a residue tuple; all zeros is the identity grade.
    fn grade_key(&self, i: usize) -> Vec<u32>;

    fn field(&self) -> &ScalarField {
        self.bracket_constants().field()
    }

    fn dim(&self) -> usize {
        self.bracket_constants().dim()
    }

    fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.bracket_constants().apply(x, y)
    }

    /// `[z, e_i] = 0` for every basis vector.
    fn is_central(&self, z: &[Scalar]) -> bool {
        let c = self.bracket_constants();
        (0..c.dim()).all(|i| is_zero_vector(&c.apply(z, &basis_vector(c.field(), c.dim(), i))))
    }

    /// The grade of `z` if it is nonzero and supported on one grade.
    fn grade_of(&self, z: &[Scalar]) -> Option<Vec<u32>> {
        let mut grades = z
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.grade_key(i));
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }
}

/// Basis of the center `{ z : [z, x] = 0 ∀x }`, built grade by grade so that
/// every returned vector is homogeneous. With `identity_only`, only the
/// identity-grade (even) part is returned.
pub fn compute_center<L: GradedBracket + ?Sized>(l: &L, identity_only: bool) -> Vec<Vec<Scalar>> {
    let c = l.bracket_constants();
    let n = c.dim();
    let field = c.field();
    let mut classes: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let key = l.grade_key(i);
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(i),
            None => classes.push((key, vec![i])),
        }
    }
    let mut basis = Vec::new();
    for (key, members) in classes {
        if identity_only && key.iter().any(|&x| x != 0) {
            continue;
        }
        // Unknown z = Σ_{m ∈ class} z_m e_m; rows are the coordinates of [z, e_i].
        let system = Matrix::from_fn(field, n * n, members.len(), |row, col| {
            let (i, k) = (row / n, row % n);
            c.get(members[col], i, k).clone()
        });
        for v in system.nullspace() {
            let mut z = vec![field.zero(); n];
            for (col, &m) in members.iter().enumerate() {
                z[m] = v[col].clone();
            }
            basis.push(z);
        }
    }
    basis
}

/// Any of the three supported structure kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Associative(AssociativeAlgebra),
    Super(LieSuperalgebra),
    GTheta(GThetaLieAlgebra),
}

impl Structure {
    pub fn field(&self) -> &ScalarField {
        match self {
            Structure::Associative(a) => a.field(),
            Structure::Super(l) => l.field(),
            Structure::GTheta(l) => GradedBracket::field(l),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Structure::Associative(a) => a.dim(),
            Structure::Super(l) => l.dim(),
            Structure::GTheta(l) => GradedBracket::dim(l),
        }
    }

    pub fn basis_names(&self) -> &[String] {
        match self {
            Structure::Associative(a) => a.basis_names(),
            Structure::Super(l) => l.basis_names(),
            Structure::GTheta(l) => l.basis_names(),
        }
    }

    pub fn kind(&self) -> StructureKind {
        match self {
            Structure::Associative(_) => StructureKind::Associative,
            Structure::Super(_) => StructureKind::Super,
            Structure::GTheta(_) => StructureKind::Gtheta,
        }
    }

    /// Runs the validator for this kind; `seed` drives θ sampling.
    pub fn validate(&self, seed: u64) -> ValidationReport {
        match self {
            Structure::Associative(a) => a.validate(),
            Structure::Super(l) => l.validate(),
            Structure::GTheta(l) => l.validate_seeded(seed),
        }
    }
}

pub(crate) fn names_of(names: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| names[i].clone()).collect()
}

pub(crate) fn default_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}
