use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    AssociativeAlgebra, ColorFunction, FiniteAbelianGroup, GThetaLieAlgebra, LieSuperalgebra, Structure,
    StructureConstants, StructureError,
};
use crate::exactnum::{FieldSpec, Scalar, ScalarField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Associative,
    Super,
    Gtheta,
}

/// Per-basis grades: parities for superalgebras, residue tuples for (G,θ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grades {
    Parity(Vec<u8>),
    Tuples(Vec<Vec<u32>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub orders: Vec<u32>,
}

/// `e_i · e_j = Σ_k coords[k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub coords: Vec<String>,
}

/// Serialized form of a [`Structure`]. Omitted (i, j) pairs are zero products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub kind: StructureKind,
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis_names: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grades: Option<Grades>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_exponents: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<ProductEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<ProductEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
}

fn fmt_err(msg: impl Into<String>) -> StructureError {
    StructureError::Format(msg.into())
}

fn parse_vector(field: &ScalarField, dim: usize, coords: &[String], what: &str) -> Result<Vec<Scalar>, StructureError> {
    if coords.len() != dim {
        return Err(fmt_err(format!("{what}: expected {dim} coordinates, got {}", coords.len())));
    }
    coords.iter().map(|c| field.parse(c).map_err(StructureError::from)).collect()
}

fn parse_products(
    field: &ScalarField,
    dim: usize,
    entries: &[ProductEntry],
) -> Result<StructureConstants, StructureError> {
    let mut c = StructureConstants::zero(field, dim);
    for e in entries {
        if e.i >= dim || e.j >= dim {
            return Err(fmt_err(format!("product ({}, {}) is out of range for dim {dim}", e.i, e.j)));
        }
        let coords = parse_vector(field, dim, &e.coords, &format!("product ({}, {})", e.i, e.j))?;
        c.set_product(e.i, e.j, coords);
    }
    Ok(c)
}

fn dump_products(c: &StructureConstants) -> Vec<ProductEntry> {
    let n = c.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = c.product(i, j);
            if p.iter().any(|x| !x.is_zero()) {
                out.push(ProductEntry {
                    i,
                    j,
                    coords: p.iter().map(ToString::to_string).collect(),
                });
            }
        }
    }
    out
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<Self, StructureError> {
        serde_json::from_str(text).map_err(|e| fmt_err(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure files serialize")
    }

    pub fn load(path: &Path) -> Result<Structure, StructureError> {
        let text = std::fs::read_to_string(path).map_err(|e| fmt_err(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)?.to_structure()
    }

    pub fn to_structure(&self) -> Result<Structure, StructureError> {
        let field = self.field.to_field()?;
        let n = self.dim;
        let names = self.basis_names.clone();
        match self.kind {
            StructureKind::Associative => {
                let mult = parse_products(&field, n, self.mult.as_deref().unwrap_or_default())?;
                let unit = self.unit.as_ref().ok_or_else(|| fmt_err("associative algebra needs `unit`"))?;
                let unit = parse_vector(&field, n, unit, "unit")?;
                Ok(Structure::Associative(AssociativeAlgebra::new(names, mult, unit)?))
            }
            StructureKind::Super => {
                let bracket = parse_products(&field, n, self.bracket.as_deref().unwrap_or_default())?;
                let parity = match &self.grades {
                    None => vec![0; n],
                    Some(Grades::Parity(p)) => p.clone(),
                    Some(Grades::Tuples(_)) => return Err(fmt_err("superalgebra grades must be 0/1 integers")),
                };
                Ok(Structure::Super(LieSuperalgebra::new(names, parity, bracket)?))
            }
            StructureKind::Gtheta => {
                let bracket = parse_products(&field, n, self.bracket.as_deref().unwrap_or_default())?;
                let group = self.group.as_ref().ok_or_else(|| fmt_err("gtheta structure needs `group`"))?;
                let group = FiniteAbelianGroup::new(group.orders.clone())?;
                let t = self
                    .theta_exponents
                    .clone()
                    .ok_or_else(|| fmt_err("gtheta structure needs `theta_exponents`"))?;
                let theta = ColorFunction::new(group, t)?;
                let grades = match &self.grades {
                    None => return Err(fmt_err("gtheta structure needs `grades`")),
                    Some(Grades::Tuples(t)) => t.clone(),
                    // A bare integer list is read as grades in a cyclic group.
                    Some(Grades::Parity(p)) => p.iter().map(|&x| vec![x as u32]).collect(),
                };
                Ok(Structure::GTheta(GThetaLieAlgebra::new(names, grades, theta, bracket)?))
            }
        }
    }

    pub fn from_structure(s: &Structure) -> Self {
        let mut file = StructureFile {
            kind: s.kind(),
            field: s.field().spec(),
            dim: s.dim(),
            basis_names: s.basis_names().to_vec(),
            grades: None,
            group: None,
            theta_exponents: None,
            mult: None,
            bracket: None,
            unit: None,
        };
        match s {
            Structure::Associative(a) => {
                file.mult = Some(dump_products(a.constants()));
                file.unit = Some(a.unit().iter().map(ToString::to_string).collect());
            }
            Structure::Super(l) => {
                file.grades = Some(Grades::Parity(l.parities().to_vec()));
                file.bracket = Some(dump_products(l.constants()));
            }
            Structure::GTheta(l) => {
                file.grades = Some(Grades::Tuples(l.grades().to_vec()));
                file.group = Some(GroupSpec {
                    orders: l.theta().group().orders().to_vec(),
                });
                file.theta_exponents = Some(l.theta().exponent_matrix().to_vec());
                file.bracket = Some(dump_products(l.constants()));
            }
        }
        file
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{catalog, CATALOG_NAMES};

    #[test]
    fn catalog_round_trips() {
        for name in CATALOG_NAMES {
            let s = catalog(name).unwrap();
            let text = StructureFile::from_structure(&s).to_json();
            let back = StructureFile::from_json(&text).unwrap().to_structure().unwrap();
            assert_eq!(back, s, "{name}");
        }
    }

    #[test]
    fn parses_minimal_superalgebra() {
        let text = r#"{"kind":"super","field":{"kind":"rationals"},"dim":2,
            "basis_names":["u","z"],"grades":[1,0],
            "bracket":[{"i":0,"j":0,"coords":["0","1"]}]}"#;
        let s = StructureFile::from_json(text).unwrap().to_structure().unwrap();
        assert_eq!(s, catalog("super-d2").unwrap());
    }

    #[test]
    fn rejects_bad_shapes() {
        let text = r#"{"kind":"associative","field":{"kind":"rationals"},"dim":2,
            "mult":[{"i":0,"j":0,"coords":["1"]}],"unit":["1","0"]}"#;
        let err = StructureFile::from_json(text).unwrap().to_structure().unwrap_err();
        assert!(matches!(err, StructureError::Format(_)));
        assert!(StructureFile::from_json(r#"{"kind":"lie"}"#).is_err());
    }
}
