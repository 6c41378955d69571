//! JSON recipes: a family name, a structure and the family's parameters.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{FieldSpec, NumError, Scalar, ScalarField};
use crate::structures::{
    catalog, compute_center, AssociativeAlgebra, GThetaLieAlgebra, LieSuperalgebra, ProductEntry, Structure,
    StructureConstants, StructureError, StructureFile,
};
use crate::tensorlin::{twist, LinearOperator, Matrix};

use super::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("recipe: {0}")]
    Format(String),
    #[error("recipe needs parameter `{0}`")]
    Missing(&'static str),
    #[error("parameter `{name}`: {message}")]
    BadValue { name: String, message: String },
    #[error("family `{family}` needs {expected}, got {found}")]
    WrongStructure {
        family: String,
        expected: &'static str,
        found: String,
    },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Op(#[from] OpError),
}

/// A scalar written either as a JSON string (`"1/3"`, `"[0,1]"`) or an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn parse(&self, field: &ScalarField, name: &str) -> Result<Scalar, RecipeError> {
        let text = match self {
            ScalarText::Int(n) => n.to_string(),
            ScalarText::Text(s) => s.clone(),
        };
        Scalar::parse(&text, field).map_err(|e: NumError| RecipeError::BadValue {
            name: name.to_string(),
            message: e.to_string(),
        })
    }
}

impl From<&str> for ScalarText {
    fn from(s: &str) -> Self {
        ScalarText::Text(s.to_string())
    }
}

/// `"auto-center"` or explicit coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ZSpec {
    Coords(Vec<ScalarText>),
    Keyword(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<ZSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<ScalarText>>,
    /// Keys `"u,v"`, or `"v"` for the single-argument form α(u,v) = f(v).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_table: Option<BTreeMap<String, ScalarText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_table: Option<BTreeMap<String, ScalarText>>,
    /// Spectral triples (s1, s2, s3) for the one-parameter check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<Vec<[ScalarText; 3]>>,
    /// Base dimension for structure-free families (split, twist).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<ProductEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<ProductEntry>>,
    /// Row-major matrix on V⊗V.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<ScalarText>>>,
}

pub const FAMILIES: &[&str] = &[
    "dn",
    "dim2-canonical",
    "twist",
    "literal",
    "split",
    "super-phi",
    "gtheta",
    "colored",
    "super-colored",
    "one-param",
    "wxz",
    "colored-wxz",
    "super-colored-wxz",
    "classical",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Recipe {
    pub family: String,
    /// Catalog name, or a structure file path relative to the recipe.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<String>,
    /// For structure-free families; defaults to ℚ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub params: RecipeParams,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

/// A constant operator with its stated inverse, if the family has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantOp {
    pub op: OperatorExpr,
    pub inverse: Option<OperatorExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Built {
    /// Claimed to satisfy the braid equation.
    Braided(ConstantOp),
    /// Claimed to satisfy the constant QYBE.
    Qybe(ConstantOp),
    Colored {
        family: ColoredFamily,
        colors: Vec<Scalar>,
        /// The constraint of the two-table family, when it applies.
        constraint: Option<bool>,
    },
    OneParam {
        family: OneParamFamily,
        s: Option<Scalar>,
        spectral: Vec<[Scalar; 3]>,
    },
    Wxz(WxzTriple),
    Classical(OperatorExpr),
}

impl Built {
    pub fn field(&self) -> &ScalarField {
        match self {
            Built::Braided(c) | Built::Qybe(c) => c.op.field(),
            Built::Colored { family, .. } => family.field(),
            Built::OneParam { family, .. } => family.algebra.field(),
            Built::Wxz(t) => t.w.field(),
            Built::Classical(r) => r.field(),
        }
    }

    /// One representative operator for `build-op`.
    pub fn representative(&self, params: &RecipeParams) -> Result<LinearOperator, RecipeError> {
        let f = self.field().clone();
        Ok(match self {
            Built::Braided(c) | Built::Qybe(c) => c.op.to_operator().map_err(OpError::from)?,
            Built::Colored { family, colors, .. } => {
                let pick = |x: &Option<ScalarText>, name, dflt: usize| -> Result<Scalar, RecipeError> {
                    match x {
                        Some(t) => t.parse(&f, name),
                        None => colors.get(dflt).cloned().ok_or(RecipeError::Missing("u")),
                    }
                };
                let (u, v) = (pick(&params.u, "u", 0)?, pick(&params.v, "v", 1)?);
                family.eval(&u, &v)?.to_operator().map_err(OpError::from)?
            }
            Built::OneParam { family, s, .. } => {
                let s = s.as_ref().ok_or(RecipeError::Missing("s"))?;
                family.eval(s)?.to_operator().map_err(OpError::from)?
            }
            Built::Wxz(t) => t.x.to_operator().map_err(OpError::from)?,
            Built::Classical(r) => r.to_operator().map_err(OpError::from)?,
        })
    }
}

impl RecipeParams {
    /// Scalar-valued parameters rendered as text, for report records.
    pub fn summary(&self) -> BTreeMap<String, String> {
        let v = serde_json::to_value(self).expect("params serialize");
        let mut out = BTreeMap::new();
        for (k, x) in v.as_object().expect("object") {
            match x {
                serde_json::Value::String(s) => {
                    out.insert(k.clone(), s.clone());
                }
                serde_json::Value::Number(n) => {
                    out.insert(k.clone(), n.to_string());
                }
                _ => {}
            }
        }
        out
    }
}

impl Recipe {
    pub fn from_json(text: &str) -> Result<Self, RecipeError> {
        serde_json::from_str(text).map_err(|e| RecipeError::Format(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, RecipeError> {
        let text = std::fs::read_to_string(path).map_err(|e| RecipeError::Format(format!("{}: {e}", path.display())))?;
        let mut r = Self::from_json(&text)?;
        r.base_dir = path.parent().map(Path::to_path_buf);
        Ok(r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("recipes serialize")
    }

    /// The same recipe with some parameters replaced (JSON-level merge).
    pub fn with_overrides(&self, overrides: &BTreeMap<String, serde_json::Value>) -> Result<Recipe, RecipeError> {
        let mut v = serde_json::to_value(&self.params).expect("params serialize");
        let map = v.as_object_mut().expect("params are an object");
        for (k, x) in overrides {
            map.insert(k.clone(), x.clone());
        }
        let params = serde_json::from_value(v).map_err(|e| RecipeError::Format(e.to_string()))?;
        Ok(Recipe {
            params,
            ..self.clone()
        })
    }

    pub fn structure(&self) -> Result<Option<Structure>, RecipeError> {
        let Some(name) = &self.structure else { return Ok(None) };
        match catalog(name) {
            Ok(s) => Ok(Some(s)),
            Err(StructureError::UnknownName(_)) => {
                let path = match &self.base_dir {
                    Some(d) => d.join(name),
                    None => PathBuf::from(name),
                };
                Ok(Some(StructureFile::load(&path)?))
            }
            Err(e) => Err(e.into()),
        }
    }

    fn field(&self, structure: &Option<Structure>) -> Result<ScalarField, RecipeError> {
        if let Some(s) = structure {
            return Ok(s.field().clone());
        }
        match &self.field {
            Some(spec) => spec.to_field().map_err(|e| RecipeError::BadValue {
                name: "field".into(),
                message: e.to_string(),
            }),
            None => Ok(ScalarField::Rationals),
        }
    }

    pub fn build(&self) -> Result<Built, RecipeError> {
        let structure = self.structure()?;
        let field = self.field(&structure)?;
        let b = Binder {
            p: &self.params,
            f: &field,
        };
        let fam = self.family.as_str();
        let wrong = |expected: &'static str| RecipeError::WrongStructure {
            family: fam.to_string(),
            expected,
            found: match &structure {
                Some(s) => format!("{:?}", s.kind()).to_lowercase(),
                None => "none".into(),
            },
        };
        let assoc = || -> Result<&AssociativeAlgebra, RecipeError> {
            match &structure {
                Some(Structure::Associative(a)) => Ok(a),
                _ => Err(wrong("an associative algebra")),
            }
        };
        let sup = || -> Result<&LieSuperalgebra, RecipeError> {
            match &structure {
                Some(Structure::Super(l)) => Ok(l),
                _ => Err(wrong("a Lie superalgebra")),
            }
        };
        let gth = || -> Result<&GThetaLieAlgebra, RecipeError> {
            match &structure {
                Some(Structure::GTheta(l)) => Ok(l),
                _ => Err(wrong("a (G,θ)-Lie algebra")),
            }
        };
        Ok(match fam {
            "dn" => {
                let a = assoc()?;
                let (al, be, ga) = (b.req(&b.p.alpha, "alpha")?, b.req(&b.p.beta, "beta")?, b.req(&b.p.gamma, "gamma")?);
                let inverse = match dn_case(&al, &be, &ga) {
                    DnCase::Invalid => None,
                    _ => Some(dn_inverse_expr(a, &al, &be, &ga)?),
                };
                Built::Braided(ConstantOp {
                    op: dn_expr(a, &al, &be, &ga)?,
                    inverse,
                })
            }
            "dim2-canonical" => {
                let (q, eta) = (b.req(&b.p.q, "q")?, b.opt(&b.p.eta, "eta")?.unwrap_or_else(|| field.zero()));
                Built::Qybe(ConstantOp {
                    op: dim2_canonical_expr(&q, &eta)?,
                    inverse: None,
                })
            }
            "twist" => {
                let n = match &structure {
                    Some(s) => s.dim(),
                    None => b.p.dim.unwrap_or(2),
                };
                let t = OperatorExpr::literal(&twist(n, &field));
                Built::Braided(ConstantOp {
                    op: t.clone(),
                    inverse: Some(t),
                })
            }
            "literal" => {
                let rows = b.p.rows.as_ref().ok_or(RecipeError::Missing("rows"))?;
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|x| x.parse(&field, "rows")).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let m = Matrix::from_rows(&field, rows).map_err(OpError::from)?;
                let op = LinearOperator::on_pairs(m).map_err(OpError::from)?;
                Built::Qybe(ConstantOp {
                    op: OperatorExpr::literal(&op),
                    inverse: None,
                })
            }
            "split" => {
                let n = match (&structure, b.p.dim) {
                    (Some(s), _) => s.dim(),
                    (None, Some(n)) => n,
                    (None, None) => return Err(RecipeError::Missing("dim")),
                };
                let c = b.p.c_index.ok_or(RecipeError::Missing("c_index"))?;
                let f = tensor(&field, n, b.p.f.as_deref().unwrap_or_default())?;
                let g = tensor(&field, n, b.p.g.as_deref().unwrap_or_default())?;
                Built::Qybe(ConstantOp {
                    op: split_expr(c, &f, &g)?,
                    inverse: None,
                })
            }
            "super-phi" => {
                let l = sup()?;
                let z = b.z(&structure)?;
                let al = b.req(&b.p.alpha, "alpha")?;
                let be = b.opt(&b.p.beta, "beta")?.unwrap_or_else(|| field.one());
                Built::Braided(ConstantOp {
                    op: super_phi_ab_expr(l, &z, &al, &be)?,
                    inverse: Some(super_phi_ab_inverse_expr(l, &z, &al, &be)?),
                })
            }
            "gtheta" => {
                let l = gth()?;
                let z = b.z(&structure)?;
                let al = b.req(&b.p.alpha, "alpha")?;
                Built::Qybe(ConstantOp {
                    op: gtheta_expr(l, &z, &al)?,
                    inverse: Some(gtheta_inverse_expr(l, &z, &al)?),
                })
            }
            "colored" | "colored-wxz" => {
                let family = ColoredFamily::Algebra {
                    algebra: assoc()?.clone(),
                    p: b.req(&b.p.p, "p")?,
                    q: b.req(&b.p.q, "q")?,
                };
                b.colored_or_wxz(fam, family, None)?
            }
            "super-colored" | "super-colored-wxz" => {
                let l = sup()?;
                let colors = b.colors()?;
                let table = b.table(&colors)?;
                let constraint = Some(table.constraint_holds());
                let family = ColoredFamily::Super {
                    algebra: l.clone(),
                    z: b.z(&structure)?,
                    table,
                };
                b.colored_or_wxz(fam, family, constraint)?
            }
            "one-param" => {
                let family = OneParamFamily {
                    algebra: assoc()?.clone(),
                    q: b.req(&b.p.q, "q")?,
                };
                let spectral = match &b.p.spectral {
                    Some(list) => list
                        .iter()
                        .map(|[x, y, w]| Ok([x.parse(&field, "spectral")?, y.parse(&field, "spectral")?, w.parse(&field, "spectral")?]))
                        .collect::<Result<Vec<_>, RecipeError>>()?,
                    None => Vec::new(),
                };
                Built::OneParam {
                    family,
                    s: b.opt(&b.p.s, "s")?,
                    spectral,
                }
            }
            "wxz" => Built::Wxz(wxz_algebra_expr(assoc()?, &b.req(&b.p.lambda, "lambda")?, &b.req(&b.p.mu, "mu")?)),
            "classical" => {
                let (l, z) = classical_setting(sup()?, &b.z(&structure)?)?;
                Built::Classical(classical_r_expr(&l, &z)?)
            }
            other => return Err(RecipeError::UnknownFamily(other.to_string())),
        })
    }
}

fn tensor(field: &ScalarField, n: usize, entries: &[ProductEntry]) -> Result<StructureConstants, RecipeError> {
    let mut t = StructureConstants::zero(field, n);
    for e in entries {
        if e.i >= n || e.j >= n || e.coords.len() != n {
            return Err(RecipeError::BadValue {
                name: "f/g".into(),
                message: format!("entry ({}, {}) does not fit dimension {n}", e.i, e.j),
            });
        }
        let coords = e
            .coords
            .iter()
            .map(|c| Scalar::parse(c, field))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|err| RecipeError::BadValue {
                name: "f/g".into(),
                message: err.to_string(),
            })?;
        t.set_product(e.i, e.j, coords);
    }
    Ok(t)
}

struct Binder<'a> {
    p: &'a RecipeParams,
    f: &'a ScalarField,
}

impl Binder<'_> {
    fn opt(&self, x: &Option<ScalarText>, name: &str) -> Result<Option<Scalar>, RecipeError> {
        x.as_ref().map(|t| t.parse(self.f, name)).transpose()
    }

    fn req(&self, x: &Option<ScalarText>, name: &'static str) -> Result<Scalar, RecipeError> {
        self.opt(x, name)?.ok_or(RecipeError::Missing(name))
    }

    fn colors(&self) -> Result<Vec<Scalar>, RecipeError> {
        let list = self.p.colors.as_ref().ok_or(RecipeError::Missing("colors"))?;
        list.iter().map(|c| c.parse(self.f, "colors")).collect()
    }

    fn z(&self, structure: &Option<Structure>) -> Result<Vec<Scalar>, RecipeError> {
        match self.p.z.as_ref().ok_or(RecipeError::Missing("z"))? {
            ZSpec::Coords(c) => c.iter().map(|x| x.parse(self.f, "z")).collect(),
            ZSpec::Keyword(k) if k == "auto-center" => auto_center(structure.as_ref().expect("z needs a structure")),
            ZSpec::Keyword(k) => Err(RecipeError::BadValue {
                name: "z".into(),
                message: format!("expected coordinates or \"auto-center\", got \"{k}\""),
            }),
        }
    }

    fn table(&self, colors: &[Scalar]) -> Result<ParamTable, RecipeError> {
        let read = |t: &Option<BTreeMap<String, ScalarText>>, name: &'static str| -> Result<BTreeMap<(usize, usize), Scalar>, RecipeError> {
            let t = t.as_ref().ok_or(RecipeError::Missing(name))?;
            let index = |s: &str| -> Result<usize, RecipeError> {
                let c = Scalar::parse(s.trim(), self.f).map_err(|e| RecipeError::BadValue {
                    name: name.into(),
                    message: e.to_string(),
                })?;
                colors.iter().position(|x| *x == c).ok_or_else(|| RecipeError::BadValue {
                    name: name.into(),
                    message: format!("color {c} is not in `colors`"),
                })
            };
            let mut out = BTreeMap::new();
            for (key, val) in t {
                let val = val.parse(self.f, name)?;
                match key.split_once(',') {
                    Some((u, v)) => {
                        out.insert((index(u)?, index(v)?), val);
                    }
                    None => {
                        let v = index(key)?;
                        for u in 0..colors.len() {
                            out.insert((u, v), val.clone());
                        }
                    }
                }
            }
            for u in 0..colors.len() {
                for v in 0..colors.len() {
                    if !out.contains_key(&(u, v)) {
                        return Err(RecipeError::BadValue {
                            name: name.into(),
                            message: format!("no entry for ({}, {})", colors[u], colors[v]),
                        });
                    }
                }
            }
            Ok(out)
        };
        let (a, b) = (read(&self.p.alpha_table, "alpha_table")?, read(&self.p.beta_table, "beta_table")?);
        let pos = |x: &Scalar| colors.iter().position(|c| c == x).expect("color");
        Ok(ParamTable::from_fn(
            colors.to_vec(),
            |u, v| a[&(pos(u), pos(v))].clone(),
            |u, v| b[&(pos(u), pos(v))].clone(),
        )?)
    }

    fn colored_or_wxz(&self, fam: &str, family: ColoredFamily, constraint: Option<bool>) -> Result<Built, RecipeError> {
        if fam.ends_with("-wxz") {
            return Ok(Built::Wxz(family.wxz(&self.req(&self.p.s, "s")?, &self.req(&self.p.t, "t")?)?));
        }
        Ok(Built::Colored {
            family,
            colors: self.colors()?,
            constraint,
        })
    }
}

/// The unique central direction: even-central for superalgebras, central for
/// (G,θ)-Lie algebras. Errors unless the relevant center is one-dimensional.
pub fn auto_center(s: &Structure) -> Result<Vec<Scalar>, RecipeError> {
    let basis = match s {
        Structure::Super(l) => compute_center(l, true),
        Structure::GTheta(l) => compute_center(l, false),
        Structure::Associative(_) => {
            return Err(RecipeError::BadValue {
                name: "z".into(),
                message: "auto-center needs a Lie structure".into(),
            })
        }
    };
    match <[Vec<Scalar>; 1]>::try_from(basis) {
        Ok([z]) => Ok(z),
        Err(b) => Err(RecipeError::BadValue {
            name: "z".into(),
            message: format!("auto-center: the center has dimension {}, expected 1", b.len()),
        }),
    }
}
