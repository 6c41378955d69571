//! Named check suites over recipes, parameter sweeps and the bundled
//! `paper-all` preset.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactnum::Scalar;
use crate::operators::{
    colored_inverse_expr, one_param_boundary, Built, ColoredFamily, ConstantOp, OpError, OperatorExpr, Recipe,
    RecipeError, Term,
};
use crate::tensorlin::LinError;

use super::search::{search_hits, SearchHit};
use super::*;

pub const SUITES: &[&str] = &[
    "braid",
    "qybe",
    "twist-equivalence",
    "commutator",
    "inverse",
    "colored",
    "one-param",
    "one-param-printed",
    "wxz",
    "classical",
    "oracle",
];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (known: {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("suite `{suite}` does not apply to family `{family}`")]
    NotApplicable { suite: String, family: String },
    #[error("grid: {0}")]
    Grid(String),
    #[error(transparent)]
    Recipe(#[from] RecipeError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl From<OpError> for SuiteError {
    fn from(e: OpError) -> Self {
        SuiteError::Verify(VerifyError::Op(e))
    }
}

impl From<LinError> for SuiteError {
    fn from(e: LinError) -> Self {
        SuiteError::Verify(VerifyError::Lin(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub check: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteResult {
    pub reports: Vec<VerificationReport>,
    pub skipped: Vec<Skipped>,
}

impl SuiteResult {
    pub fn holds(&self) -> bool {
        self.reports.iter().all(VerificationReport::holds)
    }
}

enum CaseKind {
    /// Every identity holds.
    All,
    /// The identities, labelled, hold or fail together.
    Agreement(Vec<&'static str>),
}

/// One check instance over a list of identities.
struct Case {
    check: String,
    params: BTreeMap<String, String>,
    ids: Vec<Identity>,
    kind: CaseKind,
}

impl Case {
    fn new(check: &str, ids: Vec<Identity>) -> Case {
        Case {
            check: check.to_string(),
            params: BTreeMap::new(),
            ids,
            kind: CaseKind::All,
        }
    }

    fn param(mut self, k: &str, v: &Scalar) -> Case {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    fn finish(&self, name: &str, parts: Vec<VerificationReport>) -> VerificationReport {
        let mut r = if parts.len() == 1 {
            parts.into_iter().next().expect("one part").renamed(name)
        } else {
            VerificationReport::combine(name, parts)
        };
        r.params.extend(self.params.clone());
        r
    }

    fn run(&self) -> Result<VerificationReport, LinError> {
        let parts = self.ids.iter().map(Identity::check).collect::<Result<Vec<_>, _>>()?;
        match &self.kind {
            CaseKind::All => Ok(self.finish(&self.check, parts)),
            CaseKind::Agreement(labels) => Ok(self.agreement(labels, parts)),
        }
    }

    /// Holds iff all parts share one outcome; a disagreement carries the
    /// first failing part's witness.
    fn agreement(&self, labels: &[&str], parts: Vec<VerificationReport>) -> VerificationReport {
        let elapsed = parts.iter().map(|p| p.elapsed).sum();
        let same = parts.iter().all(|p| p.outcome == parts[0].outcome);
        let witness = if same {
            None
        } else {
            let (label, p) = labels.iter().zip(&parts).find(|(_, p)| !p.holds()).expect("some part fails");
            let mut w = p.witness.clone().expect("failing report has a witness");
            w.part = Some(label.to_string());
            Some(w)
        };
        let outcome = if same { Outcome::Holds } else { Outcome::Fails };
        let mut r = VerificationReport::new(&self.check, outcome, witness, elapsed);
        for (label, p) in labels.iter().zip(&parts) {
            r = r.with_param(label, if p.holds() { "holds" } else { "fails" });
        }
        r.params.extend(self.params.clone());
        r
    }

    fn run_oracle(&self) -> Result<VerificationReport, LinError> {
        let parts = self.ids.iter().map(oracle_equivalence).collect::<Result<Vec<_>, _>>()?;
        Ok(self.finish(&format!("oracle/{}", self.check), parts))
    }
}

pub fn default_suites(built: &Built) -> Vec<&'static str> {
    match built {
        Built::Braided(_) => vec!["braid", "inverse"],
        Built::Qybe(c) if c.inverse.is_some() => vec!["qybe", "inverse"],
        Built::Qybe(_) => vec!["qybe"],
        Built::Colored { .. } => vec!["colored", "inverse"],
        Built::OneParam { .. } => vec!["one-param", "inverse"],
        Built::Wxz(_) => vec!["wxz"],
        Built::Classical(_) => vec!["classical"],
    }
}

fn family_name(b: &Built) -> &'static str {
    match b {
        Built::Braided(_) => "braided operator",
        Built::Qybe(_) => "QYBE operator",
        Built::Colored { .. } => "colored family",
        Built::OneParam { .. } => "one-parameter family",
        Built::Wxz(_) => "WXZ triple",
        Built::Classical(_) => "classical r-matrix",
    }
}

fn twist_of(e: &OperatorExpr) -> Composite {
    Composite::from(OperatorExpr::new(e.field(), e.base_dim()).with(e.field().one(), Term::Twist))
}

fn constant(built: &Built) -> Option<&ConstantOp> {
    match built {
        Built::Braided(c) | Built::Qybe(c) => Some(c),
        _ => None,
    }
}

fn cases(built: &Built, suite: &str) -> Result<(Vec<Case>, Vec<Skipped>), SuiteError> {
    let na = || SuiteError::NotApplicable {
        suite: suite.to_string(),
        family: family_name(built).to_string(),
    };
    let mut skipped = Vec::new();
    let cases = match (suite, built) {
        ("braid", _) => {
            let c = constant(built).ok_or_else(na)?;
            vec![Case::new("braid", vec![braid_identity(&c.op.clone().into())])]
        }
        ("qybe", _) => {
            let c = constant(built).ok_or_else(na)?;
            vec![Case::new("qybe", vec![qybe_identity(&c.op.clone().into())])]
        }
        ("twist-equivalence", _) => {
            let c = constant(built).ok_or_else(na)?;
            let r: Composite = c.op.clone().into();
            let t = twist_of(&c.op);
            vec![Case {
                kind: CaseKind::Agreement(vec!["braid(R)", "qybe(R∘τ)", "qybe(τ∘R)"]),
                ..Case::new(
                    "twist-equivalence",
                    vec![braid_identity(&r), qybe_identity(&r.then_after(&t)), qybe_identity(&t.then_after(&r))],
                )
            }]
        }
        ("commutator", _) => {
            let c = constant(built).ok_or_else(na)?;
            let r: Composite = c.op.clone().into();
            vec![Case::new("[R,R,R]", vec![commutator_identity("[R,R,R]", &r, &r, &r)])]
        }
        ("inverse", Built::Braided(c) | Built::Qybe(c)) => match &c.inverse {
            Some(inv) => vec![inverse_case(&c.op, inv)],
            None => {
                skipped.push(Skipped {
                    check: "inverse".into(),
                    params: BTreeMap::new(),
                    reason: "no stated inverse for these parameters".into(),
                });
                vec![]
            }
        },
        ("inverse", Built::Colored { family, colors, .. }) => match family {
            ColoredFamily::Algebra { algebra, p, q } => {
                let mut out = Vec::new();
                for u in colors {
                    for v in colors {
                        match colored_inverse_expr(algebra, p, q, u, v) {
                            Ok(inv) => out.push(inverse_case(&family.eval(u, v)?, &inv).param("u", u).param("v", v)),
                            Err(OpError::NotInvertibleParams(_)) => skipped.push(Skipped {
                                check: "inverse".into(),
                                params: [("u".to_string(), u.to_string()), ("v".to_string(), v.to_string())].into(),
                                reason: "stated inverse needs pu ≠ qv and qu ≠ pv".into(),
                            }),
                            Err(e) => return Err(e.into()),
                        }
                    }
                }
                out
            }
            ColoredFamily::Super { .. } => {
                skipped.push(Skipped {
                    check: "inverse".into(),
                    params: BTreeMap::new(),
                    reason: "no stated inverse for this family".into(),
                });
                vec![]
            }
        },
        ("inverse", Built::OneParam { family, s, .. }) => match s {
            None => {
                skipped.push(Skipped {
                    check: "inverse".into(),
                    params: BTreeMap::new(),
                    reason: "no spectral value `s` given".into(),
                });
                vec![]
            }
            Some(s) if s.is_zero() || one_param_boundary(&family.q, s) => {
                skipped.push(Skipped {
                    check: "inverse".into(),
                    params: [("s".to_string(), s.to_string())].into(),
                    reason: "non-invertible boundary, e^λ ≠ q, 1/q".into(),
                });
                vec![]
            }
            Some(s) => vec![inverse_case(&family.eval(s)?, &family.inverse(s)?).param("s", s)],
        },
        ("colored", Built::Colored { family, colors, .. }) => {
            let mut out = Vec::new();
            for u in colors {
                for v in colors {
                    for w in colors {
                        let id = colored_identity(&family.eval(u, v)?.into(), &family.eval(u, w)?.into(), &family.eval(v, w)?.into());
                        out.push(Case::new("colored-qybe", vec![id]).param("u", u).param("v", v).param("w", w));
                    }
                }
            }
            out
        }
        ("one-param" | "one-param-printed", Built::OneParam { family, spectral, .. }) => {
            if spectral.is_empty() {
                return Err(RecipeError::Missing("spectral").into());
            }
            let mut out = Vec::new();
            for [s1, s2, s3] in spectral {
                if [s1, s2, s3].iter().any(|x| x.is_zero()) {
                    return Err(OpError::BadParameter("spectral parameters s_i must be nonzero".into()).into());
                }
                let id = if suite == "one-param" {
                    one_param_identity(family, [s1, s2, s3])?
                } else {
                    one_param_printed_identity(family, [s1, s2, s3])?
                };
                out.push(Case::new(suite, vec![id]).param("s1", s1).param("s2", s2).param("s3", s3));
            }
            out
        }
        ("wxz", Built::Wxz(t)) => {
            let ids = wxz_identities(&t.w.clone().into(), &t.x.clone().into(), &t.z.clone().into());
            vec![Case::new("wxz", ids)]
        }
        ("classical", Built::Classical(r)) => vec![Case::new("classical", vec![classical_identity(&r.clone().into())])],
        (s, _) if SUITES.contains(&s) => return Err(na()),
        (s, _) => return Err(SuiteError::UnknownSuite(s.to_string())),
    };
    Ok((cases, skipped))
}

fn inverse_case(r: &OperatorExpr, inv: &OperatorExpr) -> Case {
    let (a, b): (Composite, Composite) = (r.clone().into(), inv.clone().into());
    Case::new(
        "inverse",
        vec![inverse_identity("R·R⁻¹", &a, &b), inverse_identity("R⁻¹·R", &b, &a)],
    )
}

/// Seeded mutation of the first identity that uses structure constants.
fn mutation_report(all: &[Case], seed: u64) -> Result<Option<VerificationReport>, LinError> {
    for case in all {
        for id in &case.ids {
            if let Some(m) = mutation_test(id, seed)? {
                let (i, j, k) = m.slot;
                let name = format!("oracle/mutation/{}", case.check);
                let r = if m.caught {
                    VerificationReport::new(&name, Outcome::Holds, None, m.report.elapsed)
                } else {
                    // The perturbed slot itself is the reproducible witness.
                    let w = Witness {
                        part: Some("mutation undetected".into()),
                        column: vec![i, j],
                        row: vec![k],
                        lhs: "c".into(),
                        rhs: "c+1".into(),
                    };
                    VerificationReport::new(&name, Outcome::Fails, Some(w), m.report.elapsed)
                };
                return Ok(Some(r.with_param("slot", format!("c[{i}][{j}][{k}]")).with_param("seed", seed)));
            }
        }
    }
    Ok(None)
}

/// Runs `suites` in order; `oracle` re-runs every other selected suite's
/// identities through the direct path and adds a seeded mutation check.
/// `oracle` alone stands for the family's default suites plus `oracle`.
pub fn run_suites(built: &Built, suites: &[&str], seed: u64) -> Result<SuiteResult, SuiteError> {
    let mut out = SuiteResult::default();
    let mut all = Vec::new();
    let oracle = suites.contains(&"oracle");
    let expanded: Vec<&str>;
    let suites = if suites == ["oracle"] {
        expanded = default_suites(built).iter().copied().chain(["oracle"]).collect();
        &expanded[..]
    } else {
        suites
    };
    for s in suites.iter().filter(|s| **s != "oracle") {
        let (cs, sk) = cases(built, s)?;
        let reports = cs.par_iter().map(Case::run).collect::<Result<Vec<_>, _>>()?;
        out.reports.extend(reports);
        out.skipped.extend(sk);
        all.extend(cs);
    }
    if oracle {
        let reports = all.par_iter().map(Case::run_oracle).collect::<Result<Vec<_>, _>>()?;
        out.reports.extend(reports);
        out.reports.extend(mutation_report(&all, seed)?);
    }
    Ok(out)
}

pub fn parse_suites(list: &str) -> Result<Vec<&'static str>, SuiteError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| SUITES.iter().copied().find(|k| *k == s).ok_or_else(|| SuiteError::UnknownSuite(s.to_string())))
        .collect()
}

/// Builds the recipe and runs the given (or default) suites; recipe
/// parameters are attached to every report.
pub fn verify_recipe(recipe: &Recipe, suites: Option<&[&str]>, seed: u64) -> Result<SuiteResult, SuiteError> {
    let built = recipe.build()?;
    let defaults = default_suites(&built);
    let mut res = run_suites(&built, suites.unwrap_or(&defaults), seed)?;
    let summary = recipe.params.summary();
    for r in &mut res.reports {
        for (k, v) in &summary {
            r.params.entry(k.clone()).or_insert_with(|| v.clone());
        }
    }
    Ok(res)
}

// ---------------------------------------------------------------------------
// Sweeps

/// Per-parameter value lists. A key `"alpha=gamma"` assigns one value list
/// to several parameters; a key `"p,q"` takes tuples assigned componentwise.
/// The grid is the Cartesian product over keys in sorted order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub values: BTreeMap<String, Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<String>>,
    /// Evaluate only this many points, chosen by the seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
}

impl Grid {
    pub fn from_json(text: &str) -> Result<Self, SuiteError> {
        serde_json::from_str(text).map_err(|e| SuiteError::Grid(e.to_string()))
    }

    /// Parameter assignments in grid order.
    pub fn points(&self) -> Result<Vec<BTreeMap<String, Value>>, SuiteError> {
        let mut points = vec![BTreeMap::new()];
        for (key, vals) in &self.values {
            if vals.is_empty() {
                return Err(SuiteError::Grid(format!("`{key}` has no values")));
            }
            let mut next = Vec::with_capacity(points.len() * vals.len());
            for p in &points {
                for v in vals {
                    let mut p: BTreeMap<String, Value> = p.clone();
                    assign(&mut p, key, v)?;
                    next.push(p);
                }
            }
            points = next;
        }
        Ok(points)
    }
}

fn assign(p: &mut BTreeMap<String, Value>, key: &str, v: &Value) -> Result<(), SuiteError> {
    if key.contains(',') {
        let names: Vec<&str> = key.split(',').map(str::trim).collect();
        let items = v
            .as_array()
            .filter(|a| a.len() == names.len())
            .ok_or_else(|| SuiteError::Grid(format!("`{key}` values must be {}-element arrays", names.len())))?;
        for (n, x) in names.iter().zip(items) {
            p.insert(n.to_string(), x.clone());
        }
    } else {
        for n in key.split('=').map(str::trim) {
            p.insert(n.to_string(), v.clone());
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub params: BTreeMap<String, Value>,
    pub result: SuiteResult,
    /// Set when the point fails the recipe's preconditions; no checks ran.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub family: String,
    pub points: Vec<SweepPoint>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.points.iter().all(|p| p.result.holds())
    }

    pub fn report_count(&self) -> usize {
        self.points.iter().map(|p| p.result.reports.len()).sum()
    }

    pub fn to_json(&self) -> String {
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                json!({
                    "params": p.params,
                    "skipped_point": p.skipped,
                    "reports": p.result.reports.iter().map(VerificationReport::record).collect::<Vec<_>>(),
                    "skipped": p.result.skipped,
                })
            })
            .collect();
        let doc = json!({
            "family": self.family,
            "outcome": if self.holds() { Outcome::Holds } else { Outcome::Fails },
            "points": points,
        });
        serde_json::to_string_pretty(&doc).expect("sweep serializes")
    }
}

fn point_label(p: &BTreeMap<String, Value>) -> BTreeMap<String, String> {
    p.iter()
        .map(|(k, v)| {
            let s = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            (k.clone(), s)
        })
        .collect()
}

/// Runs the suites at every grid point (in parallel, merged in grid order).
/// Points whose parameters violate a precondition are reported skipped.
pub fn sweep(recipe: &Recipe, grid: &Grid, suites: Option<&[&str]>, seed: u64) -> Result<SweepReport, SuiteError> {
    let mut points = grid.points()?;
    if let Some(k) = grid.sample.filter(|k| *k < points.len()) {
        let mut idx: Vec<usize> = (0..points.len()).collect();
        idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut keep = idx[..k].to_vec();
        keep.sort_unstable();
        points = keep.into_iter().map(|i| points[i].clone()).collect();
    }
    let grid_suites: Option<Vec<&str>> = match &grid.suites {
        Some(list) => Some(parse_suites(&list.join(","))?),
        None => None,
    };
    let suites = suites.or(grid_suites.as_deref());
    let results = points
        .par_iter()
        .map(|p| -> Result<SweepPoint, SuiteError> {
            let r = recipe.with_overrides(p)?;
            let labels = point_label(p);
            let outcome = verify_recipe(&r, suites, seed);
            let mut result = match outcome {
                Ok(res) => res,
                Err(SuiteError::Recipe(RecipeError::Op(e))) | Err(SuiteError::Verify(VerifyError::Op(e))) => {
                    return Ok(SweepPoint {
                        params: p.clone(),
                        result: SuiteResult::default(),
                        skipped: Some(e.to_string()),
                    })
                }
                Err(e) => return Err(e),
            };
            for rep in &mut result.reports {
                rep.params.extend(labels.clone());
            }
            Ok(SweepPoint {
                params: p.clone(),
                result,
                skipped: None,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepReport {
        family: recipe.family.clone(),
        points: results,
    })
}

// ---------------------------------------------------------------------------
// Preset

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Holds,
    Fails,
    /// Open outcome: evaluated and recorded, not asserted.
    Record,
}

pub struct PresetEntry {
    pub label: &'static str,
    pub recipe: Recipe,
    pub suites: Vec<&'static str>,
    pub grid: Option<Grid>,
    pub expect: Expect,
}

#[derive(Debug, Clone)]
pub struct PresetOutcome {
    pub label: String,
    pub expect: Expect,
    pub reports: Vec<VerificationReport>,
    pub skipped: Vec<Skipped>,
}

impl PresetOutcome {
    pub fn holds(&self) -> bool {
        self.reports.iter().all(VerificationReport::holds)
    }

    pub fn as_expected(&self) -> bool {
        match self.expect {
            Expect::Holds => self.holds(),
            Expect::Fails => !self.holds(),
            Expect::Record => true,
        }
    }
}

fn recipe(v: Value) -> Recipe {
    serde_json::from_value(v).expect("preset recipe")
}

fn grid(v: Value) -> Option<Grid> {
    Some(serde_json::from_value(v).expect("preset grid"))
}

const FIVE: [&str; 5] = ["1", "2", "-1", "1/2", "3"];
const FIVE_B: [&str; 5] = ["1", "-2", "1/3", "5", "7"];

/// Every family's checks on catalog structures.
pub fn preset_all() -> Vec<PresetEntry> {
    let mut out = Vec::new();
    let mut push = |label, recipe, suites: &[&'static str], grid, expect| {
        out.push(PresetEntry {
            label,
            recipe,
            suites: suites.to_vec(),
            grid,
            expect,
        })
    };
    for (label, s) in [("dn/dual-numbers", "dual-numbers"), ("dn/m2", "m2")] {
        let r = recipe(json!({"family": "dn", "structure": s, "params": {}}));
        push(label, r.clone(), &["braid", "inverse", "twist-equivalence", "oracle"], grid(json!({"values": {"alpha=gamma": FIVE, "beta": FIVE_B}})), Expect::Holds);
        push(label, r.clone(), &["braid", "inverse", "twist-equivalence", "oracle"], grid(json!({"values": {"beta=gamma": FIVE, "alpha": FIVE_B}})), Expect::Holds);
        push(label, r, &["braid", "inverse", "oracle"], grid(json!({"values": {"gamma": FIVE, "alpha=beta": ["0"]}})), Expect::Holds);
    }
    push(
        "dn/invalid",
        recipe(json!({"family": "dn", "structure": "dual-numbers", "params": {"alpha": 1, "beta": 2, "gamma": 3}})),
        &["braid"],
        None,
        Expect::Fails,
    );
    push(
        "dn/invalid-twist-equivalence",
        recipe(json!({"family": "dn", "structure": "dual-numbers", "params": {"alpha": 1, "beta": 2, "gamma": 3}})),
        &["twist-equivalence"],
        None,
        Expect::Holds,
    );
    push(
        "dim2-canonical",
        recipe(json!({"family": "dim2-canonical", "params": {}})),
        &["qybe", "commutator", "twist-equivalence", "oracle"],
        grid(json!({"values": {"q": ["1", "2", "-1", "1/3", "5"], "eta": ["0", "1"]}})),
        Expect::Holds,
    );
    push(
        "colored/dual-numbers",
        recipe(json!({"family": "colored", "structure": "dual-numbers", "params": {"colors": [0, 1, 2]}})),
        &["colored", "inverse", "oracle"],
        grid(json!({"values": {"p,q": [[1, 2], [3, 5]]}})),
        Expect::Holds,
    );
    push(
        "one-param/dual-numbers",
        recipe(json!({"family": "one-param", "structure": "dual-numbers",
            "params": {"spectral": [["6", "3", "1"], ["4", "2", "1"], ["10", "5", "1"]]}})),
        &["one-param", "inverse", "oracle"],
        grid(json!({"values": {"q": ["2", "3"], "s": ["2", "3", "1/2", "5", "-1"]}})),
        Expect::Holds,
    );
    push(
        "one-param/printed-form",
        recipe(json!({"family": "one-param", "structure": "dual-numbers",
            "params": {"q": "2", "spectral": [["6", "3", "1"]]}})),
        &["one-param-printed"],
        None,
        Expect::Fails,
    );
    for (label, s) in [("wxz/dual-numbers", "dual-numbers"), ("wxz/m2", "m2")] {
        push(
            label,
            recipe(json!({"family": "wxz", "structure": s, "params": {}})),
            &["wxz", "oracle"],
            grid(json!({"values": {"lambda,mu": [[1, 1], [2, 3], [-1, "1/2"]]}})),
            Expect::Holds,
        );
    }
    push(
        "wxz/colored",
        recipe(json!({"family": "colored-wxz", "structure": "dual-numbers", "params": {"p": 1, "q": 3, "s": 1, "t": 2}})),
        &["wxz", "oracle"],
        None,
        Expect::Holds,
    );
    push(
        "wxz/super-colored",
        recipe(json!({"family": "super-colored-wxz", "structure": "super-d2",
            "params": {"z": "auto-center", "colors": [1, 2, 3], "s": 1, "t": 2,
                "alpha_table": {"1": 1, "2": 2, "3": 3}, "beta_table": {"1": 1, "2": 1, "3": 1}}})),
        &["wxz", "oracle"],
        None,
        Expect::Holds,
    );
    push(
        "split/rank-one",
        recipe(json!({"family": "split", "params": {"dim": 2, "c_index": 1, "f": [{"i": 0, "j": 0, "coords": ["1", "0"]}]}})),
        &["qybe", "oracle"],
        None,
        Expect::Holds,
    );
    push(
        "split/two-sided",
        recipe(json!({"family": "split", "params": {"dim": 3, "c_index": 2,
            "f": [{"i": 0, "j": 1, "coords": ["1", "0", "0"]}, {"i": 1, "j": 1, "coords": ["0", "2", "0"]}],
            "g": [{"i": 1, "j": 0, "coords": ["0", "1", "0"]}, {"i": 0, "j": 0, "coords": ["0", "0", "-1"]}]}})),
        &["qybe", "oracle"],
        None,
        Expect::Holds,
    );
    for (label, s) in [("super-phi/super-d2", "super-d2"), ("super-phi/heisenberg3", "heisenberg3")] {
        push(
            label,
            recipe(json!({"family": "super-phi", "structure": s, "params": {"z": "auto-center"}})),
            &["braid", "inverse", "twist-equivalence", "oracle"],
            grid(json!({"values": {"alpha": ["0", "1", "5", "-1/2"], "beta": ["1", "2", "1/3"]}})),
            Expect::Holds,
        );
    }
    push(
        "super-colored/constraint",
        recipe(json!({"family": "super-colored", "structure": "super-d2",
            "params": {"z": "auto-center", "colors": [1, 2, 3],
                "alpha_table": {"1": 1, "2": 2, "3": 3}, "beta_table": {"1": 1, "2": 1, "3": 1}}})),
        &["colored", "oracle"],
        None,
        Expect::Holds,
    );
    push(
        "super-colored/violating",
        recipe(json!({"family": "super-colored", "structure": "aff1-center",
            "params": {"z": "auto-center", "colors": [1, 2],
                "alpha_table": {"1,1": 1, "1,2": 1, "2,1": 2, "2,2": 2}, "beta_table": {"1": 1, "2": 1}}})),
        &["colored"],
        None,
        Expect::Fails,
    );
    push(
        "gtheta/z4z4",
        recipe(json!({"family": "gtheta", "structure": "gtheta-z4z4", "params": {"z": "auto-center"}})),
        &["qybe", "inverse", "oracle"],
        grid(json!({"values": {"alpha": ["0", "1", "[0,1]"]}})),
        Expect::Holds,
    );
    push(
        "gtheta/bad",
        recipe(json!({"family": "gtheta", "structure": "gtheta-bad", "params": {"z": "auto-center", "alpha": 1}})),
        &["qybe", "inverse"],
        None,
        Expect::Record,
    );
    for (label, s) in [("classical/heisenberg3", "heisenberg3"), ("classical/super-d2-even", "super-d2")] {
        push(
            label,
            recipe(json!({"family": "classical", "structure": s, "params": {"z": "auto-center"}})),
            &["classical", "oracle"],
            None,
            Expect::Holds,
        );
    }
    out
}

fn run_entry(e: &PresetEntry, seed: u64) -> Result<PresetOutcome, SuiteError> {
    let (reports, skipped) = match &e.grid {
        Some(g) => {
            let s = sweep(&e.recipe, g, Some(&e.suites), seed)?;
            let mut reports = Vec::new();
            let mut skipped = Vec::new();
            for p in s.points {
                if let Some(reason) = p.skipped {
                    skipped.push(Skipped {
                        check: "point".into(),
                        params: point_label(&p.params),
                        reason,
                    });
                }
                reports.extend(p.result.reports);
                skipped.extend(p.result.skipped);
            }
            (reports, skipped)
        }
        None => {
            let r = verify_recipe(&e.recipe, Some(&e.suites), seed)?;
            (r.reports, r.skipped)
        }
    };
    Ok(PresetOutcome {
        label: e.label.to_string(),
        expect: e.expect,
        reports,
        skipped,
    })
}

/// Summary of the F_2 census as a single report.
pub fn search_f2_report() -> Result<VerificationReport, SuiteError> {
    let start = std::time::Instant::now();
    let hits: Vec<SearchHit> = search_hits(2, false)?;
    let invertible = hits.iter().filter(|h| h.invertible).count();
    let family = hits.iter().filter(|h| h.family.is_some()).count();
    let id = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1];
    let tw = [1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1];
    let has = |e: [u8; 16]| hits.iter().any(|h| h.entries == e);
    let ok = has(id) && has(tw) && family == 2;
    let witness = (!ok).then(|| Witness {
        part: Some("census".into()),
        column: vec![],
        row: vec![],
        lhs: format!("identity {} twist {} family {family}", has(id), has(tw)),
        rhs: "identity true twist true family 2".into(),
    });
    Ok(VerificationReport::new("search/f2", if ok { Outcome::Holds } else { Outcome::Fails }, witness, start.elapsed())
        .with_param("solutions", hits.len())
        .with_param("invertible", invertible)
        .with_param("family-matches", family))
}

pub fn run_preset(entries: &[PresetEntry], seed: u64) -> Result<Vec<PresetOutcome>, SuiteError> {
    let mut out = entries.iter().map(|e| run_entry(e, seed)).collect::<Result<Vec<_>, _>>()?;
    out.push(PresetOutcome {
        label: "search/f2".into(),
        expect: Expect::Holds,
        reports: vec![search_f2_report()?],
        skipped: vec![],
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: Value) -> Recipe {
        recipe(v)
    }

    #[test]
    fn grid_keys_tie_and_zip() {
        let g: Grid = serde_json::from_value(json!({"values": {"alpha=gamma": [1, 2], "beta": [3], "p,q": [[1, 2], [3, 5]]}})).unwrap();
        let pts = g.points().unwrap();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[0]["alpha"], pts[0]["gamma"]);
        assert_eq!(pts[1]["q"], json!(5));
        let bad: Grid = serde_json::from_value(json!({"values": {"p,q": [[1]]}})).unwrap();
        assert!(bad.points().is_err());
    }

    #[test]
    fn dn_case_one_sweep_on_m2() {
        let rec = r(json!({"family": "dn", "structure": "m2", "params": {}}));
        let g: Grid = serde_json::from_value(json!({"values": {"alpha=gamma": FIVE, "beta": FIVE_B}})).unwrap();
        let s = sweep(&rec, &g, Some(&["braid"]), 0).unwrap();
        assert_eq!(s.report_count(), 25);
        assert!(s.holds());
    }

    #[test]
    fn one_param_boundary_skips_inverse_only() {
        let rec = r(json!({"family": "one-param", "structure": "dual-numbers",
            "params": {"q": 2, "s": 2, "spectral": [["6", "3", "1"]]}}));
        let res = verify_recipe(&rec, None, 0).unwrap();
        assert_eq!(res.reports.len(), 1);
        assert!(res.holds());
        assert_eq!(res.skipped[0].reason, "non-invertible boundary, e^λ ≠ q, 1/q");
    }

    #[test]
    fn invalid_point_is_skipped() {
        let rec = r(json!({"family": "colored", "structure": "dual-numbers", "params": {"p": 1, "q": 1, "colors": [0, 1]}}));
        let res = verify_recipe(&rec, None, 0).unwrap();
        assert!(res.skipped.iter().all(|s| s.check == "inverse"));
        let rec = r(json!({"family": "dim2-canonical", "params": {}}));
        let g: Grid = serde_json::from_value(json!({"values": {"q": ["0", "1"]}})).unwrap();
        let s = sweep(&rec, &g, None, 0).unwrap();
        assert!(s.points[0].skipped.is_some());
        assert!(s.points[1].skipped.is_none());
    }

    #[test]
    fn oracle_suite_adds_mutation() {
        let rec = r(json!({"family": "dn", "structure": "dual-numbers", "params": {"alpha": 1, "beta": 2, "gamma": 1}}));
        let res = verify_recipe(&rec, Some(&["braid", "oracle"]), 3).unwrap();
        let names: Vec<&str> = res.reports.iter().map(|r| r.check.as_str()).collect();
        assert_eq!(names, ["braid", "oracle/braid", "oracle/mutation/braid"]);
        assert!(res.holds());
    }

    #[test]
    fn suite_errors() {
        let rec = r(json!({"family": "wxz", "structure": "m2", "params": {"lambda": 1, "mu": 1}}));
        assert!(matches!(verify_recipe(&rec, Some(&["braid"]), 0), Err(SuiteError::NotApplicable { .. })));
        assert!(matches!(parse_suites("braid,nope"), Err(SuiteError::UnknownSuite(_))));
    }

    #[test]
    fn sampling_is_seeded() {
        let rec = r(json!({"family": "dn", "structure": "dual-numbers", "params": {}}));
        let g: Grid = serde_json::from_value(json!({"values": {"alpha=gamma": FIVE, "beta": FIVE_B}, "sample": 4})).unwrap();
        let a = sweep(&rec, &g, Some(&["braid"]), 9).unwrap();
        let b = sweep(&rec, &g, Some(&["braid"]), 9).unwrap();
        assert_eq!(a.points.len(), 4);
        assert_eq!(a.to_json(), b.to_json());
    }
}
