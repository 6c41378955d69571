//! `yb`: validate structures, build operators from recipes, verify identities,
//! sweep parameter grids and run the dimension-2 census.
//!
//! Exit status: 0 when every check holds, 1 when some check fails, 2 on
//! input or usage errors.

use std::collections::BTreeSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rayon::prelude::*;
use yb_core::operators::Recipe;
use yb_core::structures::StructureFile;
use yb_core::verify::search::{chunk_count, search_chunk, SearchHit};
use yb_core::verify::suite::{preset_all, parse_suites, run_preset, sweep, verify_recipe, Grid, SuiteResult};
use yb_core::verify::VerificationReport;

#[derive(Parser)]
#[command(name = "yb", version, about = "Exact Yang–Baxter operator construction and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure file against its axioms.
    Validate { file: PathBuf },
    /// Write the operator a recipe describes as a matrix record.
    BuildOp {
        recipe: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run check suites on a recipe.
    Verify {
        recipe: PathBuf,
        /// Comma-separated suites; defaults depend on the family.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write one JSON record per check to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a recipe's suites at every point of a parameter grid.
    Sweep {
        recipe: PathBuf,
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        suite: Option<String>,
        /// Write the aggregated JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive census of constant QYBE solutions on a 2-dimensional space.
    Search {
        #[arg(long, value_enum)]
        field: SearchField,
        #[arg(long)]
        invertible: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a bundled preset.
    Preset {
        #[arg(value_enum)]
        name: PresetName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchField {
    F2,
    F3,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetName {
    PaperAll,
}

/// Input errors map to exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<bool, InputError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::BuildOp { recipe, out } => build_op(&recipe, &out),
        Command::Verify { recipe, suite, seed, json } => verify(&recipe, suite.as_deref(), seed, json.as_deref()),
        Command::Sweep {
            recipe,
            grid,
            seed,
            suite,
            out,
        } => run_sweep(&recipe, &grid, suite.as_deref(), seed, out.as_deref()),
        Command::Search { field, invertible, out } => search(field, invertible, &out),
        Command::Preset { name: _, seed, out } => preset(seed, out.as_deref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn validate(file: &Path) -> Run {
    let s = StructureFile::load(file)?;
    let report = s.validate(0);
    println!("{}: {report}", file.display());
    Ok(report.is_valid())
}

fn build_op(recipe: &Path, out: &Path) -> Run {
    let r = Recipe::load(recipe)?;
    let op = r.build()?.representative(&r.params)?;
    let text = serde_json::to_string_pretty(&op.to_record())?;
    fs::write(out, text + "\n").map_err(|e| format!("{}: {e}", out.display()))?;
    println!("wrote {} ({}×{} over {})", out.display(), op.dim(), op.dim(), op.field());
    Ok(true)
}

fn print_result(res: &SuiteResult) {
    for r in &res.reports {
        println!("{r}");
    }
    for s in &res.skipped {
        let p: Vec<String> = s.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("{:<14} skipped  [{}] {}", s.check, p.join(" "), s.reason);
    }
}

fn write_records(path: &Path, reports: &[VerificationReport]) -> Result<(), InputError> {
    let mut text = String::new();
    for r in reports {
        text.push_str(&r.to_json());
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn verify(recipe: &Path, suite: Option<&str>, seed: u64, json: Option<&Path>) -> Run {
    let r = Recipe::load(recipe)?;
    let suites = suite.map(parse_suites).transpose()?;
    let res = verify_recipe(&r, suites.as_deref(), seed)?;
    print_result(&res);
    if let Some(p) = json {
        write_records(p, &res.reports)?;
    }
    let ok = res.holds();
    println!("{}: {}", recipe.display(), if ok { "all checks hold" } else { "some checks FAIL" });
    Ok(ok)
}

fn run_sweep(recipe: &Path, grid: &Path, suite: Option<&str>, seed: u64, out: Option<&Path>) -> Run {
    let r = Recipe::load(recipe)?;
    let g = Grid::from_json(&fs::read_to_string(grid).map_err(|e| format!("{}: {e}", grid.display()))?)?;
    let suites = suite.map(parse_suites).transpose()?;
    let report = sweep(&r, &g, suites.as_deref(), seed)?;
    for p in &report.points {
        let label: Vec<String> = p.params.iter().map(|(k, v)| format!("{k}={}", v.as_str().map_or(v.to_string(), String::from))).collect();
        let label = label.join(" ");
        match &p.skipped {
            Some(reason) => println!("[{label}] skipped: {reason}"),
            None => {
                let failed = p.result.reports.iter().filter(|r| !r.holds()).count();
                println!("[{label}] {} checks, {failed} failing", p.result.reports.len());
                for r in p.result.reports.iter().filter(|r| !r.holds()) {
                    println!("  {r}");
                }
                for s in &p.result.skipped {
                    println!("  {} skipped: {}", s.check, s.reason);
                }
            }
        }
    }
    if let Some(path) = out {
        fs::write(path, report.to_json() + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let ok = report.holds();
    println!("sweep: {} points, {} checks, {}", report.points.len(), report.report_count(), if ok { "all hold" } else { "some FAIL" });
    Ok(ok)
}

// ---------------------------------------------------------------------------
// Census

fn hit_json(h: &SearchHit) -> Value {
    json!({
        "rows": h.rows(),
        "invertible": h.invertible,
        "family": h.family.map(|(q, eta)| json!({"q": q, "eta": eta})),
    })
}

fn hit_from_json(v: &Value) -> Option<SearchHit> {
    let rows = v.get("rows")?.as_array()?;
    let mut entries = [0u8; 16];
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row.as_array()?.iter().enumerate() {
            *entries.get_mut(4 * r + c)? = u8::try_from(x.as_u64()?).ok()?;
        }
    }
    let family = match v.get("family")? {
        Value::Null => None,
        f => Some((f.get("q")?.as_u64()? as u8, f.get("eta")?.as_u64()? as u8)),
    };
    Some(SearchHit {
        entries,
        invertible: v.get("invertible")?.as_bool()?,
        family,
    })
}

fn partial_header(p: u64, invertible: bool) -> Value {
    json!({"census": "dim2-qybe", "p": p, "invertible": invertible})
}

/// Completed chunks recorded in a progress file from an earlier run with the same flags.
fn read_progress(path: &Path, header: &Value) -> Vec<(usize, Vec<SearchHit>)> {
    let Ok(f) = File::open(path) else { return Vec::new() };
    let mut lines = BufReader::new(f).lines();
    let first = lines.next().and_then(Result::ok).and_then(|l| serde_json::from_str::<Value>(&l).ok());
    if first.as_ref() != Some(header) {
        return Vec::new();
    }
    let mut done = Vec::new();
    for line in lines.map_while(Result::ok) {
        let Ok(v) = serde_json::from_str::<Value>(&line) else { break };
        let parsed = (|| {
            let c = v.get("chunk")?.as_u64()? as usize;
            let hits = v.get("hits")?.as_array()?.iter().map(hit_from_json).collect::<Option<Vec<_>>>()?;
            Some((c, hits))
        })();
        match parsed {
            Some(x) => done.push(x),
            None => break,
        }
    }
    done
}

fn search(field: SearchField, invertible: bool, out: &Path) -> Run {
    let p = match field {
        SearchField::F2 => 2,
        SearchField::F3 => 3,
    };
    let progress = PathBuf::from(format!("{}.progress", out.display()));
    let header = partial_header(p, invertible);
    let mut chunks = read_progress(&progress, &header);
    let done: BTreeSet<usize> = chunks.iter().map(|(c, _)| *c).collect();
    if !done.is_empty() {
        println!("resuming: {} of {} chunks already done", done.len(), chunk_count(p));
    }
    // Rewrite the progress file with only the well-formed records.
    let mut f = File::create(&progress).map_err(|e| format!("{}: {e}", progress.display()))?;
    writeln!(f, "{header}")?;
    for (c, hits) in &chunks {
        writeln!(f, "{}", json!({"chunk": c, "hits": hits.iter().map(hit_json).collect::<Vec<_>>()}))?;
    }
    drop(f);
    let log = Mutex::new(OpenOptions::new().append(true).open(&progress)?);
    let todo: Vec<usize> = (0..chunk_count(p)).filter(|c| !done.contains(c)).collect();
    let fresh = todo
        .par_iter()
        .map(|&c| -> Result<(usize, Vec<SearchHit>), InputError> {
            let hits = search_chunk(p, invertible, c)?;
            let line = json!({"chunk": c, "hits": hits.iter().map(hit_json).collect::<Vec<_>>()});
            let mut f = log.lock().expect("progress log");
            writeln!(f, "{line}")?;
            f.flush()?;
            Ok((c, hits))
        })
        .collect::<Result<Vec<_>, _>>()?;
    chunks.extend(fresh);
    chunks.sort_by_key(|(c, _)| *c);
    let hits: Vec<SearchHit> = chunks.into_iter().flat_map(|(_, h)| h).collect();
    let inv = hits.iter().filter(|h| h.invertible).count();
    let fam = hits.iter().filter(|h| h.family.is_some()).count();
    let census = json!({
        "census": "constant QYBE solutions, dim V = 2",
        "field": format!("F_{p}"),
        "require_invertible": invertible,
        "order": "lexicographic by row-major entries",
        "summary": {"solutions": hits.len(), "invertible": inv, "family_matches": fam},
        "solutions": hits.iter().map(hit_json).collect::<Vec<_>>(),
    });
    fs::write(out, serde_json::to_string_pretty(&census)? + "\n").map_err(|e| format!("{}: {e}", out.display()))?;
    let _ = fs::remove_file(&progress);
    println!("F_{p}: {} solutions ({inv} invertible, {fam} family matches) -> {}", hits.len(), out.display());
    Ok(true)
}

// ---------------------------------------------------------------------------
// Preset

fn preset(seed: u64, out: Option<&Path>) -> Run {
    let outcomes = run_preset(&preset_all(), seed)?;
    let mut all = true;
    let mut records = Vec::new();
    for o in &outcomes {
        let ok = o.as_expected();
        all &= ok;
        let status = if o.holds() { "holds" } else { "fails" };
        println!(
            "{} {:<28} {status:<6} expected {:<7} ({} checks, {} skipped)",
            if ok { "ok  " } else { "MISS" },
            o.label,
            format!("{:?}", o.expect).to_lowercase(),
            o.reports.len(),
            o.skipped.len()
        );
        if let Some(r) = o.reports.iter().find(|r| !r.holds()) {
            println!("       first failure: {r}");
        }
        records.push(json!({
            "entry": o.label,
            "expect": o.expect,
            "outcome": status,
            "reports": o.reports.iter().map(VerificationReport::record).collect::<Vec<_>>(),
            "skipped": o.skipped,
        }));
    }
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(&records)? + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    println!("paper-all: {}", if all { "every entry as expected" } else { "some entries NOT as expected" });
    Ok(all)
}
