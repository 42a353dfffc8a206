//! The `lccc` command line: diagram files in, reports out.

pub mod diagram;
mod render;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use lccc::adjunction::{check_chain, check_chain_with_fault, slice_exp_as_composite, CheckConfig, LawReport};
use lccc::depprod::{dependent_product_fiberwise, dependent_sum};
use lccc::dtt::{self, DslError, Environment};
use lccc::exponentials::exp;
use lccc::finset::{fiber_sizes, identity, map_equal};
use lccc::limits::{base_change_obj, pullback, Cospan};
use lccc::{FinMap, FinSet, SliceObj, DEFAULT_LIMIT};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub use diagram::Diagram;

/// Entries shown per listing before the `(+N more)` marker.
pub const LISTING_LIMIT: usize = 100;

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const LAW_FAILURE: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
    pub const ENUMERATION_LIMIT: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT_ERROR,
            CliError::Limit(_) => exit::ENUMERATION_LIMIT,
        }
    }
}

impl From<lccc::Error> for CliError {
    fn from(e: lccc::Error) -> Self {
        if e.is_enumeration_limit() {
            CliError::Limit(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "lccc",
    version,
    about = "Pullbacks, exponentials and the adjoint triple f_! ⊣ f^* ⊣ f_* on finite sets"
)]
pub struct Cli {
    /// Largest enumeration any construction may perform.
    #[arg(long, global = true, env = "LCCC_LIMIT", default_value_t = DEFAULT_LIMIT)]
    pub limit: usize,
    /// Seed for sampled instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pullback of the cospan B -f-> A <-g- C.
    Pullback { file: PathBuf, f: String, g: String },
    /// Dependent sum f_! p of a family p over the domain of f.
    Sigma { file: PathBuf, f: String, p: String },
    /// Dependent product f_* p of a family p over the domain of f.
    Pi { file: PathBuf, f: String, p: String },
    /// Base change f^* p of a family p over the codomain of f.
    Pull { file: PathBuf, f: String, p: String },
    /// The exponential Y^X.
    Exp {
        file: PathBuf,
        x: String,
        y: String,
        /// List the evaluation map.
        #[arg(long)]
        ev: bool,
    },
    /// Certify f_! ⊣ f^* ⊣ f_*.
    AdjointCheck {
        file: PathBuf,
        f: String,
        /// Also certify the slice exponential by f as right adjoint to (−)×_A f.
        #[arg(long)]
        slice_exp: bool,
    },
    /// Evaluate a program in the family language.
    Eval { file: PathBuf },
}

#[derive(Debug, Clone, Serialize)]
pub struct MapListing {
    pub dom: String,
    pub cod: String,
    pub table: IndexMap<String, String>,
}

/// Everything a command prints, in output order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub seed: u64,
    pub limit: usize,
    pub sets: IndexMap<String, Vec<String>>,
    pub maps: IndexMap<String, MapListing>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laws: Option<LawReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.laws.as_ref().is_none_or(LawReport::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            exit::SUCCESS
        } else {
            exit::LAW_FAILURE
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => render::text(&serde_json::to_value(self).expect("reports serialize")),
        }
    }
}

fn listing<I: IntoIterator<Item = String>>(items: I, len: usize) -> Value {
    let mut out: Vec<Value> = items.into_iter().take(LISTING_LIMIT).map(Value::String).collect();
    if len > LISTING_LIMIT {
        out.push(Value::String(format!("(+{} more)", len - LISTING_LIMIT)));
    }
    Value::Array(out)
}

fn table_listing(f: &FinMap) -> Value {
    listing(f.entries().map(|(x, y)| format!("{x} ↦ {y}")), f.dom().len())
}

fn slice_listing(x: &SliceObj) -> Value {
    let fibers: Vec<Value> = x
        .fibers()
        .iter()
        .enumerate()
        .map(|(a, members)| {
            json!({
                "over": x.base().element(a).as_str(),
                "size": members.len(),
                "elements": listing(members.iter().map(|&t| x.total().element(t).to_string()), members.len()),
            })
        })
        .collect();
    json!({
        "base": x.base().name(),
        "total": x.total().len(),
        "fiber_sizes": x.fiber_sizes(),
        "fibers": fibers,
    })
}

fn labels(set: &FinSet) -> Vec<String> {
    set.elements().iter().map(|e| e.to_string()).collect()
}

fn map_listing(f: &FinMap) -> MapListing {
    MapListing {
        dom: f.dom().name().to_string(),
        cod: f.cod().name().to_string(),
        table: f.entries().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
    }
}

pub fn cmd_pullback(d: &Diagram, f: &str, g: &str) -> Result<Value, CliError> {
    let (fm, gm) = (d.map(f)?, d.map(g)?);
    let cospan = Cospan::new(fm.clone(), gm.clone())?;
    let pb = pullback(&cospan);
    let (fs, gs) = (fiber_sizes(fm), fiber_sizes(gm));
    let apex = cospan.apex();
    let breakdown: Vec<Value> = (0..apex.len())
        .map(|a| {
            json!({
                "over": apex.element(a).as_str(),
                "left": fs[a],
                "right": gs[a],
                "pairs": fs[a] * gs[a],
            })
        })
        .collect();
    let mut result = json!({
        "carrier": listing(labels(&pb.carrier), pb.carrier.len()),
        "size": pb.carrier.len(),
        "p": table_listing(&pb.p),
        "q": table_listing(&pb.q),
        "fibers": breakdown,
    });
    if gm.dom() == gm.cod() && map_equal(gm, &identity(gm.cod())) {
        result["note"] = json!(format!(
            "{g} is an identity, so the carrier is isomorphic to {} via p",
            fm.dom().name()
        ));
    }
    Ok(result)
}

fn family(d: &Diagram, p: &str) -> Result<SliceObj, CliError> {
    Ok(SliceObj::new(d.map(p)?.clone()))
}

pub fn cmd_sigma(d: &Diagram, f: &str, p: &str) -> Result<Value, CliError> {
    let object = dependent_sum(d.map(f)?).obj(&family(d, p)?)?;
    Ok(slice_listing(&object))
}

pub fn cmd_pi(d: &Diagram, f: &str, p: &str, limit: usize) -> Result<Value, CliError> {
    let fp = dependent_product_fiberwise(d.map(f)?, &family(d, p)?, limit)?;
    Ok(slice_listing(&fp.object))
}

pub fn cmd_pull(d: &Diagram, f: &str, p: &str) -> Result<Value, CliError> {
    let (object, _, _) = base_change_obj(d.map(f)?, &family(d, p)?)?;
    Ok(slice_listing(&object))
}

pub fn cmd_exp(d: &Diagram, x: &str, y: &str, ev: bool, limit: usize) -> Result<Value, CliError> {
    let e = exp(d.set(x)?, d.set(y)?, limit)?;
    let mut result = json!({
        "exponent": x,
        "base": y,
        "size": e.carrier.len(),
        "carrier": listing(labels(&e.carrier), e.carrier.len()),
    });
    if ev {
        result["ev"] = table_listing(&e.ev);
    }
    Ok(result)
}

pub fn cmd_adjoint_check(
    d: &Diagram,
    f: &str,
    slice_exp: bool,
    cfg: &CheckConfig,
) -> Result<(Value, LawReport), CliError> {
    let fm = d.map(f)?;
    let mut report = match d.fault {
        Some(fault) => check_chain_with_fault(fm, fault, cfg)?,
        None => check_chain(fm, cfg)?,
    };
    if slice_exp {
        report.merge(slice_exp_as_composite(fm, cfg)?);
    }
    let result = json!({
        "map": f,
        "passed": report.passed(),
        "checked": report.checked,
        "failures": report.failure_count(),
        "fault": d.fault.map(|x| x.name()),
        "slice_exp": slice_exp,
    });
    Ok((result, report))
}

fn dsl_error(path: &std::path::Path, e: DslError) -> CliError {
    match e {
        DslError::Eval(inner) => CliError::from(inner),
        other => CliError::Input(format!("{}:{other}", path.display())),
    }
}

pub fn cmd_eval(path: &std::path::Path, limit: usize) -> Result<(Value, dtt::Program, Environment), CliError> {
    let source = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let prog = dtt::parse(&source).map_err(|e| dsl_error(path, e))?;
    let env = Environment::of(&prog).map_err(|e| dsl_error(path, e))?;
    let result = dtt::eval(&prog, limit).map_err(|e| dsl_error(path, e))?;
    let mut value = slice_listing(&result.object);
    value["query"] = json!(result.query.to_string());
    Ok((value, prog, env))
}

fn echo(cli: &Cli) -> Vec<String> {
    let path = |p: &PathBuf| p.display().to_string();
    let mut out = match &cli.command {
        Command::Pullback { file, f, g } => vec!["pullback".into(), path(file), f.clone(), g.clone()],
        Command::Sigma { file, f, p } => vec!["sigma".into(), path(file), f.clone(), p.clone()],
        Command::Pi { file, f, p } => vec!["pi".into(), path(file), f.clone(), p.clone()],
        Command::Pull { file, f, p } => vec!["pull".into(), path(file), f.clone(), p.clone()],
        Command::Exp { file, x, y, ev } => {
            let mut v = vec!["exp".into(), path(file), x.clone(), y.clone()];
            if *ev {
                v.push("--ev".into());
            }
            v
        }
        Command::AdjointCheck { file, f, slice_exp } => {
            let mut v = vec!["adjoint-check".into(), path(file), f.clone()];
            if *slice_exp {
                v.push("--slice-exp".into());
            }
            v
        }
        Command::Eval { file } => vec!["eval".into(), path(file)],
    };
    out.push(format!(
        "--format={}",
        if cli.format == Format::Text {
            "text"
        } else {
            "structured"
        }
    ));
    out
}

/// Runs one invocation. Law failures are reported through
/// [`Report::exit_code`]; input and limit problems are errors.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let cfg = CheckConfig {
        limit: cli.limit,
        seed: cli.seed,
        ..CheckConfig::default()
    };
    let mut laws = None;
    let (diagram_sets, diagram_maps, result) = match &cli.command {
        Command::Eval { file } => {
            let (value, prog, env) = cmd_eval(file, cli.limit)?;
            let mut sets = IndexMap::new();
            let mut maps = IndexMap::new();
            for decl in &prog.decls {
                match decl {
                    dtt::Decl::Set { name, .. } => {
                        sets.insert(name.clone(), labels(&env.sets[name]));
                    }
                    dtt::Decl::Map { name, .. } => {
                        maps.insert(name.clone(), map_listing(&env.maps[name]));
                    }
                }
            }
            (sets, maps, value)
        }
        command => {
            let file = match command {
                Command::Pullback { file, .. }
                | Command::Sigma { file, .. }
                | Command::Pi { file, .. }
                | Command::Pull { file, .. }
                | Command::Exp { file, .. }
                | Command::AdjointCheck { file, .. } => file,
                Command::Eval { .. } => unreachable!(),
            };
            let d = Diagram::load(file)?;
            let value = match command {
                Command::Pullback { f, g, .. } => cmd_pullback(&d, f, g)?,
                Command::Sigma { f, p, .. } => cmd_sigma(&d, f, p)?,
                Command::Pi { f, p, .. } => cmd_pi(&d, f, p, cli.limit)?,
                Command::Pull { f, p, .. } => cmd_pull(&d, f, p)?,
                Command::Exp { x, y, ev, .. } => cmd_exp(&d, x, y, *ev, cli.limit)?,
                Command::AdjointCheck { f, slice_exp, .. } => {
                    let (value, report) = cmd_adjoint_check(&d, f, *slice_exp, &cfg)?;
                    laws = Some(report);
                    value
                }
                Command::Eval { .. } => unreachable!(),
            };
            let sets = d.sets.iter().map(|(k, v)| (k.clone(), labels(v))).collect();
            let maps = d.maps.iter().map(|(k, v)| (k.clone(), map_listing(v))).collect();
            (sets, maps, value)
        }
    };
    Ok(Report {
        command: echo(cli),
        seed: cli.seed,
        limit: cli.limit,
        sets: diagram_sets,
        maps: diagram_maps,
        result,
        laws,
        wall_time_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0),
    })
}

/// Output text and exit code for one invocation.
pub fn run(cli: &Cli) -> (i32, String, String) {
    match execute(cli) {
        Ok(report) => (report.exit_code(), report.render(cli.format), String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
