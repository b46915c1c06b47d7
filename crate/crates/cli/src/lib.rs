//! Argument parsing, dispatch and exit codes for the `ordjump` binary.

use std::io::{Read, Write};
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use ordjump::acceptance::{run_all, run_one, AcceptanceConfig};
use ordjump::oracles::{enumerate_terms, enumerate_trees};
use ordjump::order_terms::{derivative, IsoVerdict};
use ordjump::reductions::{verify_reduction_with, CATALOG};
use ordjump::{
    apply_reduction, canonicalize, catalog_reduction_with, complete_hull, is_complete, iso_terms,
    make_relation, order_to_tree, parse_term, rank, render_term, tree_rank, tree_to_order, Error,
    OrderTerm, PointValue, ReductionParams, RegTree,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_REPRESENTABILITY: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "ordjump",
    version,
    about = "Regular scattered orders, order trees and Bernoulli jumps"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for sampled point sets and suites.
    #[arg(long, default_value_t = 0x5eed, global = true)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Canonical form of an order term.
    Canon { term: String },
    /// Hausdorff rank of an order term.
    Rank { term: String },
    /// Iterated derivative (condensation by finite intervals).
    Derive {
        term: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Decide isomorphism of two order terms.
    Iso { a: String, b: String },
    /// Completeness check or Dedekind completion hull.
    Complete {
        #[command(subcommand)]
        op: CompleteOp,
    },
    /// Tree of condensation classes of an order.
    Order2tree { term: String },
    /// Encode a tree (text, JSON, file or `-`) as an order.
    Tree2order {
        tree: String,
        #[arg(long)]
        complete: bool,
    },
    /// Evaluate or canonicalize points of a relation.
    Rel {
        #[command(subcommand)]
        op: RelOp,
    },
    /// Apply a cataloged reduction to a point.
    Reduce {
        name: String,
        point: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check a cataloged reduction on its sample; prints a JSON report.
    Verify {
        name: String,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// List terms, trees, points or reductions.
    Enumerate {
        #[command(subcommand)]
        what: EnumWhat,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u32>,
        #[arg(long)]
        term_size: Option<u64>,
        #[arg(long)]
        trees_per_rank: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum CompleteOp {
    Check { term: String },
    Hull { term: String },
}

#[derive(Subcommand, Debug)]
enum RelOp {
    /// Decide whether two points are equivalent.
    Eval { rel: String, x: String, y: String },
    /// Canonical representative of a point.
    Canon { rel: String, x: String },
}

#[derive(Subcommand, Debug)]
enum EnumWhat {
    Terms {
        #[arg(long, default_value_t = 3)]
        size: u64,
    },
    Trees {
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 10)]
        per_rank: usize,
    },
    Points {
        rel: String,
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    Reductions,
}

#[derive(clap::Args, Debug)]
struct ParamArgs {
    /// Inner relation, for reductions generic in it.
    #[arg(long)]
    inner: Option<String>,
    /// Truncation level or hierarchy index.
    #[arg(long)]
    levels: Option<usize>,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Core(Error::Indeterminate) => EXIT_UNKNOWN,
            CliError::Core(Error::Representability(_)) => EXIT_REPRESENTABILITY,
            _ => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a command prints in each format, and its exit code.
struct Output {
    code: i32,
    text: String,
    json: Value,
}

fn ok(text: impl Into<String>, json: Value) -> Output {
    Output {
        code: EXIT_OK,
        text: text.into(),
        json,
    }
}

/// Run with `argv` (program name first), writing results to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let body = match cli.format {
                Format::Text => o.text,
                Format::Json => serde_json::to_string_pretty(&o.json).expect("serializable"),
            };
            let _ = writeln!(out, "{body}");
            o.code
        }
        Err(e) => {
            if cli.format == Format::Json {
                let _ = writeln!(out, "{}", json!({ "error": e.message() }));
            }
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn term(s: &str) -> CliResult<OrderTerm> {
    Ok(parse_term(s)?)
}

/// `-` reads stdin, an existing path reads the file, anything else is
/// taken literally.
fn input(arg: &str) -> CliResult<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    let p = Path::new(arg);
    if p.is_file() {
        return std::fs::read_to_string(p)
            .map_err(|e| CliError::Usage(format!("reading {arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn point(arg: &str) -> CliResult<PointValue> {
    let s = input(arg)?;
    serde_json::from_str(&s).map_err(|e| CliError::Usage(format!("invalid point JSON: {e}")))
}

fn tree(arg: &str) -> CliResult<RegTree> {
    let s = input(arg)?;
    let s = s.trim();
    if s.starts_with('{') {
        serde_json::from_str(s).map_err(|e| CliError::Usage(format!("invalid tree JSON: {e}")))
    } else {
        Ok(RegTree::parse(s)?)
    }
}

fn tree_json(t: &RegTree) -> Value {
    json!({ "text": t.render(), "rank": tree_rank(t), "tree": t })
}

fn point_json(p: &PointValue) -> Value {
    serde_json::to_value(p).expect("serializable")
}

fn reduction_name(name: &str) -> String {
    if name.starts_with("r_") {
        name.to_string()
    } else {
        format!("r_{name}")
    }
}

fn params(p: &ParamArgs, seed: u64) -> CliResult<ReductionParams> {
    Ok(ReductionParams {
        inner: p.inner.as_deref().map(make_relation).transpose()?,
        levels: p.levels,
        seed: Some(seed),
    })
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    match &cli.cmd {
        Cmd::Canon { term: t } => {
            let c = render_term(&canonicalize(&term(t)?));
            Ok(ok(c.clone(), json!({ "canonical": c })))
        }
        Cmd::Rank { term: t } => {
            let r = rank(&term(t)?)?;
            Ok(ok(r.to_string(), json!({ "rank": r })))
        }
        Cmd::Derive { term: t, steps } => {
            let mut cur = term(t)?;
            let mut chain = vec![render_term(&cur)];
            for _ in 0..*steps {
                cur = canonicalize(&derivative(&cur));
                chain.push(render_term(&cur));
            }
            Ok(ok(chain.join("\n"), json!({ "chain": chain })))
        }
        Cmd::Iso { a, b } => Ok(match iso_terms(&term(a)?, &term(b)?) {
            IsoVerdict::Isomorphic(c) => {
                let c = render_term(&c);
                ok(
                    format!("Isomorphic {c}"),
                    json!({ "verdict": "isomorphic", "canonical": c }),
                )
            }
            IsoVerdict::NonIsomorphic(cert) => Output {
                code: EXIT_NEGATIVE,
                text: format!(
                    "NonIsomorphic {}: {} vs {}",
                    cert.invariant, cert.left, cert.right
                ),
                json: json!({ "verdict": "nonIsomorphic", "certificate": cert }),
            },
            IsoVerdict::Unknown => Output {
                code: EXIT_UNKNOWN,
                text: "Unknown".into(),
                json: json!({ "verdict": "unknown" }),
            },
        }),
        Cmd::Complete {
            op: CompleteOp::Check { term: t },
        } => {
            let c = is_complete(&term(t)?)?;
            Ok(Output {
                code: if c { EXIT_OK } else { EXIT_NEGATIVE },
                text: if c { "complete" } else { "not complete" }.into(),
                json: json!({ "complete": c }),
            })
        }
        Cmd::Complete {
            op: CompleteOp::Hull { term: t },
        } => {
            let h = render_term(&complete_hull(&term(t)?));
            Ok(ok(h.clone(), json!({ "hull": h })))
        }
        Cmd::Order2tree { term: t } => {
            let tr = order_to_tree(&term(t)?)?;
            Ok(ok(tr.render(), tree_json(&tr)))
        }
        Cmd::Tree2order { tree: t, complete } => {
            let o = render_term(&canonicalize(&tree_to_order(&tree(t)?, *complete)));
            Ok(ok(o.clone(), json!({ "order": o })))
        }
        Cmd::Rel {
            op: RelOp::Eval { rel, x, y },
        } => {
            if x == "-" && y == "-" {
                return Err(CliError::Usage("only one point can come from stdin".into()));
            }
            let r = make_relation(rel)?;
            let e = r.decide(&point(x)?, &point(y)?)?;
            Ok(Output {
                code: if e { EXIT_OK } else { EXIT_NEGATIVE },
                text: if e { "equivalent" } else { "not equivalent" }.into(),
                json: json!({ "relation": r.name(), "equivalent": e }),
            })
        }
        Cmd::Rel {
            op: RelOp::Canon { rel, x },
        } => {
            let r = make_relation(rel)?;
            let c = r.canon(&point(x)?)?;
            Ok(ok(
                serde_json::to_string(&c).expect("serializable"),
                json!({ "relation": r.name(), "canonical": c, "complete": r.canon_complete() }),
            ))
        }
        Cmd::Reduce {
            name,
            point: p,
            params: pa,
        } => {
            let r = catalog_reduction_with(&reduction_name(name), &params(pa, cli.seed)?)?;
            let img = apply_reduction(&r, &point(p)?)?;
            Ok(ok(
                serde_json::to_string(&img).expect("serializable"),
                point_json(&img),
            ))
        }
        Cmd::Verify {
            name,
            bound,
            threads,
            params: pa,
        } => {
            let r = catalog_reduction_with(&reduction_name(name), &params(pa, cli.seed)?)?;
            let threads = threads
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let rep = verify_reduction_with(&r, bound.unwrap_or(r.bounds.default), threads)?;
            let json = serde_json::to_value(&rep).expect("serializable");
            Ok(Output {
                code: if rep.is_verified() {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                },
                text: serde_json::to_string_pretty(&json).expect("serializable"),
                json,
            })
        }
        Cmd::Enumerate { what } => enumerate(what),
        Cmd::Selftest {
            criterion,
            term_size,
            trees_per_rank,
        } => {
            let mut cfg = AcceptanceConfig {
                seed: cli.seed,
                ..AcceptanceConfig::default()
            };
            if let Some(n) = term_size {
                cfg.term_size = *n;
            }
            if let Some(n) = trees_per_rank {
                cfg.trees_per_rank = *n;
            }
            let results = match criterion {
                Some(id @ 1..=10) => vec![run_one(*id, &cfg)],
                Some(id) => {
                    return Err(CliError::Usage(format!(
                        "no criterion {id}; expected 1..=10"
                    )))
                }
                None => run_all(&cfg),
            };
            let all = results.iter().all(|r| r.passed);
            Ok(Output {
                code: if all { EXIT_OK } else { EXIT_NEGATIVE },
                text: results
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\n"),
                json: json!({ "passed": all, "criteria": results }),
            })
        }
    }
}

fn enumerate(what: &EnumWhat) -> CliResult<Output> {
    let listing = |items: Vec<String>| ok(items.join("\n"), json!(items));
    Ok(match what {
        EnumWhat::Terms { size } => {
            listing(enumerate_terms(*size)?.iter().map(render_term).collect())
        }
        EnumWhat::Trees { max_rank, per_rank } => listing(
            enumerate_trees(*max_rank, *per_rank)
                .iter()
                .map(RegTree::render)
                .collect(),
        ),
        EnumWhat::Points { rel, bound } => {
            let pts = make_relation(rel)?.enumerate(*bound);
            let lines = pts
                .iter()
                .map(|p| serde_json::to_string(p).expect("serializable"))
                .collect::<Vec<_>>();
            ok(lines.join("\n"), json!(pts))
        }
        EnumWhat::Reductions => listing(CATALOG.iter().map(|s| s.to_string()).collect()),
    })
}
