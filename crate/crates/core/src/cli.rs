use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pebblekit::audit::{self, ClaimVerdict, Oracle, RatioSeries};
use pebblekit::config::{Configuration, Spec, TargetSet, WeightFunction};
use pebblekit::exact::{Exact, NumberResult};
use pebblekit::families::Family;
use pebblekit::formulas;
use pebblekit::{Budget, Error, GraphFile, Meter, PricedGraph, Result, Solver};

#[derive(Debug, Parser)]
#[command(
    name = "pebblekit",
    version,
    about = "Exact generalized t-pebbling numbers under price functions"
)]
pub struct Cli {
    /// Cap on configurations examined per computation.
    #[arg(long, global = true, env = "PEBBLEKIT_BUDGET")]
    pub budget_configs: Option<u64>,
    /// Cap on solver states expanded per computation.
    #[arg(long, global = true, env = "PEBBLEKIT_BUDGET")]
    pub budget_states: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Formula,
    Bounds,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pebbling number for t targets.
    Pi {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value = "oracle")]
        method: Method,
    },
    /// Whether a configuration reaches targets, weights, or every t-set.
    Solvable {
        #[command(flatten)]
        graph: GraphArgs,
        /// Pebble counts, e.g. "4,0,0".
        #[arg(long)]
        config: String,
        /// Target vertices, e.g. "2".
        #[arg(long, conflicts_with_all = ["weights", "t"])]
        targets: Option<String>,
        /// Weight per vertex, e.g. "1,1".
        #[arg(long, conflicts_with = "t")]
        weights: Option<String>,
        /// Check every target set of this size.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Weighted cover number.
    Gamma {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        weights: String,
    },
    /// Check closed forms, bounds and structural claims against the oracle.
    Audit {
        #[command(flatten)]
        graph: GraphArgs,
        /// Inclusive range such as "1..4" (default: every t).
        #[arg(long)]
        t_range: Option<String>,
        /// Largest family member used for ratio sequences.
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Ratio sequence: across a family for fixed t, or across t for a graph.
    Sequence {
        #[command(flatten)]
        graph: GraphArgs,
        /// Fixed t for a family sequence; without it, ratios across t for one graph.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph JSON file: {"n": .., "edges": [[u, v], ..], "prices": [..]}.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Member index: vertices for path/complete, leaves for star.
    #[arg(long)]
    pub n: Option<usize>,
    /// Leaves of a star (same as --n).
    #[arg(long, conflicts_with = "n")]
    pub leaves: Option<usize>,
    /// Per-vertex prices overriding the standard price (star center first).
    #[arg(long)]
    pub prices: Option<String>,
}

impl GraphArgs {
    fn member_index(&self) -> Option<usize> {
        self.n.or(self.leaves)
    }

    fn load(&self) -> Result<PricedGraph> {
        let prices = self.prices.as_deref().map(parse_list).transpose()?;
        if let Some(path) = &self.graph {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
            let file: GraphFile = serde_json::from_str(&text)
                .map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
            let g = PricedGraph::from_file(&file)?;
            return match prices {
                Some(p) => g.with_prices(&p),
                None => Ok(g),
            };
        }
        let family = self
            .family
            .ok_or_else(|| Error::Domain("give --graph or --family".into()))?;
        let n = self
            .member_index()
            .ok_or_else(|| Error::Domain("--family needs --n (or --leaves)".into()))?;
        family.member_with_prices(n, prices.as_deref())
    }
}

/// Comma-separated non-negative integers; spaces are ignored.
pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<u64>()
                .map_err(|e| Error::Domain(format!("bad entry {p:?} in {s:?}: {e}")))
        })
        .collect()
}

/// `a..b` (inclusive), `a..=b`, or a single value.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::Domain(format!("bad range {s:?}, expected e.g. 1..4"));
    let num = |p: &str| p.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

fn usizes(s: &str) -> Result<Vec<usize>> {
    parse_list(s)?
        .into_iter()
        .map(|v| usize::try_from(v).map_err(|_| Error::Overflow("vertex index")))
        .collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

#[derive(Debug, Serialize)]
struct Named {
    name: &'static str,
    value: u64,
}

#[derive(Debug, Default, Serialize)]
struct Bounds {
    lower: u64,
    upper: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    spread: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stack: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stack_literal: Option<i128>,
}

#[derive(Debug, Serialize)]
struct PiReport {
    t: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<NumberResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formulas: Option<Vec<Named>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<Bounds>,
}

/// Closed forms for `family`, or for every family the graph belongs to.
fn formula_values(g: &PricedGraph, t: usize, family: Option<Family>) -> Vec<Named> {
    let n = g.n();
    let wants = |f: Family| family.is_none_or(|x| x == f);
    let mut out = Vec::new();
    let mut push = |name, v: Result<u64>| {
        if let Ok(value) = v {
            out.push(Named { name, value });
        }
    };
    if wants(Family::Complete) {
        push("complete", formulas::pi_complete(g, t).map(|v| v.value));
        if g.is_standard() && g.is_complete() {
            push(
                "complete-limit-argument",
                formulas::complete_limit_argument_value(n, t),
            );
        }
    }
    if wants(Family::Path) {
        push("path", formulas::pi_path(g, t).map(|v| v.value));
        if t < n {
            push("path-literal-index", formulas::pi_path_literal_index(g, t));
        }
    }
    if wants(Family::Star) && g.star_center().is_some() && n >= 3 {
        push("star", formulas::pi_star(g, t));
        if g.is_standard() && t < n {
            push(
                "star-limit-argument",
                formulas::star_limit_argument_value(n - 1, t),
            );
        }
    }
    out
}

fn bounds(g: &PricedGraph, t: usize) -> Result<Bounds> {
    let upper = formulas::upper_bound(g, t)?;
    let spread = if t < g.n() {
        formulas::lower_bound_spread(g, t).ok()
    } else {
        None
    };
    let stack = formulas::lower_bound_stack(g, t).ok();
    // the stack bound is only used as a lower bound within the diameter
    let usable_stack = stack
        .as_ref()
        .filter(|_| t <= g.diameter())
        .map(|s| s.value);
    let lower = [Some(t as u64), spread, usable_stack]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(0);
    Ok(Bounds {
        lower,
        upper,
        spread,
        stack: stack.as_ref().map(|s| s.value),
        stack_literal: stack
            .filter(|s| i128::from(s.value) != s.literal)
            .map(|s| s.literal),
    })
}

pub fn run(cli: &Cli) -> Result<String> {
    let budget = Budget::new(cli.budget_configs, cli.budget_states);
    let meter = Meter::new(budget);
    match &cli.command {
        Command::Pi { graph, t, method } => {
            let g = graph.load()?;
            let want = |m: Method| *method == m || *method == Method::All;
            let report = PiReport {
                t: *t,
                oracle: want(Method::Oracle)
                    .then(|| Exact::new(&g).pebbling_number(*t, &meter))
                    .transpose()?,
                formulas: want(Method::Formula).then(|| formula_values(&g, *t, graph.family)),
                bounds: want(Method::Bounds).then(|| bounds(&g, *t)).transpose()?,
            };
            Ok(match cli.format.unwrap_or(Format::Text) {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut out = String::from("method,name,value\n");
                    if let Some(r) = &report.oracle {
                        writeln!(out, "oracle,pi,{}", r.value).unwrap();
                    }
                    for f in report.formulas.iter().flatten() {
                        writeln!(out, "formula,{},{}", f.name, f.value).unwrap();
                    }
                    if let Some(b) = &report.bounds {
                        writeln!(out, "bounds,lower,{}\nbounds,upper,{}", b.lower, b.upper)
                            .unwrap();
                    }
                    out
                }
                Format::Text => {
                    let mut out = String::new();
                    if let Some(r) = &report.oracle {
                        write!(out, "oracle: {}", r.value).unwrap();
                        if let (Some(c), Some(s)) = (&r.witness_config, &r.witness_target) {
                            write!(out, " (witness {c} fails {s})").unwrap();
                        }
                        out.push('\n');
                    }
                    if let Some(fs) = &report.formulas {
                        if fs.is_empty() {
                            out.push_str("formula: none applies\n");
                        }
                        for f in fs {
                            writeln!(out, "formula {}: {}", f.name, f.value).unwrap();
                        }
                    }
                    if let Some(b) = &report.bounds {
                        writeln!(out, "bounds: [{}, {}]", b.lower, b.upper).unwrap();
                    }
                    out
                }
            })
        }
        Command::Solvable {
            graph,
            config,
            targets,
            weights,
            t,
        } => {
            let g = graph.load()?;
            let c = Configuration::for_graph(parse_list(config)?, &g)?;
            let solver = Solver::new(&g);
            let result = match (targets, weights, t) {
                (Some(ts), None, None) => {
                    let spec = Spec::Targets(TargetSet::new(g.n(), usizes(ts)?)?);
                    solver.can_reach_spec(&c, &spec, &meter)?
                }
                (None, Some(ws), None) => {
                    let spec = Spec::Weights(WeightFunction::for_graph(parse_list(ws)?, &g)?);
                    solver.can_reach_spec(&c, &spec, &meter)?
                }
                (None, None, Some(t)) => solver.is_t_solvable(&c, *t, &meter)?,
                _ => {
                    return Err(Error::Domain(
                        "give one of --targets, --weights or --t".into(),
                    ))
                }
            };
            Ok(match cli.format.unwrap_or(Format::Text) {
                Format::Json => json(&result),
                Format::Csv => {
                    let moves = result
                        .witness
                        .iter()
                        .flatten()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    let failing = result
                        .failing_target
                        .as_ref()
                        .map(|t| format!("{:?}", t.vertices()))
                        .unwrap_or_default();
                    format!(
                        "solvable,moves,failing_target\n{},{},{}\n",
                        result.solvable,
                        csv_field(&moves),
                        csv_field(&failing)
                    )
                }
                Format::Text => {
                    let mut out = String::from(if result.solvable {
                        "solvable\n"
                    } else {
                        "unsolvable\n"
                    });
                    if let Some(moves) = &result.witness {
                        let list: Vec<String> = moves.iter().map(|m| m.to_string()).collect();
                        writeln!(out, "moves ({}): {}", moves.len(), list.join(", ")).unwrap();
                    }
                    if let Some(ft) = &result.failing_target {
                        writeln!(out, "failing target: {:?}", ft.vertices()).unwrap();
                    }
                    out
                }
            })
        }
        Command::Gamma { graph, weights } => {
            let g = graph.load()?;
            let w = WeightFunction::for_graph(parse_list(weights)?, &g)?;
            let r = Exact::new(&g).weighted_cover_number(&w, &meter)?;
            Ok(match cli.format.unwrap_or(Format::Text) {
                Format::Json => json(&r),
                Format::Csv => format!(
                    "value,witness_config\n{},{}\n",
                    r.value,
                    csv_field(&r.witness_config.map(|c| c.to_string()).unwrap_or_default())
                ),
                Format::Text => match r.witness_config {
                    Some(c) => format!("{} (witness {c} fails)\n", r.value),
                    None => format!("{}\n", r.value),
                },
            })
        }
        Command::Audit {
            graph,
            t_range,
            n_max,
        } => {
            let g = graph.load()?;
            let range = match t_range {
                Some(s) => parse_range(s)?,
                None => 1..=g.n(),
            };
            let oracle = Oracle::new(budget);
            let verdicts = match (graph.family, graph.member_index(), &graph.prices) {
                (Some(family), Some(n), None) => audit::audit_family(
                    &oracle,
                    family,
                    n,
                    range,
                    *n_max,
                    audit::default_tolerance(),
                )?,
                _ => audit::audit_graph(&oracle, &g, range),
            };
            Ok(render_verdicts(
                &verdicts,
                cli.format.unwrap_or(Format::Json),
            ))
        }
        Command::Sequence { graph, t, n_max } => {
            let oracle = Oracle::new(budget);
            let series = match (graph.family, t, &graph.graph) {
                (Some(family), Some(t), None) => {
                    if graph.prices.is_some() {
                        return Err(Error::Domain(
                            "family sequences use the standard price".into(),
                        ));
                    }
                    audit::alpha_sequence(&oracle, family, *t, *n_max)?
                }
                _ => audit::rho_series(&oracle, &graph.load()?)?,
            };
            Ok(render_series(&series, cli.format.unwrap_or(Format::Csv)))
        }
    }
}

fn render_verdicts(verdicts: &[ClaimVerdict], format: Format) -> String {
    let show =
        |v: &Option<audit::ClaimValue>| v.as_ref().map(|v| v.to_string()).unwrap_or_default();
    match format {
        Format::Json => json(&verdicts),
        Format::Csv => {
            let mut out = String::from("claim,verdict,paper_value,computed_value,note\n");
            for v in verdicts {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_field(&v.claim),
                    v.verdict,
                    csv_field(&show(&v.paper_value)),
                    csv_field(&show(&v.computed_value)),
                    csv_field(v.note.as_deref().unwrap_or(""))
                )
                .unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for v in verdicts {
                write!(
                    out,
                    "{:<18} {}  claimed: {}  computed: {}",
                    v.verdict.to_string(),
                    v.claim,
                    show(&v.paper_value),
                    show(&v.computed_value)
                )
                .unwrap();
                if let Some(n) = &v.note {
                    write!(out, "  ({n})").unwrap();
                }
                out.push('\n');
            }
            out
        }
    }
}

fn render_series(series: &RatioSeries, format: Format) -> String {
    match format {
        Format::Json => json(series),
        Format::Csv | Format::Text => {
            let sep = if format == Format::Csv { "," } else { "  " };
            let mut out = ["index", "t", "numerator", "denominator", "value", "source"].join(sep);
            out.push('\n');
            for e in &series.entries {
                let source = serde_json::to_value(e.source).expect("source serializes");
                let row = [
                    e.index.to_string(),
                    e.t.to_string(),
                    e.numerator.to_string(),
                    e.denominator.to_string(),
                    e.value.to_string(),
                    source.as_str().unwrap_or_default().to_string(),
                ];
                out.push_str(&row.join(sep));
                out.push('\n');
            }
            out
        }
    }
}
