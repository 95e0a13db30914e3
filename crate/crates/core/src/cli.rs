//! The `eulerk` command line.
//!
//! Exit codes: 0 on success, 1 on input errors (syntax, unknown groups, limits,
//! missing values), 2 when a verification suite fails.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::groups::{
    abelian_invariants, build_catalog_group, canonical_name, sylow_decomposition, FiniteGroup,
};
use crate::invariants::{
    chi_k, evaluate_assembled, evaluate_leafwise, rational_euler, BaezDolan, BasisTable,
    BasisValues, Strategy,
};
use crate::limits::Limits;
use crate::posets::{mobius, quotient_poset};
use crate::rational::{Rat, RatJson};
use crate::spaces::{k0_class, parse, SpaceExpr};
use crate::verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "eulerk",
    version,
    about = "Generalized Euler characteristics of spaces glued from classifying spaces of finite groups"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    /// Largest group order that may be constructed (default 36, or EULERK_MAX_ORDER).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_order: Option<u64>,
    /// JSON file of basis values: [{"basis": spec or "*", "value": "num/den"}].
    #[arg(long, global = true)]
    pub values: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalStrategy {
    /// Per-prime projections of δ⁰-combinations, summed.
    Assembly,
    /// The nilpotent-leaf rule applied directly.
    DirectStructural,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a characteristic function on an expression.
    Eval {
        expr: String,
        /// baez-dolan | euler-rational | chi-K=<groupspec> | file=<path>.
        /// Defaults to the --values file when one is given, else baez-dolan.
        #[arg(long = "char")]
        selector: Option<String>,
        #[arg(long, value_enum, default_value_t = EvalStrategy::Assembly)]
        strategy: EvalStrategy,
    },
    /// Decompose an expression in the K₀ basis.
    Class { expr: String },
    /// Describe a group.
    Group { spec: String },
    /// Dump the quotient poset of a group and its Möbius function.
    Mobius { spec: String },
    /// Run a verification suite, or `all` of them.
    Verify { suite: String },
}

/// The characteristic function selected by `--char`.
#[derive(Debug, Clone)]
pub enum Selector {
    BaezDolan,
    EulerRational,
    ChiK(String),
    File(PathBuf),
}

impl Selector {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "baez-dolan" => Ok(Selector::BaezDolan),
            "euler-rational" => Ok(Selector::EulerRational),
            _ => {
                if let Some(spec) = text.strip_prefix("chi-K=") {
                    Ok(Selector::ChiK(spec.to_string()))
                } else if let Some(path) = text.strip_prefix("file=") {
                    Ok(Selector::File(PathBuf::from(path)))
                } else {
                    Err(Error::Value(format!(
                        "unknown characteristic `{text}`; expected baez-dolan, euler-rational, chi-K=<groupspec> or file=<path>"
                    )))
                }
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub expression: String,
    pub strategy: String,
    pub value: RatJson,
    pub per_prime: BTreeMap<String, RatJson>,
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run_from<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn limits_for(cli: &Cli) -> Result<Limits> {
    let limits = Limits::from_env()?;
    Ok(match cli.max_order {
        Some(n) => limits.with_max_order(n as usize),
        None => limits,
    })
}

fn write_json(out: &mut impl Write, value: &impl Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    let limits = limits_for(cli)?;
    match &cli.command {
        Command::Eval {
            expr,
            selector,
            strategy,
        } => {
            let x = parse(expr, &limits)?;
            let selector = match (selector, &cli.values) {
                (Some(s), _) => Selector::parse(s)?,
                (None, Some(path)) => Selector::File(path.clone()),
                (None, None) => Selector::BaezDolan,
            };
            let report = eval(&x, &selector, *strategy, &limits)?;
            match cli.format {
                Format::Plain => {
                    writeln!(out, "{}", report.value_text)?;
                }
                Format::Json => write_json(out, &report.json(&x))?,
            }
            Ok(EXIT_OK)
        }
        Command::Class { expr } => {
            let class = k0_class(&parse(expr, &limits)?)?;
            match cli.format {
                Format::Plain => writeln!(out, "{class}")?,
                Format::Json => write_json(out, &class.to_json())?,
            }
            Ok(EXIT_OK)
        }
        Command::Group { spec } => {
            let g = build_catalog_group(spec, &limits)?;
            describe_group(&g, cli.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Mobius { spec } => {
            let g = build_catalog_group(spec, &limits)?;
            describe_mobius(&g, cli.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut all_passed = true;
            let mut reports = Vec::new();
            for s in suites {
                let report = s
                    .run()
                    .map_err(|e| Error::Value(format!("suite {s} aborted: {e}")));
                let report = match report {
                    Ok(r) => r,
                    Err(e) => {
                        writeln!(out, "{e}")?;
                        return Ok(EXIT_VERIFY);
                    }
                };
                all_passed &= report.passed();
                match cli.format {
                    Format::Plain => writeln!(out, "{report}")?,
                    Format::Json => reports.push(json!({
                        "suite": report.suite.name(),
                        "checks": report.checks,
                        "failures": report.failures,
                        "passed": report.passed(),
                        "notes": report.notes,
                        "counterexample": report.counterexample,
                    })),
                }
            }
            if cli.format == Format::Json {
                write_json(out, &reports)?;
            }
            Ok(if all_passed { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

pub struct Evaluation {
    pub value: Rat,
    pub value_text: String,
    pub strategy: Strategy,
    pub per_prime: BTreeMap<u64, Rat>,
}

impl Evaluation {
    fn json(&self, x: &SpaceExpr) -> EvalReport {
        EvalReport {
            expression: x.to_string(),
            strategy: self.strategy.to_string(),
            value: RatJson::from(&self.value),
            per_prime: self
                .per_prime
                .iter()
                .map(|(p, v)| (p.to_string(), RatJson::from(v)))
                .collect(),
        }
    }
}

fn evaluation(value: Rat, strategy: Strategy, per_prime: BTreeMap<u64, Rat>) -> Evaluation {
    Evaluation {
        value_text: value.to_string(),
        value,
        strategy,
        per_prime,
    }
}

pub fn eval(
    x: &SpaceExpr,
    selector: &Selector,
    strategy: EvalStrategy,
    limits: &Limits,
) -> Result<Evaluation> {
    let with_values = |values: &dyn BasisValues| -> Result<Evaluation> {
        match strategy {
            EvalStrategy::Assembly => {
                let r = evaluate_assembled(values, x, limits)?;
                Ok(evaluation(r.value, r.strategy, r.per_prime))
            }
            EvalStrategy::DirectStructural => Ok(evaluation(
                evaluate_leafwise(values, x)?,
                Strategy::DirectStructural,
                BTreeMap::new(),
            )),
        }
    };
    match selector {
        Selector::BaezDolan => with_values(&BaezDolan),
        Selector::File(path) => with_values(&BasisTable::from_file(path, limits)?),
        Selector::EulerRational => Ok(evaluation(
            rational_euler(x),
            Strategy::DirectStructural,
            BTreeMap::new(),
        )),
        Selector::ChiK(spec) => {
            let k = build_catalog_group(spec, limits)?;
            Ok(evaluation(
                chi_k(&k, x, limits)?,
                Strategy::DirectStructural,
                BTreeMap::new(),
            ))
        }
    }
}

fn describe_group(g: &FiniteGroup, format: Format, out: &mut impl Write) -> Result<()> {
    let sylow = sylow_decomposition(g);
    let parts: BTreeMap<String, String> = sylow
        .subgroups()
        .iter()
        .map(|(p, s)| (p.to_string(), canonical_name(s)))
        .collect();
    let mut orders = g.element_orders().to_vec();
    orders.sort_unstable();
    match format {
        Format::Plain => {
            writeln!(out, "spec: {}", g.name())?;
            writeln!(out, "order: {}", g.order())?;
            writeln!(out, "canonical: {}", canonical_name(g))?;
            writeln!(out, "abelian: {}", g.is_abelian())?;
            if let Some(inv) = abelian_invariants(g) {
                let inv: Vec<String> = inv.iter().map(|d| d.to_string()).collect();
                writeln!(out, "invariant factors: [{}]", inv.join(", "))?;
            }
            writeln!(out, "nilpotent: {}", sylow.is_nilpotent())?;
            for (p, name) in &parts {
                writeln!(out, "sylow {p}: {name}")?;
            }
            let orders: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
            writeln!(out, "element orders: {}", orders.join(" "))?;
        }
        Format::Json => write_json(
            out,
            &json!({
                "spec": g.name(),
                "order": g.order(),
                "canonical": canonical_name(g),
                "abelian": g.is_abelian(),
                "invariant_factors": abelian_invariants(g),
                "nilpotent": sylow.is_nilpotent(),
                "sylow": parts,
                "element_orders": orders,
            }),
        )?,
    }
    Ok(())
}

fn describe_mobius(g: &FiniteGroup, format: Format, out: &mut impl Write) -> Result<()> {
    let poset = quotient_poset(g);
    let mu = mobius(&poset);
    let targets: Vec<Arc<FiniteGroup>> = (0..poset.len())
        .map(|i| Arc::new(poset.target(i)))
        .collect();
    match format {
        Format::Plain => {
            writeln!(out, "{} surjections out of {}", poset.len(), g.name())?;
            for (i, t) in targets.iter().enumerate() {
                writeln!(
                    out,
                    "{i}: kernel order {}, target {}, mu(top, {i}) = {}",
                    poset.kernel(i).order(),
                    canonical_name(t),
                    mu.mu(poset.top(), i)
                )?;
            }
        }
        Format::Json => {
            let nodes: Vec<_> = targets
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    json!({
                        "index": i,
                        "kernel": poset.kernel(i).elements(),
                        "target": canonical_name(t),
                        "below": (0..poset.len()).filter(|&s| s != i && poset.leq(s, i)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            write_json(
                out,
                &json!({ "group": g.name(), "nodes": nodes, "mu": mu.matrix() }),
            )?;
        }
    }
    Ok(())
}
