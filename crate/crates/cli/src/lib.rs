//! Command-line front end: `trace`, `identify`, `theorems` and `list`.
//!
//! Exit codes: 0 on success, 1 when the theorem suite fails, 2 on usage or
//! configuration errors. Identification verdicts are data, never errors.

pub mod config;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use idlab_core::identification::{identify_class, transformation_trace, ClassExperiment, TraceStep};
use idlab_core::registry::{self, SCIENTISTS, STRATEGIES, UNIVERSES};
use idlab_core::schemas::SemanticVerdict;
use idlab_core::scientists::SharedScientist;
use idlab_core::theorems::{run_theorem_suite, SuiteOptions};
use idlab_core::{make_fate, LanguageFamily};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::config::{config_err, parse_scientist, ExperimentConfig, Format, Resolved};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Parser)]
#[command(name = "idlab", version, about = "Scientists identifying languages in texts")]
pub struct Cli {
    /// Experiment config (TOML); flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub horizon: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit one record per step of a fate with hypothesis and schema flags.
    Trace {
        /// Scientist, e.g. `memorizer` or `dumb_visionary(evens)`.
        #[arg(long)]
        scientist: Option<String>,
        /// Language the fate lists: a built-in name or a set literal.
        #[arg(long)]
        language: Option<String>,
        /// Text strategy label, e.g. `padded(0.25)`.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Run a class-identification experiment and print the verdict table.
    Identify {
        #[arg(long)]
        scientist: Option<String>,
    },
    /// Run the novelty/transformativeness theorem suite.
    Theorems {
        #[arg(long)]
        trials: Option<usize>,
    },
    /// List registered universes, specials, scientists and strategies.
    List,
}

/// Extension points for embedding callers and tests.
#[derive(Default, Clone)]
pub struct Hooks {
    /// Extra scientists the theorem suite treats as set-driven.
    pub extra_set_driven: Vec<SharedScientist>,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, out, err, &Hooks::default())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, hooks: &Hooks) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, out, err, hooks) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "idlab: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write, hooks: &Hooks) -> Result<i32, CliError> {
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(h) = cli.horizon {
        config.horizon = h;
    }
    if let Some(f) = cli.format {
        config.format = Some(f);
    }
    match cli.command {
        Command::Trace { scientist, language, strategy } => {
            if let Some(s) = scientist {
                config.scientist = parse_scientist(&s).map_err(config_err)?;
            }
            if let Some(l) = language {
                config.text.language = l;
            }
            if let Some(s) = strategy {
                config.text.strategy = s;
            }
            cmd_trace(&config.resolve()?, out)
        }
        Command::Identify { scientist } => {
            if let Some(s) = scientist {
                config.scientist = parse_scientist(&s).map_err(config_err)?;
            }
            cmd_identify(&config.resolve()?, out, err)
        }
        Command::Theorems { trials } => {
            if let Some(t) = trials {
                config.theorems.trials = Some(t);
            }
            let resolved = config.resolve()?;
            if resolved.trials() == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            cmd_theorems(&resolved, out, hooks)
        }
        Command::List => cmd_list(&config.resolve()?.family, out),
    }
}

fn flag(b: Option<bool>) -> Value {
    b.map_or(Value::Null, |b| Value::from(u8::from(b)))
}

fn semantic(v: Option<SemanticVerdict>) -> Value {
    match v {
        None => Value::Null,
        Some(SemanticVerdict::Holds) => Value::from(1),
        Some(SemanticVerdict::Fails) => Value::from(0),
        Some(SemanticVerdict::Indeterminate) => Value::from("indeterminate"),
    }
}

/// JSON object for one trace step. Hypothesis indices are emitted as raw
/// naturals plus, when in the finite-set tail, the decoded set literal.
pub fn trace_record(family: &LanguageFamily, step: &TraceStep) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("step".into(), Value::from(step.step));
    m.insert("datum".into(), Value::from(family.universe().render(step.datum)));
    let raw: Value = serde_json::from_str(&step.hypothesis.to_string()).expect("digits parse as a JSON number");
    m.insert("hyp_index".into(), raw);
    m.insert(
        "hyp_set".into(),
        family.tail_set(&step.hypothesis).map_or(Value::Null, |s| Value::from(s.literal(family.universe()))),
    );
    m.insert("hyp_changed".into(), Value::from(step.hyp_changed));
    m.insert("novel".into(), flag(step.novel));
    m.insert("transformative".into(), flag(step.transformative));
    m.insert("semantically_transformative".into(), semantic(step.semantically_transformative));
    m
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn cmd_trace(r: &Resolved, out: &mut dyn Write) -> Result<i32, CliError> {
    let scientist = r.config.scientist.build(&r.family).map_err(config_err)?;
    let fate = make_fate(&r.text_language()?, r.text_strategy()?, r.config.seed).map_err(config_err)?;
    let trace = transformation_trace(&*scientist, &fate, r.config.horizon);
    let family = scientist.family();
    let records: Vec<Map<String, Value>> = trace.steps.iter().map(|s| trace_record(family, s)).collect();
    match r.config.format.unwrap_or(Format::Jsonl) {
        Format::Jsonl => {
            for rec in &records {
                writeln!(out, "{}", Value::Object(rec.clone()))?;
            }
        }
        Format::Csv => {
            if let Some(first) = records.first() {
                writeln!(out, "{}", first.keys().cloned().collect::<Vec<_>>().join(","))?;
            }
            for rec in &records {
                let cells: Vec<String> = rec.values().map(cell).map(|c| csv_escape(&c)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Format::Pretty => {
            writeln!(out, "scientist: {}", trace.scientist)?;
            writeln!(out, "fate: {}", fate.label())?;
            writeln!(
                out,
                "{:>5}  {:>6}  {:>24}  {:>12}  {:>7}  {:>5}  {:>5}  {:>5}",
                "step", "datum", "hyp_index", "hyp_set", "changed", "novel", "trans", "sem"
            )?;
            for rec in &records {
                let v: Vec<String> = rec.values().map(cell).collect();
                writeln!(
                    out,
                    "{:>5}  {:>6}  {:>24}  {:>12}  {:>7}  {:>5}  {:>5}  {:>5}",
                    v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]
                )?;
            }
        }
    }
    Ok(0)
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn cmd_identify(r: &Resolved, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let scientist = r.config.scientist.build(&r.family).map_err(config_err)?;
    let experiment = ClassExperiment {
        languages: r.class_languages()?,
        strategies: r.class_strategies()?,
        seeds: r.class_seeds(),
        horizon: r.config.horizon,
    };
    let table = identify_class(&*scientist, &experiment).map_err(config_err)?;
    let summary = table.summary();
    match r.config.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            table.write_csv(&mut *out).map_err(config_err)?;
            writeln!(err, "{}: {summary}", table.scientist)?;
        }
        Format::Jsonl => {
            for row in &table.rows {
                writeln!(out, "{}", serde_json::to_string(row).expect("row serializes"))?;
            }
            let s = serde_json::json!({ "scientist": table.scientist, "summary": summary.to_string() });
            writeln!(out, "{s}")?;
        }
        Format::Pretty => {
            writeln!(out, "scientist: {}", table.scientist)?;
            writeln!(
                out,
                "{:<16} {:<22} {:>6} {:>7}  {:<34} {:>11}",
                "language", "strategy", "seed", "horizon", "verdict", "last_change"
            )?;
            for row in &table.rows {
                writeln!(
                    out,
                    "{:<16} {:<22} {:>6} {:>7}  {:<34} {:>11}",
                    row.language,
                    row.strategy,
                    row.seed,
                    row.horizon,
                    row.verdict.to_string(),
                    row.last_change_step.map_or("-".to_string(), |c| c.to_string())
                )?;
            }
            writeln!(out, "{summary}")?;
        }
    }
    Ok(0)
}

pub fn cmd_theorems(r: &Resolved, out: &mut dyn Write, hooks: &Hooks) -> Result<i32, CliError> {
    let report = run_theorem_suite(&SuiteOptions {
        seed: r.config.seed,
        trials: r.trials(),
        extra_set_driven: hooks.extra_set_driven.clone(),
    });
    match r.config.format.unwrap_or(Format::Pretty) {
        Format::Jsonl | Format::Csv => {
            writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
        }
        Format::Pretty => {
            for item in &report.items {
                let tag = if item.passed { "PASS" } else { "FAIL" };
                writeln!(out, "[{tag}] {}: {}", item.name, item.detail)?;
            }
            writeln!(
                out,
                "{}/{} passed (seed {}, {} trials)",
                report.passed_count(),
                report.items.len(),
                report.seed,
                report.trials
            )?;
        }
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

pub fn cmd_list(family: &LanguageFamily, out: &mut dyn Write) -> Result<i32, CliError> {
    writeln!(out, "universes:")?;
    for (name, about) in UNIVERSES {
        writeln!(out, "  {name:<22} {about}")?;
    }
    writeln!(out, "special languages:")?;
    for name in registry::builtin_specials() {
        writeln!(out, "  {name}")?;
    }
    writeln!(out, "  {{a,b,...}}              finite set literal")?;
    writeln!(out, "family (current):")?;
    for (i, s) in family.specials().iter().enumerate() {
        writeln!(out, "  {i:<22} {}", s.name(family.universe()))?;
    }
    writeln!(out, "  {:<22} finite set with set-code n", format!("{}+n", family.specials().len()))?;
    writeln!(out, "scientists:")?;
    for (name, about) in SCIENTISTS {
        writeln!(out, "  {name:<22} {about}")?;
    }
    writeln!(out, "strategies:")?;
    for (name, about) in STRATEGIES {
        writeln!(out, "  {name:<22} {about}")?;
    }
    Ok(0)
}
