//! `csf`: compute, verify and scan chromatic symmetric functions.
//!
//! Reports are JSON Lines on stdout (one record per line, a summary object
//! last) or CSV with the summary on stderr. Exit codes: 0 success, 1
//! mismatch or counterexample, 2 usage or parse error, 3 resource guard.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use csf_core::families::{
    default_grid, expand_grid, family, verify_spec, ComputeOutput, FamilySpec,
};
use csf_core::graphkit::{Graph, GraphJson};
use csf_core::oracle::{positivity_scan, ApMode, Engine, Oracle, ScanItem};
use csf_core::suites::{ap_suite, convolution_suite, f_weight_suite, triple_deletion_suite};
use csf_core::{Error, SymFuncE};

#[derive(Parser, Debug)]
#[command(
    name = "csf",
    version,
    about = "Exact chromatic symmetric functions of graphs"
)]
struct Cli {
    /// Worker threads for parallel scans (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Directory for the persistent oracle cache
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Oracle expansion: subsets, grouped or auto
    #[arg(long, global = true, default_value = "auto")]
    oracle_engine: Engine,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    Formula,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    TripleDeletion,
    ApAdd,
    ApRemove,
    FWeights,
    Convolution,
}

impl Check {
    fn from_family(name: &str) -> Option<Check> {
        Check::from_str(name, true).ok()
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print X_G for a family spec or a graph file
    Compute {
        /// Family spec, e.g. kpc:a=4,b=2,c=4
        #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
        family: Option<String>,
        /// Graph JSON file: {"n": 3, "edges": [[0,1],[1,2]]}
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Formula (default for families with one) or oracle
        #[arg(long, value_enum)]
        engine: Option<Source>,
    },
    /// Compare a family's formula with the oracle over a parameter grid
    Verify {
        /// Family name, or an identity check such as triple-deletion
        #[arg(long)]
        family: String,
        /// Grid such as "m=2..4,g=0..2,H=K1|C4"; defaults to every tuple up to --max-order
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 10)]
        max_order: usize,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Scan graphs for e-positivity and report counterexamples
    Positivity {
        /// Family whose default grid is scanned (hatchain, kayak, ...)
        #[arg(long, required_unless_present = "graph")]
        family: Option<String>,
        /// Graph JSON files to scan instead of a family
        #[arg(long, num_args = 1..)]
        graph: Vec<PathBuf>,
        #[arg(long, default_value_t = 10)]
        max_order: usize,
    },
    /// Run a seeded identity suite
    Identity {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        random: RandomArgs,
    },
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct RandomArgs {
    /// Random instances for triple-deletion and AP checks
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Largest graph order for random instances
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest n for the f-weight and convolution checks
    #[arg(long, default_value_t = 12)]
    max_n: usize,
}

/// Ways a command can end other than success.
enum Failure {
    /// Mismatch or counterexample; the report is already written.
    Found,
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Core(Error::Io(io::Error::other(e)))
    }
}

type Outcome = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceGuard(_) => 3,
        Error::IdentityFailed(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot start {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Found) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let mut oracle = Oracle::new(cli.oracle_engine);
    if let Some(dir) = &cli.cache_dir {
        oracle = oracle.with_cache_dir(dir)?;
    }
    let mut out = Report::new(cli.format);
    match &cli.command {
        Command::Compute {
            family,
            graph,
            engine,
        } => compute(
            &oracle,
            &mut out,
            family.as_deref(),
            graph.as_deref(),
            *engine,
        ),
        Command::Verify {
            family,
            grid,
            max_order,
            random,
        } => match Check::from_family(family) {
            Some(check) => identity(&oracle, &mut out, check, random),
            None => verify(&oracle, &mut out, family, grid.as_deref(), *max_order),
        },
        Command::Positivity {
            family,
            graph,
            max_order,
        } => positivity(&oracle, &mut out, family.as_deref(), graph, *max_order),
        Command::Identity { check, random } => identity(&oracle, &mut out, *check, random),
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let parsed: GraphJson = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parsed.to_graph()
}

fn compute(
    oracle: &Oracle,
    out: &mut Report,
    family: Option<&str>,
    graph: Option<&Path>,
    engine: Option<Source>,
) -> Outcome {
    let output = match (family, graph) {
        (Some(text), _) => {
            let spec: FamilySpec = text.parse()?;
            let has_formula = family_has_formula(&spec.family)?;
            match engine.unwrap_or(if has_formula {
                Source::Formula
            } else {
                Source::Oracle
            }) {
                Source::Formula => {
                    let eval = spec.evaluate(oracle)?;
                    ComputeOutput {
                        spec: spec.to_string(),
                        engine: "formula".into(),
                        csf: eval.sf,
                        composition_terms: eval.expansion.map(|x| x.composition_terms()),
                    }
                }
                Source::Oracle => ComputeOutput {
                    spec: spec.to_string(),
                    engine: "oracle".into(),
                    csf: oracle_sf(oracle, &spec.graph()?)?,
                    composition_terms: None,
                },
            }
        }
        (None, Some(path)) => {
            if engine == Some(Source::Formula) {
                return Err(Error::Parse(
                    "graph files have no formula; use --engine oracle".into(),
                )
                .into());
            }
            ComputeOutput {
                spec: path.display().to_string(),
                engine: "oracle".into(),
                csf: oracle_sf(oracle, &read_graph(path)?)?,
                composition_terms: None,
            }
        }
        (None, None) => unreachable!("clap requires --family or --graph"),
    };
    match out.format {
        Format::Json => out.row(&output)?,
        Format::Csv => {
            for t in output.csf.term_reprs() {
                out.row(&json!({ "partition": t.partition.to_string(), "coeff": t.coeff }))?;
            }
        }
    }
    out.finish(None)
}

fn family_has_formula(name: &str) -> Result<bool, Error> {
    Ok(family(name)?.has_formula())
}

fn oracle_sf(oracle: &Oracle, g: &Graph) -> Result<SymFuncE, Error> {
    Ok(oracle.csf_exact(g)?.to_scalar())
}

#[derive(Serialize)]
struct Skipped {
    spec: String,
    skipped: String,
}

fn verify(
    oracle: &Oracle,
    out: &mut Report,
    name: &str,
    grid: Option<&str>,
    max_order: usize,
) -> Outcome {
    let def = family(name)?;
    if !def.has_formula() {
        return Err(Error::Parse(format!(
            "family {name} has no formula to verify; try `csf positivity --family {name}`"
        ))
        .into());
    }
    let mut specs = match grid {
        Some(g) => expand_grid(name, g)?,
        None => default_grid(name, max_order)?,
    };
    specs.sort_by_cached_key(|s| s.to_string());
    specs.dedup();
    let results: Vec<_> = specs
        .par_iter()
        .map(|s| match verify_spec(s, oracle) {
            Ok(r) => Ok(Ok(r)),
            Err(e @ (Error::InvalidParameter(_) | Error::InvalidGraph(_))) => Ok(Err(Skipped {
                spec: s.to_string(),
                skipped: e.to_string(),
            })),
            Err(e) => Err(e),
        })
        .collect::<Result<_, Error>>()?;
    let (mut passed, mut failed, mut skipped, mut negative) = (0usize, 0usize, 0usize, 0usize);
    for r in &results {
        match r {
            Ok(rec) => {
                if rec.pass {
                    passed += 1;
                } else {
                    failed += 1;
                }
                if def.positive_expansion && rec.expansion_nonnegative == Some(false) {
                    negative += 1;
                }
                out.row(rec)?;
            }
            Err(skip) => {
                skipped += 1;
                out.row(skip)?;
            }
        }
    }
    out.finish(Some(json!({
        "command": "verify",
        "family": name,
        "total": results.len(),
        "passed": passed,
        "failed": failed,
        "skipped": skipped,
        "negative_expansions": negative,
    })))?;
    if failed + negative > 0 {
        return Err(Failure::Found);
    }
    Ok(())
}

fn positivity(
    oracle: &Oracle,
    out: &mut Report,
    name: Option<&str>,
    graphs: &[PathBuf],
    max_order: usize,
) -> Outcome {
    let mut items = Vec::new();
    if let Some(name) = name {
        for spec in default_grid(name, max_order)? {
            items.push(ScanItem::new(spec.to_string(), spec.graph()?));
        }
    }
    for path in graphs {
        items.push(ScanItem::new(path.display().to_string(), read_graph(path)?));
    }
    items.sort_by(|a, b| a.label.cmp(&b.label));
    let outcome = positivity_scan(oracle, &items)?;
    for r in &outcome.records {
        out.row(r)?;
    }
    let labels: Vec<&str> = outcome
        .counterexamples
        .iter()
        .map(|c| c.label.as_str())
        .collect();
    out.finish(Some(json!({
        "command": "positivity",
        "family": name,
        "scanned": outcome.records.len(),
        "counterexamples": labels,
    })))?;
    if outcome.counterexamples.is_empty() {
        Ok(())
    } else {
        Err(Failure::Found)
    }
}

fn identity(oracle: &Oracle, out: &mut Report, check: Check, args: &RandomArgs) -> Outcome {
    let rows: Vec<Value> = match check {
        Check::TripleDeletion => to_values(triple_deletion_suite(
            oracle,
            args.trials,
            args.order,
            args.seed,
        )?)?,
        Check::ApAdd => to_values(ap_suite(
            oracle,
            args.trials,
            args.order,
            ApMode::Add,
            args.seed,
        )?)?,
        Check::ApRemove => to_values(ap_suite(
            oracle,
            args.trials,
            args.order,
            ApMode::Remove,
            args.seed,
        )?)?,
        Check::FWeights => to_values(f_weight_suite(args.max_n, args.max_n)?)?,
        Check::Convolution => to_values(convolution_suite(args.max_n)?)?,
    };
    let failed = rows
        .iter()
        .filter(|r| r["pass"] != Value::Bool(true))
        .count();
    for r in &rows {
        out.row(r)?;
    }
    let name = check.to_possible_value().expect("no skipped variants");
    out.finish(Some(json!({
        "command": "identity",
        "check": name.get_name(),
        "total": rows.len(),
        "passed": rows.len() - failed,
        "failed": failed,
    })))?;
    if failed > 0 {
        return Err(Failure::Found);
    }
    Ok(())
}

fn to_values<T: Serialize>(rows: Vec<T>) -> Result<Vec<Value>, Error> {
    rows.into_iter()
        .map(|r| serde_json::to_value(r).map_err(Error::from))
        .collect()
}

/// Streams rows as JSON Lines, or buffers them for CSV so the header can
/// cover every column that appears.
struct Report {
    format: Format,
    json: BufWriter<io::Stdout>,
    rows: Vec<Map<String, Value>>,
}

impl Report {
    fn new(format: Format) -> Self {
        Report {
            format,
            json: BufWriter::new(io::stdout()),
            rows: Vec::new(),
        }
    }

    fn row<T: Serialize + ?Sized>(&mut self, row: &T) -> Outcome {
        match self.format {
            Format::Json => {
                serde_json::to_writer(&mut self.json, row).map_err(Error::from)?;
                self.json.write_all(b"\n")?;
            }
            Format::Csv => match serde_json::to_value(row).map_err(Error::from)? {
                Value::Object(map) => self.rows.push(map),
                _ => return Err(Error::Parse("CSV rows must be objects".into()).into()),
            },
        }
        Ok(())
    }

    fn finish(&mut self, summary: Option<Value>) -> Outcome {
        match self.format {
            Format::Json => {
                if let Some(s) = summary {
                    self.row(&json!({ "summary": s }))?;
                }
                self.json.flush()?;
            }
            Format::Csv => {
                let mut header: Vec<&String> = Vec::new();
                for row in &self.rows {
                    for k in row.keys() {
                        if !header.contains(&k) {
                            header.push(k);
                        }
                    }
                }
                let mut w = csv::Writer::from_writer(io::stdout());
                if !header.is_empty() {
                    w.write_record(&header)?;
                }
                for row in &self.rows {
                    w.write_record(header.iter().map(|k| cell(row.get(*k))))?;
                }
                w.flush()?;
                if let Some(s) = summary {
                    eprintln!("{}", json!({ "summary": s }));
                }
            }
        }
        Ok(())
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}
