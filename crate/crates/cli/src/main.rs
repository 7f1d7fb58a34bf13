//! `toric`: toric bases of graphs from the command line.
//!
//! Exit codes: 0 when everything passes, 1 when an experiment assertion or an
//! engine comparison fails, 2 on input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use toric_core::budget::Budget;
use toric_core::experiments::{experiment_ids, reproduce_all};
use toric_core::families::FamilySpec;
use toric_core::nonpointed::{emit_nonpointed, first_primes, nonpointed_report};
use toric_core::oracle::VectorConfig;
use toric_core::report::{
    compute_bases, emit_run, emit_verdicts, BasisKind, EngineChoice, Format, Input, RunOptions,
};
use toric_core::Graph;

#[derive(Parser)]
#[command(name = "toric", version, about = "Circuits, Markov, universal Gröbner and Graver bases of toric ideals of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a family member as an edge list (or a matrix for the line configuration).
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute bases of a graph or matrix.
    Bases {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated subset of circuits, markov, ugb, graver.
        #[arg(long, value_delimiter = ',', default_value = "circuits,markov,ugb,graver")]
        kinds: Vec<String>,
        #[arg(long, value_enum, default_value_t = EngineArg::Graph)]
        engine: EngineArg,
        #[command(flatten)]
        output: OutputArgs,
        /// Include wall-clock timings (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Run named experiments on the extremal families (all when none given).
    Reproduce {
        ids: Vec<String>,
        /// List experiment ids and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Markov basis of the configuration {1, -1} from pairwise coprime integers.
    Nonpointed {
        /// Comma-separated pairwise coprime integers greater than 1.
        #[arg(long, value_delimiter = ',', conflicts_with = "count")]
        primes: Vec<u64>,
        /// Use the first COUNT primes instead.
        #[arg(long)]
        count: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run both engines on a graph and compare every basis.
    Compare {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Ladder,
    TriangleTree,
    Complete,
    Bowtie,
    NonpointedLine,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(short = 'n', long = "n")]
    n: Option<usize>,
    #[arg(short = 'r', long = "r", default_value_t = 1)]
    r: usize,
    /// Subdivide every edge into K pieces.
    #[arg(short, long = "subdivide")]
    k: Option<usize>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<Option<FamilySpec>> {
        let Some(name) = self.family else { return Ok(None) };
        let n = || self.n.context("this family needs -n");
        let base = match name {
            FamilyName::Ladder => FamilySpec::Ladder { n: n()? },
            FamilyName::TriangleTree => FamilySpec::TriangleTree { n: self.n.unwrap_or(3), r: self.r },
            FamilyName::Complete => FamilySpec::Complete { n: n()? },
            FamilyName::Bowtie => FamilySpec::Bowtie,
            FamilyName::NonpointedLine => FamilySpec::NonpointedLine,
        };
        let spec = match self.k {
            Some(k) => FamilySpec::Subdivision { base: Box::new(base), k },
            None => base,
        };
        spec.validate()?;
        Ok(Some(spec))
    }
}

#[derive(Args)]
struct SourceArgs {
    /// Edge-list file: `n m`, then one `u v` line per edge.
    #[arg(long, conflicts_with_all = ["matrix", "family"])]
    input: Option<PathBuf>,
    /// Integer matrix file: `rows cols`, then the entries.
    #[arg(long, conflicts_with = "family")]
    matrix: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    degree_cap: Option<usize>,
}

enum Source {
    Graph(Graph),
    Matrix(VectorConfig),
}

impl SourceArgs {
    fn load(&self) -> Result<Source> {
        let read = |p: &PathBuf| fs::read_to_string(p).with_context(|| format!("reading {}", p.display()));
        if let Some(p) = &self.input {
            return Ok(Source::Graph(Graph::parse_edge_list(&read(p)?)?));
        }
        if let Some(p) = &self.matrix {
            return Ok(Source::Matrix(VectorConfig::parse(&read(p)?)?));
        }
        match self.family.spec()? {
            Some(FamilySpec::NonpointedLine) => Ok(Source::Matrix(VectorConfig::new(vec![vec![1, -1]])?)),
            Some(spec) => Ok(Source::Graph(spec.build()?)),
            None => bail!("give one of --input, --matrix or --family"),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn write(&self, doc: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, doc).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{doc}");
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Graph,
    Oracle,
    Both,
}

impl From<EngineArg> for EngineChoice {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Graph => EngineChoice::Graph,
            EngineArg::Oracle => EngineChoice::Oracle,
            EngineArg::Both => EngineChoice::Both,
        }
    }
}

fn run_options(source: &SourceArgs, record_timing: bool) -> RunOptions {
    RunOptions { degree_cap: source.degree_cap, budget: Budget::unlimited(), record_timing }
}

/// `Ok(true)` when everything that was checked passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate { family, out } => {
            let spec = family.spec()?.context("--family is required")?;
            let output = OutputArgs { format: FormatArg::Text, out };
            output.write(&spec.emit()?)?;
            Ok(true)
        }
        Command::Bases { source, kinds, engine, output, timing } => {
            let kinds = kinds.iter().map(|k| k.parse()).collect::<Result<Vec<BasisKind>, _>>()?;
            let mut engine = EngineChoice::from(engine);
            let loaded = source.load()?;
            let input = match &loaded {
                Source::Graph(g) => Input::Graph(g),
                Source::Matrix(a) => {
                    // matrices only go to the oracle
                    if engine == EngineChoice::Both {
                        engine = EngineChoice::Oracle;
                    }
                    Input::Matrix(a)
                }
            };
            let run = compute_bases(input, &kinds, engine, &run_options(&source, timing))?;
            output.write(&emit_run(&run, output.format.into()))?;
            Ok(run.engines_agree())
        }
        Command::Reproduce { ids, list, output } => {
            if list {
                output.write(&(experiment_ids().join("\n") + "\n"))?;
                return Ok(true);
            }
            let ids: Vec<&str> = if ids.is_empty() { experiment_ids() } else { ids.iter().map(String::as_str).collect() };
            let verdicts = reproduce_all(&ids)?;
            output.write(&emit_verdicts(&verdicts, output.format.into()))?;
            Ok(verdicts.iter().all(|v| v.passed()))
        }
        Command::Nonpointed { primes, count, output } => {
            let q = match count {
                Some(s) => first_primes(s),
                None if primes.is_empty() => first_primes(3),
                None => primes,
            };
            let report = nonpointed_report(&q)?;
            output.write(&emit_nonpointed(&report, output.format.into()))?;
            Ok(report.certificate.is_markov())
        }
        Command::Compare { source, output } => {
            let Source::Graph(g) = source.load()? else {
                bail!("compare needs a graph; matrix inputs only run on the oracle");
            };
            let run = compute_bases(Input::Graph(&g), &BasisKind::ALL, EngineChoice::Both, &run_options(&source, false))?;
            output.write(&emit_run(&run, output.format.into()))?;
            Ok(run.engines_agree())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
