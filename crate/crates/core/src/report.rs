//! Basis reports from either engine, experiment verdicts, and their
//! JSON / CSV / text forms.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::binomial::Binomial;
use crate::budget::Budget;
use crate::enumerate::{
    enumerate_circuit_walks, enumerate_graver_walks, enumerate_markov_walks, enumerate_ugb_walks,
    WalkBasis,
};
use crate::error::{Result, ToricError};
use crate::graph::Graph;
use crate::oracle::{self, VectorConfig};

/// Version of the JSON documents written by [`emit_run`] and [`emit_verdicts`].
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Circuits,
    Markov,
    Ugb,
    Graver,
}

impl BasisKind {
    pub const ALL: [BasisKind; 4] = [BasisKind::Circuits, BasisKind::Markov, BasisKind::Ugb, BasisKind::Graver];

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Circuits => "circuits",
            BasisKind::Markov => "markov",
            BasisKind::Ugb => "ugb",
            BasisKind::Graver => "graver",
        }
    }
}

impl FromStr for BasisKind {
    type Err = ToricError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "circuits" | "c" => Ok(BasisKind::Circuits),
            "markov" | "m" => Ok(BasisKind::Markov),
            "ugb" | "u" => Ok(BasisKind::Ugb),
            "graver" | "gr" => Ok(BasisKind::Graver),
            other => Err(ToricError::InvalidParameter(format!("unknown basis kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Graph,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineChoice {
    Graph,
    Oracle,
    Both,
}

impl EngineChoice {
    fn engines(self) -> &'static [Engine] {
        match self {
            EngineChoice::Graph => &[Engine::Graph],
            EngineChoice::Oracle => &[Engine::Oracle],
            EngineChoice::Both => &[Engine::Graph, Engine::Oracle],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisReport {
    pub kind: BasisKind,
    pub engine: Engine,
    /// Canonically sorted.
    pub elements: Vec<Binomial>,
    pub size: usize,
    pub max_degree: u64,
    pub truncated: bool,
    /// Per element, for Markov bases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indispensable: Option<Vec<bool>>,
    /// Only recorded on request, so documents stay byte-stable by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl BasisReport {
    pub fn new(kind: BasisKind, engine: Engine, mut elements: Vec<Binomial>, truncated: bool) -> Self {
        elements.sort();
        BasisReport {
            kind,
            engine,
            size: elements.len(),
            max_degree: elements.iter().map(Binomial::degree).max().unwrap_or(0),
            elements,
            truncated,
            indispensable: None,
            timing_ms: None,
        }
    }

    fn from_walks(kind: BasisKind, walks: &WalkBasis<'_>) -> Self {
        let mut r = BasisReport::new(kind, Engine::Graph, walks.binomials(), walks.truncated);
        if kind == BasisKind::Markov {
            let flags: BTreeMap<&Binomial, bool> = walks
                .elements
                .iter()
                .map(|e| (&e.binomial, e.indispensable.unwrap_or(false)))
                .collect();
            r.indispensable = Some(r.elements.iter().map(|b| flags[b]).collect());
        }
        r
    }

    /// Number of elements per degree.
    pub fn degree_counts(&self) -> BTreeMap<u64, usize> {
        crate::enumerate::degree_histogram(&self.elements)
    }
}

/// What to compute bases of.
#[derive(Debug, Clone, Copy)]
pub enum Input<'a> {
    Graph(&'a Graph),
    Matrix(&'a VectorConfig),
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub degree_cap: Option<usize>,
    pub budget: Budget,
    pub record_timing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Agreement {
    pub kind: BasisKind,
    /// `None` when a truncated report makes the comparison meaningless.
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisRun {
    pub schema_version: u32,
    pub reports: Vec<BasisReport>,
    /// Present for dual-engine runs.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub agreement: Vec<Agreement>,
}

impl BasisRun {
    pub fn report(&self, kind: BasisKind, engine: Engine) -> Option<&BasisReport> {
        self.reports.iter().find(|r| r.kind == kind && r.engine == engine)
    }

    /// False if any dual-engine comparison disagreed.
    pub fn engines_agree(&self) -> bool {
        self.agreement.iter().all(|a| a.agree != Some(false))
    }
}

fn graph_report(g: &Graph, kind: BasisKind, opts: &RunOptions) -> Result<BasisReport> {
    let cap = opts.degree_cap;
    let walks = match kind {
        BasisKind::Circuits => enumerate_circuit_walks(g)?,
        BasisKind::Graver => enumerate_graver_walks(g, cap, &opts.budget)?,
        BasisKind::Ugb => enumerate_ugb_walks(g, cap, &opts.budget)?,
        BasisKind::Markov => enumerate_markov_walks(g, cap, &opts.budget)?,
    };
    Ok(BasisReport::from_walks(kind, &walks))
}

fn oracle_report(a: &VectorConfig, kind: BasisKind, opts: &RunOptions) -> Result<BasisReport> {
    let cap = opts.degree_cap.map(|c| c as u64);
    let make = |vs: &[Vec<i64>], truncated| BasisReport::new(kind, Engine::Oracle, oracle::to_binomials(vs), truncated);
    match kind {
        BasisKind::Circuits => Ok(make(&oracle::circuits(a)?, false)),
        BasisKind::Graver => {
            let gr = oracle::graver(a, cap, &opts.budget)?;
            Ok(make(&gr.elements, gr.truncated))
        }
        BasisKind::Ugb => {
            let gr = oracle::graver(a, cap, &opts.budget)?;
            if !a.is_pointed() {
                // a rank-one lattice gives a principal ideal
                if a.kernel()?.1.len() > 1 {
                    return Err(ToricError::NotPointed);
                }
                return Ok(make(&gr.elements, gr.truncated));
            }
            let mut kept = Vec::new();
            for u in gr.elements {
                if oracle::in_ugb(a, &u)? {
                    kept.push(u);
                }
            }
            Ok(make(&kept, gr.truncated))
        }
        BasisKind::Markov => {
            let mk = oracle::markov_by_fibers(a, &opts.budget)?;
            if !mk.audit_ok {
                return Err(ToricError::Invariant("Markov basis fails the connectivity audit".into()));
            }
            let vectors: Vec<Vec<i64>> = mk.basis.iter().map(|e| e.vector.clone()).collect();
            let mut r = make(&vectors, mk.truncated);
            let flags: BTreeMap<Binomial, bool> =
                mk.basis.iter().map(|e| (oracle::to_binomial(&e.vector), e.indispensable)).collect();
            r.indispensable = Some(r.elements.iter().map(|b| flags[b]).collect());
            Ok(r)
        }
    }
}

fn degree_multiset(r: &BasisReport) -> Vec<u64> {
    r.elements.iter().map(Binomial::degree).collect()
}

/// Markov bases are compared by size and degree multiset, the others as sets.
fn compare(kind: BasisKind, a: &BasisReport, b: &BasisReport) -> Option<bool> {
    if a.truncated || b.truncated {
        return None;
    }
    Some(match kind {
        BasisKind::Markov => degree_multiset(a) == degree_multiset(b),
        _ => a.elements == b.elements,
    })
}

/// Computes the requested bases. Matrix inputs always use the oracle.
pub fn compute_bases(input: Input<'_>, kinds: &[BasisKind], engine: EngineChoice, opts: &RunOptions) -> Result<BasisRun> {
    let engines: &[Engine] = match (input, engine) {
        (Input::Matrix(_), EngineChoice::Graph) => {
            return Err(ToricError::InvalidParameter("matrix inputs need the oracle engine".into()))
        }
        (Input::Matrix(_), _) => &[Engine::Oracle],
        (Input::Graph(_), e) => e.engines(),
    };
    let graph_config = match input {
        Input::Graph(g) if engines.contains(&Engine::Oracle) => Some(VectorConfig::from_graph(g)?),
        _ => None,
    };
    let mut kinds = kinds.to_vec();
    kinds.sort();
    kinds.dedup();
    let mut reports = Vec::new();
    let mut agreement = Vec::new();
    for &kind in &kinds {
        let mut per_engine = Vec::new();
        for &eng in engines {
            let start = Instant::now();
            let mut r = match (eng, input) {
                (Engine::Graph, Input::Graph(g)) => graph_report(g, kind, opts)?,
                (Engine::Oracle, Input::Graph(g)) => {
                    // primitive graph binomials have degree at most |E|, so such a
                    // cap would only make the completion report spurious truncation
                    let mut o = opts.clone();
                    o.degree_cap = o.degree_cap.filter(|&c| c < g.edge_count());
                    oracle_report(graph_config.as_ref().unwrap(), kind, &o)?
                }
                (Engine::Oracle, Input::Matrix(a)) => oracle_report(a, kind, opts)?,
                (Engine::Graph, Input::Matrix(_)) => unreachable!("rejected above"),
            };
            if opts.record_timing {
                r.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            per_engine.push(r);
        }
        if let [a, b] = &per_engine[..] {
            agreement.push(Agreement { kind, agree: compare(kind, a, b) });
        }
        reports.extend(per_engine);
    }
    Ok(BasisRun { schema_version: SCHEMA_VERSION, reports, agreement })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped (budget)")]
    Skipped,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED (budget)",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub expected: String,
    pub computed: String,
    /// Where the expected value comes from (closed form or structural fact).
    pub source: String,
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentVerdict {
    pub id: String,
    pub title: String,
    pub tables: Vec<Table>,
    pub assertions: Vec<Assertion>,
}

impl ExperimentVerdict {
    pub fn new(id: &str, title: &str) -> Self {
        ExperimentVerdict { id: id.into(), title: title.into(), tables: Vec::new(), assertions: Vec::new() }
    }

    /// Records `expected == computed`.
    pub fn check<T: PartialEq + std::fmt::Display>(&mut self, name: &str, expected: T, computed: T, source: &str) {
        let status = Status::of(expected == computed);
        self.push(name, expected.to_string(), computed.to_string(), source, status);
    }

    /// Records a boolean property with a free-form description of both sides.
    pub fn check_that(&mut self, name: &str, expected: &str, computed: &str, ok: bool, source: &str) {
        self.push(name, expected.into(), computed.into(), source, Status::of(ok));
    }

    pub fn skip(&mut self, name: &str, expected: &str, source: &str) {
        self.push(name, expected.into(), "budget exhausted".into(), source, Status::Skipped);
    }

    fn push(&mut self, name: &str, expected: String, computed: String, source: &str, status: Status) {
        self.assertions.push(Assertion { name: name.into(), expected, computed, source: source.into(), status });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| a.status == Status::Fail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = ToricError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            other => Err(ToricError::InvalidParameter(format!("unknown format '{other}'"))),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",") + "\n"
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

pub fn emit_run(run: &BasisRun, format: Format) -> String {
    match format {
        Format::Json => to_json(run),
        Format::Csv => {
            let mut out = String::from("kind,engine,size,max_degree,truncated\n");
            for r in &run.reports {
                out += &csv_line(&[
                    r.kind.name().into(),
                    format!("{:?}", r.engine).to_lowercase(),
                    r.size.to_string(),
                    r.max_degree.to_string(),
                    r.truncated.to_string(),
                ]);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &run.reports {
                let engine = format!("{:?}", r.engine).to_lowercase();
                write!(out, "{} ({engine}): size {}, max degree {}", r.kind.name(), r.size, r.max_degree).unwrap();
                if r.truncated {
                    out.push_str(", truncated");
                }
                if let Some(t) = r.timing_ms {
                    write!(out, ", {t:.1} ms").unwrap();
                }
                out.push('\n');
                for (i, b) in r.elements.iter().enumerate() {
                    let mark = match &r.indispensable {
                        Some(f) if f[i] => "  [indispensable]",
                        _ => "",
                    };
                    writeln!(out, "  {b}{mark}").unwrap();
                }
            }
            for a in &run.agreement {
                let verdict = match a.agree {
                    Some(true) => "agree",
                    Some(false) => "DISAGREE",
                    None => "not compared (truncated)",
                };
                writeln!(out, "engines on {}: {verdict}", a.kind.name()).unwrap();
            }
            out
        }
    }
}

#[derive(Serialize)]
struct VerdictDocument<'a> {
    schema_version: u32,
    experiments: &'a [ExperimentVerdict],
}

pub fn emit_verdicts(verdicts: &[ExperimentVerdict], format: Format) -> String {
    match format {
        Format::Json => to_json(&VerdictDocument { schema_version: SCHEMA_VERSION, experiments: verdicts }),
        Format::Csv => {
            let mut sections = Vec::new();
            for v in verdicts {
                for t in &v.tables {
                    let mut s = csv_line(&t.columns);
                    for row in &t.rows {
                        s += &csv_line(row);
                    }
                    sections.push(s);
                }
            }
            let mut s = String::from("experiment,assertion,expected,computed,status,source\n");
            for v in verdicts {
                for a in &v.assertions {
                    s += &csv_line(&[
                        v.id.clone(),
                        a.name.clone(),
                        a.expected.clone(),
                        a.computed.clone(),
                        a.status.label().to_lowercase(),
                        a.source.clone(),
                    ]);
                }
            }
            sections.push(s);
            sections.join("\n")
        }
        Format::Text => {
            let mut out = String::new();
            for v in verdicts {
                writeln!(out, "== {} ({}): {}", v.id, v.title, if v.passed() { "PASS" } else { "FAIL" }).unwrap();
                for t in &v.tables {
                    writeln!(out, "  {}", t.name).unwrap();
                    writeln!(out, "    {}", t.columns.join("\t")).unwrap();
                    for row in &t.rows {
                        writeln!(out, "    {}", row.join("\t")).unwrap();
                    }
                }
                for a in &v.assertions {
                    writeln!(
                        out,
                        "  {} {}: expected {}, computed {} [{}]",
                        a.status.label(),
                        a.name,
                        a.expected,
                        a.computed,
                        a.source
                    )
                    .unwrap();
                }
            }
            out
        }
    }
}

pub fn emit_json<T: Serialize>(value: &T) -> String {
    to_json(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, ladder_graph};

    #[test]
    fn ladder_dual_engine_sizes() {
        let g = ladder_graph(1).unwrap();
        let run = compute_bases(Input::Graph(&g), &BasisKind::ALL, EngineChoice::Both, &RunOptions::default()).unwrap();
        assert_eq!(run.reports.len(), 8);
        let size = |k| run.report(k, Engine::Graph).unwrap().size;
        assert_eq!(
            (size(BasisKind::Graver), size(BasisKind::Markov), size(BasisKind::Ugb), size(BasisKind::Circuits)),
            (6, 3, 6, 6)
        );
        assert!(run.agreement.iter().all(|a| a.agree == Some(true)));
        assert!(run.engines_agree());
    }

    #[test]
    fn k4_graver_degree_and_matrix_errors() {
        let g = complete_graph(4).unwrap();
        let run = compute_bases(Input::Graph(&g), &[BasisKind::Graver], EngineChoice::Graph, &RunOptions::default()).unwrap();
        assert_eq!(run.reports[0].max_degree, 2);
        let line = VectorConfig::new(vec![vec![1, -1]]).unwrap();
        let err = compute_bases(Input::Matrix(&line), &[BasisKind::Markov], EngineChoice::Oracle, &RunOptions::default());
        assert_eq!(err.unwrap_err(), ToricError::NotPointed);
        assert!(ToricError::NotPointed.to_string().contains("nonpointed"));
        let ok = compute_bases(Input::Matrix(&line), &[BasisKind::Ugb, BasisKind::Graver], EngineChoice::Both, &RunOptions::default()).unwrap();
        assert!(ok.reports.iter().all(|r| r.size == 1 && r.max_degree == 2));
    }

    #[test]
    fn emission_formats() {
        let empty = BasisReport::new(BasisKind::Circuits, Engine::Graph, vec![], false);
        let run = BasisRun { schema_version: SCHEMA_VERSION, reports: vec![empty], agreement: vec![] };
        let js = emit_run(&run, Format::Json);
        assert!(js.contains("\"elements\": []"));
        assert!(js.contains("\"size\": 0"));
        assert!(js.starts_with("{\n  \"schema_version\": 1"));
        assert!(!js.contains("timing"));
        assert_eq!(emit_run(&run, Format::Csv), "kind,engine,size,max_degree,truncated\ncircuits,graph,0,0,false\n");
        let mut v = ExperimentVerdict::new("x", "demo");
        v.check("n", 1, 1, "trivial");
        v.skip("big", "3", "bound");
        assert!(v.passed());
        let text = emit_verdicts(&[v.clone()], Format::Text);
        assert!(text.contains("PASS n: expected 1, computed 1"));
        assert!(text.contains("SKIPPED (budget) big"));
        v.check("m", 1, 2, "trivial");
        assert!(!v.passed());
        assert!(emit_verdicts(&[v], Format::Json).contains("\"status\": \"skipped (budget)\""));
    }
}
