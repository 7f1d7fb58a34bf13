//! Reproducible experiments on the extremal families. Every expected value
//! comes from a closed form in [`crate::families`] or from a structural fact,
//! and instances that exceed their time budget are reported as skipped.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::binomial::Binomial;
use crate::budget::Budget;
use crate::classify::{is_indispensable_walk, is_minimal_walk, is_mixed, is_primitive_subgraph};
use crate::cycles::euler_trail;
use crate::enumerate::enumerate_circuit_walks;
use crate::error::{Result, ToricError};
use crate::families::{
    bowtie_graph, closed_walk_degree, complete_graph, expected_euler_degree, expected_kn_degrees,
    expected_ladder_sizes, expected_line_markov, expected_max_circuit_degree, ladder_graph, subdivide,
    triangle_tree,
};
use crate::graph::Graph;
use crate::nonpointed::{first_primes, nonpointed_report};
use crate::report::{
    compute_bases, BasisKind, BasisRun, Engine, EngineChoice, ExperimentVerdict, Input, RunOptions, Table,
};

pub struct ExperimentInfo {
    pub id: &'static str,
    /// Short names accepted in place of the id.
    pub aliases: &'static [&'static str],
    pub title: &'static str,
    run: fn() -> Result<ExperimentVerdict>,
}

pub const EXPERIMENTS: &[ExperimentInfo] = &[
    ExperimentInfo {
        id: "ladder-sizes",
        aliases: &["size1"],
        title: "ladder: linear Markov bases, exponential circuits",
        run: ladder_sizes,
    },
    ExperimentInfo {
        id: "nonpointed-sizes",
        aliases: &["size2"],
        title: "line configuration: Markov bases of any size",
        run: nonpointed_sizes,
    },
    ExperimentInfo {
        id: "triangle-tree-markov",
        aliases: &["mu"],
        title: "G_1^3: Markov basis strictly inside the circuits",
        run: triangle_tree_markov,
    },
    ExperimentInfo {
        id: "triangle-tree-degrees",
        aliases: &["tm1"],
        title: "G_r^3: Graver degree outgrows circuit degree",
        run: triangle_tree_degrees,
    },
    ExperimentInfo {
        id: "subdivision-robust",
        aliases: &["robust"],
        title: "subdivided bowtie: one element in every basis",
        run: subdivision_robust,
    },
    ExperimentInfo {
        id: "subdivision-degrees",
        aliases: &["um", "tm2"],
        title: "S_3(G_1^3): indispensable mixed Euler walk above every circuit",
        run: subdivision_degrees,
    },
    ExperimentInfo {
        id: "complete-degrees",
        aliases: &["tm3"],
        title: "K_n: Graver degree n-2, Markov degree 2",
        run: complete_degrees,
    },
    ExperimentInfo {
        id: "nonpointed-degrees",
        aliases: &["tm4"],
        title: "line configuration: unbounded Markov degree, fixed Graver basis",
        run: nonpointed_degrees,
    },
];

/// Default time budget per instance, in seconds.
const INSTANCE_SECS: f64 = 300.0;

pub fn experiment_ids() -> Vec<&'static str> {
    EXPERIMENTS.iter().map(|e| e.id).collect()
}

pub fn find_experiment(id: &str) -> Result<&'static ExperimentInfo> {
    let key = id.to_ascii_lowercase();
    EXPERIMENTS
        .iter()
        .find(|e| e.id == key || e.aliases.contains(&key.as_str()))
        .ok_or_else(|| ToricError::UnknownExperiment(id.to_string(), experiment_ids().join(", ")))
}

pub fn reproduce(id: &str) -> Result<ExperimentVerdict> {
    (find_experiment(id)?.run)()
}

/// Runs experiments concurrently; verdicts come back sorted by id.
pub fn reproduce_all(ids: &[&str]) -> Result<Vec<ExperimentVerdict>> {
    let mut infos = ids.iter().map(|id| find_experiment(id)).collect::<Result<Vec<_>>>()?;
    infos.sort_by_key(|e| e.id);
    infos.dedup_by_key(|e| e.id);
    infos.par_iter().map(|e| (e.run)()).collect()
}

fn budget() -> Budget {
    Budget::from_env_or(INSTANCE_SECS)
}

/// Exhaustive on graphs: a primitive walk has degree at most `|E|`.
fn run_graph(g: &Graph, kinds: &[BasisKind], engine: EngineChoice) -> Result<BasisRun> {
    let opts = RunOptions { degree_cap: Some(g.edge_count()), budget: budget(), record_timing: false };
    compute_bases(Input::Graph(g), kinds, engine, &opts)
}

fn table(name: &str, columns: &[&str]) -> Table {
    Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
}

fn set(elements: &[Binomial]) -> BTreeSet<&Binomial> {
    elements.iter().collect()
}

fn ladder_sizes() -> Result<ExperimentVerdict> {
    let mut v = ExperimentVerdict::new("ladder-sizes", "ladder: linear Markov bases, exponential circuits");
    let mut t = table("ladder sizes", &["n", "|M|", "|C|", "|U|", "|Gr|"]);
    for n in 1..=4usize {
        let g = ladder_graph(n)?;
        let (m, c) = expected_ladder_sizes(n as u64)?;
        let run = run_graph(&g, &BasisKind::ALL, EngineChoice::Graph)?;
        let size = |k| run.report(k, Engine::Graph).expect("computed").size.to_string();
        t.rows.push(vec![
            n.to_string(),
            size(BasisKind::Markov),
            size(BasisKind::Circuits),
            size(BasisKind::Ugb),
            size(BasisKind::Graver),
        ]);
        for r in &run.reports {
            let (expected, formula) = match r.kind {
                BasisKind::Markov => (m, "2n+1"),
                _ => (c, "2n+4^n"),
            };
            let name = format!("n={n} |{}|", r.kind.name());
            if r.truncated {
                v.skip(&name, &expected.to_string(), formula);
            } else {
                v.check(&name, expected, r.size as u64, formula);
            }
        }
    }
    v.tables.push(t);
    for n in 1..=2usize {
        let g = ladder_graph(n)?;
        let run = run_graph(&g, &BasisKind::ALL, EngineChoice::Both)?;
        for a in &run.agreement {
            let name = format!("n={n} {} graph engine = oracle", a.kind.name());
            match a.agree {
                Some(ok) => v.check_that(&name, "agree", if ok { "agree" } else { "differ" }, ok, "independent oracle"),
                None => v.skip(&name, "agree", "independent oracle"),
            }
        }
    }
    Ok(v)
}

fn nonpointed_table(v: &mut ExperimentVerdict, check_sizes: bool) -> Result<()> {
    let mut t = table("line configuration", &["s", "q", "|M|", "max Markov degree", "|Gr|", "max Graver degree"]);
    let mut previous = None;
    for s in 2..=6 {
        let q = first_primes(s);
        let rep = nonpointed_report(&q)?;
        let (size, max_degree) = expected_line_markov(&q)?;
        let qs = q.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        t.rows.push(vec![
            s.to_string(),
            qs,
            rep.size.to_string(),
            rep.max_degree.to_string(),
            rep.line.graver.size.to_string(),
            rep.line.graver.max_degree.to_string(),
        ]);
        if check_sizes {
            v.check_that(
                &format!("s={s} generates and is minimal"),
                "gcd 1, every leave-one-out gcd > 1",
                &format!("gcd {}", rep.certificate.total_gcd),
                rep.certificate.is_markov(),
                "gcd criterion for principal Laurent ideals",
            );
            v.check(&format!("s={s} |M|"), size, rep.size as u64, "s");
        } else {
            v.check(&format!("s={s} max Markov degree"), max_degree.clone(), rep.max_degree.clone(), "2Q/min q");
            if let Some(prev) = previous.replace(rep.max_degree.clone()) {
                v.check_that(
                    &format!("s={s} degree grows"),
                    &format!("> {prev}"),
                    &rep.max_degree.to_string(),
                    rep.max_degree > prev,
                    "2Q/min q",
                );
            }
        }
        for r in [&rep.line.circuits, &rep.line.ugb, &rep.line.graver] {
            let single = r.size == 1 && r.max_degree == 2 && !r.truncated;
            v.check_that(
                &format!("s={s} {} is one degree-2 element", r.kind.name()),
                "1 element, degree 2",
                &format!("{} elements, degree {}", r.size, r.max_degree),
                single,
                "rank-one lattice generated by (1,1)",
            );
        }
    }
    v.tables.push(t);
    Ok(())
}

fn nonpointed_sizes() -> Result<ExperimentVerdict> {
    let mut v = ExperimentVerdict::new("nonpointed-sizes", "line configuration: Markov bases of any size");
    nonpointed_table(&mut v, true)?;
    Ok(v)
}

fn nonpointed_degrees() -> Result<ExperimentVerdict> {
    let mut v =
        ExperimentVerdict::new("nonpointed-degrees", "line configuration: unbounded Markov degree, fixed Graver basis");
    nonpointed_table(&mut v, false)?;
    Ok(v)
}

fn triangle_tree_markov() -> Result<ExperimentVerdict> {
    let mut v = ExperimentVerdict::new("triangle-tree-markov", "G_1^3: Markov basis strictly inside the circuits");
    let g = triangle_tree(3, 1)?;
    let run = run_graph(&g, &BasisKind::ALL, EngineChoice::Both)?;
    let mut t = table("G_1^3", &["engine", "|M|", "|C|", "|U|", "|Gr|"]);
    for eng in [Engine::Graph, Engine::Oracle] {
        let get = |k| run.report(k, eng).expect("computed");
        let (m, c, u, gr) = (get(BasisKind::Markov), get(BasisKind::Circuits), get(BasisKind::Ugb), get(BasisKind::Graver));
        let name = format!("{eng:?}").to_lowercase();
        t.rows.push(vec![name.clone(), m.size.to_string(), c.size.to_string(), u.size.to_string(), gr.size.to_string()]);
        if m.truncated || u.truncated {
            v.skip(&format!("{name}: |M| < |C| and C = U"), "holds", "circuits of G_1^3 are all mixed");
            continue;
        }
        v.check_that(
            &format!("{name}: M strictly inside C"),
            "strict subset",
            &format!("{} of {}", m.size, c.size),
            set(&m.elements).is_subset(&set(&c.elements)) && m.size < c.size,
            "a circuit with a bridge chord is not minimal",
        );
        v.check_that(
            &format!("{name}: C = U"),
            "equal sets",
            &format!("{} and {} elements", c.size, u.size),
            c.elements == u.elements,
            "circuits of G_1^3 are all mixed",
        );
        v.check_that(
            &format!("{name}: U strictly inside Gr"),
            "strict subset",
            &format!("{} of {}", u.size, gr.size),
            set(&u.elements).is_subset(&set(&gr.elements)) && u.size < gr.size,
            "the Euler walk is primitive but not mixed",
        );
    }
    v.tables.push(t);
    for a in &run.agreement {
        let name = format!("{} graph engine = oracle", a.kind.name());
        match a.agree {
            Some(ok) => v.check_that(&name, "agree", if ok { "agree" } else { "differ" }, ok, "independent oracle"),
            None => v.skip(&name, "agree", "independent oracle"),
        }
    }
    Ok(v)
}

/// Checks the Euler-trail binomial and the circuit degrees of `g`.
fn euler_and_circuits(
    v: &mut ExperimentVerdict,
    t: &mut Table,
    label: &str,
    g: &Graph,
    euler_expected: u64,
    circuit_expected: u64,
    (euler_src, circuit_src): (&str, &str),
) -> Result<()> {
    let w = euler_trail(g)?;
    let degree = w.binomial().degree();
    let primitive = is_primitive_subgraph(g, &w.support())?;
    let circuits = enumerate_circuit_walks(g)?;
    t.rows.push(vec![
        label.into(),
        g.edge_count().to_string(),
        degree.to_string(),
        primitive.to_string(),
        circuits.len().to_string(),
        circuits.max_degree().to_string(),
    ]);
    v.check(&format!("{label} Euler binomial degree"), euler_expected, degree, euler_src);
    v.check_that(&format!("{label} Euler binomial primitive"), "true", &primitive.to_string(), primitive, "block structure of the Euler walk");
    v.check(&format!("{label} max circuit degree"), circuit_expected, circuits.max_degree(), circuit_src);
    Ok(())
}

fn triangle_tree_degrees() -> Result<ExperimentVerdict> {
    let mut v = ExperimentVerdict::new("triangle-tree-degrees", "G_r^3: Graver degree outgrows circuit degree");
    let mut t = table("G_r^3", &["graph", "|E|", "Euler degree", "primitive", "|C|", "max circuit degree"]);
    for r in 1..=2u32 {
        let g = triangle_tree(3, r as usize)?;
        euler_and_circuits(
            &mut v,
            &mut t,
            &format!("r={r}"),
            &g,
            expected_euler_degree(3, r, 1)?,
            expected_max_circuit_degree(3, r as u64, 1)?,
            ("9*2^(r-1)-3", "4r+1"),
        )?;
    }
    v.tables.push(t);
    Ok(v)
}

fn subdivision_robust() -> Result<ExperimentVerdict> {
    let mut v = ExperimentVerdict::new("subdivision-robust", "subdivided bowtie: one element in every basis");
    let k = 3;
    let g = subdivide(&bowtie_graph(), k)?;
    let expected = closed_walk_degree(bowtie_graph().edge_count() as u64, k as u64)?;
    let run = run_graph(&g, &[BasisKind::Markov, BasisKind::Ugb, BasisKind::Graver, BasisKind::Circuits], EngineChoice::Oracle)?;
    let get = |kind| run.report(kind, Engine::Oracle).expect("computed");
    let gr = get(BasisKind::Graver);
    let mut t = table("S_3(bowtie)", &["basis", "size", "max degree"]);
    for r in &run.reports {
        t.rows.push(vec![r.kind.name().into(), r.size.to_string(), r.max_degree.to_string()]);
    }
    v.tables.push(t);
    if run.reports.iter().any(|r| r.truncated) {
        v.skip("M = U = Gr, one element", "1 element", "k|E|/2");
        return Ok(v);
    }
    v.check("|Gr|", 1, gr.size, "single primitive walk through both subdivided triangles");
    v.check("Graver degree", expected, gr.max_degree, "k|E|/2");
    for kind in [BasisKind::Markov, BasisKind::Ugb] {
        v.check_that(
            &format!("{} = Gr", kind.name()),
            "equal sets",
            &format!("{} elements", get(kind).size),
            get(kind).elements == gr.elements,
            "strongly robust",
        );
    }
    let is_circuit = set(&gr.elements).is_subset(&set(&get(BasisKind::Circuits).elements));
    v.check_that("the element is a circuit", "true", &is_circuit.to_string(), is_circuit, "minimal support");
    Ok(v)
}

fn subdivision_degrees() -> Result<ExperimentVerdict> {
    let mut v = ExperimentVerdict::new(
        "subdivision-degrees",
        "S_3(G_1^3): indispensable mixed Euler walk above every circuit",
    );
    let (n, r, k) = (3u64, 1u32, 3u64);
    let g = subdivide(&triangle_tree(n as usize, r as usize)?, k as usize)?;
    let mut t = table("S_k(G_r^3)", &["graph", "|E|", "Euler degree", "primitive", "|C|", "max circuit degree"]);
    euler_and_circuits(
        &mut v,
        &mut t,
        "k=3 r=1",
        &g,
        expected_euler_degree(n, r, k)?,
        expected_max_circuit_degree(n, r as u64, k)?,
        ("(k/2)(n+n^2((n-1)^r-1)/(n-2))", "kn+(2r-1)k(n-1)"),
    )?;
    v.tables.push(t);
    let w = euler_trail(&g)?;
    for (name, ok, src) in [
        ("minimal", is_minimal_walk(&g, &w)?, "no even chord and no crossing F4"),
        ("indispensable", is_indispensable_walk(&g, &w)?, "no chords at all"),
        ("mixed", is_mixed(&w)?, "every cyclic block mixes both parities"),
    ] {
        v.check_that(&format!("Euler walk {name}"), "true", &ok.to_string(), ok, src);
    }
    Ok(v)
}

fn complete_degrees() -> Result<ExperimentVerdict> {
    let mut v = ExperimentVerdict::new("complete-degrees", "K_n: Graver degree n-2, Markov degree 2");
    let mut t = table("K_n", &["n", "engine", "graver_max", "markov_max"]);
    for n in 4..=6usize {
        let g = complete_graph(n)?;
        let (graver_max, markov_max) = expected_kn_degrees(n as u64)?;
        let (engine, choice) = if n <= 5 { (Engine::Oracle, EngineChoice::Oracle) } else { (Engine::Graph, EngineChoice::Graph) };
        let kinds = [BasisKind::Circuits, BasisKind::Markov, BasisKind::Graver];
        let run = run_graph(&g, &kinds, choice)?;
        let gr = run.report(BasisKind::Graver, engine).expect("computed");
        let markov = run.report(BasisKind::Markov, engine);
        t.rows.push(vec![
            n.to_string(),
            format!("{engine:?}").to_lowercase(),
            gr.max_degree.to_string(),
            markov.map_or("-".into(), |m| m.max_degree.to_string()),
        ]);
        if gr.truncated {
            v.skip(&format!("n={n} max Graver degree"), &graver_max.to_string(), "n-2");
        } else {
            v.check(&format!("n={n} max Graver degree"), graver_max, gr.max_degree, "n-2");
            let circuits = set(&run.report(BasisKind::Circuits, engine).expect("computed").elements);
            let attained = gr.elements.iter().any(|b| b.degree() == gr.max_degree && circuits.contains(b));
            v.check_that(
                &format!("n={n} max degree attained by a circuit"),
                "true",
                &attained.to_string(),
                attained,
                "two odd cycles joined by a path",
            );
        }
        if let Some(m) = markov {
            if m.truncated {
                v.skip(&format!("n={n} max Markov degree"), &markov_max.to_string(), "quadrics generate");
            } else {
                v.check(&format!("n={n} max Markov degree"), markov_max, m.max_degree, "quadrics generate");
            }
        }
    }
    v.tables.push(t);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_and_aliases_resolve() {
        assert_eq!(find_experiment("SIZE1").unwrap().id, "ladder-sizes");
        assert_eq!(find_experiment("tm2").unwrap().id, "subdivision-degrees");
        match reproduce("nope") {
            Err(ToricError::UnknownExperiment(id, known)) => {
                assert_eq!(id, "nope");
                assert!(known.contains("complete-degrees"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nonpointed_experiments_pass() {
        for id in ["size2", "tm4"] {
            let v = reproduce(id).unwrap();
            assert!(v.passed(), "{:?}", v.failures().collect::<Vec<_>>());
            assert_eq!(v.tables[0].rows.len(), 5);
        }
    }
}
