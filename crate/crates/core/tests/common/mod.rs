//! Shared fixtures: the connected-graph census and seeded random graphs.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_core::classify::{is_minimal_walk, is_mixed};
use toric_core::enumerate::{
    enumerate_circuit_walks, enumerate_graver_walks, enumerate_markov_walks, enumerate_ugb_walks, WalkBasis,
};
use toric_core::oracle::{self, in_ugb, markov_by_fibers, to_binomial, VectorConfig};
use toric_core::walk::sinks;
use toric_core::{Binomial, Budget, Graph};

/// Graphs with equal vertex count and degree sequence, the only candidates for isomorphism.
type Buckets = HashMap<(usize, Vec<usize>), Vec<UnGraph<(), ()>>>;

fn to_petgraph(n: usize, edges: &[(usize, usize)]) -> UnGraph<(), ()> {
    let mut g = UnGraph::with_capacity(n, edges.len());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for &(u, v) in edges {
        g.add_edge(nodes[u], nodes[v], ());
    }
    g
}

fn degree_key(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<usize>) {
    let mut deg = vec![0; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.sort_unstable();
    (n, deg)
}

/// Every connected simple graph with 1..=max_edges edges, one per isomorphism class.
pub fn connected_graphs(max_edges: usize) -> Vec<Graph> {
    let mut layer: Vec<(usize, Vec<(usize, usize)>)> = vec![(2, vec![(0, 1)])];
    let mut all = layer.clone();
    for _ in 1..max_edges {
        let mut buckets = Buckets::new();
        let mut next = Vec::new();
        for (n, edges) in &layer {
            let mut candidates = Vec::new();
            for u in 0..*n {
                for v in u + 1..*n {
                    if !edges.contains(&(u, v)) {
                        candidates.push((*n, (u, v)));
                    }
                }
                candidates.push((*n + 1, (u, *n)));
            }
            for (m, e) in candidates {
                let mut es = edges.clone();
                es.push(e);
                let pg = to_petgraph(m, &es);
                let bucket = buckets.entry(degree_key(m, &es)).or_default();
                if bucket.iter().any(|other| is_isomorphic(other, &pg)) {
                    continue;
                }
                bucket.push(pg);
                next.push((m, es));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.into_iter().map(|(n, es)| Graph::new(n, es).unwrap()).collect()
}

/// A connected graph with the given edge count: a random spanning tree plus random extra edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, vertices: usize, edge_count: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..vertices).map(|v| (rng.gen_range(0..v), v)).collect();
    while edges.len() < edge_count {
        let u = rng.gen_range(0..vertices);
        let v = rng.gen_range(0..vertices);
        let key = (u.min(v), u.max(v));
        if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == key) {
            edges.push(key);
        }
    }
    Graph::new(vertices, edges).unwrap()
}

/// The 50 seeded random connected graphs with 9 or 10 edges.
pub fn random_graphs() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7031c);
    (0..50)
        .map(|_| {
            let m = rng.gen_range(9..=10);
            let n = rng.gen_range(5..=8);
            random_connected_graph(&mut rng, n, m)
        })
        .collect()
}

/// Everything the property suite checks on one graph; returns violations.
pub fn graph_properties(g: &Graph) -> Vec<String> {
    let mut bad = Vec::new();
    let b = Budget::unlimited();
    let set = |w: &WalkBasis<'_>| w.binomials().into_iter().collect::<BTreeSet<Binomial>>();
    let gr_w = enumerate_graver_walks(g, None, &b).unwrap();
    let c = set(&enumerate_circuit_walks(g).unwrap());
    let u = set(&enumerate_ugb_walks(g, None, &b).unwrap());
    let m = set(&enumerate_markov_walks(g, None, &b).unwrap());
    let gr = set(&gr_w);
    let mut check = |ok: bool, what: &str| {
        if !ok {
            bad.push(format!("{what} on {:?}", g.edges()));
        }
    };
    check(c.is_subset(&u), "circuits in UGB");
    check(u.is_subset(&gr), "UGB in Graver");
    check(m.is_subset(&u), "Markov in UGB");
    if g.is_bipartite() {
        check(gr == c, "bipartite Graver = circuits");
    }

    let a = VectorConfig::from_graph(g).unwrap();
    let to_set = |vs: &[Vec<i64>]| vs.iter().map(|v| to_binomial(v)).collect::<BTreeSet<Binomial>>();
    let o_gr = oracle::graver(&a, None, &b).unwrap();
    check(!o_gr.truncated && !gr_w.truncated, "untruncated");
    check(to_set(&o_gr.elements) == gr, "Graver engines agree");
    check(to_set(&oracle::circuits(&a).unwrap()) == c, "circuit engines agree");
    let mut o_u = BTreeSet::new();
    for v in &o_gr.elements {
        if in_ugb(&a, v).unwrap() {
            o_u.insert(to_binomial(v));
        }
    }
    check(o_u == u, "UGB engines agree");
    let mk = markov_by_fibers(&a, &b).unwrap();
    check(mk.audit_ok, "oracle Markov audit");
    let o_m: Vec<u64> = mk.basis.iter().map(|e| oracle::vector_degree(&e.vector)).collect();
    let g_m: Vec<u64> = m.iter().map(Binomial::degree).collect();
    let sorted = |mut v: Vec<u64>| {
        v.sort();
        v
    };
    check(sorted(o_m) == sorted(g_m), "Markov degree multisets agree");
    let o_minimal = to_set(&mk.minimal);
    check(m.is_subset(&o_minimal), "graph Markov basis is minimal");

    for el in &gr_w.elements {
        let mixed = is_mixed(&el.walk).unwrap();
        let v = el.binomial.to_lattice();
        check(in_ugb(&a, &v).unwrap() == mixed, "in_ugb iff mixed");
        check(is_minimal_walk(g, &el.walk).unwrap() == o_minimal.contains(&el.binomial), "minimal walks agree");
        let blocks = el.walk.blocks();
        check(sinks(&el.walk).all().all(|s| blocks.is_cut_vertex(s)), "sinks are cut vertices");
    }
    bad
}
