//! Graph-side enumeration of circuits, Graver, universal Gröbner and Markov
//! bases from even closed walks.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::binomial::Binomial;
use crate::budget::Budget;
use crate::classify::{
    is_circuit_subgraph, is_indispensable_walk, is_minimal_walk, is_mixed,
    primitive_binomial_of_subgraph, primitive_walk_of_subgraph,
};
use crate::cycles::{enumerate_cycles, Cycle};
use crate::error::{Result, ToricError};
use crate::graph::Graph;
use crate::walk::EvenClosedWalk;

/// Above this many edges, [`enumerate_graver_walks`] needs an explicit degree cap.
pub const UNCAPPED_GRAVER_EDGE_LIMIT: usize = 14;

#[derive(Debug, Clone)]
pub struct WalkElement<'g> {
    pub walk: EvenClosedWalk<'g>,
    pub binomial: Binomial,
    /// Set by Markov enumeration only.
    pub indispensable: Option<bool>,
}

#[derive(Debug, Clone, Default)]
pub struct WalkBasis<'g> {
    /// Canonically sorted (degree, then lattice vector).
    pub elements: Vec<WalkElement<'g>>,
    /// Some element may be missing because of a degree cap or an expired budget.
    pub truncated: bool,
    /// Distinct subgraphs that produced an already seen binomial.
    pub collisions: usize,
}

impl<'g> WalkBasis<'g> {
    pub fn binomials(&self) -> Vec<Binomial> {
        self.elements.iter().map(|e| e.binomial.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_degree(&self) -> u64 {
        self.elements.iter().map(|e| e.binomial.degree()).max().unwrap_or(0)
    }
}

/// Collects walks keyed by binomial.
struct Collector<'g> {
    found: BTreeMap<Binomial, EvenClosedWalk<'g>>,
    collisions: usize,
}

impl<'g> Collector<'g> {
    fn new() -> Self {
        Collector { found: BTreeMap::new(), collisions: 0 }
    }

    fn add_subgraph(&mut self, g: &'g Graph, w: &FixedBitSet) -> Result<bool> {
        let Some(walk) = primitive_walk_of_subgraph(g, w)? else {
            return Ok(false);
        };
        let b = walk.binomial();
        debug_assert_eq!(primitive_binomial_of_subgraph(g, w)?.as_ref(), Some(&b));
        if let std::collections::btree_map::Entry::Vacant(e) = self.found.entry(b) {
            e.insert(walk);
        } else {
            self.collisions += 1;
        }
        Ok(true)
    }

    fn finish(self, truncated: bool) -> WalkBasis<'g> {
        WalkBasis {
            elements: self
                .found
                .into_iter()
                .map(|(binomial, walk)| WalkElement { walk, binomial, indispensable: None })
                .collect(),
            truncated,
            collisions: self.collisions,
        }
    }
}

fn union(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = a.clone();
    out.union_with(b);
    out
}

/// Simple paths from `start` into `target`, with interior avoiding `blocked`.
/// Calls `visit(path_vertices, path_edges)` for every path ending on its
/// first `target` vertex.
fn paths_between(
    g: &Graph,
    start: usize,
    blocked: &FixedBitSet,
    target: &FixedBitSet,
    max_edges: usize,
    visit: &mut dyn FnMut(&[usize], &[usize]),
) {
    let mut verts = vec![start];
    let mut edges: Vec<usize> = Vec::new();
    let mut on_path = FixedBitSet::with_capacity(g.vertex_count());
    on_path.insert(start);
    let mut cursor = vec![0usize];
    while let Some(pos) = cursor.last_mut() {
        let v = *verts.last().unwrap();
        let nbrs = g.neighbors(v);
        if *pos >= nbrs.len() || edges.len() >= max_edges {
            cursor.pop();
            on_path.set(v, false);
            verts.pop();
            edges.pop();
            continue;
        }
        let (w, e) = nbrs[*pos];
        *pos += 1;
        if on_path.contains(w) {
            continue;
        }
        if target.contains(w) {
            verts.push(w);
            edges.push(e);
            visit(&verts, &edges);
            verts.pop();
            edges.pop();
            continue;
        }
        if blocked.contains(w) {
            continue;
        }
        on_path.insert(w);
        verts.push(w);
        edges.push(e);
        cursor.push(0);
    }
}

/// All circuits: even cycles, pairs of odd cycles sharing one vertex, and
/// vertex-disjoint odd cycles joined by a path.
pub fn enumerate_circuit_walks(g: &Graph) -> Result<WalkBasis<'_>> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let cycles = enumerate_cycles(g, Some(n))?;
    let mut collector = Collector::new();
    for c in cycles.iter().filter(|c| c.is_even()) {
        collector.add_subgraph(g, &c.edge_set(m))?;
    }
    let odd: Vec<(&Cycle, FixedBitSet, FixedBitSet)> = cycles
        .iter()
        .filter(|c| !c.is_even())
        .map(|c| (c, c.vertex_set(n), c.edge_set(m)))
        .collect();
    for (i, (c1, v1, e1)) in odd.iter().enumerate() {
        for (_, v2, e2) in &odd[i + 1..] {
            let shared = v1.intersection_count(v2);
            if shared == 1 {
                collector.add_subgraph(g, &union(e1, e2))?;
            } else if shared == 0 {
                let blocked = union(v1, v2);
                let mut subgraphs = Vec::new();
                for &a in &c1.vertices {
                    paths_between(g, a, &blocked, v2, n, &mut |_, path| {
                        let mut w = union(e1, e2);
                        for &e in path {
                            w.insert(e);
                        }
                        subgraphs.push(w);
                    });
                }
                for w in subgraphs {
                    collector.add_subgraph(g, &w)?;
                }
            }
        }
    }
    let basis = collector.finish(false);
    for el in &basis.elements {
        if !is_circuit_subgraph(g, &el.walk.support())? {
            return Err(ToricError::Invariant(format!("{} is not a circuit", el.binomial)));
        }
    }
    Ok(basis)
}

#[derive(Clone)]
struct GrowthState {
    edges: FixedBitSet,
    verts: FixedBitSet,
    /// Vertices lying on cycle blocks that are not yet cut vertices.
    free: FixedBitSet,
    /// Cycle edges plus twice the path edges, i.e. twice the degree.
    doubled_degree: usize,
    cycles: usize,
}

/// All primitive binomials of degree at most `degree_cap`.
///
/// Primitive walks live on subgraphs that are trees of cycles joined at
/// single vertices or by paths. The search grows such trees from every odd
/// cycle; even cycles on their own are primitive.
pub fn enumerate_graver_walks<'g>(
    g: &'g Graph,
    degree_cap: Option<usize>,
    budget: &Budget,
) -> Result<WalkBasis<'g>> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let cap = match degree_cap {
        Some(c) => c,
        None if m > UNCAPPED_GRAVER_EDGE_LIMIT => return Err(ToricError::DegreeCapRequired(m)),
        None => m,
    };
    let max_cycle = n.min(2 * cap);
    let mut truncated = max_cycle < n;
    let cycles = enumerate_cycles(g, Some(max_cycle))?;
    let mut collector = Collector::new();
    for c in cycles.iter().filter(|c| c.is_even()) {
        collector.add_subgraph(g, &c.edge_set(m))?;
    }

    let cycle_sets: Vec<(FixedBitSet, FixedBitSet)> =
        cycles.iter().map(|c| (c.vertex_set(n), c.edge_set(m))).collect();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in cycles.iter().enumerate() {
        for &v in &c.vertices {
            through[v].push(i);
        }
    }
    let shortest_cycle = cycles.iter().map(Cycle::len).min().unwrap_or(0);

    let mut visited: HashSet<FixedBitSet> = HashSet::new();
    let mut stack: Vec<GrowthState> = Vec::new();
    for (i, c) in cycles.iter().enumerate().filter(|(_, c)| !c.is_even()) {
        let (vs, es) = &cycle_sets[i];
        if visited.insert(es.clone()) {
            stack.push(GrowthState {
                edges: es.clone(),
                verts: vs.clone(),
                free: vs.clone(),
                doubled_degree: c.len(),
                cycles: 1,
            });
        }
    }

    while let Some(state) = stack.pop() {
        if budget.expired() {
            truncated = true;
            break;
        }
        if state.cycles >= 2 {
            collector.add_subgraph(g, &state.edges)?;
        }
        let mut children: Vec<GrowthState> = Vec::new();
        let mut cut_by_cap = false;
        let attach = |state: &GrowthState,
                      a: usize,
                      path_verts: &[usize],
                      path_edges: &[usize],
                      ci: usize,
                      children: &mut Vec<GrowthState>,
                      cut_by_cap: &mut bool| {
            let end = *path_verts.last().unwrap_or(&a);
            let (cv, ce) = &cycle_sets[ci];
            let mut occupied = state.verts.clone();
            for &p in path_verts {
                occupied.insert(p);
            }
            occupied.set(end, false);
            if cv.intersection_count(&occupied) != 0 {
                return;
            }
            let doubled = state.doubled_degree + 2 * path_edges.len() + ce.count_ones(..);
            if doubled > 2 * cap {
                *cut_by_cap = true;
                return;
            }
            let mut edges = union(&state.edges, ce);
            for &e in path_edges {
                edges.insert(e);
            }
            let mut verts = union(&state.verts, cv);
            for &p in path_verts {
                verts.insert(p);
            }
            let mut free = union(&state.free, cv);
            free.set(a, false);
            free.set(end, false);
            children.push(GrowthState { edges, verts, free, doubled_degree: doubled, cycles: state.cycles + 1 });
        };
        for a in state.free.ones() {
            for &ci in &through[a] {
                attach(&state, a, &[], &[], ci, &mut children, &mut cut_by_cap);
            }
            let room = (2 * cap).saturating_sub(state.doubled_degree + shortest_cycle) / 2;
            if room == 0 {
                if shortest_cycle > 0 && state.doubled_degree + 2 + shortest_cycle > 2 * cap {
                    cut_by_cap = true;
                }
                continue;
            }
            // paths leaving the current subgraph at `a`
            let mut outside = state.verts.clone();
            outside.toggle_range(..);
            outside.union_with(&state.verts);
            let mut paths: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
            collect_paths_out(g, a, &state.verts, room, &mut paths);
            for (pv, pe) in paths {
                let end = *pv.last().unwrap();
                for &ci in &through[end] {
                    attach(&state, a, &pv, &pe, ci, &mut children, &mut cut_by_cap);
                }
            }
        }
        // a tree of cycles uses each edge at most twice, so a cap of |E| cuts nothing real
        if cut_by_cap && cap < m {
            truncated = true;
        }
        for child in children {
            if visited.insert(child.edges.clone()) {
                stack.push(child);
            }
        }
    }
    Ok(collector.finish(truncated))
}

/// Simple paths of 1..=max_edges edges from `a` whose other vertices avoid `occupied`.
fn collect_paths_out(
    g: &Graph,
    a: usize,
    occupied: &FixedBitSet,
    max_edges: usize,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    let mut verts = vec![a];
    let mut edges: Vec<usize> = Vec::new();
    let mut cursor = vec![0usize];
    while let Some(pos) = cursor.last_mut() {
        let v = *verts.last().unwrap();
        let nbrs = g.neighbors(v);
        if *pos >= nbrs.len() || edges.len() >= max_edges {
            cursor.pop();
            verts.pop();
            edges.pop();
            continue;
        }
        let (w, e) = nbrs[*pos];
        *pos += 1;
        if occupied.contains(w) || verts.contains(&w) {
            continue;
        }
        verts.push(w);
        edges.push(e);
        out.push((verts[1..].to_vec(), edges.clone()));
        cursor.push(0);
    }
}

/// Graver walks whose every cyclic block mixes both parities.
pub fn enumerate_ugb_walks<'g>(
    g: &'g Graph,
    degree_cap: Option<usize>,
    budget: &Budget,
) -> Result<WalkBasis<'g>> {
    let mut graver = enumerate_graver_walks(g, degree_cap, budget)?;
    let mut kept = Vec::with_capacity(graver.elements.len());
    for el in graver.elements {
        if is_mixed(&el.walk)? {
            kept.push(el);
        }
    }
    graver.elements = kept;
    Ok(graver)
}

/// Vertex degree vector of a monomial in the edge variables.
fn vertex_degree(g: &Graph, exps: &[(usize, u64)]) -> Vec<u64> {
    let mut d = vec![0u64; g.vertex_count()];
    for &(e, k) in exps {
        let (u, v) = g.edge(e);
        d[u] += k;
        d[v] += k;
    }
    d
}

/// Whether `from` reaches `to` using the given moves in either direction.
fn connected_by_moves(from: &[u64], to: &[u64], moves: &[(Vec<u64>, Vec<u64>)]) -> bool {
    if from == to {
        return true;
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::from([from.to_vec()]);
    let mut queue = VecDeque::from([from.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for (p, q) in moves {
            for (take, give) in [(p, q), (q, p)] {
                if x.iter().zip(take).all(|(a, b)| a >= b) {
                    let y: Vec<u64> =
                        x.iter().zip(take).zip(give).map(|((a, b), c)| a - b + c).collect();
                    if y == to {
                        return true;
                    }
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    false
}

/// A Markov basis: the minimal Graver walks, kept greedily in increasing
/// degree whenever their two monomials are not yet connected by the moves
/// kept so far.
pub fn enumerate_markov_walks<'g>(
    g: &'g Graph,
    degree_cap: Option<usize>,
    budget: &Budget,
) -> Result<WalkBasis<'g>> {
    let graver = enumerate_graver_walks(g, degree_cap, budget)?;
    let mut candidates = Vec::new();
    for el in graver.elements {
        if is_minimal_walk(g, &el.walk)? {
            candidates.push(el);
        }
    }
    candidates.sort_by(|a, b| {
        a.binomial
            .degree()
            .cmp(&b.binomial.degree())
            .then_with(|| vertex_degree(g, a.binomial.plus()).cmp(&vertex_degree(g, b.binomial.plus())))
            .then_with(|| a.binomial.cmp(&b.binomial))
    });
    let mut moves: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
    let mut kept = Vec::new();
    for mut el in candidates {
        let (p, q) = (el.binomial.plus_dense(), el.binomial.minus_dense());
        if connected_by_moves(&p, &q, &moves) {
            continue;
        }
        el.indispensable = Some(is_indispensable_walk(g, &el.walk)?);
        moves.push((p, q));
        kept.push(el);
    }
    kept.sort_by(|a, b| a.binomial.cmp(&b.binomial));
    Ok(WalkBasis { elements: kept, truncated: graver.truncated, collisions: graver.collisions })
}

/// Groups binomials by degree, e.g. for size/degree comparisons.
pub fn degree_histogram(elements: &[Binomial]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for b in elements {
        *h.entry(b.degree()).or_insert(0) += 1;
    }
    h
}

/// Distinct binomials, e.g. to compare walk sets with oracle output.
pub fn binomial_set(elements: &[Binomial]) -> HashMap<Vec<i64>, Binomial> {
    elements.iter().map(|b| (b.to_lattice(), b.clone())).collect()
}
