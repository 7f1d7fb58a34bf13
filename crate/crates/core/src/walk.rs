//! Even closed walks, their binomials, chords and sinks.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::binomial::Binomial;
use crate::blocks::{BlockDecomposition, BlockKind};
use crate::error::{Result, ToricError};
use crate::graph::Graph;

/// A closed walk of even length. `vertices[i]` is the vertex at which
/// `edges[i]` is entered; positions with even index form `w+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenClosedWalk<'g> {
    graph: &'g Graph,
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl<'g> EvenClosedWalk<'g> {
    pub fn from_edges(graph: &'g Graph, start: usize, edges: Vec<usize>) -> Result<Self> {
        if edges.len() % 2 == 1 {
            return Err(ToricError::WalkNotEven);
        }
        if edges.is_empty() {
            return Err(ToricError::InvalidWalk("empty walk".into()));
        }
        let mut vertices = Vec::with_capacity(edges.len());
        let mut cur = start;
        for &e in &edges {
            if e >= graph.edge_count() {
                return Err(ToricError::InvalidWalk(format!("no edge {e}")));
            }
            let (a, b) = graph.edge(e);
            if a != cur && b != cur {
                return Err(ToricError::InvalidWalk(format!("edge {e} does not touch vertex {cur}")));
            }
            vertices.push(cur);
            cur = graph.other_end(e, cur);
        }
        if cur != start {
            return Err(ToricError::InvalidWalk("walk is not closed".into()));
        }
        Ok(EvenClosedWalk { graph, vertices, edges })
    }

    /// Walk through the given vertices, returning to the first one.
    pub fn from_vertices(graph: &'g Graph, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(ToricError::InvalidWalk("empty walk".into()));
        }
        let edges = (0..vertices.len())
            .map(|i| {
                let (u, v) = (vertices[i], vertices[(i + 1) % vertices.len()]);
                graph
                    .edge_between(u, v)
                    .ok_or_else(|| ToricError::InvalidWalk(format!("no edge between {u} and {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        EvenClosedWalk::from_edges(graph, vertices[0], edges)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Half the length.
    pub fn degree(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn rotated(&self, k: usize) -> Self {
        let k = k % self.len();
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.rotate_left(k);
        edges.rotate_left(k);
        EvenClosedWalk { graph: self.graph, vertices, edges }
    }

    /// Edge set of the walk's graph.
    pub fn support(&self) -> FixedBitSet {
        self.graph.edge_set(self.edges.iter().copied())
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// First position at which `v` is visited.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// `+1` if the edge first occurs at an odd position (1-based), else `-1`.
    pub fn parity_of(&self, e: usize) -> Option<i8> {
        self.edges.iter().position(|&x| x == e).map(|p| if p % 2 == 0 { 1 } else { -1 })
    }

    /// `E+(w) - E-(w)`; flagged unreduced when the two terms share a variable.
    pub fn binomial(&self) -> Binomial {
        let m = self.graph.edge_count();
        let mut plus = vec![0u64; m];
        let mut minus = vec![0u64; m];
        for (i, &e) in self.edges.iter().enumerate() {
            if i % 2 == 0 {
                plus[e] += 1;
            } else {
                minus[e] += 1;
            }
        }
        Binomial::from_dense(&plus, &minus).expect("equal lengths")
    }

    pub fn blocks(&self) -> BlockDecomposition {
        BlockDecomposition::of_subset(self.graph, &self.support())
            .expect("a closed walk spans a connected subgraph")
    }
}

pub fn binomial_of_walk(w: &EvenClosedWalk<'_>) -> Binomial {
    w.binomial()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChordKind {
    Bridge,
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Chord {
    pub edge: usize,
    pub kind: ChordKind,
}

/// Every edge of `g` outside the walk with both endpoints on it, classified.
///
/// A chord is a bridge when its endpoints can be placed in two different
/// blocks of the walk's graph (in particular whenever an endpoint is a cut
/// vertex). Otherwise both endpoints are visited once and the chord splits
/// the walk into two walks of equal parity.
pub fn chords_of(g: &Graph, w: &EvenClosedWalk<'_>) -> Vec<Chord> {
    let support = w.support();
    let blocks = w.blocks();
    let mut on_walk = FixedBitSet::with_capacity(g.vertex_count());
    for &v in w.vertices() {
        on_walk.insert(v);
    }
    let mut out = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if support.contains(e) || !on_walk.contains(u) || !on_walk.contains(v) {
            continue;
        }
        let (bu, bv) = (blocks.blocks_of(u), blocks.blocks_of(v));
        let bridge = bu.iter().any(|x| bv.iter().any(|y| x != y));
        let kind = if bridge {
            ChordKind::Bridge
        } else {
            let i = w.position(u).expect("on walk");
            let j = w.position(v).expect("on walk");
            if i.abs_diff(j).is_multiple_of(2) {
                ChordKind::Odd
            } else {
                ChordKind::Even
            }
        };
        out.push(Chord { edge: e, kind });
    }
    out
}

/// Sinks of each cyclic block of the walk's graph: vertices where the two
/// block edges have equal parity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SinkSet {
    /// Block index (in the walk's decomposition) to its sinks.
    pub per_block: BTreeMap<usize, Vec<usize>>,
}

impl SinkSet {
    pub fn all(&self) -> impl Iterator<Item = usize> + '_ {
        self.per_block.values().flatten().copied()
    }
}

pub fn sinks(w: &EvenClosedWalk<'_>) -> SinkSet {
    let g = w.graph();
    let blocks = w.blocks();
    let mut per_block = BTreeMap::new();
    for (bi, block) in blocks.blocks.iter().enumerate() {
        if block.kind != BlockKind::Cycle {
            continue;
        }
        let mut found = Vec::new();
        for &v in &block.vertices {
            let at_v: Vec<usize> = block
                .edges
                .iter()
                .copied()
                .filter(|&e| {
                    let (a, b) = g.edge(e);
                    a == v || b == v
                })
                .collect();
            if let [a, b] = at_v[..] {
                if w.parity_of(a) == w.parity_of(b) {
                    found.push(v);
                }
            }
        }
        per_block.insert(bi, found);
    }
    SinkSet { per_block }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn cycle_binomial() {
        let g = c4();
        let w = EvenClosedWalk::from_vertices(&g, &[0, 1, 2, 3]).unwrap();
        let b = w.binomial();
        assert_eq!(b.to_string(), "e0*e2 - e1*e3");
        assert_eq!(b.degree(), 2);
    }

    #[test]
    fn odd_walks_are_rejected() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            EvenClosedWalk::from_vertices(&g, &[0, 1, 2]).unwrap_err(),
            ToricError::WalkNotEven
        );
        assert!(EvenClosedWalk::from_edges(&g, 0, vec![0, 1]).is_err());
    }

    #[test]
    fn repeated_edge_same_parity_gets_exponent_two() {
        // bowtie joined by a path edge: 0-1-2-0 triangle, 2-3 edge, 3-4-5-3 triangle
        let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
            .unwrap();
        let w = EvenClosedWalk::from_vertices(&g, &[2, 0, 1, 2, 3, 4, 5, 3]).unwrap();
        let b = w.binomial();
        assert!(b.is_reduced());
        assert!(b.plus().contains(&(3, 2)) || b.minus().contains(&(3, 2)));
        assert_eq!(b.degree(), 4);
    }

    #[test]
    fn diagonal_of_square_in_k4_is_odd() {
        let g = k4();
        let w = EvenClosedWalk::from_vertices(&g, &[0, 1, 2, 3]).unwrap();
        let chords = chords_of(&g, &w);
        assert_eq!(chords.len(), 2);
        assert!(chords.iter().all(|c| c.kind == ChordKind::Odd));
        for k in 0..4 {
            assert_eq!(chords_of(&g, &w.rotated(k)), chords);
        }
    }

    #[test]
    fn chordless_cycle_has_no_chords() {
        let g = c4();
        let w = EvenClosedWalk::from_vertices(&g, &[0, 1, 2, 3]).unwrap();
        assert!(chords_of(&g, &w).is_empty());
    }

    #[test]
    fn even_chord_of_hexagon() {
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        let g = Graph::new(6, edges).unwrap();
        let w = EvenClosedWalk::from_vertices(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(chords_of(&g, &w), vec![Chord { edge: 6, kind: ChordKind::Even }]);
    }

    #[test]
    fn bowtie_sinks() {
        let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let w = EvenClosedWalk::from_vertices(&g, &[0, 1, 2, 0, 3, 4]).unwrap();
        let s = sinks(&w);
        assert_eq!(s.per_block.len(), 2);
        assert!(s.per_block.values().all(|v| v == &vec![0]));
    }
}
