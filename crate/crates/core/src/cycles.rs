//! Simple cycle enumeration and deterministic Euler trails.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Result, ToricError};
use crate::graph::Graph;
use crate::walk::EvenClosedWalk;

/// Above this many edges, [`enumerate_cycles`] needs an explicit length cap.
pub const UNCAPPED_CYCLE_EDGE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    /// Canonical vertex order: smallest vertex first, then its smaller neighbor.
    pub vertices: Vec<usize>,
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically).
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.edges.len().is_multiple_of(2)
    }

    pub fn vertex_set(&self, n: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        for &v in &self.vertices {
            s.insert(v);
        }
        s
    }

    pub fn edge_set(&self, m: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(m);
        for &e in &self.edges {
            s.insert(e);
        }
        s
    }

    /// The cycle as a closed walk (requires even length).
    pub fn walk<'g>(&self, g: &'g Graph) -> Result<EvenClosedWalk<'g>> {
        EvenClosedWalk::from_edges(g, self.vertices[0], self.edges.clone())
    }
}

/// Every simple cycle exactly once, sorted by length then vertex sequence.
pub fn enumerate_cycles(g: &Graph, max_length: Option<usize>) -> Result<Vec<Cycle>> {
    let cap = match max_length {
        Some(c) => c,
        None if g.edge_count() > UNCAPPED_CYCLE_EDGE_LIMIT => {
            return Err(ToricError::CycleCapRequired(g.edge_count()))
        }
        None => g.vertex_count(),
    };
    let mut cycles: Vec<Cycle> = (0..g.vertex_count())
        .into_par_iter()
        .flat_map_iter(|root| cycles_rooted_at(g, root, cap))
        .collect();
    cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(cycles)
}

/// Cycles whose smallest vertex is `root`.
fn cycles_rooted_at(g: &Graph, root: usize, cap: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = vec![root];
    let mut path_edges: Vec<usize> = Vec::new();
    on_path[root] = true;
    // explicit DFS over neighbor positions
    let mut cursor = vec![0usize];
    while let Some(pos) = cursor.last_mut() {
        let v = *path.last().unwrap();
        let nbrs = g.neighbors(v);
        if *pos >= nbrs.len() {
            cursor.pop();
            on_path[v] = false;
            path.pop();
            path_edges.pop();
            continue;
        }
        let (w, e) = nbrs[*pos];
        *pos += 1;
        if w == root {
            if path.len() >= 3 && path[1] < v && path.len() <= cap {
                let mut edges = path_edges.clone();
                edges.push(e);
                out.push(Cycle { vertices: path.clone(), edges });
            }
            continue;
        }
        if w < root || on_path[w] || path.len() >= cap {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        path_edges.push(e);
        cursor.push(0);
    }
    out
}

/// Closed trail through every edge once, always extending along the unused
/// edge of smallest index. Starts at the lowest endpoint of edge 0.
pub fn euler_trail(g: &Graph) -> Result<EvenClosedWalk<'_>> {
    if g.edge_count() == 0 {
        return Err(ToricError::InvalidWalk("graph has no edges".into()));
    }
    if !g.is_connected_subset(&g.full_edge_set()) {
        return Err(ToricError::NotConnected);
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(ToricError::NotEulerian(v));
    }
    if g.edge_count() % 2 == 1 {
        return Err(ToricError::WalkNotEven);
    }
    let mut incident: Vec<Vec<usize>> =
        (0..g.vertex_count()).map(|v| g.neighbors(v).iter().map(|&(_, e)| e).collect()).collect();
    for list in &mut incident {
        list.sort_unstable();
    }
    let mut next = vec![0usize; g.vertex_count()];
    let mut used = vec![false; g.edge_count()];
    let start = g.edge(0).0.min(g.edge(0).1);
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut trail: Vec<usize> = Vec::with_capacity(g.edge_count());
    while let Some(&(v, via)) = stack.last() {
        let list = &incident[v];
        while next[v] < list.len() && used[list[next[v]]] {
            next[v] += 1;
        }
        if next[v] < list.len() {
            let e = list[next[v]];
            used[e] = true;
            stack.push((g.other_end(e, v), Some(e)));
        } else {
            stack.pop();
            if let Some(e) = via {
                trail.push(e);
            }
        }
    }
    trail.reverse();
    EvenClosedWalk::from_edges(g, start, trail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    /// Counts cycles by brute force over vertex subsets and orderings.
    fn brute_force_cycle_count(g: &Graph) -> usize {
        fn permute(
            g: &Graph,
            verts: &mut Vec<usize>,
            k: usize,
            count: &mut usize,
        ) {
            if k == verts.len() {
                let n = verts.len();
                let closed = (0..n).all(|i| g.edge_between(verts[i], verts[(i + 1) % n]).is_some());
                if closed && verts[1] < verts[n - 1] {
                    *count += 1;
                }
                return;
            }
            for i in k..verts.len() {
                verts.swap(k, i);
                permute(g, verts, k + 1, count);
                verts.swap(k, i);
            }
        }
        let n = g.vertex_count();
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() < 3 {
                continue;
            }
            let mut verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            // fix the smallest vertex first
            permute(g, &mut verts, 1, &mut count);
        }
        count
    }

    #[test]
    fn square_has_one_cycle() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let cycles = enumerate_cycles(&g, None).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn k4_cycles_match_brute_force() {
        let g = complete(4);
        let cycles = enumerate_cycles(&g, None).unwrap();
        assert_eq!(brute_force_cycle_count(&g), 7);
        assert_eq!(cycles.len(), 7);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        let k5 = complete(5);
        assert_eq!(enumerate_cycles(&k5, None).unwrap().len(), brute_force_cycle_count(&k5));
    }

    #[test]
    fn caps_and_forests() {
        let g = complete(5);
        assert!(enumerate_cycles(&g, Some(3)).unwrap().iter().all(|c| c.len() == 3));
        let tree = Graph::new(4, vec![(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(enumerate_cycles(&tree, None).unwrap().is_empty());
        let big = complete(8);
        assert_eq!(enumerate_cycles(&big, None), Err(ToricError::CycleCapRequired(28)));
    }

    #[test]
    fn euler_trail_of_square_and_bowtie() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let w = euler_trail(&g).unwrap();
        assert_eq!(w.edges(), &[0, 1, 2, 3]);
        let bowtie =
            Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let w = euler_trail(&bowtie).unwrap();
        assert_eq!(w.len(), 6);
        assert!(w.binomial().is_reduced());
    }

    #[test]
    fn euler_trail_errors() {
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(euler_trail(&path).unwrap_err(), ToricError::NotEulerian(0));
        let tri = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(euler_trail(&tri).unwrap_err(), ToricError::WalkNotEven);
    }
}
