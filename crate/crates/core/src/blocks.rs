//! Blocks (maximal biconnected subgraphs), cut vertices and the block tree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Result, ToricError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockKind {
    Cycle,
    CutEdge,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted edge indices.
    pub edges: Vec<usize>,
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    pub kind: BlockKind,
}

impl Block {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: BTreeSet<usize>,
    /// For every touched vertex, the blocks containing it.
    pub vertex_blocks: BTreeMap<usize, Vec<usize>>,
}

/// Blocks of a connected graph. A graph without edges has no blocks.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition> {
    if !g.is_connected() {
        return Err(ToricError::NotConnected);
    }
    BlockDecomposition::of_subset(g, &g.full_edge_set())
}

impl BlockDecomposition {
    /// Blocks of the subgraph formed by the edges in `subset`.
    pub fn of_subset(g: &Graph, subset: &FixedBitSet) -> Result<Self> {
        if !g.is_connected_subset(subset) {
            return Err(ToricError::NotConnected);
        }
        let raw = biconnected_edge_sets(g, subset);
        let mut blocks: Vec<Block> = raw
            .into_iter()
            .map(|mut edges| {
                edges.sort_unstable();
                let mut vertices: Vec<usize> =
                    edges.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
                vertices.sort_unstable();
                vertices.dedup();
                let kind = if edges.len() == 1 {
                    BlockKind::CutEdge
                } else if edges.len() == vertices.len() {
                    BlockKind::Cycle
                } else {
                    BlockKind::Other
                };
                Block { edges, vertices, kind }
            })
            .collect();
        blocks.sort_by_key(|b| b.edges[0]);

        let mut vertex_blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, b) in blocks.iter().enumerate() {
            for &v in &b.vertices {
                vertex_blocks.entry(v).or_default().push(i);
            }
        }
        let cut_vertices =
            vertex_blocks.iter().filter(|(_, bs)| bs.len() >= 2).map(|(&v, _)| v).collect();
        Ok(BlockDecomposition { blocks, cut_vertices, vertex_blocks })
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.contains(&v)
    }

    pub fn blocks_of(&self, v: usize) -> &[usize] {
        self.vertex_blocks.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Index of the block containing edge `e`.
    pub fn block_of_edge(&self, e: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.edges.binary_search(&e).is_ok())
    }

    pub fn tree(&self) -> BlockTree {
        let cut: Vec<usize> = self.cut_vertices.iter().copied().collect();
        let node_count = self.blocks.len() + cut.len();
        let mut adjacency = vec![Vec::new(); node_count];
        for (ci, &v) in cut.iter().enumerate() {
            let node = self.blocks.len() + ci;
            for &b in self.blocks_of(v) {
                adjacency[b].push(node);
                adjacency[node].push(b);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        BlockTree { block_count: self.blocks.len(), cut_vertices: cut, adjacency }
    }
}

/// Edge sets of the biconnected components (Tarjan, iterative).
fn biconnected_edge_sets(g: &Graph, subset: &FixedBitSet) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    let roots: Vec<usize> = g.vertices_of(subset).ones().collect();

    for root in roots {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, edge used to enter it, next neighbor position)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(frame) = frames.last_mut() {
            let (v, parent_edge, pos) = *frame;
            let nbrs = g.neighbors(v);
            if pos < nbrs.len() {
                frame.2 += 1;
                let (w, e) = nbrs[pos];
                if !subset.contains(e) || e == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut comp = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            comp.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

/// Bipartite tree on blocks and cut vertices. Nodes `0..block_count` are
/// blocks, the rest are cut vertices in increasing vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    pub block_count: usize,
    pub cut_vertices: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
}

impl BlockTree {
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_block_node(&self, node: usize) -> bool {
        node < self.block_count
    }

    pub fn cut_vertex_node(&self, v: usize) -> Option<usize> {
        self.cut_vertices.binary_search(&v).ok().map(|i| self.block_count + i)
    }

    /// Unique tree path between two nodes, endpoints included.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.node_count();
        if from >= n || to >= n {
            return None;
        }
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &y in &self.adjacency[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Cut-vertex nodes removed, the blocks on each side of `v`'s node.
    pub fn sides_of_cut_vertex(&self, v: usize) -> Option<Vec<Vec<usize>>> {
        let node = self.cut_vertex_node(v)?;
        let mut sides = Vec::new();
        for &start in &self.adjacency[node] {
            let mut seen = vec![false; self.node_count()];
            seen[node] = true;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut blocks = Vec::new();
            while let Some(x) = queue.pop_front() {
                if self.is_block_node(x) {
                    blocks.push(x);
                }
                for &y in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            blocks.sort_unstable();
            sides.push(blocks);
        }
        Some(sides)
    }
}

pub fn block_tree(g: &Graph) -> Result<BlockTree> {
    Ok(block_decomposition(g)?.tree())
}

/// Number of blocks strictly between two blocks on their tree path.
pub fn internal_block_distance(t: &BlockTree, b1: usize, b2: usize) -> Result<usize> {
    for b in [b1, b2] {
        if b >= t.block_count {
            return Err(ToricError::UnknownBlock(b));
        }
    }
    let path = t.path(b1, b2).ok_or(ToricError::NotConnected)?;
    Ok(path.iter().filter(|&&x| x != b1 && x != b2 && t.is_block_node(x)).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn triangle_is_one_cycle_block() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let d = block_decomposition(&g).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].kind, BlockKind::Cycle);
        assert!(d.cut_vertices.is_empty());
        assert_eq!(block_tree(&g).unwrap().node_count(), 1);
    }

    #[test]
    fn bowtie_has_two_cycles_and_one_cut_vertex() {
        let d = block_decomposition(&bowtie()).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert!(d.blocks.iter().all(|b| b.kind == BlockKind::Cycle));
        assert_eq!(d.cut_vertices.iter().copied().collect::<Vec<_>>(), vec![0]);
        let t = d.tree();
        assert_eq!(t.path(0, 1).unwrap(), vec![0, 2, 1]);
        assert_eq!(internal_block_distance(&t, 0, 1).unwrap(), 0);
    }

    #[test]
    fn path_has_cut_edge_blocks() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = block_decomposition(&g).unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert!(d.blocks.iter().all(|b| b.kind == BlockKind::CutEdge));
        assert_eq!(d.cut_vertices.len(), 2);
        let t = d.tree();
        assert_eq!(t.node_count(), t.edge_count() + 1);
        assert_eq!(internal_block_distance(&t, 0, 2).unwrap(), 1);
    }

    #[test]
    fn other_blocks_and_errors() {
        let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let d = block_decomposition(&k4).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].kind, BlockKind::Other);
        let t = d.tree();
        assert_eq!(internal_block_distance(&t, 0, 3), Err(ToricError::UnknownBlock(3)));
        let split = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(block_decomposition(&split), Err(ToricError::NotConnected));
    }

    #[test]
    fn empty_graph_has_no_blocks() {
        let g = Graph::new(1, vec![]).unwrap();
        let d = block_decomposition(&g).unwrap();
        assert!(d.blocks.is_empty());
        assert_eq!(d.tree().node_count(), 0);
    }

    #[test]
    fn subset_decomposition() {
        let g = bowtie();
        let sub = g.edge_set([0, 1, 2]);
        let d = BlockDecomposition::of_subset(&g, &sub).unwrap();
        assert_eq!(d.blocks.len(), 1);
        let t = BlockDecomposition::of_subset(&g, &g.full_edge_set()).unwrap().tree();
        let sides = t.sides_of_cut_vertex(0).unwrap();
        assert_eq!(sides, vec![vec![0], vec![1]]);
    }
}
