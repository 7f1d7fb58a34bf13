//! Structural characterizations of circuits, primitive, minimal,
//! indispensable and universal Gröbner walks of a graph.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::binomial::Binomial;
use crate::blocks::{BlockDecomposition, BlockKind};
use crate::error::{Result, ToricError};
use crate::graph::Graph;
use crate::walk::{chords_of, sinks, ChordKind, EvenClosedWalk};

fn cyclic_edges(d: &BlockDecomposition, blocks: &[usize]) -> usize {
    blocks
        .iter()
        .filter(|&&b| d.blocks[b].kind == BlockKind::Cycle)
        .map(|&b| d.blocks[b].edges.len())
        .sum()
}

/// Block/parity shape shared by primitive and circuit subgraphs, for
/// non-biconnected subgraphs.
fn has_primitive_tree_shape(d: &BlockDecomposition) -> bool {
    if d.blocks.iter().any(|b| b.kind == BlockKind::Other) {
        return false;
    }
    if d.cut_vertices.iter().any(|&v| d.blocks_of(v).len() != 2) {
        return false;
    }
    let tree = d.tree();
    d.cut_vertices.iter().all(|&v| {
        tree.sides_of_cut_vertex(v)
            .expect("cut vertex is a tree node")
            .iter()
            .all(|side| cyclic_edges(d, side) % 2 == 1)
    })
}

/// Whether the edge set `w` is the graph of a walk whose binomial is a circuit:
/// an even cycle, two odd cycles sharing one vertex, or two vertex-disjoint
/// odd cycles joined by a path.
pub fn is_circuit_subgraph(g: &Graph, w: &FixedBitSet) -> Result<bool> {
    let d = BlockDecomposition::of_subset(g, w)?;
    if d.blocks.len() == 1 {
        let b = &d.blocks[0];
        return Ok(b.kind == BlockKind::Cycle && b.edges.len() % 2 == 0);
    }
    let cycles: Vec<_> = d.blocks.iter().filter(|b| b.kind == BlockKind::Cycle).collect();
    Ok(cycles.len() == 2
        && cycles.iter().all(|b| b.edges.len() % 2 == 1)
        && has_primitive_tree_shape(&d))
}

/// Whether the edge set `w` is the graph of a primitive walk.
pub fn is_primitive_subgraph(g: &Graph, w: &FixedBitSet) -> Result<bool> {
    let d = BlockDecomposition::of_subset(g, w)?;
    Ok(primitive_shape(&d))
}

fn primitive_shape(d: &BlockDecomposition) -> bool {
    match d.blocks.len() {
        0 => false,
        1 => d.blocks[0].kind == BlockKind::Cycle && d.blocks[0].edges.len().is_multiple_of(2),
        _ => has_primitive_tree_shape(d),
    }
}

/// Edge signs of the primitive walk on `w`: consecutive edges alternate,
/// the two block edges at a cut vertex agree, edges of different blocks at a
/// cut vertex differ. `None` when these constraints are inconsistent.
fn primitive_signs(g: &Graph, d: &BlockDecomposition) -> Option<Vec<(usize, i8)>> {
    let edges: Vec<usize> = d.blocks.iter().flat_map(|b| b.edges.iter().copied()).collect();
    let block_of = |e: usize| d.blocks.iter().position(|b| b.edges.binary_search(&e).is_ok());
    // constraints as (edge, edge, same?)
    let mut constraints: Vec<Vec<(usize, bool)>> = vec![Vec::new(); g.edge_count()];
    for &v in d.vertex_blocks.keys() {
        let at_v: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&(_, e)| e)
            .filter(|e| edges.contains(e))
            .collect();
        for i in 0..at_v.len() {
            for j in i + 1..at_v.len() {
                let (a, b) = (at_v[i], at_v[j]);
                let same_block = block_of(a) == block_of(b);
                let same = same_block && d.is_cut_vertex(v);
                constraints[a].push((b, same));
                constraints[b].push((a, same));
            }
        }
    }
    let mut sign = vec![0i8; g.edge_count()];
    let mut sorted = edges.clone();
    sorted.sort_unstable();
    for &root in &sorted {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            for &(b, same) in &constraints[a] {
                let want = if same { sign[a] } else { -sign[a] };
                if sign[b] == 0 {
                    sign[b] = want;
                    queue.push_back(b);
                } else if sign[b] != want {
                    return None;
                }
            }
        }
    }
    Some(sorted.into_iter().map(|e| (e, sign[e])).collect())
}

/// The unique (up to sign) primitive binomial supported on `w`, if `w` has
/// the primitive shape. Cycle edges get exponent one, cut edges two.
pub fn primitive_binomial_of_subgraph(g: &Graph, w: &FixedBitSet) -> Result<Option<Binomial>> {
    let d = BlockDecomposition::of_subset(g, w)?;
    if !primitive_shape(&d) {
        return Ok(None);
    }
    let Some(signs) = primitive_signs(g, &d) else {
        return Ok(None);
    };
    let mut plus = vec![0u64; g.edge_count()];
    let mut minus = vec![0u64; g.edge_count()];
    for (e, s) in signs {
        let block = d.block_of_edge(e).expect("edge of w");
        let exp = if d.blocks[block].kind == BlockKind::CutEdge { 2 } else { 1 };
        if s > 0 {
            plus[e] = exp;
        } else {
            minus[e] = exp;
        }
    }
    Ok(Some(Binomial::from_dense(&plus, &minus)?))
}

/// A closed walk realizing the primitive binomial on `w`: cycle edges once,
/// cut edges twice, switching blocks at every cut vertex.
pub fn primitive_walk_of_subgraph<'g>(
    g: &'g Graph,
    w: &FixedBitSet,
) -> Result<Option<EvenClosedWalk<'g>>> {
    let d = BlockDecomposition::of_subset(g, w)?;
    if !primitive_shape(&d) {
        return Ok(None);
    }
    let mut remaining = vec![0u8; g.edge_count()];
    let mut block_of = vec![usize::MAX; g.edge_count()];
    for (bi, b) in d.blocks.iter().enumerate() {
        for &e in &b.edges {
            remaining[e] = if b.kind == BlockKind::CutEdge { 2 } else { 1 };
            block_of[e] = bi;
        }
    }
    let total: usize = remaining.iter().map(|&r| r as usize).sum();
    let first = w.ones().next().expect("nonempty");
    let (a, b) = g.edge(first);
    let start = a.min(b);
    // pretend we arrived at `start` from the block not containing `first`
    let mut arrival_block = d
        .blocks_of(start)
        .iter()
        .copied()
        .find(|&bl| bl != block_of[first])
        .unwrap_or(usize::MAX);
    let mut cur = start;
    let mut edges = Vec::with_capacity(total);
    for step in 0..total {
        let candidates = g.neighbors(cur).iter().map(|&(_, e)| e).filter(|&e| remaining[e] > 0);
        let pick = if step == 0 {
            Some(first)
        } else {
            let mut cands: Vec<usize> = candidates.collect();
            cands.sort_unstable();
            cands
                .iter()
                .copied()
                .find(|&e| block_of[e] != arrival_block)
                .or_else(|| cands.first().copied())
        };
        let Some(e) = pick else {
            return Err(ToricError::Invariant(format!(
                "primitive walk construction stuck at vertex {cur}"
            )));
        };
        remaining[e] -= 1;
        edges.push(e);
        arrival_block = block_of[e];
        cur = g.other_end(e, cur);
    }
    let walk = EvenClosedWalk::from_edges(g, start, edges)?;
    Ok(Some(walk))
}

/// Whether `B_w` is primitive: reduced, supported on a primitive-shaped
/// subgraph, and equal to that subgraph's forced exponent pattern.
pub fn is_primitive_walk(g: &Graph, w: &EvenClosedWalk<'_>) -> bool {
    let b = w.binomial();
    if !b.is_reduced() || b.is_zero() {
        return false;
    }
    match primitive_binomial_of_subgraph(g, &w.support()) {
        Ok(Some(expected)) => expected == b,
        _ => false,
    }
}

fn require_primitive(g: &Graph, w: &EvenClosedWalk<'_>) -> Result<()> {
    if is_primitive_walk(g, w) {
        Ok(())
    } else {
        Err(ToricError::RequiresPrimitive)
    }
}

/// No cyclic block of the walk contains two adjacent sinks.
pub fn is_strongly_primitive(w: &EvenClosedWalk<'_>) -> Result<bool> {
    let g = w.graph();
    require_primitive(g, w)?;
    Ok(strongly_primitive_unchecked(w))
}

fn strongly_primitive_unchecked(w: &EvenClosedWalk<'_>) -> bool {
    let g = w.graph();
    let blocks = w.blocks();
    let sink_set = sinks(w);
    for (&bi, found) in &sink_set.per_block {
        for &e in &blocks.blocks[bi].edges {
            let (a, b) = g.edge(e);
            if found.contains(&a) && found.contains(&b) {
                return false;
            }
        }
    }
    true
}

/// No cyclic block of the walk lies entirely in `w+` or entirely in `w-`.
pub fn is_mixed(w: &EvenClosedWalk<'_>) -> Result<bool> {
    let g = w.graph();
    require_primitive(g, w)?;
    let blocks = w.blocks();
    Ok(blocks.blocks.iter().filter(|b| b.kind == BlockKind::Cycle).all(|b| {
        let first = w.parity_of(b.edges[0]);
        b.edges.iter().any(|&e| w.parity_of(e) != first)
    }))
}

/// Chord `(edge, first position, second position)` with positions sorted.
fn chord_positions(g: &Graph, w: &EvenClosedWalk<'_>, e: usize) -> (usize, usize) {
    let (u, v) = g.edge(e);
    let i = w.position(u).expect("chord endpoint on walk");
    let j = w.position(v).expect("chord endpoint on walk");
    (i.min(j), i.max(j))
}

/// Two chords cross effectively when their endpoints interleave along the
/// walk and their first endpoints are an odd number of steps apart.
pub fn cross_effectively(g: &Graph, w: &EvenClosedWalk<'_>, f: usize, h: usize) -> bool {
    let (i1, j1) = chord_positions(g, w, f);
    let (i2, j2) = chord_positions(g, w, h);
    let interleaved = (i1 < i2 && i2 < j1 && j1 < j2) || (i2 < i1 && i1 < j2 && j2 < j1);
    interleaved && i1.abs_diff(i2) % 2 == 1
}

/// Two effectively crossing chords form an `F4` when, together with two
/// walk edges of equal parity, they close a cycle of length four.
pub fn forms_f4(g: &Graph, w: &EvenClosedWalk<'_>, f: usize, h: usize) -> bool {
    if !cross_effectively(g, w, f, h) {
        return false;
    }
    let (a1, b1) = g.edge(f);
    let (a2, b2) = g.edge(h);
    if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
        return false;
    }
    let walk_edge = |x: usize, y: usize| {
        g.edge_between(x, y).filter(|&e| w.edges().contains(&e)).and_then(|e| w.parity_of(e))
    };
    [((a1, a2), (b1, b2)), ((a1, b2), (b1, a2))].iter().any(|&((x1, y1), (x2, y2))| {
        match (walk_edge(x1, y1), walk_edge(x2, y2)) {
            (Some(p), Some(q)) => p == q,
            _ => false,
        }
    })
}

/// An odd chord crosses an `F4` when it crosses one of the F4's chords effectively.
pub fn crosses_f4(g: &Graph, w: &EvenClosedWalk<'_>, chord: usize, f4: (usize, usize)) -> bool {
    chord != f4.0
        && chord != f4.1
        && (cross_effectively(g, w, chord, f4.0) || cross_effectively(g, w, chord, f4.1))
}

fn odd_chords(g: &Graph, w: &EvenClosedWalk<'_>) -> Option<Vec<usize>> {
    let chords = chords_of(g, w);
    if chords.iter().any(|c| c.kind != ChordKind::Odd) {
        return None;
    }
    Some(chords.into_iter().map(|c| c.edge).collect())
}

/// Whether `B_w` belongs to some Markov basis: all chords odd, effectively
/// crossing chords only in `F4`s, no chord crossing an `F4`, strongly primitive.
pub fn is_minimal_walk(g: &Graph, w: &EvenClosedWalk<'_>) -> Result<bool> {
    require_primitive(g, w)?;
    let Some(chords) = odd_chords(g, w) else {
        return Ok(false);
    };
    let mut f4s = Vec::new();
    for (i, &f) in chords.iter().enumerate() {
        for &h in &chords[i + 1..] {
            if cross_effectively(g, w, f, h) {
                if !forms_f4(g, w, f, h) {
                    return Ok(false);
                }
                f4s.push((f, h));
            }
        }
    }
    for &pair in &f4s {
        if chords.iter().any(|&c| crosses_f4(g, w, c, pair)) {
            return Ok(false);
        }
    }
    Ok(strongly_primitive_unchecked(w))
}

/// Whether `B_w` belongs to every Markov basis: strongly primitive, all
/// chords odd, no two crossing effectively.
pub fn is_indispensable_walk(g: &Graph, w: &EvenClosedWalk<'_>) -> Result<bool> {
    require_primitive(g, w)?;
    let Some(chords) = odd_chords(g, w) else {
        return Ok(false);
    };
    for (i, &f) in chords.iter().enumerate() {
        if chords[i + 1..].iter().any(|&h| cross_effectively(g, w, f, h)) {
            return Ok(false);
        }
    }
    Ok(strongly_primitive_unchecked(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::euler_trail;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.to_vec()).unwrap()
    }

    fn bowtie() -> Graph {
        graph(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    }

    /// Two triangles joined by the cut edge 2-3.
    fn dumbbell() -> Graph {
        graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
    }

    #[test]
    fn circuit_shapes() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(is_circuit_subgraph(&c4, &c4.full_edge_set()).unwrap());
        let b = bowtie();
        assert!(is_circuit_subgraph(&b, &b.full_edge_set()).unwrap());
        assert!(!is_circuit_subgraph(&b, &b.edge_set([0, 1, 2])).unwrap());
        let d = dumbbell();
        assert!(is_circuit_subgraph(&d, &d.full_edge_set()).unwrap());
        assert!(is_circuit_subgraph(&d, &d.edge_set([0, 1])).is_ok());
        assert!(is_circuit_subgraph(&d, &d.edge_set([0, 4])).is_err());
    }

    #[test]
    fn primitive_shapes() {
        let d = dumbbell();
        assert!(is_primitive_subgraph(&d, &d.full_edge_set()).unwrap());
        // triangle and square sharing vertex 0
        let ts = graph(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)]);
        assert!(!is_primitive_subgraph(&ts, &ts.full_edge_set()).unwrap());
        // triangle with a pendant edge
        let tp = graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert!(!is_primitive_subgraph(&tp, &tp.full_edge_set()).unwrap());
        // odd cycle
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(!is_primitive_subgraph(&tri, &tri.full_edge_set()).unwrap());
    }

    #[test]
    fn primitive_binomial_and_walk_agree() {
        let d = dumbbell();
        let full = d.full_edge_set();
        let b = primitive_binomial_of_subgraph(&d, &full).unwrap().unwrap();
        assert_eq!(b.degree(), 4);
        let w = primitive_walk_of_subgraph(&d, &full).unwrap().unwrap();
        assert_eq!(w.binomial(), b);
        assert!(is_primitive_walk(&d, &w));
        let ts = graph(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)]);
        assert_eq!(primitive_binomial_of_subgraph(&ts, &ts.full_edge_set()).unwrap(), None);
    }

    #[test]
    fn walk_looping_twice_is_not_primitive() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let w = EvenClosedWalk::from_edges(&c4, 0, vec![0, 1, 2, 3, 0, 1, 2, 3]).unwrap();
        assert!(!is_primitive_walk(&c4, &w));
        assert_eq!(is_mixed(&w), Err(ToricError::RequiresPrimitive));
        assert_eq!(is_minimal_walk(&c4, &w), Err(ToricError::RequiresPrimitive));
    }

    #[test]
    fn bowtie_walk_properties() {
        let b = bowtie();
        let w = euler_trail(&b).unwrap();
        assert!(is_primitive_walk(&b, &w));
        assert!(is_strongly_primitive(&w).unwrap());
        assert!(is_mixed(&w).unwrap());
        assert!(is_minimal_walk(&b, &w).unwrap());
        assert!(is_indispensable_walk(&b, &w).unwrap());
    }

    #[test]
    fn k4_square_is_minimal_not_indispensable() {
        let k4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]);
        let w = EvenClosedWalk::from_vertices(&k4, &[0, 1, 2, 3]).unwrap();
        assert!(cross_effectively(&k4, &w, 4, 5));
        assert!(forms_f4(&k4, &w, 4, 5));
        assert!(is_minimal_walk(&k4, &w).unwrap());
        assert!(!is_indispensable_walk(&k4, &w).unwrap());
    }

    #[test]
    fn hexagon_with_three_short_chords_is_not_minimal() {
        // chords 0-2 and 1-3 form an F4, chord 2-4 crosses 1-3
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.extend([(0, 2), (1, 3), (2, 4)]);
        let g = graph(6, &edges);
        let w = EvenClosedWalk::from_vertices(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(!is_minimal_walk(&g, &w).unwrap());
        let two_chords = graph(6, &edges[..8]);
        let w2 = EvenClosedWalk::from_vertices(&two_chords, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(is_minimal_walk(&two_chords, &w2).unwrap());
        assert!(!is_indispensable_walk(&two_chords, &w2).unwrap());
    }

    #[test]
    fn pure_central_triangle_is_not_mixed() {
        // central triangle 0,1,2 with a triangle hung at each corner
        let g = graph(
            9,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 5), (5, 6), (6, 1), (2, 7), (7, 8), (8, 2)],
        );
        let w = euler_trail(&g).unwrap();
        assert!(is_primitive_walk(&g, &w));
        assert!(!is_mixed(&w).unwrap());
        assert!(!is_circuit_subgraph(&g, &g.full_edge_set()).unwrap());
    }
}
