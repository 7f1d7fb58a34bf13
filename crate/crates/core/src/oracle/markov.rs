//! Markov bases by fiber connectivity and the fiber-edge test for universal
//! Gröbner membership.

use std::collections::BTreeMap;

use super::fiber::{fiber, Fiber};
use super::graver::graver;
use super::{lp, LatticeVector, VectorConfig};
use crate::budget::Budget;
use crate::error::{Result, ToricError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovElement {
    pub vector: LatticeVector,
    pub indispensable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MarkovResult {
    /// One Markov basis, sorted by degree then lexicographically.
    pub basis: Vec<MarkovElement>,
    /// Graver elements that belong to some Markov basis.
    pub minimal: Vec<LatticeVector>,
    /// Every Graver fiber is connected by the chosen basis.
    pub audit_ok: bool,
    pub truncated: bool,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    /// Joins the two classes; false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
        true
    }

    fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

fn plus(u: &[i64]) -> Vec<i64> {
    u.iter().map(|&x| x.max(0)).collect()
}

fn minus(u: &[i64]) -> Vec<i64> {
    u.iter().map(|&x| (-x).max(0)).collect()
}

/// Joins fiber points differing by a multiple of one of `moves`.
fn connect_by_moves(f: &Fiber, moves: &[LatticeVector]) -> UnionFind {
    let mut uf = UnionFind::new(f.len());
    for (i, x) in f.points.iter().enumerate() {
        for u in moves {
            for (take, give) in [(plus(u), minus(u)), (minus(u), plus(u))] {
                if x.iter().zip(&take).all(|(a, b)| a >= b) {
                    let y: Vec<i64> =
                        x.iter().zip(&take).zip(&give).map(|((a, b), c)| a - b + c).collect();
                    let j = f.index_of(&y).expect("moves preserve the fiber");
                    uf.union(i, j);
                }
            }
        }
    }
    uf
}

/// A Markov basis built degree by degree over the A-degrees of the Graver
/// basis, with indispensability flags and the set of all minimal elements.
pub fn markov_by_fibers(a: &VectorConfig, budget: &Budget) -> Result<MarkovResult> {
    if !a.is_pointed() {
        return Err(ToricError::NotPointed);
    }
    let y = a.pointed_functional().ok_or(ToricError::NotPointed)?;
    let gr = graver(a, None, budget)?;
    let mut by_degree: BTreeMap<(i64, Vec<i64>), Vec<LatticeVector>> = BTreeMap::new();
    for u in &gr.elements {
        let b = a.degree_of(u);
        let weight = b.iter().zip(&y).map(|(p, q)| p * q).sum();
        by_degree.entry((weight, b)).or_default().push(u.clone());
    }
    let mut accepted: Vec<LatticeVector> = Vec::new();
    let mut basis = Vec::new();
    let mut minimal = Vec::new();
    let mut audit_ok = true;
    for ((_, b), elements) in &by_degree {
        let f = fiber(a, b)?;
        let mut uf = connect_by_moves(&f, &accepted);
        let lower_components = uf.components();
        let ends = |u: &LatticeVector| {
            (f.index_of(&plus(u)).expect("in fiber"), f.index_of(&minus(u)).expect("in fiber"))
        };
        for u in elements {
            let (p, q) = ends(u);
            if uf.find(p) != uf.find(q) {
                minimal.push(u.clone());
            }
        }
        let mut added = Vec::new();
        for u in elements {
            let (p, q) = ends(u);
            if uf.union(p, q) {
                let indispensable = f.len() == 2 && lower_components == 2;
                basis.push(MarkovElement { vector: u.clone(), indispensable });
                added.push(u.clone());
            }
        }
        accepted.extend(added);
        if connect_by_moves(&f, &accepted).components() != 1 {
            audit_ok = false;
        }
    }
    basis.sort_by(|x, y| super::graver::canonical_order(&x.vector, &y.vector));
    minimal.sort_by(super::graver::canonical_order);
    Ok(MarkovResult { basis, minimal, audit_ok, truncated: gr.truncated })
}

/// Whether the binomial of the primitive vector `u` lies in the universal
/// Gröbner basis: `[u+, u-]` must be an edge of the convex hull of its fiber.
///
/// Decided by Motzkin's alternative: no weight separates the segment from the
/// other fiber points iff some convex combination of `u+ - x` lies on the
/// line through `u`.
pub fn in_ugb(a: &VectorConfig, u: &[i64]) -> Result<bool> {
    if u.len() != a.cols() {
        return Err(ToricError::DimensionMismatch(u.len(), a.cols()));
    }
    if a.apply(u).iter().any(|&x| x != 0) || u.iter().all(|&x| x == 0) {
        return Err(ToricError::NotPrimitive);
    }
    let (p, q) = (plus(u), minus(u));
    let f = fiber(a, &a.apply(&p))?;
    let others: Vec<&Vec<i64>> = f.points.iter().filter(|x| **x != p && **x != q).collect();
    // a fiber point below |u| would make u non-primitive; in particular no
    // point lies strictly inside the segment
    let abs: Vec<i64> = u.iter().map(|x| x.abs()).collect();
    if others.iter().any(|x| x.iter().zip(&abs).all(|(a, b)| a <= b)) {
        return Err(ToricError::NotPrimitive);
    }
    if others.is_empty() {
        return Ok(true);
    }
    // columns: lambda_x for each other point, then mu+ and mu-
    let m = a.cols();
    let mut rows: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            let mut r: Vec<i64> = others.iter().map(|x| p[i] - x[i]).collect();
            r.push(u[i]);
            r.push(-u[i]);
            r
        })
        .collect();
    let mut sum = vec![1; others.len()];
    sum.extend([0, 0]);
    rows.push(sum);
    let mut rhs = vec![0; m];
    rhs.push(1);
    Ok(lp::feasible_point(&rows, &rhs).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn square_is_principal_and_indispensable() {
        let c4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let a = VectorConfig::from_graph(&c4).unwrap();
        let mk = markov_by_fibers(&a, &Budget::unlimited()).unwrap();
        assert_eq!(mk.basis, vec![MarkovElement { vector: vec![1, -1, 1, -1], indispensable: true }]);
        assert!(mk.audit_ok);
        assert!(in_ugb(&a, &[1, -1, 1, -1]).unwrap());
    }

    #[test]
    fn k4_needs_two_of_three() {
        let a = VectorConfig::from_graph(&complete(4)).unwrap();
        let mk = markov_by_fibers(&a, &Budget::unlimited()).unwrap();
        assert_eq!(mk.basis.len(), 2);
        assert_eq!(mk.minimal.len(), 3);
        assert!(mk.basis.iter().all(|e| !e.indispensable));
        assert!(mk.audit_ok);
    }

    #[test]
    fn twisted_cubic_ugb() {
        let a = VectorConfig::new(vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap();
        let gr = graver(&a, None, &Budget::unlimited()).unwrap();
        let mk = markov_by_fibers(&a, &Budget::unlimited()).unwrap();
        assert_eq!(mk.basis.len(), 3);
        for e in &mk.basis {
            assert!(in_ugb(&a, &e.vector).unwrap());
        }
        assert!(gr.elements.iter().filter(|u| in_ugb(&a, u).unwrap()).count() >= 3);
    }

    #[test]
    fn non_primitive_and_nonpointed_inputs() {
        let c4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let a = VectorConfig::from_graph(&c4).unwrap();
        assert_eq!(in_ugb(&a, &[2, -2, 2, -2]), Err(ToricError::NotPrimitive));
        let line = VectorConfig::new(vec![vec![1, -1]]).unwrap();
        assert_eq!(markov_by_fibers(&line, &Budget::unlimited()), Err(ToricError::NotPointed));
    }
}
