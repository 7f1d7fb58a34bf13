//! Extremal graph families and the closed-form statistics they are
//! compared against.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Result, ToricError};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Ladder { n: usize },
    /// The graph `G_r^n`.
    TriangleTree { n: usize, r: usize },
    Subdivision { base: Box<FamilySpec>, k: usize },
    Complete { n: usize },
    /// Two triangles sharing a vertex.
    Bowtie,
    /// The configuration `{1, -1}`; a matrix, not a graph.
    NonpointedLine,
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(ToricError::InvalidParameter(msg));
        match self {
            FamilySpec::Ladder { n } if *n < 1 => bad(format!("ladder needs n >= 1, got {n}")),
            FamilySpec::TriangleTree { n, .. } if *n < 3 || n % 2 == 0 => {
                bad(format!("n must be odd and at least 3, got {n}"))
            }
            FamilySpec::Subdivision { k, .. } if *k < 2 => bad(format!("subdivision needs k >= 2, got {k}")),
            FamilySpec::Subdivision { base, .. } => base.validate(),
            FamilySpec::Complete { n } if *n < 3 => bad(format!("complete graph needs n >= 3, got {n}")),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match self {
            FamilySpec::Ladder { n } => ladder_graph(*n),
            FamilySpec::TriangleTree { n, r } => triangle_tree(*n, *r),
            FamilySpec::Subdivision { base, k } => subdivide(&base.build()?, *k),
            FamilySpec::Complete { n } => complete_graph(*n),
            FamilySpec::Bowtie => Ok(bowtie_graph()),
            FamilySpec::NonpointedLine => {
                Err(ToricError::InvalidParameter("the nonpointed line is a matrix, not a graph".into()))
            }
        }
    }

    /// Edge-list text (matrix text for the nonpointed line), preceded by
    /// comment lines naming the family and the vertices.
    pub fn emit(&self) -> Result<String> {
        if *self == FamilySpec::NonpointedLine {
            return Ok(format!("# {self}\n1 2\n1 -1\n"));
        }
        let g = self.build()?;
        let mut out = format!("# {self}\n");
        if let Some(labels) = g.labels() {
            for (v, name) in labels {
                writeln!(out, "# vertex {v} {name}").unwrap();
            }
        }
        out.push_str(&g.to_edge_list());
        Ok(out)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Ladder { n } => write!(f, "ladder n={n}"),
            FamilySpec::TriangleTree { n, r } => write!(f, "triangle-tree n={n} r={r}"),
            FamilySpec::Subdivision { base, k } => write!(f, "{base} subdivided k={k}"),
            FamilySpec::Complete { n } => write!(f, "complete n={n}"),
            FamilySpec::Bowtie => write!(f, "bowtie"),
            FamilySpec::NonpointedLine => write!(f, "nonpointed-line"),
        }
    }
}

/// Two rungs of 4-cycles hanging off the paths `v_1..v_{n+1}` and
/// `u_1..u_{n+1}`, closed by the edges `v_1u_1` and `v_{n+1}u_{n+1}`.
pub fn ladder_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(ToricError::InvalidParameter(format!("ladder needs n >= 1, got {n}")));
    }
    let v = |i: usize| i - 1;
    let u = |i: usize| n + i;
    let s = |i: usize| 2 * n + 2 + 4 * (i - 1);
    let t = |i: usize| s(i) + 1;
    let x = |i: usize| s(i) + 2;
    let y = |i: usize| s(i) + 3;
    let mut edges = Vec::with_capacity(8 * n + 2);
    for i in 1..=n {
        edges.extend([
            (v(i), s(i)),
            (s(i), t(i)),
            (t(i), v(i + 1)),
            (v(i), v(i + 1)),
            (u(i), x(i)),
            (x(i), y(i)),
            (y(i), u(i + 1)),
            (u(i), u(i + 1)),
        ]);
    }
    edges.push((v(1), u(1)));
    edges.push((v(n + 1), u(n + 1)));
    let mut labels = BTreeMap::new();
    for i in 1..=n + 1 {
        labels.insert(v(i), format!("v{i}"));
        labels.insert(u(i), format!("u{i}"));
    }
    for i in 1..=n {
        labels.insert(s(i), format!("s{i}"));
        labels.insert(t(i), format!("t{i}"));
        labels.insert(x(i), format!("x{i}"));
        labels.insert(y(i), format!("y{i}"));
    }
    Ok(Graph::new(6 * n + 2, edges)?.with_labels(labels))
}

/// `G_r^n`: an `n`-cycle, then `r` rounds gluing a new `n`-cycle at every
/// vertex of degree two, hosts taken in index order.
pub fn triangle_tree(n: usize, r: usize) -> Result<Graph> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(ToricError::InvalidParameter(format!("n must be odd and at least 3, got {n}")));
    }
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut vertices = n;
    let mut degree = vec![2usize; n];
    for _ in 0..r {
        let hosts: Vec<usize> = (0..vertices).filter(|&v| degree[v] == 2).collect();
        for h in hosts {
            let ring: Vec<usize> =
                std::iter::once(h).chain(vertices..vertices + n - 1).collect();
            vertices += n - 1;
            degree.resize(vertices, 0);
            for i in 0..n {
                let (a, b) = (ring[i], ring[(i + 1) % n]);
                edges.push((a, b));
                degree[a] += 1;
                degree[b] += 1;
            }
        }
    }
    Graph::new(vertices, edges)
}

/// `S_k(g)`: every edge `uv` becomes the path `u, x(e)_1, ..., x(e)_{k-1}, v`.
pub fn subdivide(g: &Graph, k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(ToricError::InvalidParameter(format!("subdivision needs k >= 2, got {k}")));
    }
    let mut vertices = g.vertex_count();
    let mut edges = Vec::with_capacity(k * g.edge_count());
    let mut labels = g.labels().cloned();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut prev = u;
        for i in 1..k {
            if let Some(l) = labels.as_mut() {
                l.insert(vertices, format!("x({e})_{i}"));
            }
            edges.push((prev, vertices));
            prev = vertices;
            vertices += 1;
        }
        edges.push((prev, v));
    }
    let out = Graph::new(vertices, edges)?;
    Ok(match labels {
        Some(l) => out.with_labels(l),
        None => out,
    })
}

pub fn bowtie_graph() -> Graph {
    Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).expect("valid graph")
}

/// Degree of the binomial of a closed walk traversing each of `edges` edges
/// once, after every edge is subdivided into `k` pieces.
pub fn closed_walk_degree(edges: u64, k: u64) -> Result<u64> {
    let twice = k.checked_mul(edges).ok_or(ToricError::Overflow("walk degree"))?;
    if twice % 2 != 0 {
        return Err(ToricError::Invariant("odd closed walk length".into()));
    }
    Ok(twice / 2)
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(ToricError::InvalidParameter(format!("complete graph needs n >= 3, got {n}")));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Graph::new(n, edges)
}

fn check_odd(n: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(ToricError::InvalidParameter(format!("n must be odd and at least 3, got {n}")));
    }
    Ok(())
}

/// Edge count of `G_r^n`: `n + n^2 ((n-1)^r - 1) / (n-2)`.
pub fn triangle_tree_edges(n: u64, r: u32) -> Result<u64> {
    check_odd(n)?;
    let grown = (n - 1)
        .checked_pow(r)
        .and_then(|p| (p - 1).checked_mul(n * n))
        .ok_or(ToricError::Overflow("triangle tree edge count"))?;
    if grown % (n - 2) != 0 {
        return Err(ToricError::Invariant("non-integral edge count".into()));
    }
    Ok(n + grown / (n - 2))
}

/// Degree of the Euler-trail binomial of `S_k(G_r^n)` (`k = 1` for `G_r^n` itself).
pub fn expected_euler_degree(n: u64, r: u32, k: u64) -> Result<u64> {
    closed_walk_degree(triangle_tree_edges(n, r)?, k)
}

/// Largest circuit degree of `S_k(G_r^n)`: `k(n + (2r-1)(n-1))`.
pub fn expected_max_circuit_degree(n: u64, r: u64, k: u64) -> Result<u64> {
    check_odd(n)?;
    if r < 1 || k < 1 {
        return Err(ToricError::InvalidParameter("r and k must be at least 1".into()));
    }
    Ok(k * (n + (2 * r - 1) * (n - 1)))
}

/// `(|M|, |C|)` for the ladder: `(2n+1, 2n+4^n)`; circuits, universal
/// Gröbner and Graver bases all have the second size.
pub fn expected_ladder_sizes(n: u64) -> Result<(u64, u64)> {
    if n < 1 {
        return Err(ToricError::InvalidParameter(format!("ladder needs n >= 1, got {n}")));
    }
    let pow = 4u64.checked_pow(n as u32).ok_or(ToricError::Overflow("4^n"))?;
    Ok((2 * n + 1, 2 * n + pow))
}

/// `(|M|, max Markov degree)` for the line configuration built from the
/// pairwise coprime `q`: `(s, 2 Q / min q)` with `Q` the product.
pub fn expected_line_markov(q: &[u64]) -> Result<(u64, num_bigint::BigUint)> {
    let smallest = *q.iter().min().ok_or(ToricError::EmptySet)?;
    let product: num_bigint::BigUint = q.iter().map(|&x| num_bigint::BigUint::from(x)).product();
    Ok((q.len() as u64, product * 2u32 / smallest))
}

/// `(max Graver degree, max Markov degree)` of `K_n`: `(n-2, 2)`.
pub fn expected_kn_degrees(n: u64) -> Result<(u64, u64)> {
    if n < 4 {
        return Err(ToricError::InvalidParameter(format!("needs n >= 4, got {n}")));
    }
    Ok((n - 2, 2))
}
