//! Graph-independent lattice engine.
//!
//! Works on an arbitrary integer matrix `A` whose columns generate the
//! semigroup. Kernel vectors `u` stand for binomials `x^{u+} - x^{u-}`.

mod circuits;
mod fiber;
mod graver;
mod intarith;
pub mod lp;
mod markov;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::binomial::Binomial;
use crate::error::{Result, ToricError};
use crate::graph::Graph;

pub use circuits::circuits;
pub use fiber::{fiber, Fiber};
pub use graver::{graver, GraverResult};
pub use intarith::primitive_canonical;
pub use markov::{in_ugb, markov_by_fibers, MarkovElement, MarkovResult};

/// A kernel vector; canonical sign puts a positive entry first.
pub type LatticeVector = Vec<i64>;

/// Integer matrix whose columns are the generators `a_1, ..., a_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorConfig {
    matrix: Vec<Vec<i64>>,
    cols: usize,
    column_names: Option<Vec<String>>,
}

impl VectorConfig {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(ToricError::InvalidParameter("matrix dimensions must be positive".into()));
        }
        if let Some(r) = matrix.iter().find(|r| r.len() != cols) {
            return Err(ToricError::DimensionMismatch(r.len(), cols));
        }
        if let Some(c) = (0..cols).find(|&c| matrix.iter().all(|r| r[c] == 0)) {
            return Err(ToricError::InvalidParameter(format!("column {c} is zero")));
        }
        Ok(VectorConfig { matrix, cols, column_names: None })
    }

    /// Incidence configuration of a graph: one column `e_u + e_v` per edge.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        VectorConfig::new(g.incidence_matrix())
    }

    pub fn with_column_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.cols {
            return Err(ToricError::DimensionMismatch(names.len(), self.cols));
        }
        self.column_names = Some(names);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn column_names(&self) -> Option<&[String]> {
        self.column_names.as_deref()
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        self.matrix.iter().map(|r| r[c]).collect()
    }

    /// `A x`.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// A-degree of `x^{u+}`.
    pub fn degree_of(&self, u: &[i64]) -> Vec<i64> {
        let plus: Vec<i64> = u.iter().map(|&x| x.max(0)).collect();
        self.apply(&plus)
    }

    /// Text form: "rows cols" then the entries row by row.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nums = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                let v = tok.parse::<i64>().map_err(|_| ToricError::Parse {
                    line: ln + 1,
                    msg: format!("not an integer: {tok}"),
                })?;
                nums.push(v);
            }
        }
        let bad = |msg: String| ToricError::Parse { line: 1, msg };
        if nums.len() < 2 || nums[0] <= 0 || nums[1] <= 0 {
            return Err(bad("expected positive 'rows cols' header".into()));
        }
        let (rows, cols) = (nums[0] as usize, nums[1] as usize);
        if nums.len() != 2 + rows * cols {
            return Err(bad(format!("expected {} entries, found {}", rows * cols, nums.len() - 2)));
        }
        VectorConfig::new(nums[2..].chunks(cols).map(<[i64]>::to_vec).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows(), self.cols);
        for r in &self.matrix {
            let line: Vec<String> = r.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Rank of the matrix and an integer basis of its kernel lattice.
    pub fn kernel(&self) -> Result<(usize, Vec<LatticeVector>)> {
        intarith::integer_kernel(&self.matrix, self.cols)
    }

    /// Whether `NA ∩ -NA = {0}`: no nonzero `λ >= 0` has `A λ = 0`.
    pub fn is_pointed(&self) -> bool {
        let mut m = self.matrix.clone();
        m.push(vec![1; self.cols]);
        let mut b = vec![0; self.rows()];
        b.push(1);
        lp::feasible_point(&m, &b).is_none()
    }

    /// An integer functional `y` with `y · a_i >= 1` for every column, if pointed.
    pub fn pointed_functional(&self) -> Option<Vec<i64>> {
        if self.matrix.iter().flatten().all(|&x| x >= 0) {
            return Some(vec![1; self.rows()]);
        }
        // y = p - q with p, q >= 0 and slack s: A^T (p - q) - s = 1
        let rows = self.rows();
        let m: Vec<Vec<i64>> = (0..self.cols)
            .map(|c| {
                let mut r: Vec<i64> = (0..rows).map(|i| self.matrix[i][c]).collect();
                r.extend((0..rows).map(|i| -self.matrix[i][c]));
                r.extend((0..self.cols).map(|k| -((k == c) as i64)));
                r
            })
            .collect();
        let x = lp::feasible_point(&m, &vec![1; self.cols])?;
        let y: Vec<_> = (0..rows).map(|i| &x[i] - &x[rows + i]).collect();
        let lcm = y.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        y.iter().map(|v| (v.numer() * (&lcm / v.denom())).to_i64()).collect()
    }
}

/// Degree of a kernel vector: the larger total degree of its two parts.
pub fn vector_degree(u: &[i64]) -> u64 {
    let plus: i64 = u.iter().filter(|&&x| x > 0).sum();
    let minus: i64 = -u.iter().filter(|&&x| x < 0).sum::<i64>();
    plus.max(minus) as u64
}

pub fn l1_norm(u: &[i64]) -> u64 {
    u.iter().map(|x| x.unsigned_abs()).sum()
}

/// `u+ <= v+` and `u- <= v-` componentwise.
pub fn divides(u: &[i64], v: &[i64]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(ToricError::DimensionMismatch(u.len(), v.len()));
    }
    Ok(conformal_le(u, v))
}

/// The conformal order `u ⊑ v`.
pub(crate) fn conformal_le(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(&a, &b)| a == 0 || (a.signum() == b.signum() && a.abs() <= b.abs()))
}

pub fn to_binomial(u: &[i64]) -> Binomial {
    Binomial::from_lattice(u)
}

/// Canonically sorted binomials (degree, then lattice vector).
pub fn to_binomials(vs: &[LatticeVector]) -> Vec<Binomial> {
    let mut out: Vec<Binomial> = vs.iter().map(|v| to_binomial(v)).collect();
    out.sort();
    out
}

/// One vector per line, space-separated.
pub fn vectors_to_text(vs: &[LatticeVector]) -> String {
    vs.iter()
        .map(|v| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let a = VectorConfig::parse("# line\n1 2\n1 -1\n").unwrap();
        assert_eq!(a.matrix(), &[vec![1, -1]]);
        assert_eq!(a.to_text(), "1 2\n1 -1\n");
        assert!(VectorConfig::parse("1 2\n1").is_err());
        assert!(VectorConfig::parse("2 1\n0\n0").is_err());
    }

    #[test]
    fn pointedness() {
        let line = VectorConfig::new(vec![vec![1, -1]]).unwrap();
        assert!(!line.is_pointed());
        assert!(line.pointed_functional().is_none());
        let id = VectorConfig::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(id.is_pointed());
        let skew = VectorConfig::new(vec![vec![1, 1, 1], vec![-1, 0, 2]]).unwrap();
        assert!(skew.is_pointed());
        let y = skew.pointed_functional().unwrap();
        for c in 0..3 {
            let col = skew.column(c);
            assert!(col.iter().zip(&y).map(|(a, b)| a * b).sum::<i64>() >= 1);
        }
        let tri = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(VectorConfig::from_graph(&tri).unwrap().is_pointed());
    }

    #[test]
    fn divisibility() {
        assert!(divides(&[1, -1, 0, 0], &[1, -1, 1, -1]).unwrap());
        assert!(!divides(&[1, 1, 0, 0], &[1, -1, 1, -1]).unwrap());
        assert!(divides(&[1, -1, 1, -1], &[2, -2, 2, -2]).unwrap());
        assert!(divides(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(vector_degree(&[1, 1]), 2);
        assert_eq!(vector_degree(&[1, -1, 1, -1]), 2);
        assert_eq!(l1_norm(&[2, -1]), 3);
    }
}
