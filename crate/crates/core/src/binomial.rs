//! Pure-difference binomials `x^plus - x^minus`, stored sparsely.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Result, ToricError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    nvars: usize,
    plus: Vec<(usize, u64)>,
    minus: Vec<(usize, u64)>,
    reduced: bool,
}

fn sparse(dense: &[u64]) -> Vec<(usize, u64)> {
    dense.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect()
}

fn dense(nvars: usize, sparse: &[(usize, u64)]) -> Vec<u64> {
    let mut out = vec![0; nvars];
    for &(i, e) in sparse {
        out[i] = e;
    }
    out
}

impl Binomial {
    /// Builds `x^plus - x^minus` in canonical sign (plus lexicographically
    /// greater). Overlapping supports are kept and flagged as unreduced.
    pub fn from_dense(plus: &[u64], minus: &[u64]) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(ToricError::DimensionMismatch(plus.len(), minus.len()));
        }
        let (p, m) = if plus < minus { (minus, plus) } else { (plus, minus) };
        let reduced = p.iter().zip(m).all(|(&a, &b)| a == 0 || b == 0);
        Ok(Binomial { nvars: plus.len(), plus: sparse(p), minus: sparse(m), reduced })
    }

    /// `x^{v+} - x^{v-}` for a lattice vector `v`.
    pub fn from_lattice(v: &[i64]) -> Self {
        let plus: Vec<u64> = v.iter().map(|&x| x.max(0) as u64).collect();
        let minus: Vec<u64> = v.iter().map(|&x| (-x).max(0) as u64).collect();
        Binomial::from_dense(&plus, &minus).expect("equal lengths")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn plus(&self) -> &[(usize, u64)] {
        &self.plus
    }

    pub fn minus(&self) -> &[(usize, u64)] {
        &self.minus
    }

    pub fn plus_dense(&self) -> Vec<u64> {
        dense(self.nvars, &self.plus)
    }

    pub fn minus_dense(&self) -> Vec<u64> {
        dense(self.nvars, &self.minus)
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.plus == self.minus
    }

    /// Cancels the common monomial factor of both terms.
    pub fn reduce(&self) -> Binomial {
        let p = self.plus_dense();
        let m = self.minus_dense();
        let common: Vec<u64> = p.iter().zip(&m).map(|(&a, &b)| a.min(b)).collect();
        let p: Vec<u64> = p.iter().zip(&common).map(|(a, c)| a - c).collect();
        let m: Vec<u64> = m.iter().zip(&common).map(|(a, c)| a - c).collect();
        Binomial::from_dense(&p, &m).expect("equal lengths")
    }

    pub fn plus_degree(&self) -> u64 {
        self.plus.iter().map(|&(_, e)| e).sum()
    }

    pub fn minus_degree(&self) -> u64 {
        self.minus.iter().map(|&(_, e)| e).sum()
    }

    /// Larger total degree of the two terms (both agree for homogeneous ideals).
    pub fn degree(&self) -> u64 {
        self.plus_degree().max(self.minus_degree())
    }

    /// Sorted indices of variables occurring in either term.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.plus.iter().chain(&self.minus).map(|&(i, _)| i).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// `plus - minus` as a lattice vector (requires a reduced binomial).
    pub fn to_lattice(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.nvars];
        for &(i, e) in &self.plus {
            v[i] += e as i64;
        }
        for &(i, e) in &self.minus {
            v[i] -= e as i64;
        }
        v
    }

    /// A-degree `A * plus` for a configuration given row-major.
    pub fn a_degree(&self, matrix: &[Vec<i64>]) -> Vec<i64> {
        matrix
            .iter()
            .map(|row| self.plus.iter().map(|&(i, e)| row[i] * e as i64).sum())
            .collect()
    }

    pub fn is_homogeneous(&self, matrix: &[Vec<i64>]) -> bool {
        matrix.iter().all(|row| {
            let p: i64 = self.plus.iter().map(|&(i, e)| row[i] * e as i64).sum();
            let m: i64 = self.minus.iter().map(|&(i, e)| row[i] * e as i64).sum();
            p == m
        })
    }

    pub fn parse(nvars: usize, text: &str) -> Result<Self> {
        let bad = |msg: &str| ToricError::Parse { line: 0, msg: format!("{msg}: {text:?}") };
        let (lhs, rhs) = text.split_once(" - ").ok_or_else(|| bad("expected 'a - b'"))?;
        let mut terms = [vec![0u64; nvars], vec![0u64; nvars]];
        for (side, src) in [lhs, rhs].iter().enumerate() {
            let src = src.trim();
            if src == "1" {
                continue;
            }
            for factor in src.split('*') {
                let (var, exp) = match factor.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u64>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                let idx = var
                    .strip_prefix('e')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&i| i < nvars)
                    .ok_or_else(|| bad("bad variable"))?;
                terms[side][idx] += exp;
            }
        }
        Binomial::from_dense(&terms[0], &terms[1])
    }

    /// Canonical ordering: degree, then lattice vector lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.to_lattice().cmp(&other.to_lattice()))
            .then_with(|| self.plus.cmp(&other.plus))
    }
}

impl PartialOrd for Binomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Binomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, terms: &[(usize, u64)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "1");
    }
    for (k, &(i, e)) in terms.iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        if e == 1 {
            write!(f, "e{i}")?;
        } else {
            write!(f, "e{i}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, &self.plus)?;
        write!(f, " - ")?;
        write_monomial(f, &self.minus)
    }
}

impl Serialize for Binomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Binomial", 2)?;
        s.serialize_field("plus", &self.plus)?;
        s.serialize_field("minus", &self.minus)?;
        s.end()
    }
}
