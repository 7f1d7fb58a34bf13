//! Fibers `{x in N^m : A x = b}` by bounded backtracking.

use super::VectorConfig;
use crate::error::{Result, ToricError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub degree: Vec<i64>,
    /// Lexicographically sorted.
    pub points: Vec<Vec<i64>>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(x)).is_ok()
    }

    pub fn index_of(&self, x: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(x)).ok()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RowSign {
    Zero,
    NonNeg,
    NonPos,
    Mixed,
}

struct Search<'a> {
    cols: Vec<Vec<i64>>,
    weights: Vec<i64>,
    y: &'a [i64],
    /// `suffix[j][i]`: sign pattern of row `i` over columns `j..`.
    suffix: Vec<Vec<RowSign>>,
    points: Vec<Vec<i64>>,
}

impl Search<'_> {
    fn feasible_rest(&self, j: usize, residual: &[i64]) -> bool {
        residual.iter().zip(&self.suffix[j]).all(|(&r, s)| match s {
            RowSign::Zero => r == 0,
            RowSign::NonNeg => r >= 0,
            RowSign::NonPos => r <= 0,
            RowSign::Mixed => true,
        })
    }

    fn explore(&mut self, j: usize, residual: &mut Vec<i64>, x: &mut Vec<i64>) {
        let m = self.cols.len();
        if !self.feasible_rest(j, residual) {
            return;
        }
        if j == m {
            self.points.push(x.clone());
            return;
        }
        let capacity: i64 = residual.iter().zip(self.y).map(|(r, y)| r * y).sum();
        if capacity < 0 {
            return;
        }
        let max = capacity / self.weights[j];
        if j + 1 == m {
            // the last coordinate is forced
            let col = &self.cols[j];
            let Some((i, &c)) = col.iter().enumerate().find(|(_, &c)| c != 0) else { return };
            if residual[i] % c != 0 {
                return;
            }
            let k = residual[i] / c;
            if k < 0 || k > max || residual.iter().zip(col).any(|(&r, &c)| r != k * c) {
                return;
            }
            x[j] = k;
            self.points.push(x.clone());
            x[j] = 0;
            return;
        }
        for k in 0..=max {
            x[j] = k;
            self.explore(j + 1, residual, x);
            for (r, c) in residual.iter_mut().zip(&self.cols[j]) {
                *r -= c;
            }
        }
        for (r, c) in residual.iter_mut().zip(&self.cols[j]) {
            *r += (max + 1) * c;
        }
        x[j] = 0;
    }
}

/// All nonnegative integer solutions of `A x = b`.
pub fn fiber(a: &VectorConfig, b: &[i64]) -> Result<Fiber> {
    if b.len() != a.rows() {
        return Err(ToricError::DimensionMismatch(b.len(), a.rows()));
    }
    let y = a.pointed_functional().ok_or(ToricError::InfiniteFiber)?;
    let m = a.cols();
    let cols: Vec<Vec<i64>> = (0..m).map(|c| a.column(c)).collect();
    let weights: Vec<i64> =
        cols.iter().map(|col| col.iter().zip(&y).map(|(p, q)| p * q).sum()).collect();
    let mut suffix = vec![vec![RowSign::Zero; a.rows()]; m + 1];
    for j in (0..m).rev() {
        for i in 0..a.rows() {
            let here = match cols[j][i].signum() {
                0 => RowSign::Zero,
                1 => RowSign::NonNeg,
                _ => RowSign::NonPos,
            };
            suffix[j][i] = match (suffix[j + 1][i], here) {
                (s, RowSign::Zero) => s,
                (RowSign::Zero, h) => h,
                (s, h) if s == h => s,
                _ => RowSign::Mixed,
            };
        }
    }
    let mut search = Search { cols, weights, y: &y, suffix, points: Vec::new() };
    let mut residual = b.to_vec();
    let mut x = vec![0; m];
    search.explore(0, &mut residual, &mut x);
    let mut points = search.points;
    points.sort();
    points.dedup();
    Ok(Fiber { degree: b.to_vec(), points })
}
