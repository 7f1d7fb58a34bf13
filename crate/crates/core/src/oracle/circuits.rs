//! Circuits: support-minimal kernel vectors.

use rayon::prelude::*;

use super::graver::canonical_order;
use super::intarith::integer_kernel;
use super::{primitive_canonical, LatticeVector, VectorConfig};
use crate::error::Result;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { break };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Every circuit, as the primitive generator of the kernel line of some
/// column subset of size `rank + 1` with nullity one.
pub fn circuits(a: &VectorConfig) -> Result<Vec<LatticeVector>> {
    let (rank, _) = a.kernel()?;
    let m = a.cols();
    if rank == m {
        return Ok(Vec::new());
    }
    let found: Vec<Result<Option<LatticeVector>>> = combinations(m, rank + 1)
        .into_par_iter()
        .map(|cols| {
            let sub: Vec<Vec<i64>> =
                a.matrix().iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
            let (_, ker) = integer_kernel(&sub, cols.len())?;
            if ker.len() != 1 {
                return Ok(None);
            }
            let mut v = vec![0i64; m];
            for (&c, &x) in cols.iter().zip(&ker[0]) {
                v[c] = x;
            }
            Ok(Some(primitive_canonical(&v)))
        })
        .collect();
    let mut out = Vec::new();
    for r in found {
        if let Some(v) = r? {
            out.push(v);
        }
    }
    out.sort_by(canonical_order);
    out.dedup();
    Ok(out)
}
