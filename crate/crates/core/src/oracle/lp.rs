//! Exact rational feasibility of `M x = b, x >= 0` by Phase-I simplex with
//! Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A feasible point of `m x = b, x >= 0`, or `None` when infeasible.
pub fn feasible_point(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let n = m.first().map_or(0, Vec::len);
    // tableau columns: n originals, rows artificials, then rhs
    let width = n + rows + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows + 1);
    for (i, row) in m.iter().enumerate() {
        let flip = b[i] < 0;
        let s = if flip { -1 } else { 1 };
        let mut r: Vec<BigRational> = row.iter().map(|&x| rat(s * x)).collect();
        r.extend((0..rows).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
        r.push(rat(s * b[i]));
        t.push(r);
    }
    // objective row: minimize the sum of artificials, stored as reduced costs
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + rows).collect();
    while let Some(enter) = (0..n + rows).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        pivot(&mut t, &mut obj, pr, enter);
        basis[pr] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], obj: &mut [BigRational], pr: usize, pc: usize) {
    let p = t[pr][pc].clone();
    for v in t[pr].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[pr].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
    if !obj[pc].is_zero() {
        let f = obj[pc].clone();
        for (v, pv) in obj.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &[Vec<i64>], b: &[i64], x: &[BigRational]) {
        for (row, &bi) in m.iter().zip(b) {
            let s: BigRational = row.iter().zip(x).map(|(&a, xi)| rat(a) * xi).sum();
            assert_eq!(s, rat(bi));
        }
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn feasible_systems_return_points() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let b = vec![2, 3];
        check(&m, &b, &feasible_point(&m, &b).unwrap());
        let m = vec![vec![1, -1]];
        check(&m, &[-3], &feasible_point(&m, &[-3]).unwrap());
    }

    #[test]
    fn infeasible_systems() {
        assert!(feasible_point(&[vec![1, 1]], &[-1]).is_none());
        // x + y = 1 and x + y = 2
        assert!(feasible_point(&[vec![1, 1], vec![1, 1]], &[1, 2]).is_none());
    }

    #[test]
    fn degenerate_rows() {
        let m = vec![vec![1, 2], vec![2, 4], vec![0, 0]];
        let b = vec![2, 4, 0];
        check(&m, &b, &feasible_point(&m, &b).unwrap());
    }
}
