//! Exact integer kernels: a checked 64-bit fast path with a big-integer fallback.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Result, ToricError};

pub(crate) trait ExactInt: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs_cmp_lt(&self, other: &Self) -> bool;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_div(&self, other: &Self) -> Option<Self>;
    fn to_i64(&self) -> Option<i64>;
}

impl ExactInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_cmp_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        i64::checked_div(*self, *other)
    }
    fn to_i64(&self) -> Option<i64> {
        Some(*self)
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

/// Column-style echelon reduction of `a` tracking the unimodular transform.
/// Returns `(rank, kernel basis)` or `None` on overflow.
fn kernel_generic<T: ExactInt>(a: &[Vec<i64>], cols: usize) -> Option<(usize, Vec<Vec<T>>)> {
    let rows = a.len();
    // work[c] = column c of A stacked on column c of the identity
    let mut work: Vec<Vec<T>> = (0..cols)
        .map(|c| {
            let mut col: Vec<T> = (0..rows).map(|r| T::from_i64(a[r][c])).collect();
            col.extend((0..cols).map(|k| T::from_i64((k == c) as i64)));
            col
        })
        .collect();
    let mut k = 0;
    for r in 0..rows {
        if k == cols {
            break;
        }
        loop {
            // smallest nonzero entry in row r among columns k..
            let mut best: Option<usize> = None;
            for c in k..cols {
                if !work[c][r].is_zero() && best.is_none_or(|b| work[c][r].abs_cmp_lt(&work[b][r])) {
                    best = Some(c);
                }
            }
            let Some(p) = best else { break };
            work.swap(k, p);
            let mut done = true;
            for c in k + 1..cols {
                if work[c][r].is_zero() {
                    continue;
                }
                let q = work[c][r].checked_div(&work[k][r])?;
                let (head, tail) = work.split_at_mut(c);
                for (x, p) in tail[0].iter_mut().zip(&head[k]) {
                    *x = x.checked_sub(&p.checked_mul(&q)?)?;
                }
                if !work[c][r].is_zero() {
                    done = false;
                }
            }
            if done {
                k += 1;
                break;
            }
        }
    }
    let kernel = work[k..].iter().map(|col| col[rows..].to_vec()).collect();
    Some((k, kernel))
}

fn to_i64_vec<T: ExactInt>(v: &[T]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// Rank of `a` and an integer basis of `{x : a x = 0}`.
pub fn integer_kernel(a: &[Vec<i64>], cols: usize) -> Result<(usize, Vec<Vec<i64>>)> {
    if let Some(res) = kernel_generic::<i64>(a, cols) {
        return Ok(res);
    }
    let (rank, big) = kernel_generic::<BigInt>(a, cols).expect("big integers do not overflow");
    let basis = big
        .iter()
        .map(|v| to_i64_vec(v).ok_or(ToricError::Overflow("kernel basis")))
        .collect::<Result<Vec<_>>>()?;
    Ok((rank, basis))
}

/// Divides out the content and fixes the sign so the first nonzero entry is positive.
pub fn primitive_canonical(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g == 0 {
        return v.to_vec();
    }
    let sign = v.iter().find(|&&x| x != 0).map_or(1, |&x| x.signum());
    v.iter().map(|&x| x / g * sign).collect()
}
