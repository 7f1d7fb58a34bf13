//! Graver basis by completion over the kernel lattice.

use std::collections::BTreeSet;

use super::{conformal_le, l1_norm, primitive_canonical, vector_degree, LatticeVector, VectorConfig};
use crate::budget::Budget;
use crate::error::{Result, ToricError};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraverResult {
    /// Sign-canonical, sorted by degree then lexicographically.
    pub elements: Vec<LatticeVector>,
    /// A degree cap or the budget may have dropped elements.
    pub truncated: bool,
}

fn sign_compatible(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(&a, &b)| a * b >= 0)
}

fn normal_form(mut s: LatticeVector, gens: &[LatticeVector]) -> LatticeVector {
    'outer: loop {
        if s.iter().all(|&x| x == 0) {
            return s;
        }
        for g in gens {
            if conformal_le(g, &s) {
                for (x, y) in s.iter_mut().zip(g) {
                    *x -= y;
                }
                continue 'outer;
            }
        }
        return s;
    }
}

pub(crate) fn canonical_order(a: &LatticeVector, b: &LatticeVector) -> std::cmp::Ordering {
    vector_degree(a).cmp(&vector_degree(b)).then_with(|| a.cmp(b))
}

/// All primitive kernel vectors of degree at most `degree_cap`.
///
/// Uncapped runs need a pointed configuration or a kernel of rank at most one.
pub fn graver(a: &VectorConfig, degree_cap: Option<u64>, budget: &Budget) -> Result<GraverResult> {
    let (_, basis) = a.kernel()?;
    let within = |v: &[i64]| degree_cap.is_none_or(|c| vector_degree(v) <= c);
    if basis.len() <= 1 {
        let elements: Vec<LatticeVector> = basis.iter().map(|v| primitive_canonical(v)).collect();
        let truncated = elements.iter().any(|v| !within(v));
        return Ok(GraverResult { elements: elements.into_iter().filter(|v| within(v)).collect(), truncated });
    }
    if degree_cap.is_none() && !a.is_pointed() {
        return Err(ToricError::CapRequired);
    }
    let mut gens: Vec<LatticeVector> = Vec::new();
    for v in &basis {
        gens.push(v.clone());
        gens.push(v.iter().map(|x| -x).collect());
    }
    let mut queue: BTreeSet<(u64, LatticeVector)> = BTreeSet::new();
    let mut truncated = false;
    let mut push_pairs = |r: &LatticeVector, gens: &[LatticeVector], queue: &mut BTreeSet<_>| {
        for g in gens {
            if sign_compatible(r, g) {
                continue;
            }
            let s: LatticeVector = r.iter().zip(g).map(|(x, y)| x + y).collect();
            if s.iter().all(|&x| x == 0) {
                continue;
            }
            if !within(&s) {
                truncated = true;
                continue;
            }
            queue.insert((l1_norm(&s), s));
        }
    };
    for i in 0..gens.len() {
        let (head, tail) = gens.split_at(i + 1);
        push_pairs(&head[i], tail, &mut queue);
    }
    while let Some((_, s)) = queue.pop_first() {
        if budget.expired() {
            truncated = true;
            break;
        }
        let r = normal_form(s, &gens);
        if r.iter().any(|&x| x != 0) {
            push_pairs(&r, &gens, &mut queue);
            gens.push(r);
        }
    }
    let mut canon: Vec<LatticeVector> = gens.iter().map(|v| primitive_canonical(v)).collect();
    canon.retain(|v| v.iter().any(|&x| x != 0));
    canon.sort_by(canonical_order);
    canon.dedup();
    let mut elements: Vec<LatticeVector> = canon
        .iter()
        .filter(|u| {
            canon.iter().all(|v| {
                let neg: LatticeVector = v.iter().map(|x| -x).collect();
                v == *u || (!conformal_le(v, u) && !conformal_le(&neg, u))
            })
        })
        .filter(|u| within(u))
        .cloned()
        .collect();
    elements.sort_by(canonical_order);
    Ok(GraverResult { elements, truncated })
}
