//! Exact minimum differences for small instances.
//!
//! Both routes minimize `|Σ s_n x_n|` over sign vectors with `s_0 = +1` (a
//! partition and its mirror image have the same difference). Signed inputs
//! need no special handling in this formulation.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::value::Value;

pub const ENUM_LIMIT: usize = 24;
pub const MITM_LIMIT: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub optimal_diff: Value,
    /// Zero-based indices with sign +1, ascending.
    pub witness_side1: Vec<usize>,
}

impl OracleResult {
    pub fn witness_side2(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|i| !self.witness_side1.contains(i)).collect()
    }
}

/// Whether sign mask `a` precedes `b` when sign vectors are read in index
/// order with `+1` before `-1`. Bit `i` set means index `i` has sign `-1`.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) == 0
}

fn side1_of(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 0).collect()
}

/// Exhaustive search over all `2^(N-1)` sign vectors in Gray-code order.
///
/// Among minimizers the witness is the lexicographically smallest sign vector.
pub fn optimal_diff_enum(instance: &Instance) -> Result<OracleResult> {
    let n = instance.len();
    if n > ENUM_LIMIT {
        return Err(Error::TooLarge {
            method: "exhaustive oracle",
            n,
            limit: ENUM_LIMIT,
        });
    }
    if n == 0 {
        return Ok(OracleResult {
            optimal_diff: Value::zero(),
            witness_side1: Vec::new(),
        });
    }
    let doubled: Vec<Value> = instance.values.iter().map(Value::double).collect();
    let mut d = instance.total();
    let mut mask = 0u64;
    let mut best = d.abs();
    let mut best_mask = 0u64;
    for k in 1u64..1 << (n - 1) {
        let j = k.trailing_zeros() as usize + 1;
        mask ^= 1 << j;
        if mask >> j & 1 == 1 {
            d -= &doubled[j];
        } else {
            d += &doubled[j];
        }
        match d.cmp_abs(&best) {
            std::cmp::Ordering::Less => {
                best = d.abs();
                best_mask = mask;
            }
            std::cmp::Ordering::Equal if lex_less(mask, best_mask) => best_mask = mask,
            _ => {}
        }
    }
    Ok(OracleResult {
        optimal_diff: best,
        witness_side1: side1_of(best_mask, n),
    })
}

/// All `(signed sum, mask)` pairs for `values`, masks shifted by `offset`.
/// With `fix_first` the first value keeps sign +1.
fn half_sums(values: &[Value], offset: usize, fix_first: bool) -> Vec<(Value, u64)> {
    let free = values.len() - usize::from(fix_first && !values.is_empty());
    let start = values.len() - free;
    let mut out = Vec::with_capacity(1 << free);
    let mut d: Value = values.iter().sum();
    let mut mask = 0u64;
    out.push((d.clone(), 0));
    for k in 1u64..1 << free {
        let j = k.trailing_zeros() as usize + start;
        mask ^= 1 << j;
        if mask >> j & 1 == 1 {
            d -= &values[j].double();
        } else {
            d += &values[j].double();
        }
        out.push((d.clone(), mask << offset));
    }
    out
}

/// Horowitz–Sahni meet in the middle: enumerate signed sums of each half,
/// sort the right half and match every left sum against its closest negation.
pub fn optimal_diff_mitm(instance: &Instance) -> Result<OracleResult> {
    let n = instance.len();
    if n > MITM_LIMIT {
        return Err(Error::TooLarge {
            method: "meet-in-the-middle oracle",
            n,
            limit: MITM_LIMIT,
        });
    }
    if n == 0 {
        return Ok(OracleResult {
            optimal_diff: Value::zero(),
            witness_side1: Vec::new(),
        });
    }
    let h = n.div_ceil(2);
    let left = half_sums(&instance.values[..h], 0, true);
    let mut right = half_sums(&instance.values[h..], h, false);
    right.sort();

    let mut best: Option<(Value, u64)> = None;
    for (l, lmask) in &left {
        let target = -l;
        let p = right.partition_point(|(r, _)| r < &target);
        for q in [p.checked_sub(1), Some(p)].into_iter().flatten() {
            let Some((r, rmask)) = right.get(q) else {
                continue;
            };
            let diff = (l + r).abs();
            let mask = lmask | rmask;
            let better = match &best {
                None => true,
                Some((b, bmask)) => diff < *b || (diff == *b && lex_less(mask, *bmask)),
            };
            if better {
                best = Some((diff, mask));
            }
        }
    }
    let (optimal_diff, mask) = best.expect("left half is never empty");
    Ok(OracleResult {
        optimal_diff,
        witness_side1: side1_of(mask, n),
    })
}

/// Exhaustive search when it fits, otherwise meet in the middle.
pub fn optimal_diff(instance: &Instance) -> Result<OracleResult> {
    if instance.len() <= ENUM_LIMIT {
        optimal_diff_enum(instance)
    } else {
        optimal_diff_mitm(instance)
    }
}
