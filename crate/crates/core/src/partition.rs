//! Two-way partitions over original instance indices.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

/// Checks that `side1` and `side2` are disjoint with union `0..n` and returns
/// the per-index side assignment.
pub fn assignment(n: usize, side1: &[usize], side2: &[usize]) -> Result<Vec<Side>> {
    let mut seen: Vec<Option<Side>> = vec![None; n];
    for (side, list) in [(Side::One, side1), (Side::Two, side2)] {
        for &i in list {
            let slot = seen.get_mut(i).ok_or_else(|| {
                Error::InvalidPartition(format!("index {} out of range for {n} values", i + 1))
            })?;
            if slot.is_some() {
                return Err(Error::InvalidPartition(format!(
                    "index {} listed more than once",
                    i + 1
                )));
            }
            *slot = Some(side);
        }
    }
    seen.into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| Error::InvalidPartition(format!("index {} is not assigned", i + 1))))
        .collect()
}

/// Splits `0..n` into (side1, side2) given a side-1 list; the rest goes to side 2.
pub fn complement(n: usize, side1: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut on_one = vec![false; n];
    for &i in side1 {
        match on_one.get_mut(i) {
            None => {
                return Err(Error::InvalidPartition(format!(
                    "index {} out of range for {n} values",
                    i + 1
                )))
            }
            Some(true) => {
                return Err(Error::InvalidPartition(format!(
                    "index {} listed more than once",
                    i + 1
                )))
            }
            Some(slot) => *slot = true,
        }
    }
    let side2 = (0..n).filter(|&i| !on_one[i]).collect();
    Ok((side1.to_vec(), side2))
}

/// `S1 - S2` for the given index sets, recomputed from the instance values.
pub fn signed_difference(instance: &Instance, side1: &[usize], side2: &[usize]) -> Value {
    let s1: Value = side1.iter().map(|&i| &instance.values[i]).sum();
    let s2: Value = side2.iter().map(|&i| &instance.values[i]).sum();
    s1 - s2
}

pub fn abs_difference(instance: &Instance, side1: &[usize], side2: &[usize]) -> Value {
    signed_difference(instance, side1, side2).abs()
}
