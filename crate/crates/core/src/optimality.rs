//! Verification of local 2-optimality.
//!
//! A partition is locally 2-optimal when relocating any one element, or any
//! two distinct elements (from the same side or from opposite sides), leaves
//! `|S1 - S2|` unchanged or larger. Relocating element `e` changes
//! `D = S1 - S2` by `-2 x_e` if it sits on side 1 and by `+2 x_e` otherwise.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::partition::{assignment, Side};
use crate::value::Value;

/// An improving relocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Zero-based original indices of the moved elements, ascending.
    pub moved: Vec<usize>,
    /// `|S1 - S2|` after the move.
    pub new_diff: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub is_locally_2opt: bool,
    pub witness: Option<Witness>,
    /// `|S1 - S2|` of the checked partition.
    pub current_diff: Value,
}

impl Verdict {
    fn optimal(current_diff: Value) -> Self {
        Verdict {
            is_locally_2opt: true,
            witness: None,
            current_diff,
        }
    }

    fn improvable(current_diff: Value, moved: Vec<usize>, new_diff: Value) -> Self {
        Verdict {
            is_locally_2opt: false,
            witness: Some(Witness { moved, new_diff }),
            current_diff,
        }
    }
}

/// Checks every single move and every pair of distinct elements.
///
/// The witness is the steepest improving move; among equally good moves the
/// first in enumeration order wins (singles by index, then pairs
/// lexicographically).
pub fn is_locally_2opt(instance: &Instance, side1: &[usize], side2: &[usize]) -> Result<Verdict> {
    let sides = assignment(instance.len(), side1, side2)?;
    let mut d = Value::zero();
    for (x, s) in instance.values.iter().zip(&sides) {
        match s {
            Side::One => d += x,
            Side::Two => d -= x,
        }
    }
    let current = d.abs();
    if current.is_zero() {
        return Ok(Verdict::optimal(current));
    }

    let deltas: Vec<Value> = instance
        .values
        .iter()
        .zip(&sides)
        .map(|(x, s)| match s {
            Side::One => -x.double(),
            Side::Two => x.double(),
        })
        .collect();

    let mut best: Option<(Vec<usize>, Value)> = None;
    let mut consider = |moved: Vec<usize>, after: Value| {
        let bound = best.as_ref().map_or(&current, |(_, b)| b);
        if &after < bound {
            best = Some((moved, after));
        }
    };
    for (i, m) in deltas.iter().enumerate() {
        consider(vec![i], (&d + m).abs());
    }
    for (i, mi) in deltas.iter().enumerate() {
        let partial = &d + mi;
        for (j, mj) in deltas.iter().enumerate().skip(i + 1) {
            consider(vec![i, j], (&partial + mj).abs());
        }
    }
    Ok(match best {
        Some((moved, after)) => Verdict::improvable(current, moved, after),
        None => Verdict::optimal(current),
    })
}

pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Literal enumeration over every choice of at most two members of `X ∪ {0}`
/// to relocate, recomputing both sums from scratch for each candidate.
///
/// Only meant as an independent check of [`is_locally_2opt`]; refuses
/// instances larger than [`BRUTE_FORCE_LIMIT`].
pub fn brute_force_2opt_oracle(instance: &Instance, side1: &[usize], side2: &[usize]) -> Result<Verdict> {
    let n = instance.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            method: "brute-force 2-opt oracle",
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let sides = assignment(n, side1, side2)?;
    let diff_of = |sides: &[Side]| -> Value {
        let s1: Value = (0..n)
            .filter(|&i| sides[i] == Side::One)
            .map(|i| &instance.values[i])
            .sum();
        let s2: Value = (0..n)
            .filter(|&i| sides[i] == Side::Two)
            .map(|i| &instance.values[i])
            .sum();
        (s1 - s2).abs()
    };
    let current = diff_of(&sides);

    // Member `n` stands for the extra zero; moving it changes nothing.
    let zero = n;
    let mut improving: Vec<(Vec<usize>, Value)> = Vec::new();
    for a in 0..=n {
        for b in a + 1..=n + 1 {
            // `b == n + 1` encodes "no second element".
            let mut moved: Vec<usize> = [a, b].into_iter().filter(|&e| e != zero && e <= n).collect();
            moved.dedup();
            let mut trial = sides.clone();
            for &e in &moved {
                trial[e] = trial[e].other();
            }
            let after = diff_of(&trial);
            if after < current {
                improving.push((moved, after));
            }
        }
    }
    improving.sort_by(|x, y| (&x.1, x.0.len(), &x.0).cmp(&(&y.1, y.0.len(), &y.0)));
    Ok(match improving.into_iter().next() {
        Some((moved, after)) => Verdict::improvable(current, moved, after),
        None => Verdict::optimal(current),
    })
}
