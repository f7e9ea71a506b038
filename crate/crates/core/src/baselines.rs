//! Greedy and Karmarkar-Karp differencing heuristics.
//!
//! Both run on magnitudes and then move every originally negative value to
//! the other side. That move lowers both sums by the same amount, so the
//! difference they report is the difference of the signed partition.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::instance::Instance;
use crate::partition::Side;
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Greedy,
    KarmarkarKarp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Greedy => "greedy",
            Method::KarmarkarKarp => "karmarkar_karp",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaselineReport {
    pub method: Method,
    pub side1_indices: Vec<usize>,
    pub side2_indices: Vec<usize>,
    pub final_diff: Value,
}

fn report(method: Method, instance: &Instance, sides: Vec<Side>, final_diff: Value) -> BaselineReport {
    let mut side1_indices = Vec::new();
    let mut side2_indices = Vec::new();
    for (i, mut side) in sides.into_iter().enumerate() {
        if instance.values[i].is_negative() {
            side = side.other();
        }
        match side {
            Side::One => side1_indices.push(i),
            Side::Two => side2_indices.push(i),
        }
    }
    BaselineReport {
        method,
        side1_indices,
        side2_indices,
        final_diff,
    }
}

/// Largest magnitude first, each to the currently lighter side (side 1 on ties).
pub fn greedy_partition(instance: &Instance) -> BaselineReport {
    let magnitudes: Vec<Value> = instance.values.iter().map(Value::abs).collect();
    let mut order: Vec<usize> = (0..magnitudes.len()).collect();
    order.sort_by(|&a, &b| magnitudes[b].cmp(&magnitudes[a]));

    let mut sides = vec![Side::One; magnitudes.len()];
    let mut s1 = Value::zero();
    let mut s2 = Value::zero();
    for i in order {
        if s1 <= s2 {
            s1 += &magnitudes[i];
        } else {
            s2 += &magnitudes[i];
            sides[i] = Side::Two;
        }
    }
    report(Method::Greedy, instance, sides, (s1 - s2).abs())
}

/// Repeatedly replaces the two largest magnitudes by their difference. The
/// last residue is the partition difference; the partition comes from
/// two-coloring the differencing tree (each difference stays with its larger
/// operand, the smaller operand goes to the opposite side).
pub fn karmarkar_karp(instance: &Instance) -> BaselineReport {
    let n = instance.len();
    if n == 0 {
        return report(Method::KarmarkarKarp, instance, Vec::new(), Value::zero());
    }
    // Equal magnitudes pop in index order.
    let mut heap: BinaryHeap<(Value, Reverse<usize>)> = instance
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| (v.abs(), Reverse(i)))
        .collect();

    let mut opposites = Vec::with_capacity(n - 1);
    while heap.len() >= 2 {
        let (a, Reverse(a_id)) = heap.pop().unwrap();
        let (b, Reverse(b_id)) = heap.pop().unwrap();
        opposites.push((a_id, b_id));
        heap.push((a - b, Reverse(a_id)));
    }
    let (residue, Reverse(root)) = heap.pop().unwrap();

    let mut sides = vec![Side::One; n];
    sides[root] = Side::One;
    for (a, b) in opposites.into_iter().rev() {
        sides[b] = sides[a].other();
    }
    report(Method::KarmarkarKarp, instance, sides, residue)
}
