//! The zero-padded magnitude view the local search runs on.
//!
//! An instance of N values becomes 2N entries: the N magnitudes `|x_n|` plus N
//! padding zeros, sorted by magnitude descending. Ties are ordered by original
//! index, with padding after every original entry of the same magnitude. The
//! sign of every original value is kept in a separate indicator table so that
//! `indicator(n) * magnitude(n) == x_n`.

use std::cmp::Reverse;

use crate::instance::Instance;
use crate::value::Value;

/// Where an extended entry came from. `Original` sorts before `ZeroPad`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Original(usize),
    ZeroPad,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub magnitude: Value,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedState {
    entries: Vec<Entry>,
    indicators: Vec<i8>,
    position_of: Vec<usize>,
}

impl ExtendedState {
    pub fn build(instance: &Instance) -> Self {
        let n = instance.len();
        let mut entries: Vec<Entry> = instance
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| Entry {
                magnitude: v.abs(),
                origin: Origin::Original(i),
            })
            .chain((0..n).map(|_| Entry {
                magnitude: Value::zero(),
                origin: Origin::ZeroPad,
            }))
            .collect();
        // Stable, so the N padding entries keep their relative order.
        entries.sort_by(|a, b| (Reverse(&a.magnitude), a.origin).cmp(&(Reverse(&b.magnitude), b.origin)));

        let indicators = instance.values.iter().map(Value::signum).collect();
        let mut position_of = vec![0; n];
        for (pos, e) in entries.iter().enumerate() {
            if let Origin::Original(i) = e.origin {
                position_of[i] = pos;
            }
        }
        ExtendedState {
            entries,
            indicators,
            position_of,
        }
    }

    /// Number of original values N; the extended length is 2N.
    pub fn n(&self) -> usize {
        self.indicators.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn magnitude(&self, pos: usize) -> &Value {
        &self.entries[pos].magnitude
    }

    pub fn origin(&self, pos: usize) -> Origin {
        self.entries[pos].origin
    }

    pub fn indicators(&self) -> &[i8] {
        &self.indicators
    }

    pub fn indicator(&self, original: usize) -> i8 {
        self.indicators[original]
    }

    /// Extended position of an original index.
    pub fn position_of(&self, original: usize) -> usize {
        self.position_of[original]
    }

    /// First position whose magnitude satisfies `pred` fails, assuming `pred`
    /// holds on a prefix (magnitudes are non-increasing along positions).
    pub(crate) fn partition_point(&self, pred: impl Fn(&Value) -> bool) -> usize {
        self.entries.partition_point(|e| pred(&e.magnitude))
    }

    pub fn total_magnitude(&self) -> Value {
        self.entries.iter().map(|e| &e.magnitude).sum()
    }
}
