//! Swap-based local search producing locally 2-optimal partitions.
//!
//! The search runs on the [`ExtendedState`]: N magnitudes plus N padding zeros,
//! split into two sides of exactly N positions each. A *traverse* walks the
//! heavier side in descending magnitude order. For every element `x_a` it
//! looks for the lighter-side element `x_b` whose exchange most reduces the
//! difference, restricted to the window `0 < x_a - x_b < Δ` where `Δ` is the
//! current positive difference; outside that window no exchange can help. A
//! traverse ends when an exchange flips the sign of `S1 - S2` (the roles of the
//! sides swap and a new traverse starts), when the sums balance, or when the
//! last heavy element has been processed. After the search, elements whose
//! original value was negative are moved to the opposite side, which maps the
//! magnitude partition back onto the signed values without changing `S1 - S2`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::extended::ExtendedState;
use crate::instance::Instance;
use crate::partition::Side;
use crate::value::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InitPolicy {
    /// Sorted positions go to sides 1, 2, 1, 2, ...
    #[default]
    RoundRobinDescending,
    /// The N largest positions on side 1.
    FirstHalf,
    /// A uniformly shuffled equal split drawn from the seed.
    SeededRandom(u64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Among equally good partners take the largest, keeping the sign of the
    /// difference.
    #[default]
    PreferNoSignFlip,
    PreferSmallest,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Examines every lighter-side position for each heavy element.
    Reference,
    /// Binary searches the sorted extended array for the swap window and keeps
    /// an ordered index of each side's positions.
    #[default]
    Scan,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverConfig {
    pub init_policy: InitPolicy,
    pub tie_break: TieBreak,
    pub engine: Engine,
    pub collect_trace: bool,
}

impl SolverConfig {
    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn with_init(mut self, init_policy: InitPolicy) -> Self {
        self.init_policy = init_policy;
        self
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn with_trace(mut self, collect_trace: bool) -> Self {
        self.collect_trace = collect_trace;
        self
    }
}

impl InitPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            InitPolicy::RoundRobinDescending => "round-robin",
            InitPolicy::FirstHalf => "first-half",
            InitPolicy::SeededRandom(_) => "random",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            InitPolicy::SeededRandom(seed) => Some(*seed),
            _ => None,
        }
    }
}

impl TieBreak {
    pub fn name(&self) -> &'static str {
        match self {
            TieBreak::PreferNoSignFlip => "no-flip",
            TieBreak::PreferSmallest => "smallest",
        }
    }
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::Reference => "reference",
            Engine::Scan => "scan",
        }
    }
}

/// Side assignment of the 2N extended positions with exact running sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionState {
    side: Vec<Side>,
    members: [BTreeSet<usize>; 2],
    s1: Value,
    s2: Value,
    swap_count: u64,
    traverse_count: u64,
    diff_trace: Option<Vec<Value>>,
}

fn slot(side: Side) -> usize {
    match side {
        Side::One => 0,
        Side::Two => 1,
    }
}

impl PartitionState {
    /// Builds a state from an explicit per-position assignment.
    pub fn from_sides(ext: &ExtendedState, side: Vec<Side>) -> Result<Self> {
        if side.len() != ext.len() {
            return Err(Error::InvalidPartition(format!(
                "{} side labels for {} extended positions",
                side.len(),
                ext.len()
            )));
        }
        let ones = side.iter().filter(|&&s| s == Side::One).count();
        if ones != ext.n() {
            return Err(Error::InvalidPartition(format!(
                "side 1 holds {ones} positions, expected {}",
                ext.n()
            )));
        }
        let mut members = [BTreeSet::new(), BTreeSet::new()];
        let mut s1 = Value::zero();
        let mut s2 = Value::zero();
        for (pos, &s) in side.iter().enumerate() {
            members[slot(s)].insert(pos);
            match s {
                Side::One => s1 += ext.magnitude(pos),
                Side::Two => s2 += ext.magnitude(pos),
            }
        }
        Ok(PartitionState {
            side,
            members,
            s1,
            s2,
            swap_count: 0,
            traverse_count: 0,
            diff_trace: None,
        })
    }

    pub fn side(&self, pos: usize) -> Side {
        self.side[pos]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    /// Positions on `side`, ascending (largest magnitude first).
    pub fn positions(&self, side: Side) -> impl Iterator<Item = usize> + '_ {
        self.members[slot(side)].iter().copied()
    }

    pub fn s1(&self) -> &Value {
        &self.s1
    }

    pub fn s2(&self) -> &Value {
        &self.s2
    }

    /// `S1 - S2` over magnitudes.
    pub fn signed_diff(&self) -> Value {
        &self.s1 - &self.s2
    }

    pub fn swap_count(&self) -> u64 {
        self.swap_count
    }

    pub fn traverse_count(&self) -> u64 {
        self.traverse_count
    }

    pub fn diff_trace(&self) -> Option<&[Value]> {
        self.diff_trace.as_deref()
    }

    pub fn enable_trace(&mut self) {
        if self.diff_trace.is_none() {
            self.diff_trace = Some(vec![self.signed_diff()]);
        }
    }

    /// The side with the strictly larger sum, if any.
    pub fn heavier(&self) -> Option<Side> {
        match self.s1.cmp(&self.s2) {
            std::cmp::Ordering::Greater => Some(Side::One),
            std::cmp::Ordering::Less => Some(Side::Two),
            std::cmp::Ordering::Equal => None,
        }
    }

    fn sum(&self, side: Side) -> &Value {
        match side {
            Side::One => &self.s1,
            Side::Two => &self.s2,
        }
    }

    fn next_on_side(&self, side: Side, from: usize) -> Option<usize> {
        self.members[slot(side)].range(from..).next().copied()
    }

    fn last_on_side_before(&self, side: Side, lo: usize, hi: usize) -> Option<usize> {
        if lo >= hi {
            return None;
        }
        self.members[slot(side)].range(lo..hi).next_back().copied()
    }

    fn first_on_side_within(&self, side: Side, lo: usize, hi: usize) -> Option<usize> {
        if lo >= hi {
            return None;
        }
        self.members[slot(side)].range(lo..hi).next().copied()
    }
}

pub fn init_partition(ext: &ExtendedState, policy: InitPolicy) -> PartitionState {
    let n = ext.n();
    let side: Vec<Side> = match policy {
        InitPolicy::RoundRobinDescending => (0..2 * n)
            .map(|p| if p % 2 == 0 { Side::One } else { Side::Two })
            .collect(),
        InitPolicy::FirstHalf => (0..2 * n)
            .map(|p| if p < n { Side::One } else { Side::Two })
            .collect(),
        InitPolicy::SeededRandom(seed) => {
            let mut order: Vec<usize> = (0..2 * n).collect();
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
            order.shuffle(&mut rng);
            let mut side = vec![Side::Two; 2 * n];
            for &p in &order[..n] {
                side[p] = Side::One;
            }
            side
        }
    };
    PartitionState::from_sides(ext, side).expect("init policies produce equal halves")
}

/// An exchange of a heavy-side position with a lighter-side position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapCandidate {
    pub pos_heavy: usize,
    pub pos_light: usize,
    /// `|Δ - 2 x_a + 2 x_b|`, the absolute difference after the exchange.
    pub new_diff: Value,
    pub sign_flips: bool,
}

/// Best partner for the heavy element at `pos`, or `None` if no exchange
/// strictly reduces the difference.
///
/// Panics if the sums are balanced or `pos` is not on the heavier side.
pub fn find_best_swap(
    ext: &ExtendedState,
    state: &PartitionState,
    pos: usize,
    tie_break: TieBreak,
    engine: Engine,
) -> Option<SwapCandidate> {
    let heavy = state.heavier().expect("find_best_swap requires unequal sums");
    assert_eq!(
        state.side(pos),
        heavy,
        "position {pos} is not on the heavier side"
    );
    let delta = state.sum(heavy) - state.sum(heavy.other());
    match engine {
        Engine::Reference => best_swap_reference(ext, state, pos, heavy, &delta, tie_break),
        Engine::Scan => best_swap_scan(ext, state, pos, heavy, &delta, tie_break),
    }
}

fn candidate(ext: &ExtendedState, pos_heavy: usize, pos_light: usize, delta: &Value) -> SwapCandidate {
    let gap = ext.magnitude(pos_heavy) - ext.magnitude(pos_light);
    let after = delta - &gap.double();
    SwapCandidate {
        pos_heavy,
        pos_light,
        sign_flips: after.is_negative(),
        new_diff: after.abs(),
    }
}

/// Whether `cand` beats `best` under the tie rule. Equal quality and equal
/// magnitude keep the earlier (smaller) position.
fn improves(ext: &ExtendedState, cand: &SwapCandidate, best: &SwapCandidate, tie: TieBreak) -> bool {
    match cand.new_diff.cmp(&best.new_diff) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => {
            let a = ext.magnitude(cand.pos_light);
            let b = ext.magnitude(best.pos_light);
            match tie {
                TieBreak::PreferNoSignFlip => a > b,
                TieBreak::PreferSmallest => a < b,
            }
        }
    }
}

fn best_swap_reference(
    ext: &ExtendedState,
    state: &PartitionState,
    pos: usize,
    heavy: Side,
    delta: &Value,
    tie: TieBreak,
) -> Option<SwapCandidate> {
    let x_a = ext.magnitude(pos);
    let mut best: Option<SwapCandidate> = None;
    for q in 0..ext.len() {
        if state.side(q) == heavy {
            continue;
        }
        let x_b = ext.magnitude(q);
        if x_b >= x_a {
            continue;
        }
        let gap = x_a - x_b;
        if &gap >= delta {
            continue;
        }
        let cand = candidate(ext, pos, q, delta);
        if best.as_ref().is_none_or(|b| improves(ext, &cand, b, tie)) {
            best = Some(cand);
        }
    }
    best
}

fn best_swap_scan(
    ext: &ExtendedState,
    state: &PartitionState,
    pos: usize,
    heavy: Side,
    delta: &Value,
    tie: TieBreak,
) -> Option<SwapCandidate> {
    let light = heavy.other();
    let x_a = ext.magnitude(pos);
    // Window of positions whose magnitude lies in (x_a - Δ, x_a).
    let floor = x_a - delta;
    let lo = ext.partition_point(|m| m >= x_a);
    let hi = ext.partition_point(|m| m > &floor);
    if lo >= hi {
        return None;
    }
    // The ideal partner is t = x_a - Δ/2; compare doubled to stay integral.
    let target2 = &x_a.double() - delta;
    let split = ext.partition_point(|m| m.double() > target2).clamp(lo, hi);

    let above = state.last_on_side_before(light, lo, split).map(|q| {
        let group = ext.partition_point(|m| m > ext.magnitude(q));
        state
            .first_on_side_within(light, group.max(lo), q + 1)
            .expect("q itself is on the light side")
    });
    let below = state.first_on_side_within(light, split, hi);

    match (above, below) {
        (None, None) => None,
        (Some(q), None) | (None, Some(q)) => Some(candidate(ext, pos, q, delta)),
        (Some(a), Some(b)) => {
            let ca = candidate(ext, pos, a, delta);
            let cb = candidate(ext, pos, b, delta);
            Some(if improves(ext, &cb, &ca, tie) { cb } else { ca })
        }
    }
}

/// Exchanges the two positions of `cand` and updates the sums.
pub fn apply_swap(ext: &ExtendedState, state: &mut PartitionState, cand: &SwapCandidate) {
    let heavy = state.side(cand.pos_heavy);
    let light = state.side(cand.pos_light);
    assert_ne!(heavy, light, "swap partners must be on opposite sides");
    let before = state.signed_diff().abs();

    let x_a = ext.magnitude(cand.pos_heavy);
    let x_b = ext.magnitude(cand.pos_light);
    let moved = x_a - x_b;
    let (from, to) = match heavy {
        Side::One => (&mut state.s1, &mut state.s2),
        Side::Two => (&mut state.s2, &mut state.s1),
    };
    *from -= &moved;
    *to += &moved;

    state.side[cand.pos_heavy] = light;
    state.side[cand.pos_light] = heavy;
    state.members[slot(heavy)].remove(&cand.pos_heavy);
    state.members[slot(light)].insert(cand.pos_heavy);
    state.members[slot(light)].remove(&cand.pos_light);
    state.members[slot(heavy)].insert(cand.pos_light);
    state.swap_count += 1;

    let after = state.signed_diff();
    assert!(
        after.cmp_abs(&before).is_lt(),
        "swap did not reduce the difference"
    );
    if let Some(trace) = state.diff_trace.as_mut() {
        trace.push(after);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraverseOutcome {
    Balanced,
    SignFlipped,
    Exhausted,
}

/// One descending pass over the heavier side.
pub fn run_traverse(
    ext: &ExtendedState,
    state: &mut PartitionState,
    config: &SolverConfig,
) -> TraverseOutcome {
    let Some(heavy) = state.heavier() else {
        return TraverseOutcome::Balanced;
    };
    state.traverse_count += 1;

    let mut cursor = 0;
    loop {
        let next = match config.engine {
            Engine::Scan => state.next_on_side(heavy, cursor),
            Engine::Reference => (cursor..ext.len()).find(|&p| state.side(p) == heavy),
        };
        let Some(pos) = next else {
            return TraverseOutcome::Exhausted;
        };
        cursor = pos + 1;

        if let Some(cand) = find_best_swap(ext, state, pos, config.tie_break, config.engine) {
            apply_swap(ext, state, &cand);
            if state.s1 == state.s2 {
                return TraverseOutcome::Balanced;
            }
            if cand.sign_flips {
                return TraverseOutcome::SignFlipped;
            }
        }
    }
}

/// Runs traverses until the sums balance or a pass ends without a sign flip.
pub fn local_search(ext: &ExtendedState, state: &mut PartitionState, config: &SolverConfig) {
    while run_traverse(ext, state, config) == TraverseOutcome::SignFlipped {}
}

/// Maps the magnitude partition back to original indices: padding is dropped
/// and every originally negative value changes side.
pub fn finalize(ext: &ExtendedState, state: &PartitionState) -> (Vec<usize>, Vec<usize>) {
    let mut side1 = Vec::with_capacity(ext.n());
    let mut side2 = Vec::with_capacity(ext.n());
    for i in 0..ext.n() {
        let mut side = state.side(ext.position_of(i));
        if ext.indicator(i) < 0 {
            side = side.other();
        }
        match side {
            Side::One => side1.push(i),
            Side::Two => side2.push(i),
        }
    }
    (side1, side2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverReport {
    pub side1_indices: Vec<usize>,
    pub side2_indices: Vec<usize>,
    /// `|S1 - S2|` in the instance's mantissa units.
    pub final_diff: Value,
    /// `S1 - S2` of the magnitude partition when the search stopped.
    pub magnitude_diff: Value,
    pub traverses: u64,
    pub swaps: u64,
    pub diff_trace: Option<Vec<Value>>,
    pub elapsed: Duration,
}

impl SolverReport {
    /// Equality on everything except wall time.
    pub fn same_outcome(&self, other: &SolverReport) -> bool {
        SolverReport {
            elapsed: Duration::ZERO,
            ..self.clone()
        } == SolverReport {
            elapsed: Duration::ZERO,
            ..other.clone()
        }
    }
}

pub fn solve(instance: &Instance, config: &SolverConfig) -> SolverReport {
    let start = Instant::now();
    let ext = ExtendedState::build(instance);
    let mut state = init_partition(&ext, config.init_policy);
    if config.collect_trace {
        state.enable_trace();
    }
    local_search(&ext, &mut state, config);
    let (side1_indices, side2_indices) = finalize(&ext, &state);
    let magnitude_diff = state.signed_diff();
    SolverReport {
        side1_indices,
        side2_indices,
        final_diff: magnitude_diff.abs(),
        magnitude_diff,
        traverses: state.traverse_count,
        swaps: state.swap_count,
        diff_trace: state.diff_trace.take(),
        elapsed: start.elapsed(),
    }
}
