//! Work/span instrumentation.
//!
//! Every algorithm takes a `&mut impl Meter`. The unit meter `()` compiles
//! to nothing; [`CostCounters`] tallies comparisons, join descent steps,
//! split steps and rotations, and composes an analytic span with the
//! fork-join rules
//!
//! ```text
//! W(a || b) = W(a) + W(b) + 1
//! S(a || b) = max(S(a), S(b)) + 1
//! ```
//!
//! Sequential composition adds both. Each branch of a fork gets a fresh
//! meter which is merged back when both branches finish, so counts never
//! depend on how tasks were scheduled. [`Audit`] additionally records the
//! input and output ranks of every join, split and union call.

use std::ops::AddAssign;

use crate::scheme::Scheme;
use crate::setops::{self, Parallelism};
use crate::tree::Tree;
use crate::Key;

pub trait Meter: Default + Send {
    /// Whether [`Meter::record`] does anything. Callers skip computing
    /// ranks when it is false.
    const AUDIT: bool = false;

    fn comparison(&mut self) {}
    fn join_step(&mut self) {}
    fn split_step(&mut self) {}
    fn rotation(&mut self) {}
    /// Fold in the meters of two branches that ran in parallel.
    fn absorb_parallel(&mut self, _left: Self, _right: Self) {}
    fn record(&mut self, _event: RankEvent) {}
}

impl Meter for () {}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CostCounters {
    pub comparisons: u64,
    pub join_descent_steps: u64,
    pub split_steps: u64,
    pub rotations: u64,
    pub analytic_work: u64,
    pub analytic_span: u64,
}

impl CostCounters {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Combine two counters that ran as the branches of one fork.
    pub fn merge_parallel(a: CostCounters, b: CostCounters) -> CostCounters {
        CostCounters {
            comparisons: a.comparisons + b.comparisons,
            join_descent_steps: a.join_descent_steps + b.join_descent_steps,
            split_steps: a.split_steps + b.split_steps,
            rotations: a.rotations + b.rotations,
            analytic_work: a.analytic_work + b.analytic_work + 1,
            analytic_span: a.analytic_span.max(b.analytic_span) + 1,
        }
    }

    fn unit(&mut self) {
        self.analytic_work += 1;
        self.analytic_span += 1;
    }
}

/// Sequential composition.
impl AddAssign for CostCounters {
    fn add_assign(&mut self, o: CostCounters) {
        self.comparisons += o.comparisons;
        self.join_descent_steps += o.join_descent_steps;
        self.split_steps += o.split_steps;
        self.rotations += o.rotations;
        self.analytic_work += o.analytic_work;
        self.analytic_span += o.analytic_span;
    }
}

impl Meter for CostCounters {
    fn comparison(&mut self) {
        self.comparisons += 1;
        self.unit();
    }

    fn join_step(&mut self) {
        self.join_descent_steps += 1;
        self.unit();
    }

    fn split_step(&mut self) {
        self.split_steps += 1;
    }

    fn rotation(&mut self) {
        self.rotations += 1;
    }

    fn absorb_parallel(&mut self, left: Self, right: Self) {
        *self += CostCounters::merge_parallel(left, right);
    }
}

/// Ranks observed at one call site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankEvent {
    Join {
        left: i32,
        right: i32,
        out: i32,
    },
    Split {
        tree: i32,
        left: i32,
        right: i32,
    },
    /// `decomposed` is the tree being split, `pivot` the one whose keys
    /// drive the recursion. `applies` is false for treaps, where the
    /// rank-sum bound is not claimed.
    Union {
        decomposed: i32,
        pivot: i32,
        out: i32,
        applies: bool,
    },
}

/// Counters plus a rank trace.
#[derive(Clone, Debug, Default)]
pub struct Audit {
    pub counters: CostCounters,
    pub events: Vec<RankEvent>,
}

impl Meter for Audit {
    const AUDIT: bool = true;

    fn comparison(&mut self) {
        self.counters.comparison()
    }
    fn join_step(&mut self) {
        self.counters.join_step()
    }
    fn split_step(&mut self) {
        self.counters.split_step()
    }
    fn rotation(&mut self) {
        self.counters.rotation()
    }
    fn absorb_parallel(&mut self, left: Self, right: Self) {
        self.counters.absorb_parallel(left.counters, right.counters);
        self.events.extend(left.events);
        self.events.extend(right.events);
    }
    fn record(&mut self, event: RankEvent) {
        self.events.push(event);
    }
}

/// Which inequality an event broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankRule {
    JoinLowerBound,
    JoinUpperBound,
    SplitLeft,
    SplitRight,
    UnionRankSum,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankReport {
    pub checked: usize,
    pub violations: Vec<(RankEvent, RankRule)>,
}

impl RankReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check rank events against the join growth bound, the split bound and
/// the union rank-sum bound.
///
/// The union bound is checked when the pivot outranks the decomposed tree
/// and the decomposed tree has rank at least 1: with a single-node input a
/// union is an insertion, which may grow the tree by one level.
pub fn rank_audit<'a, I>(events: I) -> RankReport
where
    I: IntoIterator<Item = &'a RankEvent>,
{
    let mut report = RankReport::default();
    for ev in events {
        report.checked += 1;
        let broken = match *ev {
            RankEvent::Join { left, right, out } => {
                let hi = left.max(right);
                if out < hi {
                    Some(RankRule::JoinLowerBound)
                } else if out > hi + 1 {
                    Some(RankRule::JoinUpperBound)
                } else {
                    None
                }
            }
            RankEvent::Split { tree, left, right } => {
                if left > tree {
                    Some(RankRule::SplitLeft)
                } else if right > tree {
                    Some(RankRule::SplitRight)
                } else {
                    None
                }
            }
            RankEvent::Union {
                decomposed,
                pivot,
                out,
                applies,
            } => {
                if applies && pivot > decomposed && decomposed >= 1 && out > pivot + decomposed {
                    Some(RankRule::UnionRankSum)
                } else {
                    None
                }
            }
        };
        if let Some(rule) = broken {
            report.violations.push((*ev, rule));
        }
    }
    report
}

/// `union` with full counters.
pub fn measured_union<K: Key, S: Scheme>(
    t1: &Tree<K, S::Meta>,
    t2: &Tree<K, S::Meta>,
    scheme: &S,
    par: Parallelism,
) -> (Tree<K, S::Meta>, CostCounters) {
    let mut c = CostCounters::zero();
    let t = setops::union(t1, t2, scheme, par, &mut c);
    (t, c)
}

/// Analytic span of `union(t1, t2)`, composed as if every fork ran in
/// parallel.
pub fn span_audit<K: Key, S: Scheme>(t1: &Tree<K, S::Meta>, t2: &Tree<K, S::Meta>, scheme: &S) -> u64 {
    measured_union(t1, t2, scheme, Parallelism::sequential())
        .1
        .analytic_span
}
