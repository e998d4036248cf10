//! Treaps with hash-derived priorities.
//!
//! A key's priority is `priority_of(key, seed)`; ties go to the smaller
//! key. Every node outranks both children, which makes the tree a
//! function of the key set alone.

use crate::cost::Meter;
use crate::key::priority_of;
use crate::scheme::wb::weight_rank;
use crate::scheme::{debug_check_order, Scheme, SchemeKind};
use crate::tree::{Meta, Node, Tree};
use crate::validate::Rule;
use crate::Key;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Treap {
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Priority(pub u64);

impl Meta for Priority {
    #[inline]
    fn refresh<K>(self, _: &Tree<K, Self>, _: &Tree<K, Self>) -> Self {
        self
    }
}

type TreapTree<K> = Tree<K, Priority>;

impl Default for Treap {
    fn default() -> Self {
        Treap::with_seed(Self::DEFAULT_SEED)
    }
}

/// Does `(pa, a)` win over `(pb, b)`?
#[inline]
fn beats<K: Ord>(pa: u64, a: &K, pb: u64, b: &K) -> bool {
    pa > pb || (pa == pb && a < b)
}

impl Treap {
    pub const DEFAULT_SEED: u64 = 0x5eed;

    pub fn with_seed(seed: u64) -> Self {
        Treap { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn priority<K: Key>(&self, key: &K) -> u64 {
        priority_of(key, self.seed)
    }

    fn join_with<K: Key, C: Meter>(
        &self,
        tl: &TreapTree<K>,
        k: K,
        pk: u64,
        tr: &TreapTree<K>,
        c: &mut C,
    ) -> TreapTree<K> {
        let left_wins = tl.node().map(|n| beats(n.meta().0, n.key(), pk, &k)).unwrap_or(false);
        let right_wins = tr.node().map(|n| beats(n.meta().0, n.key(), pk, &k)).unwrap_or(false);
        if !left_wins && !right_wins {
            return Tree::from_parts(tl.clone(), k, tr.clone(), Priority(pk));
        }
        c.join_step();
        let left_first = match (tl.node(), tr.node()) {
            (Some(a), Some(b)) => left_wins && beats(a.meta().0, a.key(), b.meta().0, b.key()),
            _ => left_wins,
        };
        if left_first {
            let n = tl.node().unwrap();
            let sub = self.join_with(n.right(), k, pk, tr, c);
            Tree::from_parts(n.left().clone(), n.key().clone(), sub, n.meta())
        } else {
            let n = tr.node().unwrap();
            let sub = self.join_with(tl, k, pk, n.left(), c);
            Tree::from_parts(sub, n.key().clone(), n.right().clone(), n.meta())
        }
    }
}

impl Scheme for Treap {
    type Meta = Priority;

    fn kind(&self) -> SchemeKind {
        SchemeKind::Treap
    }

    fn rank<K>(&self, t: &TreapTree<K>) -> i32 {
        weight_rank(t.weight())
    }

    fn fresh_meta<K: Key>(&self, key: &K) -> Priority {
        Priority(self.priority(key))
    }

    fn join<K: Key, C: Meter>(&self, tl: TreapTree<K>, k: K, tr: TreapTree<K>, c: &mut C) -> TreapTree<K> {
        debug_check_order(&tl, &k, &tr);
        let pk = self.priority(&k);
        self.join_with(&tl, k, pk, &tr, c)
    }

    fn check_node<K: Key>(&self, n: &Node<K, Priority>) -> Result<(), Rule> {
        let p = n.meta().0;
        if p != self.priority(n.key()) {
            return Err(Rule::PriorityCache);
        }
        for child in [n.left(), n.right()] {
            if let Some(c) = child.node() {
                if !beats(p, n.key(), c.meta().0, c.key()) {
                    return Err(Rule::HeapOrder);
                }
            }
        }
        Ok(())
    }
}
