//! Weight-balanced (BB[alpha]) trees.
//!
//! Weight is `size + 1`. A node is balanced when its left weight is within
//! `[alpha, 1 - alpha]` of its total weight. Only the cached size is
//! needed. Rank is `ceil(log2(weight)) - 1`.

use crate::cost::Meter;
use crate::scheme::{debug_check_order, ConfigError, Scheme, SchemeKind};
use crate::tree::{Meta, Node, Tree};
use crate::validate::Rule;
use crate::Key;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightBalanced {
    alpha: f64,
}

/// WB nodes carry no metadata beyond the cached size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct NoMeta;

impl Meta for NoMeta {
    #[inline]
    fn refresh<K>(self, _: &Tree<K, Self>, _: &Tree<K, Self>) -> Self {
        NoMeta
    }
}

type WbTree<K> = Tree<K, NoMeta>;

impl Default for WeightBalanced {
    fn default() -> Self {
        WeightBalanced {
            alpha: Self::DEFAULT_ALPHA,
        }
    }
}

impl WeightBalanced {
    pub const DEFAULT_ALPHA: f64 = 0.29;

    /// Single and double rotations suffice only for
    /// `2/11 < alpha <= 1 - 1/sqrt(2)`.
    pub fn new(alpha: f64) -> Result<Self, ConfigError> {
        let upper = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
        if alpha > 2.0 / 11.0 && alpha <= upper {
            Ok(WeightBalanced { alpha })
        } else {
            Err(ConfigError::AlphaOutOfRange(alpha))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Would a node with children of these weights be balanced?
    #[inline]
    pub fn like(&self, wa: usize, wb: usize) -> bool {
        let (a, total) = (wa as f64, (wa + wb) as f64);
        self.alpha * total <= a && a <= (1.0 - self.alpha) * total
    }

    /// Is weight `wa` too heavy to sit next to `wb`?
    #[inline]
    pub fn heavy(&self, wa: usize, wb: usize) -> bool {
        wa as f64 > (1.0 - self.alpha) * (wa + wb) as f64
    }

    fn join_right<K: Key, C: Meter>(&self, tl: &WbTree<K>, k: K, tr: WbTree<K>, c: &mut C) -> WbTree<K> {
        if self.like(tl.weight(), tr.weight()) {
            return node(tl.clone(), k, tr);
        }
        c.join_step();
        let (l, kp, mid) = tl.expose();
        let t1 = self.join_right(mid, k, tr, c);
        let (l1, _, r1) = t1.expose();
        if self.like(l.weight(), t1.weight()) {
            node(l.clone(), kp.clone(), t1)
        } else if self.like(l.weight(), l1.weight()) && self.like(l.weight() + l1.weight(), r1.weight()) {
            c.rotation();
            node(l.clone(), kp.clone(), t1).rotate_left()
        } else {
            c.rotation();
            c.rotation();
            node(l.clone(), kp.clone(), t1.rotate_right()).rotate_left()
        }
    }

    fn join_left<K: Key, C: Meter>(&self, tl: WbTree<K>, k: K, tr: &WbTree<K>, c: &mut C) -> WbTree<K> {
        if self.like(tl.weight(), tr.weight()) {
            return node(tl, k, tr.clone());
        }
        c.join_step();
        let (mid, kp, r) = tr.expose();
        let t1 = self.join_left(tl, k, mid, c);
        let (l1, _, r1) = t1.expose();
        if self.like(t1.weight(), r.weight()) {
            node(t1, kp.clone(), r.clone())
        } else if self.like(r1.weight(), r.weight()) && self.like(l1.weight(), r1.weight() + r.weight()) {
            c.rotation();
            node(t1, kp.clone(), r.clone()).rotate_right()
        } else {
            c.rotation();
            c.rotation();
            node(t1.rotate_left(), kp.clone(), r.clone()).rotate_right()
        }
    }
}

#[inline]
fn node<K>(l: WbTree<K>, k: K, r: WbTree<K>) -> WbTree<K> {
    Tree::from_parts(l, k, r, NoMeta)
}

/// `ceil(log2(w)) - 1` for `w >= 1`.
pub fn weight_rank(weight: usize) -> i32 {
    debug_assert!(weight >= 1);
    let ceil_log2 = usize::BITS - (weight - 1).leading_zeros();
    ceil_log2 as i32 - 1
}

impl Scheme for WeightBalanced {
    type Meta = NoMeta;

    fn kind(&self) -> SchemeKind {
        SchemeKind::WeightBalanced
    }

    fn rank<K>(&self, t: &WbTree<K>) -> i32 {
        // Under ceil(log2 w) - 1 a leaf (w = 1) would get -1 as well.
        weight_rank(t.weight())
    }

    fn fresh_meta<K: Key>(&self, _key: &K) -> NoMeta {
        NoMeta
    }

    fn join<K: Key, C: Meter>(&self, tl: WbTree<K>, k: K, tr: WbTree<K>, c: &mut C) -> WbTree<K> {
        debug_check_order(&tl, &k, &tr);
        let (wl, wr) = (tl.weight(), tr.weight());
        if self.heavy(wl, wr) {
            self.join_right(&tl, k, tr, c)
        } else if self.heavy(wr, wl) {
            self.join_left(tl, k, &tr, c)
        } else {
            node(tl, k, tr)
        }
    }

    fn check_node<K: Key>(&self, n: &Node<K, NoMeta>) -> Result<(), Rule> {
        if self.like(n.left().weight(), n.right().weight()) {
            Ok(())
        } else {
            Err(Rule::WeightBalance)
        }
    }
}
