//! AVL trees: sibling heights differ by at most one. Rank is `height - 1`.

use crate::cost::Meter;
use crate::scheme::{debug_check_order, Scheme, SchemeKind};
use crate::tree::{Meta, Node, Tree};
use crate::validate::Rule;
use crate::Key;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Avl;

/// Cached height; a single node has height 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Height(pub u32);

impl Meta for Height {
    fn refresh<K>(self, left: &Tree<K, Self>, right: &Tree<K, Self>) -> Self {
        Height(1 + height(left).max(height(right)))
    }
}

type AvlTree<K> = Tree<K, Height>;

#[inline]
pub fn height<K>(t: &AvlTree<K>) -> u32 {
    t.meta().map_or(0, |m| m.0)
}

#[inline]
fn node<K>(l: AvlTree<K>, k: K, r: AvlTree<K>) -> AvlTree<K> {
    Tree::from_parts(l, k, r, Height(0))
}

fn join_right<K: Key, C: Meter>(tl: &AvlTree<K>, k: K, tr: AvlTree<K>, c: &mut C) -> AvlTree<K> {
    c.join_step();
    let (l, kp, mid) = tl.expose();
    if height(mid) <= height(&tr) + 1 {
        let t1 = node(mid.clone(), k, tr);
        if height(&t1) <= height(l) + 1 {
            node(l.clone(), kp.clone(), t1)
        } else {
            c.rotation();
            c.rotation();
            node(l.clone(), kp.clone(), t1.rotate_right()).rotate_left()
        }
    } else {
        let t1 = join_right(mid, k, tr, c);
        let rotate = height(&t1) > height(l) + 1;
        let t2 = node(l.clone(), kp.clone(), t1);
        if rotate {
            c.rotation();
            t2.rotate_left()
        } else {
            t2
        }
    }
}

fn join_left<K: Key, C: Meter>(tl: AvlTree<K>, k: K, tr: &AvlTree<K>, c: &mut C) -> AvlTree<K> {
    c.join_step();
    let (mid, kp, r) = tr.expose();
    if height(mid) <= height(&tl) + 1 {
        let t1 = node(tl, k, mid.clone());
        if height(&t1) <= height(r) + 1 {
            node(t1, kp.clone(), r.clone())
        } else {
            c.rotation();
            c.rotation();
            node(t1.rotate_left(), kp.clone(), r.clone()).rotate_right()
        }
    } else {
        let t1 = join_left(tl, k, mid, c);
        let rotate = height(&t1) > height(r) + 1;
        let t2 = node(t1, kp.clone(), r.clone());
        if rotate {
            c.rotation();
            t2.rotate_right()
        } else {
            t2
        }
    }
}

impl Scheme for Avl {
    type Meta = Height;

    fn kind(&self) -> SchemeKind {
        SchemeKind::Avl
    }

    fn rank<K>(&self, t: &AvlTree<K>) -> i32 {
        height(t) as i32 - 1
    }

    fn fresh_meta<K: Key>(&self, _key: &K) -> Height {
        Height(1)
    }

    fn join<K: Key, C: Meter>(&self, tl: AvlTree<K>, k: K, tr: AvlTree<K>, c: &mut C) -> AvlTree<K> {
        debug_check_order(&tl, &k, &tr);
        let (hl, hr) = (height(&tl), height(&tr));
        if hl > hr + 1 {
            join_right(&tl, k, tr, c)
        } else if hr > hl + 1 {
            join_left(tl, k, &tr, c)
        } else {
            node(tl, k, tr)
        }
    }

    fn check_node<K: Key>(&self, n: &Node<K, Height>) -> Result<(), Rule> {
        let (hl, hr) = (height(n.left()), height(n.right()));
        if n.meta().0 != 1 + hl.max(hr) {
            return Err(Rule::HeightCache);
        }
        if hl.abs_diff(hr) > 1 {
            return Err(Rule::AvlBalance);
        }
        Ok(())
    }
}
