//! Red-black trees with red roots allowed.
//!
//! Every node caches its black height (black nodes on a downward path,
//! counting itself when black; leaves count 0 and behave as black). Rank
//! is `2(bh - 1)` for a black node and `2bh - 1` for a red one.

use crate::cost::Meter;
use crate::scheme::{debug_check_order, Scheme, SchemeKind};
use crate::tree::{Meta, Node, Tree};
use crate::validate::Rule;
use crate::Key;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RedBlack;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Black,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RbMeta {
    pub color: Color,
    pub black_height: u32,
}

impl RbMeta {
    pub const RED: RbMeta = RbMeta {
        color: Color::Red,
        black_height: 0,
    };
    pub const BLACK: RbMeta = RbMeta {
        color: Color::Black,
        black_height: 0,
    };
}

impl Meta for RbMeta {
    fn refresh<K>(self, left: &Tree<K, Self>, _right: &Tree<K, Self>) -> Self {
        RbMeta {
            color: self.color,
            black_height: black_height(left) + (self.color == Color::Black) as u32,
        }
    }
}

type RbTree<K> = Tree<K, RbMeta>;

#[inline]
pub fn black_height<K>(t: &RbTree<K>) -> u32 {
    t.meta().map_or(0, |m| m.black_height)
}

#[inline]
fn is_red<K>(t: &RbTree<K>) -> bool {
    matches!(t.meta(), Some(m) if m.color == Color::Red)
}

#[inline]
fn is_black<K>(t: &RbTree<K>) -> bool {
    !is_red(t)
}

#[inline]
fn node<K>(l: RbTree<K>, k: K, r: RbTree<K>, meta: RbMeta) -> RbTree<K> {
    Tree::from_parts(l, k, r, meta)
}

fn join_right<K: Key, C: Meter>(tl: &RbTree<K>, k: K, tr: RbTree<K>, c: &mut C) -> RbTree<K> {
    if is_black(tl) && black_height(tl) == black_height(&tr) {
        return node(tl.clone(), k, tr, RbMeta::RED);
    }
    c.join_step();
    let (l, kp, r) = tl.expose();
    let meta = tl.meta().expect("descent reached a leaf");
    let sub = join_right(r, k, tr, c);
    if meta.color == Color::Black && is_red(&sub) && is_red(sub.right().expect("red root")) {
        // Three reds in a row below a black node: blacken the lowest and
        // rotate left.
        c.rotation();
        let (sl, sk, sr) = sub.expose();
        let lowered = node(l.clone(), kp.clone(), sl.clone(), meta);
        node(lowered, sk.clone(), sr.with_meta(RbMeta::BLACK), RbMeta::RED)
    } else {
        node(l.clone(), kp.clone(), sub, meta)
    }
}

fn join_left<K: Key, C: Meter>(tl: RbTree<K>, k: K, tr: &RbTree<K>, c: &mut C) -> RbTree<K> {
    if is_black(tr) && black_height(tr) == black_height(&tl) {
        return node(tl, k, tr.clone(), RbMeta::RED);
    }
    c.join_step();
    let (l, kp, r) = tr.expose();
    let meta = tr.meta().expect("descent reached a leaf");
    let sub = join_left(tl, k, l, c);
    if meta.color == Color::Black && is_red(&sub) && is_red(sub.left().expect("red root")) {
        c.rotation();
        let (sl, sk, sr) = sub.expose();
        let lowered = node(sr.clone(), kp.clone(), r.clone(), meta);
        node(sl.with_meta(RbMeta::BLACK), sk.clone(), lowered, RbMeta::RED)
    } else {
        node(sub, kp.clone(), r.clone(), meta)
    }
}

impl RedBlack {
    /// Node with an explicit color.
    pub fn make_colored<K: Key>(&self, l: RbTree<K>, k: K, r: RbTree<K>, color: Color) -> RbTree<K> {
        debug_check_order(&l, &k, &r);
        let meta = match color {
            Color::Red => RbMeta::RED,
            Color::Black => RbMeta::BLACK,
        };
        node(l, k, r, meta)
    }
}

impl Scheme for RedBlack {
    type Meta = RbMeta;

    fn kind(&self) -> SchemeKind {
        SchemeKind::RedBlack
    }

    fn rank<K>(&self, t: &RbTree<K>) -> i32 {
        match t.meta() {
            None => -1,
            Some(RbMeta {
                color: Color::Black,
                black_height,
            }) => 2 * (black_height as i32 - 1),
            Some(RbMeta {
                color: Color::Red,
                black_height,
            }) => 2 * black_height as i32 - 1,
        }
    }

    fn fresh_meta<K: Key>(&self, _key: &K) -> RbMeta {
        RbMeta::BLACK
    }

    fn join<K: Key, C: Meter>(&self, tl: RbTree<K>, k: K, tr: RbTree<K>, c: &mut C) -> RbTree<K> {
        debug_check_order(&tl, &k, &tr);
        let (bl, br) = (black_height(&tl), black_height(&tr));
        if bl > br {
            let t = join_right(&tl, k, tr, c);
            if is_red(&t) && is_red(t.right().expect("red root")) {
                t.with_meta(RbMeta::BLACK)
            } else {
                t
            }
        } else if br > bl {
            let t = join_left(tl, k, &tr, c);
            if is_red(&t) && is_red(t.left().expect("red root")) {
                t.with_meta(RbMeta::BLACK)
            } else {
                t
            }
        } else if is_black(&tl) && is_black(&tr) {
            node(tl, k, tr, RbMeta::RED)
        } else {
            node(tl, k, tr, RbMeta::BLACK)
        }
    }

    fn check_node<K: Key>(&self, n: &Node<K, RbMeta>) -> Result<(), Rule> {
        let (bl, br) = (black_height(n.left()), black_height(n.right()));
        if bl != br {
            return Err(Rule::BlackRule);
        }
        let m = n.meta();
        if m.black_height != bl + (m.color == Color::Black) as u32 {
            return Err(Rule::BlackHeightCache);
        }
        if m.color == Color::Red && (is_red(n.left()) || is_red(n.right())) {
            return Err(Rule::RedRule);
        }
        Ok(())
    }
}
