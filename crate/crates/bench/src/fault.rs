//! A deliberately broken AVL join for exercising `verify` end to end.

use jointree::cost::Meter;
use jointree::scheme::avl::{height, Height};
use jointree::scheme::{Scheme, SchemeKind};
use jointree::tree::Node;
use jointree::{Avl, Key, Rule, Tree};

/// AVL with rotations disabled: joins descend to the right height and
/// rebuild the path without rebalancing.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoRotateAvl;

fn node<K: Key>(l: Tree<K, Height>, k: K, r: Tree<K, Height>) -> Tree<K, Height> {
    Tree::from_parts(l, k, r, Height(0))
}

fn descend<K: Key, C: Meter>(tl: &Tree<K, Height>, k: K, tr: Tree<K, Height>, c: &mut C) -> Tree<K, Height> {
    c.join_step();
    let (hl, hr) = (height(tl), height(&tr));
    if hl <= hr + 1 {
        return node(tl.clone(), k, tr);
    }
    let (l, lk, lr) = tl.expose();
    node(l.clone(), lk.clone(), descend(lr, k, tr, c))
}

fn descend_left<K: Key, C: Meter>(tl: Tree<K, Height>, k: K, tr: &Tree<K, Height>, c: &mut C) -> Tree<K, Height> {
    c.join_step();
    let (hl, hr) = (height(&tl), height(tr));
    if hr <= hl + 1 {
        return node(tl, k, tr.clone());
    }
    let (rl, rk, r) = tr.expose();
    node(descend_left(tl, k, rl, c), rk.clone(), r.clone())
}

impl Scheme for NoRotateAvl {
    type Meta = Height;

    fn kind(&self) -> SchemeKind {
        SchemeKind::Avl
    }

    fn rank<K>(&self, t: &Tree<K, Height>) -> i32 {
        Avl.rank(t)
    }

    fn fresh_meta<K: Key>(&self, key: &K) -> Height {
        Avl.fresh_meta(key)
    }

    fn join<K: Key, C: Meter>(&self, tl: Tree<K, Height>, k: K, tr: Tree<K, Height>, c: &mut C) -> Tree<K, Height> {
        if height(&tl) >= height(&tr) {
            descend(&tl, k, tr, c)
        } else {
            descend_left(tl, k, &tr, c)
        }
    }

    fn check_node<K: Key>(&self, n: &Node<K, Height>) -> Result<(), Rule> {
        Avl.check_node(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jointree::{check_valid, setops};

    #[test]
    fn appending_breaks_balance() {
        let t = (0..16u32).fold(Tree::leaf(), |t, k| NoRotateAvl.join(t, k, Tree::leaf(), &mut ()));
        assert_eq!(t.to_sorted_list(), (0..16).collect::<Vec<_>>());
        assert_eq!(check_valid(&t, &NoRotateAvl).unwrap_err().rule, Rule::AvlBalance);
        let ok = setops::from_sorted(&[1u32, 2, 3], &NoRotateAvl);
        assert!(check_valid(&ok, &NoRotateAvl).is_ok());
    }
}
