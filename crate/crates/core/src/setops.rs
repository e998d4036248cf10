//! Scheme-agnostic algorithms built from `join` alone: split, split_last,
//! join2, insert, delete, and the parallel divide-and-conquer union,
//! intersection and difference.
//!
//! All functions are pure. Inputs are borrowed and outputs share whatever
//! subtrees they can with them.

use crate::cost::{Meter, RankEvent};
use crate::scheme::{Scheme, SchemeKind};
use crate::tree::Tree;
use crate::Key;
use std::cmp::Ordering;

/// When subproblems are big enough to be worth a parallel task.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parallelism {
    /// Fork only while the smaller of the two subproblems holds at least
    /// this many keys (counting both inputs).
    pub cutoff: usize,
}

impl Parallelism {
    pub const DEFAULT_CUTOFF: usize = 1024;

    pub fn with_cutoff(cutoff: usize) -> Self {
        Parallelism { cutoff: cutoff.max(1) }
    }

    pub fn sequential() -> Self {
        Parallelism { cutoff: usize::MAX }
    }
}

impl Default for Parallelism {
    fn default() -> Self {
        Parallelism {
            cutoff: Self::DEFAULT_CUTOFF,
        }
    }
}

pub struct SplitResult<K, M> {
    pub left: Tree<K, M>,
    pub found: bool,
    pub right: Tree<K, M>,
}

impl<K, M> SplitResult<K, M> {
    fn empty() -> Self {
        SplitResult {
            left: Tree::leaf(),
            found: false,
            right: Tree::leaf(),
        }
    }
}

/// `scheme.join` plus rank bookkeeping for audit meters.
#[inline]
pub fn join<K: Key, S: Scheme, C: Meter>(
    scheme: &S,
    left: Tree<K, S::Meta>,
    key: K,
    right: Tree<K, S::Meta>,
    meter: &mut C,
) -> Tree<K, S::Meta> {
    if C::AUDIT {
        let (rl, rr) = (scheme.rank(&left), scheme.rank(&right));
        let out = scheme.join(left, key, right, meter);
        meter.record(RankEvent::Join {
            left: rl,
            right: rr,
            out: scheme.rank(&out),
        });
        out
    } else {
        scheme.join(left, key, right, meter)
    }
}

/// Run two closures as the branches of one fork.
///
/// They run on the rayon pool when `size >= cutoff`, in sequence otherwise.
/// Costs are composed as a parallel fork either way.
fn fork<A, B, C, FA, FB>(par: Parallelism, size: usize, meter: &mut C, fa: FA, fb: FB) -> (A, B)
where
    A: Send,
    B: Send,
    C: Meter,
    FA: FnOnce(&mut C) -> A + Send,
    FB: FnOnce(&mut C) -> B + Send,
{
    let (mut ma, mut mb) = (C::default(), C::default());
    let out = if size >= par.cutoff {
        rayon::join(|| fa(&mut ma), || fb(&mut mb))
    } else {
        (fa(&mut ma), fb(&mut mb))
    };
    meter.absorb_parallel(ma, mb);
    out
}

pub fn split<K: Key, S: Scheme, C: Meter>(
    t: &Tree<K, S::Meta>,
    k: &K,
    scheme: &S,
    meter: &mut C,
) -> SplitResult<K, S::Meta> {
    let Some(n) = t.node() else {
        return SplitResult::empty();
    };
    meter.comparison();
    meter.split_step();
    let out = match k.cmp(n.key()) {
        Ordering::Equal => SplitResult {
            left: n.left().clone(),
            found: true,
            right: n.right().clone(),
        },
        Ordering::Less => {
            let sub = split(n.left(), k, scheme, meter);
            SplitResult {
                left: sub.left,
                found: sub.found,
                right: join(scheme, sub.right, n.key().clone(), n.right().clone(), meter),
            }
        }
        Ordering::Greater => {
            let sub = split(n.right(), k, scheme, meter);
            SplitResult {
                left: join(scheme, n.left().clone(), n.key().clone(), sub.left, meter),
                found: sub.found,
                right: sub.right,
            }
        }
    };
    if C::AUDIT {
        meter.record(RankEvent::Split {
            tree: scheme.rank(t),
            left: scheme.rank(&out.left),
            right: scheme.rank(&out.right),
        });
    }
    out
}

/// Remove the maximum: `(t without max, max)`.
///
/// # Panics
/// On a leaf.
pub fn split_last<K: Key, S: Scheme, C: Meter>(
    t: &Tree<K, S::Meta>,
    scheme: &S,
    meter: &mut C,
) -> (Tree<K, S::Meta>, K) {
    let (l, k, r) = t.expose();
    if r.is_leaf() {
        (l.clone(), k.clone())
    } else {
        let (rest, last) = split_last(r, scheme, meter);
        (join(scheme, l.clone(), k.clone(), rest, meter), last)
    }
}

/// Concatenate two trees with every key of `tl` below every key of `tr`.
pub fn join2<K: Key, S: Scheme, C: Meter>(
    tl: &Tree<K, S::Meta>,
    tr: &Tree<K, S::Meta>,
    scheme: &S,
    meter: &mut C,
) -> Tree<K, S::Meta> {
    if tl.is_leaf() {
        return tr.clone();
    }
    let (rest, k) = split_last(tl, scheme, meter);
    join(scheme, rest, k, tr.clone(), meter)
}

pub fn insert<K: Key, S: Scheme, C: Meter>(t: &Tree<K, S::Meta>, k: K, scheme: &S, meter: &mut C) -> Tree<K, S::Meta> {
    let sp = split(t, &k, scheme, meter);
    join(scheme, sp.left, k, sp.right, meter)
}

pub fn delete<K: Key, S: Scheme, C: Meter>(t: &Tree<K, S::Meta>, k: &K, scheme: &S, meter: &mut C) -> Tree<K, S::Meta> {
    let sp = split(t, k, scheme, meter);
    join2(&sp.left, &sp.right, scheme, meter)
}

/// Keys of both trees. A key present in both comes from `t2`.
pub fn union<K: Key, S: Scheme, C: Meter>(
    t1: &Tree<K, S::Meta>,
    t2: &Tree<K, S::Meta>,
    scheme: &S,
    par: Parallelism,
    meter: &mut C,
) -> Tree<K, S::Meta> {
    if t1.is_leaf() {
        return t2.clone();
    }
    if t2.is_leaf() {
        return t1.clone();
    }
    let (l2, k2, r2) = t2.expose();
    let sp = split(t1, k2, scheme, meter);
    let size = (sp.left.size() + l2.size()).min(sp.right.size() + r2.size());
    let (tl, tr) = fork(
        par,
        size,
        meter,
        |m| union(&sp.left, l2, scheme, par, m),
        |m| union(&sp.right, r2, scheme, par, m),
    );
    let out = join(scheme, tl, k2.clone(), tr, meter);
    if C::AUDIT {
        meter.record(RankEvent::Union {
            decomposed: scheme.rank(t1),
            pivot: scheme.rank(t2),
            out: scheme.rank(&out),
            applies: scheme.kind() != SchemeKind::Treap,
        });
    }
    out
}

pub fn intersect<K: Key, S: Scheme, C: Meter>(
    t1: &Tree<K, S::Meta>,
    t2: &Tree<K, S::Meta>,
    scheme: &S,
    par: Parallelism,
    meter: &mut C,
) -> Tree<K, S::Meta> {
    if t1.is_leaf() || t2.is_leaf() {
        return Tree::leaf();
    }
    let (l2, k2, r2) = t2.expose();
    let sp = split(t1, k2, scheme, meter);
    let size = (sp.left.size() + l2.size()).min(sp.right.size() + r2.size());
    let (tl, tr) = fork(
        par,
        size,
        meter,
        |m| intersect(&sp.left, l2, scheme, par, m),
        |m| intersect(&sp.right, r2, scheme, par, m),
    );
    if sp.found {
        join(scheme, tl, k2.clone(), tr, meter)
    } else {
        join2(&tl, &tr, scheme, meter)
    }
}

/// Keys of `t1` that are not in `t2`.
pub fn difference<K: Key, S: Scheme, C: Meter>(
    t1: &Tree<K, S::Meta>,
    t2: &Tree<K, S::Meta>,
    scheme: &S,
    par: Parallelism,
    meter: &mut C,
) -> Tree<K, S::Meta> {
    if t1.is_leaf() {
        return Tree::leaf();
    }
    if t2.is_leaf() {
        return t1.clone();
    }
    let (l2, k2, r2) = t2.expose();
    let sp = split(t1, k2, scheme, meter);
    let size = (sp.left.size() + l2.size()).min(sp.right.size() + r2.size());
    let (tl, tr) = fork(
        par,
        size,
        meter,
        |m| difference(&sp.left, l2, scheme, par, m),
        |m| difference(&sp.right, r2, scheme, par, m),
    );
    join2(&tl, &tr, scheme, meter)
}

/// Build from strictly increasing keys by recursive halving and `join`.
///
/// # Panics
/// With the `validate` feature, if `keys` is not strictly increasing.
pub fn from_sorted<K: Key, S: Scheme>(keys: &[K], scheme: &S) -> Tree<K, S::Meta> {
    if keys.is_empty() {
        return Tree::leaf();
    }
    let mid = keys.len() / 2;
    let (l, r) = if keys.len() >= 4096 {
        rayon::join(
            || from_sorted(&keys[..mid], scheme),
            || from_sorted(&keys[mid + 1..], scheme),
        )
    } else {
        (from_sorted(&keys[..mid], scheme), from_sorted(&keys[mid + 1..], scheme))
    };
    scheme.join(l, keys[mid].clone(), r, &mut ())
}

/// Build from arbitrary keys; duplicates collapse.
pub fn from_keys<K: Key, S: Scheme, I: IntoIterator<Item = K>>(keys: I, scheme: &S) -> Tree<K, S::Meta> {
    let mut v: Vec<K> = keys.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    from_sorted(&v, scheme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::CostCounters;
    use crate::scheme::{Avl, RedBlack, Treap, WeightBalanced};
    use crate::validate::check_valid;

    fn keys<M: crate::tree::Meta>(t: &Tree<u32, M>) -> Vec<u32> {
        t.to_sorted_list()
    }

    macro_rules! for_schemes {
        ($body:ident) => {
            $body(&Avl);
            $body(&RedBlack);
            $body(&WeightBalanced::default());
            $body(&Treap::default());
        };
    }

    fn split_cases<S: Scheme>(s: &S) {
        let empty: Tree<u32, S::Meta> = Tree::leaf();
        let sp = split(&empty, &3, s, &mut ());
        assert!(sp.left.is_leaf() && sp.right.is_leaf() && !sp.found);

        let t = from_keys(1..=7, s);
        let sp = split(&t, &4, s, &mut ());
        assert_eq!(
            (keys(&sp.left), sp.found, keys(&sp.right)),
            (vec![1, 2, 3], true, vec![5, 6, 7])
        );

        let t = from_keys([1, 3, 5], s);
        let sp = split(&t, &4, s, &mut ());
        assert_eq!(
            (keys(&sp.left), sp.found, keys(&sp.right)),
            (vec![1, 3], false, vec![5])
        );
        assert!(check_valid(&sp.left, s).is_ok() && check_valid(&sp.right, s).is_ok());
    }

    #[test]
    fn split_examples() {
        for_schemes!(split_cases);
    }

    fn split_last_cases<S: Scheme>(s: &S) {
        let one = from_keys([7], s);
        let (rest, k) = split_last(&one, s, &mut ());
        assert!(rest.is_leaf());
        assert_eq!(k, 7);
        let (rest, k) = split_last(&from_keys([1, 2, 3], s), s, &mut ());
        assert_eq!((keys(&rest), k), (vec![1, 2], 3));
        assert!(check_valid(&rest, s).is_ok());
    }

    #[test]
    fn split_last_examples() {
        for_schemes!(split_last_cases);
    }

    #[test]
    #[should_panic(expected = "leaf")]
    fn split_last_of_leaf_panics() {
        let t: Tree<u32, _> = Tree::leaf();
        split_last(&t, &Avl, &mut ());
    }

    fn join2_cases<S: Scheme>(s: &S) {
        let t = from_keys([4, 9], s);
        assert!(join2(&Tree::leaf(), &t, s, &mut ()).ptr_eq(&t));
        let j = join2(&from_keys([1, 2], s), &from_keys([5, 6], s), s, &mut ());
        assert_eq!(keys(&j), vec![1, 2, 5, 6]);
        assert!(check_valid(&j, s).is_ok());
    }

    #[test]
    fn join2_examples() {
        for_schemes!(join2_cases);
    }

    #[test]
    #[should_panic(expected = "join order violated")]
    fn join2_rejects_overlap() {
        join2(&from_keys([1, 5], &Avl), &from_keys([3, 6], &Avl), &Avl, &mut ());
    }

    fn insert_delete_cases<S: Scheme>(s: &S) {
        let t = insert(&Tree::leaf(), 3, s, &mut ());
        assert_eq!(keys(&t), vec![3]);
        let t = from_keys([1, 2, 3], s);
        assert_eq!(keys(&insert(&t, 2, s, &mut ())), vec![1, 2, 3]);
        let d = delete(&t, &2, s, &mut ());
        assert_eq!(keys(&d), vec![1, 3]);
        assert_eq!(keys(&delete(&d, &2, s, &mut ())), vec![1, 3]);
        assert_eq!(keys(&t), vec![1, 2, 3], "input unchanged");
    }

    #[test]
    fn insert_delete_examples() {
        for_schemes!(insert_delete_cases);
    }

    fn bulk_cases<S: Scheme>(s: &S) {
        let par = Parallelism::default();
        let t = from_keys([2, 3, 6], s);
        assert!(union(&Tree::leaf(), &t, s, par, &mut ()).ptr_eq(&t));
        assert!(intersect(&t, &Tree::leaf(), s, par, &mut ()).is_leaf());
        assert!(difference(&t, &Tree::leaf(), s, par, &mut ()).ptr_eq(&t));

        let a = from_keys([1, 3, 5], s);
        assert_eq!(keys(&union(&a, &t, s, par, &mut ())), vec![1, 2, 3, 5, 6]);
        let a = from_keys([1, 2, 3], s);
        let b = from_keys([2, 3, 4], s);
        assert_eq!(keys(&intersect(&a, &b, s, par, &mut ())), vec![2, 3]);
        assert_eq!(keys(&intersect(&a, &a, s, par, &mut ())), vec![1, 2, 3]);
        assert_eq!(keys(&difference(&a, &from_keys([2], s), s, par, &mut ())), vec![1, 3]);
        assert!(difference(&a, &a, s, par, &mut ()).is_leaf());
    }

    #[test]
    fn bulk_examples() {
        for_schemes!(bulk_cases);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let s = WeightBalanced::default();
        let a = from_keys((0..20_000).map(|x| x * 3), &s);
        let b = from_keys((0..20_000).map(|x| x * 5), &s);
        let mut c1 = CostCounters::zero();
        let mut c2 = CostCounters::zero();
        let p = union(&a, &b, &s, Parallelism::with_cutoff(16), &mut c1);
        let q = union(&a, &b, &s, Parallelism::sequential(), &mut c2);
        assert!(p.structurally_equal(&q));
        assert_eq!(c1, c2);
    }

    /// Orders and hashes by the number only, so equal keys can still be
    /// told apart by their tag.
    #[derive(Clone, Debug)]
    struct Tagged(u32, char);
    impl PartialEq for Tagged {
        fn eq(&self, o: &Self) -> bool {
            self.0 == o.0
        }
    }
    impl Eq for Tagged {}
    impl PartialOrd for Tagged {
        fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
            Some(self.cmp(o))
        }
    }
    impl Ord for Tagged {
        fn cmp(&self, o: &Self) -> Ordering {
            self.0.cmp(&o.0)
        }
    }
    impl std::hash::Hash for Tagged {
        fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
            self.0.hash(h)
        }
    }

    fn union_tag_cases<S: Scheme>(s: &S) {
        let a = from_keys((0..50).map(|x| Tagged(x, 'a')), s);
        let b = from_keys((25..75).map(|x| Tagged(x, 'b')), s);
        let u = union(&a, &b, s, Parallelism::default(), &mut ());
        for k in u.iter() {
            let expect = if k.0 < 25 { 'a' } else { 'b' };
            assert_eq!(k.1, expect, "key {}", k.0);
        }
    }

    #[test]
    fn union_keeps_the_second_trees_keys() {
        for_schemes!(union_tag_cases);
    }
}
