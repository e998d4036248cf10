#![allow(dead_code)]

use std::collections::BTreeSet;

use jointree::oracle::SortedKeyList;
use jointree::scheme::Scheme;
use jointree::{setops, Tree};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Runs a generic body once per scheme. The body is a generic fn taking
/// `&S` and returning `Result<(), TestCaseError>`.
#[macro_export]
macro_rules! each_scheme {
    ($f:ident $(, $arg:expr)*) => {{
        $f(&jointree::Avl $(, $arg)*)?;
        $f(&jointree::RedBlack $(, $arg)*)?;
        $f(&jointree::WeightBalanced::default() $(, $arg)*)?;
        $f(&jointree::Treap::default() $(, $arg)*)?;
    }};
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub enum Pattern {
    Disjoint,
    Nested,
    Identical,
    Interleaved,
}

pub const PATTERNS: [Pattern; 4] = [
    Pattern::Disjoint,
    Pattern::Nested,
    Pattern::Identical,
    Pattern::Interleaved,
];

fn sample(rng: &mut ChaCha8Rng, lo: u32, hi: u32, n: usize) -> Vec<u32> {
    let n = n.min((hi - lo) as usize);
    let mut s = BTreeSet::new();
    while s.len() < n {
        s.insert(rng.gen_range(lo..hi));
    }
    s.into_iter().collect()
}

/// Two sorted, duplicate-free key lists related by `p`, each of at most
/// `max` keys.
pub fn key_pair(rng: &mut ChaCha8Rng, p: Pattern, max: usize) -> (Vec<u32>, Vec<u32>) {
    let (na, nb) = (rng.gen_range(0..=max), rng.gen_range(0..=max));
    let span = 4 * max as u32 + 4;
    match p {
        Pattern::Disjoint => {
            let a = sample(rng, 0, span, na);
            let b = sample(rng, span, 2 * span, nb);
            if rng.gen() {
                (a, b)
            } else {
                (b, a)
            }
        }
        Pattern::Nested => {
            let a = sample(rng, 0, span, na);
            let lo = rng.gen_range(0..span / 2);
            let hi = rng.gen_range(lo + 1..=span);
            let b = sample(rng, lo, hi, nb);
            if rng.gen() {
                (a, b)
            } else {
                (b, a)
            }
        }
        Pattern::Identical => {
            let a = sample(rng, 0, span, na);
            (a.clone(), a)
        }
        Pattern::Interleaved => {
            let small = max as u32 + 2;
            (sample(rng, 0, small, na), sample(rng, 0, small, nb))
        }
    }
}

/// A tree over `keys` built either by bulk load or by inserting in a
/// shuffled order, so that shapes vary.
pub fn build<S: Scheme>(rng: &mut ChaCha8Rng, keys: &[u32], s: &S) -> Tree<u32, S::Meta> {
    if rng.gen() {
        setops::from_sorted(keys, s)
    } else {
        let mut v = keys.to_vec();
        v.shuffle(rng);
        v.into_iter()
            .fold(Tree::leaf(), |t, k| setops::insert(&t, k, s, &mut ()))
    }
}

pub fn oracle(keys: &[u32]) -> SortedKeyList<u32> {
    SortedKeyList::from_sorted(keys.to_vec()).expect("sorted keys")
}

pub fn tree_keys<M: jointree::tree::Meta>(t: &Tree<u32, M>) -> SortedKeyList<u32> {
    SortedKeyList::from_sorted(t.to_sorted_list()).expect("in-order traversal is sorted")
}

pub fn key_set(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::btree_set(0u32..4 * max_len as u32 + 4, 0..=max_len).prop_map(|s| s.into_iter().collect())
}
