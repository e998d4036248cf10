//! Reference set algebra over sorted vectors.
//!
//! Deliberately plain: linear merges and a binary-search split. Used as
//! ground truth for the tree algorithms and never on a hot path.

use std::cmp::Ordering;

/// Strictly increasing keys.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SortedKeyList<K>(Vec<K>);

impl<K: Ord> SortedKeyList<K> {
    /// Sorts and removes duplicates.
    pub fn from_unsorted(mut keys: Vec<K>) -> Self {
        keys.sort();
        keys.dedup();
        SortedKeyList(keys)
    }

    /// `None` unless `keys` is strictly increasing.
    pub fn from_sorted(keys: Vec<K>) -> Option<Self> {
        if keys.windows(2).all(|w| w[0] < w[1]) {
            Some(SortedKeyList(keys))
        } else {
            None
        }
    }

    pub fn as_slice(&self) -> &[K] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<K> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, k: &K) -> bool {
        self.0.binary_search(k).is_ok()
    }
}

impl<K> From<SortedKeyList<K>> for Vec<K> {
    fn from(s: SortedKeyList<K>) -> Vec<K> {
        s.0
    }
}

/// Walk both lists, emitting according to which side holds the smaller key.
fn merge<K: Ord + Clone>(
    a: &SortedKeyList<K>,
    b: &SortedKeyList<K>,
    only_a: bool,
    both: bool,
    only_b: bool,
) -> SortedKeyList<K> {
    let (a, b) = (a.as_slice(), b.as_slice());
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                if only_a {
                    out.push(a[i].clone());
                }
                i += 1;
            }
            Ordering::Greater => {
                if only_b {
                    out.push(b[j].clone());
                }
                j += 1;
            }
            Ordering::Equal => {
                if both {
                    out.push(b[j].clone());
                }
                i += 1;
                j += 1;
            }
        }
    }
    if only_a {
        out.extend_from_slice(&a[i..]);
    }
    if only_b {
        out.extend_from_slice(&b[j..]);
    }
    SortedKeyList(out)
}

pub fn oracle_union<K: Ord + Clone>(a: &SortedKeyList<K>, b: &SortedKeyList<K>) -> SortedKeyList<K> {
    merge(a, b, true, true, true)
}

pub fn oracle_intersect<K: Ord + Clone>(a: &SortedKeyList<K>, b: &SortedKeyList<K>) -> SortedKeyList<K> {
    merge(a, b, false, true, false)
}

pub fn oracle_difference<K: Ord + Clone>(a: &SortedKeyList<K>, b: &SortedKeyList<K>) -> SortedKeyList<K> {
    merge(a, b, true, false, false)
}

pub fn oracle_split<K: Ord + Clone>(a: &SortedKeyList<K>, k: &K) -> (SortedKeyList<K>, bool, SortedKeyList<K>) {
    let s = a.as_slice();
    let lo = s.partition_point(|x| x < k);
    let found = s.get(lo) == Some(k);
    let hi = if found { lo + 1 } else { lo };
    (SortedKeyList(s[..lo].to_vec()), found, SortedKeyList(s[hi..].to_vec()))
}
