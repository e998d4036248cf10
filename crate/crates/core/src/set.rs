use std::fmt;

use crate::scheme::Scheme;
use crate::setops::{self, Parallelism};
use crate::tree::Tree;
use crate::validate::{check_valid, Violation};
use crate::Key;

/// A persistent ordered set: a tree plus the scheme that balances it.
///
/// Every operation returns a new set and leaves its inputs untouched.
pub struct OrderedSet<K, S: Scheme> {
    tree: Tree<K, S::Meta>,
    scheme: S,
    par: Parallelism,
}

impl<K, S: Scheme> Clone for OrderedSet<K, S> {
    fn clone(&self) -> Self {
        OrderedSet {
            tree: self.tree.clone(),
            scheme: self.scheme.clone(),
            par: self.par,
        }
    }
}

impl<K: Key, S: Scheme + Default> Default for OrderedSet<K, S> {
    fn default() -> Self {
        OrderedSet::new(S::default())
    }
}

impl<K: Key, S: Scheme> OrderedSet<K, S> {
    pub fn new(scheme: S) -> Self {
        OrderedSet {
            tree: Tree::leaf(),
            scheme,
            par: Parallelism::default(),
        }
    }

    pub fn from_tree(tree: Tree<K, S::Meta>, scheme: S) -> Self {
        OrderedSet {
            tree,
            scheme,
            par: Parallelism::default(),
        }
    }

    pub fn from_keys<I: IntoIterator<Item = K>>(keys: I, scheme: S) -> Self {
        let tree = setops::from_keys(keys, &scheme);
        OrderedSet::from_tree(tree, scheme)
    }

    pub fn with_parallelism(mut self, par: Parallelism) -> Self {
        self.par = par;
        self
    }

    pub fn tree(&self) -> &Tree<K, S::Meta> {
        &self.tree
    }

    pub fn scheme(&self) -> &S {
        &self.scheme
    }

    pub fn len(&self) -> usize {
        self.tree.size()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_leaf()
    }

    pub fn rank(&self) -> i32 {
        self.scheme.rank(&self.tree)
    }

    pub fn contains(&self, k: &K) -> bool {
        self.tree.contains(k, &mut ())
    }

    pub fn iter(&self) -> crate::tree::Iter<'_, K, S::Meta> {
        self.tree.iter()
    }

    pub fn to_vec(&self) -> Vec<K> {
        self.tree.to_sorted_list()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        check_valid(&self.tree, &self.scheme)
    }

    fn derive(&self, tree: Tree<K, S::Meta>) -> Self {
        OrderedSet {
            tree,
            scheme: self.scheme.clone(),
            par: self.par,
        }
    }

    pub fn insert(&self, k: K) -> Self {
        self.derive(setops::insert(&self.tree, k, &self.scheme, &mut ()))
    }

    pub fn remove(&self, k: &K) -> Self {
        self.derive(setops::delete(&self.tree, k, &self.scheme, &mut ()))
    }

    /// `(keys below k, k present, keys above k)`.
    pub fn split(&self, k: &K) -> (Self, bool, Self) {
        let sp = setops::split(&self.tree, k, &self.scheme, &mut ());
        (self.derive(sp.left), sp.found, self.derive(sp.right))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.derive(setops::union(&self.tree, &other.tree, &self.scheme, self.par, &mut ()))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.derive(setops::intersect(
            &self.tree,
            &other.tree,
            &self.scheme,
            self.par,
            &mut (),
        ))
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.derive(setops::difference(
            &self.tree,
            &other.tree,
            &self.scheme,
            self.par,
            &mut (),
        ))
    }
}

impl<K: Key, S: Scheme> PartialEq for OrderedSet<K, S> {
    /// Key-set equality; shapes may differ.
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().eq(other.iter())
    }
}

impl<K: Key, S: Scheme> fmt::Debug for OrderedSet<K, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<'a, K: Key, S: Scheme> IntoIterator for &'a OrderedSet<K, S> {
    type Item = &'a K;
    type IntoIter = crate::tree::Iter<'a, K, S::Meta>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}
