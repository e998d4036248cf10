//! Persistent binary search tree nodes.
//!
//! A [`Tree`] is either a leaf or a shared, immutable node. Every node caches
//! its subtree size plus a small piece of scheme-specific metadata. Nothing
//! here knows about balance; that lives entirely in each scheme's `join`.

use std::fmt;
use std::sync::Arc;

use crate::cost::Meter;

/// Scheme-specific per-node metadata.
///
/// `refresh` recomputes whatever is derived from the children (AVL height,
/// red-black black height) and keeps whatever belongs to the key itself
/// (color, treap priority). Rotations rely on this split.
pub trait Meta: Copy + PartialEq + Send + Sync + fmt::Debug + 'static {
    fn refresh<K>(self, left: &Tree<K, Self>, right: &Tree<K, Self>) -> Self;
}

pub struct Node<K, M> {
    left: Tree<K, M>,
    key: K,
    right: Tree<K, M>,
    size: usize,
    meta: M,
}

impl<K, M: Copy> Node<K, M> {
    pub fn left(&self) -> &Tree<K, M> {
        &self.left
    }

    pub fn key(&self) -> &K {
        &self.key
    }

    pub fn right(&self) -> &Tree<K, M> {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn meta(&self) -> M {
        self.meta
    }
}

/// A persistent tree. Cloning is O(1) and shares all nodes.
pub struct Tree<K, M> {
    root: Option<Arc<Node<K, M>>>,
}

impl<K, M> Clone for Tree<K, M> {
    fn clone(&self) -> Self {
        Tree {
            root: self.root.clone(),
        }
    }
}

impl<K, M> Default for Tree<K, M> {
    fn default() -> Self {
        Tree::leaf()
    }
}

impl<K, M> Tree<K, M> {
    pub const fn leaf() -> Self {
        Tree { root: None }
    }

    pub fn is_leaf(&self) -> bool {
        self.root.is_none()
    }

    pub fn node(&self) -> Option<&Node<K, M>> {
        self.root.as_deref()
    }

    /// Number of keys.
    pub fn size(&self) -> usize {
        self.root.as_ref().map_or(0, |n| n.size)
    }

    /// `size + 1`, the number of leaves.
    pub fn weight(&self) -> usize {
        self.size() + 1
    }

    /// Recomputed height; leaves have height 0.
    pub fn height(&self) -> usize {
        match self.node() {
            None => 0,
            Some(n) => 1 + n.left.height().max(n.right.height()),
        }
    }

    /// True when both trees are the same allocation (or both leaves).
    pub fn ptr_eq(&self, other: &Self) -> bool {
        match (&self.root, &other.root) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl<K, M: Meta> Tree<K, M> {
    /// Builds a node from its parts, recomputing size and derived metadata.
    ///
    /// `meta` carries the key-owned part (color, priority).
    pub fn from_parts(left: Tree<K, M>, key: K, right: Tree<K, M>, meta: M) -> Self {
        let meta = meta.refresh(&left, &right);
        let size = left.size() + right.size() + 1;
        Tree {
            root: Some(Arc::new(Node {
                left,
                key,
                right,
                size,
                meta,
            })),
        }
    }

    /// `(left, key, right)` of a node.
    ///
    /// # Panics
    /// On a leaf: exposing a leaf is a programming error.
    pub fn expose(&self) -> (&Tree<K, M>, &K, &Tree<K, M>) {
        let n = self.node().expect("expose called on a leaf");
        (&n.left, &n.key, &n.right)
    }

    pub fn meta(&self) -> Option<M> {
        self.node().map(|n| n.meta)
    }

    pub fn key(&self) -> Option<&K> {
        self.node().map(|n| &n.key)
    }

    pub fn left(&self) -> Option<&Tree<K, M>> {
        self.node().map(|n| &n.left)
    }

    pub fn right(&self) -> Option<&Tree<K, M>> {
        self.node().map(|n| &n.right)
    }

    /// Same node with a different key-owned metadata value.
    pub fn with_meta(&self, meta: M) -> Self
    where
        K: Clone,
    {
        let (l, k, r) = self.expose();
        Tree::from_parts(l.clone(), k.clone(), r.clone(), meta)
    }

    /// `Node(A, x, Node(B, y, C))` to `Node(Node(A, x, B), y, C)`.
    ///
    /// # Panics
    /// If the tree or its right child is a leaf.
    pub fn rotate_left(&self) -> Self
    where
        K: Clone,
    {
        let x = self.node().expect("rotate_left on a leaf");
        let y = x.right.node().expect("rotate_left with an empty right child");
        let inner = Tree::from_parts(x.left.clone(), x.key.clone(), y.left.clone(), x.meta);
        Tree::from_parts(inner, y.key.clone(), y.right.clone(), y.meta)
    }

    /// `Node(Node(A, x, B), y, C)` to `Node(A, x, Node(B, y, C))`.
    ///
    /// # Panics
    /// If the tree or its left child is a leaf.
    pub fn rotate_right(&self) -> Self
    where
        K: Clone,
    {
        let y = self.node().expect("rotate_right on a leaf");
        let x = y.left.node().expect("rotate_right with an empty left child");
        let inner = Tree::from_parts(x.right.clone(), y.key.clone(), y.right.clone(), y.meta);
        Tree::from_parts(x.left.clone(), x.key.clone(), inner, x.meta)
    }

    pub fn iter(&self) -> Iter<'_, K, M> {
        let mut it = Iter { stack: Vec::new() };
        it.push_left(self);
        it
    }

    pub fn to_sorted_list(&self) -> Vec<K>
    where
        K: Clone,
    {
        let mut out = Vec::with_capacity(self.size());
        out.extend(self.iter().cloned());
        out
    }

    pub fn first(&self) -> Option<&K> {
        let mut n = self.node()?;
        while let Some(l) = n.left.node() {
            n = l;
        }
        Some(&n.key)
    }

    pub fn last(&self) -> Option<&K> {
        let mut n = self.node()?;
        while let Some(r) = n.right.node() {
            n = r;
        }
        Some(&n.key)
    }

    /// Standard BST search; at most `height + 1` comparisons.
    pub fn contains<C: Meter>(&self, key: &K, meter: &mut C) -> bool
    where
        K: Ord,
    {
        let mut cur = self;
        while let Some(n) = cur.node() {
            meter.comparison();
            match key.cmp(&n.key) {
                std::cmp::Ordering::Less => cur = &n.left,
                std::cmp::Ordering::Greater => cur = &n.right,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Shape and key equality, ignoring metadata.
    pub fn same_shape(&self, other: &Self) -> bool
    where
        K: PartialEq,
    {
        if self.ptr_eq(other) {
            return true;
        }
        match (self.node(), other.node()) {
            (Some(a), Some(b)) => a.key == b.key && a.left.same_shape(&b.left) && a.right.same_shape(&b.right),
            _ => false,
        }
    }

    /// Shape, key and metadata equality.
    pub fn structurally_equal(&self, other: &Self) -> bool
    where
        K: PartialEq,
    {
        if self.ptr_eq(other) {
            return true;
        }
        match (self.node(), other.node()) {
            (Some(a), Some(b)) => {
                a.key == b.key
                    && a.meta == b.meta
                    && a.size == b.size
                    && a.left.structurally_equal(&b.left)
                    && a.right.structurally_equal(&b.right)
            }
            (None, None) => true,
            _ => false,
        }
    }
}

impl<K: fmt::Debug, M: Meta> fmt::Debug for Tree<K, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            None => f.write_str("Leaf"),
            Some(n) => write!(f, "({:?} {:?}{:?} {:?})", n.left, n.key, n.meta, n.right),
        }
    }
}

/// In-order iterator.
pub struct Iter<'a, K, M> {
    stack: Vec<&'a Node<K, M>>,
}

impl<'a, K, M> Iter<'a, K, M> {
    fn push_left(&mut self, mut t: &'a Tree<K, M>) {
        while let Some(n) = t.root.as_deref() {
            self.stack.push(n);
            t = &n.left;
        }
    }
}

impl<'a, K, M> Iterator for Iter<'a, K, M> {
    type Item = &'a K;

    fn next(&mut self) -> Option<&'a K> {
        let n = self.stack.pop()?;
        self.push_left(&n.right);
        Some(&n.key)
    }
}
