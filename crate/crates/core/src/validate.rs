//! Structural validation: BST order, cached sizes, and the scheme's own
//! invariants at every node. Violations are reported as data.

use std::fmt;

use crate::scheme::Scheme;
use crate::tree::Tree;
use crate::Key;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    BstOrder,
    SizeCache,
    HeightCache,
    AvlBalance,
    RedRule,
    BlackRule,
    BlackHeightCache,
    WeightBalance,
    HeapOrder,
    PriorityCache,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::BstOrder => "keys out of order",
            Rule::SizeCache => "cached size is stale",
            Rule::HeightCache => "cached height is stale",
            Rule::AvlBalance => "child heights differ by more than one",
            Rule::RedRule => "red node with a red child",
            Rule::BlackRule => "black heights of children differ",
            Rule::BlackHeightCache => "cached black height is stale",
            Rule::WeightBalance => "children weights out of alpha balance",
            Rule::HeapOrder => "child priority beats parent",
            Rule::PriorityCache => "cached priority disagrees with the key hash",
        })
    }
}

/// First violation found, bottom-up, with the path from the root as a
/// string of `L`/`R` steps (empty for the root itself).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub path: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{} at root", self.rule)
        } else {
            write!(f, "{} at {}", self.rule, self.path)
        }
    }
}

impl std::error::Error for Violation {}

pub fn check_valid<K: Key, S: Scheme>(t: &Tree<K, S::Meta>, scheme: &S) -> Result<(), Violation> {
    let mut path = Vec::new();
    check(t, scheme, None, None, &mut path).map_err(|rule| Violation {
        rule,
        path: path.iter().collect(),
    })
}

// On error, `path` is left pointing at the offending node.
fn check<K: Key, S: Scheme>(
    t: &Tree<K, S::Meta>,
    scheme: &S,
    lo: Option<&K>,
    hi: Option<&K>,
    path: &mut Vec<char>,
) -> Result<(), Rule> {
    let Some(n) = t.node() else {
        return Ok(());
    };
    let key = n.key();
    if lo.is_some_and(|lo| key <= lo) || hi.is_some_and(|hi| key >= hi) {
        return Err(Rule::BstOrder);
    }
    path.push('L');
    check(n.left(), scheme, lo, Some(key), path)?;
    path.pop();
    path.push('R');
    check(n.right(), scheme, Some(key), hi, path)?;
    path.pop();
    if n.size() != n.left().size() + n.right().size() + 1 {
        return Err(Rule::SizeCache);
    }
    scheme.check_node(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{Avl, RedBlack, Treap, WeightBalanced};

    #[test]
    fn leaf_is_valid_everywhere() {
        assert!(check_valid(&Tree::<u8, _>::leaf(), &Avl).is_ok());
        assert!(check_valid(&Tree::<u8, _>::leaf(), &RedBlack).is_ok());
        assert!(check_valid(&Tree::<u8, _>::leaf(), &WeightBalanced::default()).is_ok());
        assert!(check_valid(&Tree::<u8, _>::leaf(), &Treap::default()).is_ok());
    }

    #[test]
    fn out_of_order_keys_located() {
        let s = WeightBalanced::default();
        let one = s.make_node(Tree::leaf(), 9u8, Tree::leaf());
        // 9 sits in the left subtree of 5: bypass make_node's order check.
        let t = Tree::from_parts(
            one,
            5u8,
            s.make_node(Tree::leaf(), 7, Tree::leaf()),
            crate::scheme::wb::NoMeta,
        );
        let v = check_valid(&t, &s).unwrap_err();
        assert_eq!(v.rule, Rule::BstOrder);
        assert_eq!(v.path, "L");
        assert_eq!(v.to_string(), "keys out of order at L");
    }
}
