//! Balancing schemes.
//!
//! A scheme supplies exactly three things: per-node metadata, a rank, and
//! `join`. Everything in [`crate::setops`] is written once against this
//! trait.

use std::fmt;

use thiserror::Error;

use crate::cost::Meter;
use crate::tree::{Meta, Node, Tree};
use crate::validate::Rule;
use crate::Key;

pub mod avl;
pub mod rb;
pub mod treap;
pub mod wb;

pub use avl::Avl;
pub use rb::{Color, RedBlack};
pub use treap::Treap;
pub use wb::WeightBalanced;

pub trait Scheme: Clone + Send + Sync + fmt::Debug + 'static {
    type Meta: Meta;

    fn kind(&self) -> SchemeKind;

    /// Rank of a tree. Leaves have rank -1 under every scheme.
    fn rank<K>(&self, t: &Tree<K, Self::Meta>) -> i32;

    /// Metadata for a freshly created node holding `key`.
    fn fresh_meta<K: Key>(&self, key: &K) -> Self::Meta;

    /// Concatenate `left`, `key`, `right` into one balanced tree.
    ///
    /// Requires every key of `left` < `key` < every key of `right`; this
    /// is only checked with the `validate` feature.
    fn join<K: Key, C: Meter>(
        &self,
        left: Tree<K, Self::Meta>,
        key: K,
        right: Tree<K, Self::Meta>,
        meter: &mut C,
    ) -> Tree<K, Self::Meta>;

    /// Local invariant and cached-metadata check of one node whose
    /// children are already known to be valid.
    fn check_node<K: Key>(&self, node: &Node<K, Self::Meta>) -> Result<(), Rule>;

    /// Plain constructor: no rebalancing.
    fn make_node<K: Key>(&self, left: Tree<K, Self::Meta>, key: K, right: Tree<K, Self::Meta>) -> Tree<K, Self::Meta> {
        debug_check_order(&left, &key, &right);
        let meta = self.fresh_meta(&key);
        Tree::from_parts(left, key, right, meta)
    }
}

/// Join precondition check, compiled in with the `validate` feature and in
/// this crate's unit tests.
#[inline]
pub(crate) fn debug_check_order<K: Ord + fmt::Debug, M: Meta>(left: &Tree<K, M>, key: &K, right: &Tree<K, M>) {
    if cfg!(any(test, feature = "validate")) {
        if let Some(max) = left.last() {
            assert!(max < key, "join order violated: left max {max:?} >= key {key:?}");
        }
        if let Some(min) = right.first() {
            assert!(key < min, "join order violated: key {key:?} >= right min {min:?}");
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeKind {
    Avl,
    RedBlack,
    WeightBalanced,
    Treap,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 4] = [
        SchemeKind::Avl,
        SchemeKind::RedBlack,
        SchemeKind::WeightBalanced,
        SchemeKind::Treap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Avl => "avl",
            SchemeKind::RedBlack => "rb",
            SchemeKind::WeightBalanced => "wb",
            SchemeKind::Treap => "treap",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "avl" => Ok(SchemeKind::Avl),
            "rb" => Ok(SchemeKind::RedBlack),
            "wb" => Ok(SchemeKind::WeightBalanced),
            "treap" => Ok(SchemeKind::Treap),
            other => Err(ConfigError::UnknownScheme(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("alpha {0} outside (2/11, 1 - 1/sqrt(2)]")]
    AlphaOutOfRange(f64),
    #[error("unknown scheme `{0}` (expected avl, rb, wb or treap)")]
    UnknownScheme(String),
}

/// Runtime choice of scheme and its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeConfig {
    pub kind: SchemeKind,
    pub alpha: f64,
    pub seed: u64,
}

impl SchemeConfig {
    pub fn new(kind: SchemeKind) -> Self {
        SchemeConfig {
            kind,
            alpha: WeightBalanced::DEFAULT_ALPHA,
            seed: Treap::DEFAULT_SEED,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self, ConfigError> {
        WeightBalanced::new(alpha)?;
        self.alpha = alpha;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Run `f` with the concrete scheme this config names.
    pub fn dispatch<F: WithScheme>(&self, f: F) -> Result<F::Output, ConfigError> {
        Ok(match self.kind {
            SchemeKind::Avl => f.run(Avl),
            SchemeKind::RedBlack => f.run(RedBlack),
            SchemeKind::WeightBalanced => f.run(WeightBalanced::new(self.alpha)?),
            SchemeKind::Treap => f.run(Treap::with_seed(self.seed)),
        })
    }
}

/// A computation generic over the scheme, for use with
/// [`SchemeConfig::dispatch`].
pub trait WithScheme {
    type Output;
    fn run<S: Scheme>(self, scheme: S) -> Self::Output;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_rejects_bad_alpha() {
        let c = SchemeConfig::new(SchemeKind::WeightBalanced);
        assert!(c.with_alpha(0.29).is_ok());
        assert!(c.with_alpha(1.0 - std::f64::consts::FRAC_1_SQRT_2).is_ok());
        assert!(c.with_alpha(2.0 / 11.0).is_err());
        assert!(c.with_alpha(0.3).is_err());
        assert!(c.with_alpha(f64::NAN).is_err());
    }

    #[test]
    fn kinds_round_trip_through_names() {
        for k in SchemeKind::ALL {
            assert_eq!(k.name().parse::<SchemeKind>().unwrap(), k);
        }
        assert!("splay".parse::<SchemeKind>().is_err());
    }

    struct Name;
    impl WithScheme for Name {
        type Output = SchemeKind;
        fn run<S: Scheme>(self, s: S) -> SchemeKind {
            s.kind()
        }
    }

    #[test]
    fn dispatch_picks_the_named_scheme() {
        for k in SchemeKind::ALL {
            assert_eq!(SchemeConfig::new(k).dispatch(Name).unwrap(), k);
        }
    }
}
