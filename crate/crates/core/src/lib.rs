//! Persistent, parallel ordered sets in which all rebalancing is done by a
//! single per-scheme `join(left, key, right)`.
//!
//! Four schemes implement [`Scheme`]: [`Avl`], [`RedBlack`],
//! [`WeightBalanced`] and [`Treap`]. Split, join2, insert, delete, union,
//! intersection and difference in [`setops`] are written once on top of
//! `join` and work unchanged for all four. Union, intersection and
//! difference fork their two recursive calls onto the rayon pool.
//!
//! Keys are any `Ord + Hash + Clone` type; [`Real`] wraps `f32`/`f64` with a
//! total order.
//!
//! ```
//! use jointree::{AvlSet, F64};
//!
//! let k = |x: f64| F64::new(x).unwrap();
//! let a: AvlSet<F64> = AvlSet::from_keys([k(0.1), k(0.7), k(0.4)], Default::default());
//! let b = AvlSet::from_keys([k(0.4), k(0.9)], Default::default());
//! let u = a.union(&b);
//! assert_eq!(u.len(), 4);
//! assert!(u.validate().is_ok());
//! ```

pub mod cost;
pub mod key;
pub mod oracle;
pub mod scheme;
mod set;
pub mod setops;
pub mod tree;
pub mod validate;

pub use cost::{CostCounters, Meter};
pub use key::{Key, Real};
pub use scheme::{Avl, ConfigError, RedBlack, Scheme, SchemeConfig, SchemeKind, Treap, WeightBalanced, WithScheme};
pub use set::OrderedSet;
pub use setops::{Parallelism, SplitResult};
pub use tree::Tree;
pub use validate::{check_valid, Rule, Violation};

pub type F64 = Real<f64>;
pub type F32 = Real<f32>;

pub type AvlSet<K> = OrderedSet<K, Avl>;
pub type RbSet<K> = OrderedSet<K, RedBlack>;
pub type WbSet<K> = OrderedSet<K, WeightBalanced>;
pub type TreapSet<K> = OrderedSet<K, Treap>;

pub type AvlTree<K> = Tree<K, <Avl as Scheme>::Meta>;
pub type RbTree<K> = Tree<K, <RedBlack as Scheme>::Meta>;
pub type WbTree<K> = Tree<K, <WeightBalanced as Scheme>::Meta>;
pub type TreapTree<K> = Tree<K, <Treap as Scheme>::Meta>;
