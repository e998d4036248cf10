//! Key types and the deterministic priority hash used by treaps.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::Float;

/// Anything with a total order that can be stored in a tree.
///
/// `Hash` is required so treap priorities can be derived from the key
/// itself rather than stored random numbers.
pub trait Key: Ord + Clone + Hash + Send + Sync + fmt::Debug + 'static {}

impl<T> Key for T where T: Ord + Clone + Hash + Send + Sync + fmt::Debug + 'static {}

/// A floating-point key with a total order.
///
/// NaN has no place in a total order and is rejected at construction.
/// `-0.0` and `0.0` compare equal and hash identically.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Real<F>(F);

impl<F: Float> Real<F> {
    pub fn new(value: F) -> Option<Self> {
        if value.is_nan() {
            None
        } else {
            Some(Real(value))
        }
    }

    pub fn get(self) -> F {
        self.0
    }
}

impl<F: Float> Eq for Real<F> {}

impl<F: Float> PartialOrd for Real<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Float> Ord for Real<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Construction excludes NaN, so partial_cmp is total here.
        self.0.partial_cmp(&other.0).unwrap_or(Ordering::Equal)
    }
}

impl<F: Float> Hash for Real<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        if self.0.is_zero() {
            0u64.hash(state);
            return;
        }
        let (mantissa, exponent, sign) = self.0.integer_decode();
        mantissa.hash(state);
        exponent.hash(state);
        sign.hash(state);
    }
}

impl<F: fmt::Debug> fmt::Debug for Real<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<F: fmt::Display> fmt::Display for Real<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Seeded 64-bit hasher: multiply-rotate accumulation with a SplitMix64
/// finalizer so nearby keys get unrelated priorities.
#[derive(Clone, Copy, Debug)]
pub struct PriorityHasher {
    state: u64,
}

impl PriorityHasher {
    pub fn with_seed(seed: u64) -> Self {
        PriorityHasher {
            state: mix64(seed ^ 0x9e37_79b9_7f4a_7c15),
        }
    }
}

impl Hasher for PriorityHasher {
    fn finish(&self) -> u64 {
        mix64(self.state)
    }

    fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            self.write_u64(u64::from_le_bytes(word));
        }
    }

    fn write_u64(&mut self, word: u64) {
        self.state = (self.state.rotate_left(23) ^ word).wrapping_mul(0x517c_c1b7_2722_0a95);
    }

    fn write_u8(&mut self, i: u8) {
        self.write_u64(i as u64)
    }
    fn write_u16(&mut self, i: u16) {
        self.write_u64(i as u64)
    }
    fn write_u32(&mut self, i: u32) {
        self.write_u64(i as u64)
    }
    fn write_usize(&mut self, i: usize) {
        self.write_u64(i as u64)
    }
    fn write_i8(&mut self, i: i8) {
        self.write_u64(i as u64)
    }
    fn write_i16(&mut self, i: i16) {
        self.write_u64(i as u64)
    }
    fn write_i32(&mut self, i: i32) {
        self.write_u64(i as u64)
    }
    fn write_i64(&mut self, i: i64) {
        self.write_u64(i as u64)
    }
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Treap priority of `key` under `seed`. Pure function of its inputs.
pub fn priority_of<K: Hash + ?Sized>(key: &K, seed: u64) -> u64 {
    let mut hasher = PriorityHasher::with_seed(seed);
    key.hash(&mut hasher);
    hasher.finish()
}
