//! Randomized end-to-end check of every operation against the merge
//! oracle and the scheme's structural invariants.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hasher;

use jointree::key::PriorityHasher;
use jointree::oracle::{oracle_difference, oracle_intersect, oracle_split, oracle_union, SortedKeyList};
use jointree::{check_valid, setops, Parallelism, Scheme, Tree};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_KEYS: usize = 64;
const UNIVERSE: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Seed that reproduces this failure as trial 0.
    pub seed: u64,
    pub op: &'static str,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub probe: u32,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} failed: {}", self.op, self.detail)?;
        writeln!(f, "  a = {:?}", self.a)?;
        writeln!(f, "  b = {:?}", self.b)?;
        write!(f, "  probe = {}, seed = {}", self.probe, self.seed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    pub checks: u64,
    /// Hash of every result key list, in order. Equal across schemes for
    /// the same seed and trial count.
    pub digest: u64,
    pub failure: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Seed of trial `i` in a run started from `seed`.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add((i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_set(rng: &mut ChaCha8Rng) -> Vec<u32> {
    let n = rng.gen_range(0..=MAX_KEYS);
    let (lo, width) = match rng.gen_range(0..3) {
        0 => (0, UNIVERSE),
        1 => (0, UNIVERSE / 4),
        _ => (rng.gen_range(0..UNIVERSE), UNIVERSE / 8),
    };
    let set: BTreeSet<u32> = (0..n).map(|_| lo + rng.gen_range(0..width)).collect();
    set.into_iter().collect()
}

/// Built by inserting in random order, so that shapes depend on the
/// scheme's incremental behaviour rather than on bulk loading.
fn build<S: Scheme>(rng: &mut ChaCha8Rng, keys: &[u32], s: &S) -> Tree<u32, S::Meta> {
    let mut v = keys.to_vec();
    v.shuffle(rng);
    v.into_iter()
        .fold(Tree::leaf(), |t, k| setops::insert(&t, k, s, &mut ()))
}

struct Trial<'a, S: Scheme> {
    s: &'a S,
    hasher: &'a mut PriorityHasher,
    checks: &'a mut u64,
}

impl<S: Scheme> Trial<'_, S> {
    fn check(
        &mut self,
        op: &'static str,
        t: &Tree<u32, S::Meta>,
        expect: &[u32],
    ) -> Result<(), (&'static str, String)> {
        *self.checks += 1;
        if let Err(v) = check_valid(t, self.s) {
            return Err((op, format!("invalid {:?} tree: {v}", self.s.kind())));
        }
        let got = t.to_sorted_list();
        if got != expect {
            return Err((op, format!("keys {got:?}, expected {expect:?}")));
        }
        self.hasher.write_usize(got.len());
        for k in got {
            self.hasher.write_u32(k);
        }
        Ok(())
    }
}

fn run_trial<S: Scheme>(
    s: &S,
    rng: &mut ChaCha8Rng,
    a: &[u32],
    b: &[u32],
    probe: u32,
    t: &mut Trial<'_, S>,
) -> Result<(), (&'static str, String)> {
    let (ta, tb) = (build(rng, a, s), build(rng, b, s));
    t.check("build", &ta, a)?;
    let oa = SortedKeyList::from_sorted(a.to_vec()).expect("sorted");
    let ob = SortedKeyList::from_sorted(b.to_vec()).expect("sorted");
    let par = Parallelism::with_cutoff(8);

    let sp = setops::split(&ta, &probe, s, &mut ());
    let (ol, found, or) = oracle_split(&oa, &probe);
    t.check("split", &sp.left, ol.as_slice())?;
    t.check("split", &sp.right, or.as_slice())?;
    if sp.found != found {
        return Err(("split", format!("found = {}, expected {found}", sp.found)));
    }
    let mut joined = ol.as_slice().to_vec();
    joined.extend_from_slice(or.as_slice());
    t.check("join2", &setops::join2(&sp.left, &sp.right, s, &mut ()), &joined)?;
    if let Some(&last) = a.last() {
        let (rest, k) = setops::split_last(&ta, s, &mut ());
        if k != last {
            return Err(("split_last", format!("returned {k}, expected {last}")));
        }
        t.check("split_last", &rest, &a[..a.len() - 1])?;
    }

    let single = SortedKeyList::from_sorted(vec![probe]).expect("one key");
    t.check(
        "insert",
        &setops::insert(&ta, probe, s, &mut ()),
        oracle_union(&oa, &single).as_slice(),
    )?;
    t.check(
        "delete",
        &setops::delete(&ta, &probe, s, &mut ()),
        oracle_difference(&oa, &single).as_slice(),
    )?;
    t.check(
        "union",
        &setops::union(&ta, &tb, s, par, &mut ()),
        oracle_union(&oa, &ob).as_slice(),
    )?;
    t.check(
        "intersect",
        &setops::intersect(&ta, &tb, s, par, &mut ()),
        oracle_intersect(&oa, &ob).as_slice(),
    )?;
    t.check(
        "difference",
        &setops::difference(&ta, &tb, s, par, &mut ()),
        oracle_difference(&oa, &ob).as_slice(),
    )?;
    Ok(())
}

/// Runs `trials` randomized trials and stops at the first failure.
pub fn verify<S: Scheme>(s: &S, trials: usize, seed: u64) -> VerifyReport {
    let mut hasher = PriorityHasher::with_seed(seed);
    let mut checks = 0;
    for i in 0..trials {
        let ts = trial_seed(seed, i);
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let a = random_set(&mut rng);
        let b = random_set(&mut rng);
        let probe = rng.gen_range(0..UNIVERSE + 8);
        let mut t = Trial {
            s,
            hasher: &mut hasher,
            checks: &mut checks,
        };
        if let Err((op, detail)) = run_trial(s, &mut rng, &a, &b, probe, &mut t) {
            return VerifyReport {
                trials: i + 1,
                checks,
                digest: hasher.finish(),
                failure: Some(Counterexample {
                    seed: ts,
                    op,
                    a,
                    b,
                    probe,
                    detail,
                }),
            };
        }
    }
    VerifyReport {
        trials,
        checks,
        digest: hasher.finish(),
        failure: None,
    }
}
