mod common;

use common::{build, key_pair, key_set, rng, tree_keys, PATTERNS};
use jointree::cost::CostCounters;
use jointree::scheme::{Scheme, SchemeKind};
use jointree::{setops, Parallelism, Tree};
use proptest::prelude::*;

type Trees<S> = (
    Tree<u32, <S as Scheme>::Meta>,
    Tree<u32, <S as Scheme>::Meta>,
    Tree<u32, <S as Scheme>::Meta>,
);

fn three<S: Scheme>(s: &S, a: &[u32], b: &[u32], c: &[u32], seed: u64) -> Trees<S> {
    let mut r = rng(seed);
    (build(&mut r, a, s), build(&mut r, b, s), build(&mut r, c, s))
}

fn laws<S: Scheme>(s: &S, a: &[u32], b: &[u32], c: &[u32], seed: u64) -> Result<(), TestCaseError> {
    let (ta, tb, tc) = three(s, a, b, c, seed);
    let p = Parallelism::default();
    let u = |x: &Tree<u32, S::Meta>, y: &Tree<u32, S::Meta>| setops::union(x, y, s, p, &mut ());
    let i = |x: &Tree<u32, S::Meta>, y: &Tree<u32, S::Meta>| setops::intersect(x, y, s, p, &mut ());

    let ab = u(&ta, &tb);
    let ba = u(&tb, &ta);
    prop_assert_eq!(tree_keys(&ab), tree_keys(&ba));
    let left = u(&ab, &tc);
    let right = u(&ta, &u(&tb, &tc));
    prop_assert_eq!(tree_keys(&left), tree_keys(&right));
    let dist_l = i(&ta, &u(&tb, &tc));
    let dist_r = u(&i(&ta, &tb), &i(&ta, &tc));
    prop_assert_eq!(tree_keys(&dist_l), tree_keys(&dist_r));

    let d = setops::difference(&ta, &tb, s, p, &mut ());
    prop_assert_eq!(tree_keys(&u(&d, &i(&ta, &tb))), tree_keys(&ta));

    if s.kind() == SchemeKind::Treap {
        prop_assert!(ab.structurally_equal(&ba));
        prop_assert!(left.structurally_equal(&right));
    }
    Ok(())
}

fn schedule_independent<S: Scheme>(s: &S, pattern: usize, seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let (a, b) = key_pair(&mut r, PATTERNS[pattern], 2000);
    let (ta, tb) = (setops::from_sorted(&a, s), setops::from_sorted(&b, s));
    let run = |threads: usize, cutoff: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let par = Parallelism::with_cutoff(cutoff);
            let mut c = CostCounters::zero();
            let u = setops::union(&ta, &tb, s, par, &mut c);
            let i = setops::intersect(&ta, &tb, s, par, &mut c);
            let d = setops::difference(&ta, &tb, s, par, &mut c);
            (u, i, d, c)
        })
    };
    let base = run(1, usize::MAX);
    for (threads, cutoff) in [(1, 1), (4, 1), (4, 16), (2, 1024)] {
        let other = run(threads, cutoff);
        prop_assert!(base.0.structurally_equal(&other.0));
        prop_assert!(base.1.structurally_equal(&other.1));
        prop_assert!(base.2.structurally_equal(&other.2));
        prop_assert_eq!(base.3, other.3);
    }
    prop_assert!(base.3.analytic_span <= base.3.analytic_work);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn union_commutes_associates_and_intersection_distributes(
        a in key_set(120), b in key_set(120), c in key_set(120), seed: u64
    ) {
        each_scheme!(laws, &a, &b, &c, seed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn results_and_counters_do_not_depend_on_the_schedule(pattern in 0usize..4, seed: u64) {
        each_scheme!(schedule_independent, pattern, seed);
    }
}
