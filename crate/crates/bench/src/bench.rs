//! Timed set-operation runs producing CSV rows.

use std::fmt;
use std::fs::OpenOptions;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use jointree::cost::{CostCounters, Meter};
use jointree::oracle::{oracle_difference, oracle_intersect, oracle_union, SortedKeyList};
use jointree::{setops, Parallelism, Scheme, SchemeConfig, Tree, WithScheme, F64};
use serde::Serialize;

use crate::workload::{generate, Distribution};
use crate::BenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Union,
    Intersect,
    Difference,
}

impl Op {
    pub const ALL: [Op; 3] = [Op::Union, Op::Intersect, Op::Difference];

    pub fn name(self) -> &'static str {
        match self {
            Op::Union => "union",
            Op::Intersect => "intersect",
            Op::Difference => "difference",
        }
    }

    pub fn apply<K: jointree::Key, S: Scheme, C: Meter>(
        self,
        a: &Tree<K, S::Meta>,
        b: &Tree<K, S::Meta>,
        s: &S,
        par: Parallelism,
        meter: &mut C,
    ) -> Tree<K, S::Meta> {
        match self {
            Op::Union => setops::union(a, b, s, par, meter),
            Op::Intersect => setops::intersect(a, b, s, par, meter),
            Op::Difference => setops::difference(a, b, s, par, meter),
        }
    }

    pub fn oracle<K: Ord + Clone>(self, a: &SortedKeyList<K>, b: &SortedKeyList<K>) -> SortedKeyList<K> {
        match self {
            Op::Union => oracle_union(a, b),
            Op::Intersect => oracle_intersect(a, b),
            Op::Difference => oracle_difference(a, b),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Op {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Op::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| format!("unknown op {s:?} (expected union, intersect or difference)"))
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub scheme: SchemeConfig,
    pub op: Op,
    /// Size of the first (larger) input.
    pub n: usize,
    /// Size of the second input.
    pub m: usize,
    pub dist: Distribution,
    /// Mean of the second input when `dist` is Gaussian.
    pub mu2: f64,
    pub threads: usize,
    pub repeats: usize,
    pub cutoff: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn new(scheme: SchemeConfig, op: Op, n: usize, m: usize, dist: Distribution) -> Self {
        BenchConfig {
            scheme,
            op,
            n,
            m,
            dist,
            mu2: 1.0,
            threads: 1,
            repeats: 5,
            cutoff: Parallelism::DEFAULT_CUTOFF,
            seed: crate::DEFAULT_SEED,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.m > self.n {
            return Err(BenchError::Config(format!(
                "need n >= m, got n={} m={}",
                self.n, self.m
            )));
        }
        if self.threads == 0 {
            return Err(BenchError::Config("threads must be at least 1".into()));
        }
        if self.repeats == 0 {
            return Err(BenchError::Config("repeats must be at least 1".into()));
        }
        if self.cutoff == 0 {
            return Err(BenchError::Config("cutoff must be at least 1".into()));
        }
        if !self.mu2.is_finite() {
            return Err(BenchError::Config(format!("mu2 must be finite, got {}", self.mu2)));
        }
        Ok(())
    }

    /// The two input key lists: `n` keys from `dist` and `m` keys from
    /// `dist` shifted to mean `mu2` (Gaussian) or from `dist` itself.
    pub fn inputs(&self) -> Result<(Vec<F64>, Vec<F64>), BenchError> {
        let second = match self.dist {
            Distribution::Uniform => Distribution::Uniform,
            Distribution::Gaussian { sigma, .. } => Distribution::gaussian(self.mu2, sigma)?,
        };
        Ok((
            generate(self.dist, self.n, self.seed, 0),
            generate(second, self.m, self.seed, 1),
        ))
    }
}

/// One CSV row. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub scheme: String,
    pub op: String,
    pub n: usize,
    pub m: usize,
    pub dist: String,
    pub sigma: Option<f64>,
    pub threads: usize,
    pub cutoff: usize,
    pub repeat: usize,
    pub millis: f64,
    pub comparisons: u64,
    pub join_steps: u64,
    pub split_steps: u64,
    pub rotations: u64,
    pub analytic_span: u64,
}

pub const CSV_HEADER: &str =
    "scheme,op,n,m,dist,sigma,threads,cutoff,repeat,millis,comparisons,join_steps,split_steps,rotations,analytic_span";

/// Runs one warm-up and `repeats` timed executions of the configured
/// operation on a dedicated pool of `threads` workers.
///
/// Counters come from one extra instrumented run; timed runs carry no
/// meter. Every timed result is compared with the merge oracle before its
/// row is kept.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;
    let (a, b) = cfg.inputs()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| BenchError::Config(e.to_string()))?;
    let job = Job { cfg, a: &a, b: &b };
    pool.install(|| cfg.scheme.dispatch(job))?
}

struct Job<'a> {
    cfg: &'a BenchConfig,
    a: &'a [F64],
    b: &'a [F64],
}

impl WithScheme for Job<'_> {
    type Output = Result<Vec<BenchRecord>, BenchError>;

    fn run<S: Scheme>(self, s: S) -> Self::Output {
        let cfg = self.cfg;
        let par = Parallelism::with_cutoff(cfg.cutoff);
        let ta = setops::from_keys(self.a.iter().copied(), &s);
        let tb = setops::from_keys(self.b.iter().copied(), &s);
        let expect = cfg.op.oracle(
            &SortedKeyList::from_unsorted(self.a.to_vec()),
            &SortedKeyList::from_unsorted(self.b.to_vec()),
        );
        let check = |t: &Tree<F64, S::Meta>, what: &str| -> Result<(), BenchError> {
            if t.size() == expect.len() && t.iter().eq(expect.as_slice()) {
                Ok(())
            } else {
                Err(BenchError::Correctness(format!(
                    "{} {} {what}: {} keys, oracle has {}",
                    s.kind(),
                    cfg.op,
                    t.size(),
                    expect.len()
                )))
            }
        };

        let mut counters = CostCounters::zero();
        let probe = cfg.op.apply(&ta, &tb, &s, par, &mut counters);
        check(&probe, "instrumented run")?;
        drop(probe);
        let warm = cfg.op.apply(&ta, &tb, &s, par, &mut ());
        check(&warm, "warm-up")?;
        drop(warm);

        let mut rows = Vec::with_capacity(cfg.repeats);
        for repeat in 0..cfg.repeats {
            let start = Instant::now();
            let out = cfg.op.apply(&ta, &tb, &s, par, &mut ());
            let millis = start.elapsed().as_secs_f64() * 1e3;
            check(&out, &format!("repeat {repeat}"))?;
            drop(out);
            rows.push(BenchRecord {
                scheme: s.kind().name().to_string(),
                op: cfg.op.name().to_string(),
                n: cfg.n,
                m: cfg.m,
                dist: cfg.dist.name().to_string(),
                sigma: cfg.dist.sigma(),
                threads: cfg.threads,
                cutoff: cfg.cutoff,
                repeat,
                millis: millis.max(f64::MIN_POSITIVE),
                comparisons: counters.comparisons,
                join_steps: counters.join_descent_steps,
                split_steps: counters.split_steps,
                rotations: counters.rotations,
                analytic_span: counters.analytic_span,
            });
        }
        Ok(rows)
    }
}

/// Median wall time of a set of rows.
pub fn median_millis(rows: &[BenchRecord]) -> f64 {
    let mut t: Vec<f64> = rows.iter().map(|r| r.millis).collect();
    t.sort_by(f64::total_cmp);
    match t.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => t[n / 2],
        n => (t[n / 2 - 1] + t[n / 2]) / 2.0,
    }
}

/// Appends rows to `path`, writing the header only if the file is new or
/// empty.
pub fn append_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), BenchError> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let fresh = file.metadata()?.len() == 0;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use jointree::SchemeKind;

    fn small(kind: SchemeKind, op: Op) -> BenchConfig {
        let mut c = BenchConfig::new(SchemeConfig::new(kind), op, 2000, 500, Distribution::Uniform);
        c.repeats = 2;
        c
    }

    #[test]
    fn rows_per_repeat_with_counters() {
        for op in Op::ALL {
            let rows = run_bench(&small(SchemeKind::Avl, op)).unwrap();
            assert_eq!(rows.len(), 2);
            assert!(rows.iter().all(|r| r.comparisons > 0 && r.millis > 0.0));
            assert_eq!(rows[0].comparisons, rows[1].comparisons);
        }
    }

    #[test]
    fn rejects_m_above_n() {
        let mut c = small(SchemeKind::RedBlack, Op::Union);
        c.m = 3000;
        assert_eq!(run_bench(&c).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn header_written_once() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.csv");
        let rows = run_bench(&small(SchemeKind::Treap, Op::Union)).unwrap();
        append_csv(&p, &rows).unwrap();
        append_csv(&p, &rows).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("treap,union,2000,500,uniform,,1,1024,0,"));
    }

    #[test]
    fn median_of_even_and_odd() {
        let mut r = run_bench(&small(SchemeKind::WeightBalanced, Op::Intersect)).unwrap();
        r[0].millis = 1.0;
        r[1].millis = 3.0;
        assert_eq!(median_millis(&r), 2.0);
        assert_eq!(median_millis(&r[..1]), 1.0);
    }

    #[test]
    fn op_names_parse() {
        for op in Op::ALL {
            assert_eq!(op.name().parse::<Op>().unwrap(), op);
        }
        assert!("xor".parse::<Op>().is_err());
    }
}
