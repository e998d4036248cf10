//! Comparison counts for a fixed large input and a growing small one.

use jointree::cost::CostCounters;
use jointree::{setops, Parallelism, Scheme, SchemeConfig, WithScheme, F64};
use serde::Serialize;

use crate::bench::Op;
use crate::workload::{generate, Distribution};
use crate::BenchError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub scheme: String,
    pub op: String,
    pub n: usize,
    pub m: usize,
    pub comparisons: u64,
    /// `comparisons / (m * log2(n/m + 1))`.
    pub ratio: f64,
}

/// Powers of 4 up to `n`, plus `n` itself.
pub fn sweep_sizes(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(1usize), |m| m.checked_mul(4))
        .take_while(|&m| m <= n)
        .collect();
    if n > 0 && out.last() != Some(&n) {
        out.push(n);
    }
    out
}

pub fn bound(n: usize, m: usize) -> f64 {
    m as f64 * (n as f64 / m as f64 + 1.0).log2()
}

/// Sequential, instrumented `op(A, B)` with `|A| = n` fixed and `|B| = m`
/// for each `m` in `sizes`. Keys are uniform on `[0, 1)`.
pub fn run_scaling(
    scheme: &SchemeConfig,
    op: Op,
    n: usize,
    sizes: &[usize],
    seed: u64,
) -> Result<Vec<ScalingRow>, BenchError> {
    if let Some(&m) = sizes.iter().find(|&&m| m == 0 || m > n) {
        return Err(BenchError::Config(format!("sweep size {m} outside 1..={n}")));
    }
    let a = generate(Distribution::Uniform, n, seed, 0);
    let biggest = sizes.iter().copied().max().unwrap_or(0);
    let b = generate(Distribution::Uniform, biggest, seed, 1);
    Ok(scheme.dispatch(Sweep {
        op,
        n,
        sizes,
        a: &a,
        b: &b,
    })?)
}

struct Sweep<'a> {
    op: Op,
    n: usize,
    sizes: &'a [usize],
    a: &'a [F64],
    b: &'a [F64],
}

impl WithScheme for Sweep<'_> {
    type Output = Vec<ScalingRow>;

    fn run<S: Scheme>(self, s: S) -> Vec<ScalingRow> {
        let ta = setops::from_keys(self.a.iter().copied(), &s);
        self.sizes
            .iter()
            .map(|&m| {
                let tb = setops::from_keys(self.b[..m].iter().copied(), &s);
                let mut c = CostCounters::zero();
                self.op.apply(&ta, &tb, &s, Parallelism::sequential(), &mut c);
                ScalingRow {
                    scheme: s.kind().name().to_string(),
                    op: self.op.name().to_string(),
                    n: self.n,
                    m,
                    comparisons: c.comparisons,
                    ratio: c.comparisons as f64 / bound(self.n, m),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jointree::SchemeKind;

    #[test]
    fn sizes() {
        assert_eq!(sweep_sizes(64), vec![1, 4, 16, 64]);
        assert_eq!(sweep_sizes(100), vec![1, 4, 16, 64, 100]);
        assert_eq!(sweep_sizes(0), Vec::<usize>::new());
    }

    #[test]
    fn single_key_costs_about_one_search() {
        let n = 1 << 14;
        let rows = run_scaling(&SchemeConfig::new(SchemeKind::Avl), Op::Union, n, &[1, n], 3).unwrap();
        assert!(rows[0].comparisons <= 2 * 15, "{:?}", rows[0]);
        assert!(rows[1].comparisons > rows[0].comparisons);
    }
}
