//! Random key generation and key files.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use jointree::F64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};

use crate::BenchError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distribution {
    /// Uniform on `[0, 1)`.
    Uniform,
    Gaussian {
        mu: f64,
        sigma: f64,
    },
}

impl Distribution {
    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self, BenchError> {
        if !(sigma > 0.0 && sigma.is_finite()) || !mu.is_finite() {
            return Err(BenchError::Config(format!(
                "gaussian needs finite mu and sigma > 0, got mu={mu} sigma={sigma}"
            )));
        }
        Ok(Distribution::Gaussian { mu, sigma })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Gaussian { .. } => "gaussian",
        }
    }

    pub fn sigma(&self) -> Option<f64> {
        match *self {
            Distribution::Uniform => None,
            Distribution::Gaussian { sigma, .. } => Some(sigma),
        }
    }
}

/// `n` distinct keys drawn from `dist`. Collisions are redrawn, so the
/// output always has exactly `n` keys, in draw order.
pub fn generate(dist: Distribution, n: usize, seed: u64, stream: u64) -> Vec<F64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    let normal = match dist {
        Distribution::Gaussian { mu, sigma } => Some(Normal::new(mu, sigma).expect("validated sigma")),
        Distribution::Uniform => None,
    };
    while out.len() < n {
        let x: f64 = match &normal {
            Some(d) => d.sample(&mut rng),
            None => rng.gen(),
        };
        let Some(k) = F64::new(x) else { continue };
        if seen.insert(k) {
            out.push(k);
        }
    }
    out
}

pub fn write_keys(path: &Path, keys: &[F64]) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for k in keys {
        // `Display` for f64 prints the shortest string that parses back exactly.
        writeln!(w, "{}", k.get())?;
    }
    w.flush()
}

pub fn read_keys(path: &Path) -> Result<Vec<F64>, BenchError> {
    let r = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let x: f64 = line
            .parse()
            .map_err(|_| BenchError::Config(format!("{}:{}: not a number: {line:?}", path.display(), i + 1)))?;
        let k = F64::new(x).ok_or_else(|| BenchError::Config(format!("{}:{}: NaN key", path.display(), i + 1)))?;
        out.push(k);
    }
    Ok(out)
}
