//! Expected growth and expected naive-tree size, exactly by enumeration or
//! by seeded Monte Carlo.
//!
//! Per-sample values are integers (or integers over `sigma`), so means and
//! variances are accumulated exactly in `u128` and converted to floating
//! point once at the end. Output is therefore identical for any worker
//! count.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::enumerate::{fold_all, string_count};
use crate::error::{Error, Result};
use crate::parallel::{split_range, Workers};
use crate::sampling::{random_string_unchecked, random_symbol, sample_rng};
use crate::strings::{Alphabet, Str, Symbol};
use crate::tree::{growth_of_slice, NaiveSuffixTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Montecarlo,
}

/// How a random string of length `n` is formed for growth experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Draw `S'` of length `n - 1`, prepend one uniform symbol.
    Uniform,
    /// Draw `S'`, then average exactly over all `sigma` prepended symbols;
    /// each sample is the conditional expectation given `S'`.
    FixedSuffix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Growth,
    Nodes,
}

/// One expectation estimate. `ratio` is `mean / n` for growth and
/// `mean / n^2` for node counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationEstimate {
    pub quantity: Quantity,
    pub mode: Mode,
    pub regime: Option<Regime>,
    pub n: u32,
    pub sigma: u32,
    pub samples: u64,
    pub mean: f64,
    /// Reduced fraction `p/q`; exhaustive mode only.
    pub exact_mean: Option<String>,
    pub stderr: f64,
    pub ratio: f64,
    /// Smallest per-sample value, fixed-suffix regime only.
    pub min_sample: Option<f64>,
}

impl crate::output::Record for ExpectationEstimate {
    const FIELDS: &'static [&'static str] = &[
        "quantity",
        "mode",
        "regime",
        "n",
        "sigma",
        "samples",
        "mean",
        "exact_mean",
        "stderr",
        "ratio",
        "min_sample",
    ];
}

impl fmt::Display for ExpectationEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} n={} sigma={} mean={:.4} stderr={:.4} ratio={:.4}",
            self.quantity, self.n, self.sigma, self.mean, self.stderr, self.ratio
        )
    }
}

fn ratio(quantity: Quantity, mean: f64, n: u32) -> f64 {
    let n = n as f64;
    match quantity {
        Quantity::Growth => mean / n,
        Quantity::Nodes => mean / (n * n),
    }
}

/// Exact sums `(count, sum, sum of squares)` of per-sample values expressed
/// as numerators over a common `scale`.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    sum: u128,
    sum_sq: u128,
    min: Option<u64>,
}

impl Moments {
    fn push(&mut self, v: u64) {
        self.count += 1;
        self.sum += v as u128;
        self.sum_sq += (v as u128) * (v as u128);
        self.min = Some(self.min.map_or(v, |m| m.min(v)));
    }

    fn merge(self, o: Moments) -> Moments {
        Moments {
            count: self.count + o.count,
            sum: self.sum + o.sum,
            sum_sq: self.sum_sq + o.sum_sq,
            min: match (self.min, o.min) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }

    fn mean(&self, scale: u64) -> f64 {
        self.sum as f64 / self.count as f64 / scale as f64
    }

    fn stderr(&self, scale: u64) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let c = self.count as u128;
        // c * sum_sq - sum^2 is exact and non-negative
        let num = c * self.sum_sq - self.sum * self.sum;
        let var = num as f64 / (c as f64 * (c - 1) as f64);
        (var / self.count as f64).sqrt() / scale as f64
    }
}

pub(crate) fn exact_fraction(num: BigUint, den: BigUint) -> (String, f64) {
    let g = num.gcd(&den);
    let (p, q) = (num / &g, den / &g);
    let value = p.to_f64().unwrap_or(f64::NAN) / q.to_f64().unwrap_or(f64::NAN);
    (format!("{p}/{q}"), value)
}

fn check_experiment(n: u32, sigma: u32) -> Result<Alphabet> {
    let a = Alphabet::new(sigma)?;
    a.require_nondegenerate()?;
    if n == 0 {
        return Err(Error::EmptyString);
    }
    Ok(a)
}

fn exhaustive(quantity: Quantity, n: u32, sigma: u32, budget: u64, workers: Workers) -> Result<ExpectationEstimate> {
    let alphabet = check_experiment(n, sigma)?;
    let sum = fold_all(
        n,
        sigma,
        budget,
        workers,
        || 0u128,
        |acc, s| {
            *acc += match quantity {
                Quantity::Growth => growth_of_slice(s),
                Quantity::Nodes => NaiveSuffixTree::build(&Str::from_trusted(s.to_vec(), alphabet))
                    .expect("nonempty")
                    .node_count(),
            } as u128
        },
        |a, b| a + b,
    )?;
    let total = string_count(n, sigma);
    let (exact, mean) = exact_fraction(BigUint::from(sum), total.clone());
    Ok(ExpectationEstimate {
        quantity,
        mode: Mode::Exhaustive,
        regime: None,
        n,
        sigma,
        samples: total.to_u64().unwrap_or(u64::MAX),
        mean,
        exact_mean: Some(exact),
        stderr: 0.0,
        ratio: ratio(quantity, mean, n),
        min_sample: None,
    })
}

/// Exact mean growth over all `sigma^n` strings.
pub fn expected_growth_exhaustive(n: u32, sigma: u32, budget: u64, workers: Workers) -> Result<ExpectationEstimate> {
    exhaustive(Quantity::Growth, n, sigma, budget, workers)
}

/// Exact mean naive-tree node count over all `sigma^n` strings.
pub fn expected_size_exhaustive(n: u32, sigma: u32, budget: u64, workers: Workers) -> Result<ExpectationEstimate> {
    exhaustive(Quantity::Nodes, n, sigma, budget, workers)
}

fn monte_carlo<F>(samples: u64, workers: Workers, sample: F) -> Moments
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    let parts = workers.parts();
    workers
        .map_reduce(
            parts,
            |p| {
                let mut m = Moments::default();
                for i in split_range(samples, parts, p) {
                    m.push(sample(i));
                }
                m
            },
            Moments::merge,
        )
        .unwrap_or_default()
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument("montecarlo needs samples >= 1".into()));
    }
    Ok(())
}

/// Growth of `samples` random strings of length `n` under `regime`.
pub fn expected_growth_montecarlo(
    n: u32,
    sigma: u32,
    samples: u64,
    seed: u64,
    regime: Regime,
    workers: Workers,
) -> Result<ExpectationEstimate> {
    let alphabet = check_experiment(n, sigma)?;
    check_samples(samples)?;
    let len = n as usize;
    let moments = monte_carlo(samples, workers, |i| {
        let mut rng = sample_rng(seed, i);
        let mut buf: Vec<Symbol> = vec![0; len];
        for x in &mut buf[1..] {
            *x = random_symbol(alphabet, &mut rng);
        }
        match regime {
            Regime::Uniform => {
                buf[0] = random_symbol(alphabet, &mut rng);
                growth_of_slice(&buf) as u64
            }
            Regime::FixedSuffix => (1..=sigma)
                .map(|c| {
                    buf[0] = c;
                    growth_of_slice(&buf) as u64
                })
                .sum(),
        }
    });
    let scale = match regime {
        Regime::Uniform => 1,
        Regime::FixedSuffix => sigma as u64,
    };
    let mean = moments.mean(scale);
    Ok(ExpectationEstimate {
        quantity: Quantity::Growth,
        mode: Mode::Montecarlo,
        regime: Some(regime),
        n,
        sigma,
        samples,
        mean,
        exact_mean: None,
        stderr: moments.stderr(scale),
        ratio: ratio(Quantity::Growth, mean, n),
        min_sample: match regime {
            Regime::Uniform => None,
            Regime::FixedSuffix => moments.min.map(|m| m as f64 / scale as f64),
        },
    })
}

/// Naive-tree node count of `samples` uniform random strings of length `n`.
pub fn expected_size_montecarlo(n: u32, sigma: u32, samples: u64, seed: u64, workers: Workers) -> Result<ExpectationEstimate> {
    let alphabet = check_experiment(n, sigma)?;
    check_samples(samples)?;
    let moments = monte_carlo(samples, workers, |i| {
        let s = random_string_unchecked(n as usize, alphabet, &mut sample_rng(seed, i));
        NaiveSuffixTree::build(&s).expect("nonempty").node_count() as u64
    });
    let mean = moments.mean(1);
    Ok(ExpectationEstimate {
        quantity: Quantity::Nodes,
        mode: Mode::Montecarlo,
        regime: None,
        n,
        sigma,
        samples,
        mean,
        exact_mean: None,
        stderr: moments.stderr(1),
        ratio: ratio(Quantity::Nodes, mean, n),
        min_sample: None,
    })
}

/// Settings shared by the expectation commands.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub sigma: u32,
    pub n_list: Vec<u32>,
    pub samples: u64,
    pub seed: u64,
    pub mode: Mode,
    pub budget: u64,
    pub workers: Workers,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        Alphabet::new(self.sigma)?.require_nondegenerate()?;
        if self.n_list.is_empty() {
            return Err(Error::InvalidArgument("no lengths given".into()));
        }
        if self.n_list.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument("lengths must be sorted ascending".into()));
        }
        match self.mode {
            Mode::Montecarlo => check_samples(self.samples),
            Mode::Exhaustive => self
                .n_list
                .iter()
                .try_for_each(|&n| crate::enumerate::check_budget(n, self.sigma, self.budget).map(drop)),
        }
    }
}

/// Expected growth for every length; Monte Carlo reports each regime.
pub fn cmd_expected_growth(config: &ExperimentConfig, regimes: &[Regime]) -> Result<Vec<ExpectationEstimate>> {
    config.validate()?;
    let mut out = Vec::new();
    for &n in &config.n_list {
        match config.mode {
            Mode::Exhaustive => out.push(expected_growth_exhaustive(n, config.sigma, config.budget, config.workers)?),
            Mode::Montecarlo => {
                for &r in regimes {
                    out.push(expected_growth_montecarlo(
                        n,
                        config.sigma,
                        config.samples,
                        config.seed,
                        r,
                        config.workers,
                    )?);
                }
            }
        }
    }
    Ok(out)
}

/// Expected naive-tree node count for every length.
pub fn cmd_expected_size(config: &ExperimentConfig) -> Result<Vec<ExpectationEstimate>> {
    config.validate()?;
    config
        .n_list
        .iter()
        .map(|&n| match config.mode {
            Mode::Exhaustive => expected_size_exhaustive(n, config.sigma, config.budget, config.workers),
            Mode::Montecarlo => expected_size_montecarlo(n, config.sigma, config.samples, config.seed, config.workers),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_BUDGET;

    #[test]
    fn exhaustive_growth_small() {
        let e = expected_growth_exhaustive(2, 2, DEFAULT_BUDGET, Workers(2)).unwrap();
        assert_eq!(e.exact_mean.as_deref(), Some("3/2"));
        assert_eq!(e.mean, 1.5);
        let e = expected_growth_exhaustive(1, 2, DEFAULT_BUDGET, Workers(2)).unwrap();
        assert_eq!(e.exact_mean.as_deref(), Some("1/1"));
    }

    #[test]
    fn exhaustive_size_small() {
        let e = expected_size_exhaustive(2, 2, DEFAULT_BUDGET, Workers(1)).unwrap();
        assert_eq!(e.exact_mean.as_deref(), Some("11/2"));
        assert_eq!(e.ratio, 5.5 / 4.0);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(expected_growth_montecarlo(4, 2, 0, 1, Regime::Uniform, Workers(1)).is_err());
        assert!(expected_growth_montecarlo(4, 1, 10, 1, Regime::Uniform, Workers(1)).is_err());
        assert!(expected_size_montecarlo(0, 2, 10, 1, Workers(1)).is_err());
        assert!(matches!(
            expected_growth_exhaustive(30, 2, DEFAULT_BUDGET, Workers(1)),
            Err(Error::BudgetExceeded { .. })
        ));
        let cfg = ExperimentConfig {
            sigma: 2,
            n_list: vec![8, 4],
            samples: 1,
            seed: 0,
            mode: Mode::Montecarlo,
            budget: DEFAULT_BUDGET,
            workers: Workers(1),
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn fixed_suffix_one_symbol() {
        let e = expected_growth_montecarlo(1, 3, 5, 9, Regime::FixedSuffix, Workers(1)).unwrap();
        assert_eq!(e.mean, 1.0);
        assert_eq!(e.min_sample, Some(1.0));
    }

    #[test]
    fn worker_count_does_not_change_estimates() {
        let a = expected_growth_montecarlo(40, 2, 300, 5, Regime::Uniform, Workers(1)).unwrap();
        for w in [2, 8] {
            assert_eq!(a, expected_growth_montecarlo(40, 2, 300, 5, Regime::Uniform, Workers(w)).unwrap());
        }
        let b = expected_size_montecarlo(30, 3, 50, 5, Workers(1)).unwrap();
        assert_eq!(b, expected_size_montecarlo(30, 3, 50, 5, Workers(8)).unwrap());
    }

    #[test]
    fn moments_stderr() {
        let mut m = Moments::default();
        for v in [1, 2, 3, 4] {
            m.push(v);
        }
        // sample variance 5/3, stderr sqrt(5/12)
        assert!((m.stderr(1) - (5.0f64 / 12.0).sqrt()).abs() < 1e-12);
        assert_eq!(m.mean(2), 1.25);
    }
}
