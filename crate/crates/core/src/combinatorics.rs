//! Exact counts of aperiodic strings, the growth-count bound `phi`, and
//! brute-force counts of strings by growth.
//!
//! All arithmetic is on [`BigUint`]. `mu(j, sigma)` follows the divisor
//! recurrence `mu(j) = sigma^j - sum_{d | j, d < j} mu(d)` and is memoized in
//! a process-wide cache; `phi(k, sigma)` sums
//! `mu(j) (sigma - 1) sigma^(k-j-1)` over `j < k` and adds `mu(k)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::enumerate::fold_all;
use crate::error::{Error, Result};
use crate::parallel::Workers;
use crate::strings::minimal_period_of;
use crate::tree::growth_of_slice;

/// The counting functions the verifier checks. [`Combinatorics`] is the real
/// implementation; tests substitute faulty ones to make sure the checks bite.
pub trait Counts: Sync {
    fn mu(&self, j: u32, sigma: u32) -> BigUint;
    fn phi(&self, k: u32, sigma: u32) -> BigUint;
}

/// Memoized `mu` behind a lock, shareable across threads.
#[derive(Debug, Default)]
pub struct Combinatorics {
    mu_cache: Mutex<HashMap<(u32, u32), BigUint>>,
}

impl Combinatorics {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance used by the free functions.
    pub fn shared() -> &'static Combinatorics {
        static SHARED: OnceLock<Combinatorics> = OnceLock::new();
        SHARED.get_or_init(Combinatorics::new)
    }

    pub fn mu(&self, j: u32, sigma: u32) -> Result<BigUint> {
        if j == 0 || sigma == 0 {
            return Err(Error::InvalidArgument(format!("mu needs j >= 1 and sigma >= 1, got j={j} sigma={sigma}")));
        }
        Ok(self.mu_memo(j, sigma))
    }

    fn mu_memo(&self, j: u32, sigma: u32) -> BigUint {
        if let Some(v) = self.mu_cache.lock().unwrap().get(&(j, sigma)) {
            return v.clone();
        }
        // The lock is not held across recursion.
        let mut value = BigUint::from(sigma).pow(j);
        for d in (1..j).filter(|d| j.is_multiple_of(*d)) {
            value -= self.mu_memo(d, sigma);
        }
        self.mu_cache.lock().unwrap().insert((j, sigma), value.clone());
        value
    }

    pub fn phi(&self, k: u32, sigma: u32) -> Result<PhiBound> {
        if k == 0 || sigma < 2 {
            return Err(Error::InvalidArgument(format!("phi needs k >= 1 and sigma >= 2, got k={k} sigma={sigma}")));
        }
        let s = BigUint::from(sigma);
        let mut value = self.mu_memo(k, sigma);
        for j in 1..k {
            value += self.mu_memo(j, sigma) * (sigma - 1) * s.pow(k - j - 1);
        }
        Ok(PhiBound { k, sigma, value })
    }

    /// `sum_{k=1}^m phi(k, sigma)`.
    pub fn phi_prefix_sum(&self, m: u32, sigma: u32) -> Result<BigUint> {
        if m == 0 {
            return Err(Error::InvalidArgument("phi prefix sum needs m >= 1".into()));
        }
        let mut total = BigUint::zero();
        for k in 1..=m {
            total += self.phi(k, sigma)?.value;
        }
        Ok(total)
    }
}

impl Counts for Combinatorics {
    fn mu(&self, j: u32, sigma: u32) -> BigUint {
        self.mu_memo(j, sigma)
    }

    fn phi(&self, k: u32, sigma: u32) -> BigUint {
        Combinatorics::phi(self, k, sigma).map(|p| p.value).unwrap_or_default()
    }
}

/// Number of aperiodic strings of length `j` over `sigma` symbols.
pub fn mu(j: u32, sigma: u32) -> Result<BigUint> {
    Combinatorics::shared().mu(j, sigma)
}

pub fn phi(k: u32, sigma: u32) -> Result<PhiBound> {
    Combinatorics::shared().phi(k, sigma)
}

pub fn phi_prefix_sum(m: u32, sigma: u32) -> Result<BigUint> {
    Combinatorics::shared().phi_prefix_sum(m, sigma)
}

/// `phi(k, sigma)` together with its arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiBound {
    pub k: u32,
    pub sigma: u32,
    #[serde(with = "crate::output::decimal")]
    pub value: BigUint,
}

impl PhiBound {
    /// `k * sigma^k`.
    pub fn ceiling(&self) -> BigUint {
        BigUint::from(self.k) * BigUint::from(self.sigma).pow(self.k)
    }

    pub fn within_ceiling(&self) -> bool {
        self.value <= self.ceiling()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Closed form `sigma^(p^t) - sigma^(p^(t-1))` for prime `p`.
pub fn mu_prime_power(p: u32, t: u32, sigma: u32) -> Result<BigUint> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("prime power exponent must be >= 1".into()));
    }
    let s = BigUint::from(sigma);
    let hi = p.checked_pow(t).ok_or_else(|| Error::InvalidArgument(format!("{p}^{t} overflows")))?;
    Ok(s.pow(hi) - s.pow(hi / p))
}

/// Counts, by exhaustive enumeration, the strings of length `j` whose
/// minimal period is `j`.
pub fn aperiodic_bruteforce(j: u32, sigma: u32, budget: u64, workers: Workers) -> Result<BigUint> {
    if j == 0 {
        return Err(Error::EmptyString);
    }
    let count = fold_all(
        j,
        sigma,
        budget,
        workers,
        || 0u64,
        |acc, s| *acc += u64::from(minimal_period_of(s) == s.len()),
        |a, b| a + b,
    )?;
    Ok(BigUint::from(count))
}

/// `Omega(n, k, sigma)` for every `k`: `counts[k]` is the number of strings
/// of length `n` with growth `k` (`counts[0]` is always zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTable {
    pub n: u32,
    pub sigma: u32,
    pub counts: Vec<BigUint>,
}

impl OmegaTable {
    pub fn omega(&self, k: u32) -> BigUint {
        self.counts.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Enumerates all `sigma^n` strings once and tallies their growth.
pub fn omega_table(n: u32, sigma: u32, budget: u64, workers: Workers) -> Result<OmegaTable> {
    if n == 0 {
        return Err(Error::EmptyString);
    }
    let width = n as usize + 1;
    let counts = fold_all(
        n,
        sigma,
        budget,
        workers,
        || vec![0u64; width],
        |acc, s| acc[growth_of_slice(s)] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )?;
    Ok(OmegaTable {
        n,
        sigma,
        counts: counts.into_iter().map(BigUint::from).collect(),
    })
}

/// Number of strings of length `n` over `sigma` symbols with growth `k`.
pub fn omega_bruteforce(n: u32, k: u32, sigma: u32, budget: u64, workers: Workers) -> Result<BigUint> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("growth k={k} outside 1..={n}")));
    }
    Ok(omega_table(n, sigma, budget, workers)?.omega(k))
}

/// One `Omega <= phi` comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaRow {
    pub sigma: u32,
    pub n: u32,
    pub k: u32,
    #[serde(with = "crate::output::decimal")]
    pub omega: BigUint,
    #[serde(with = "crate::output::decimal")]
    pub phi: BigUint,
    pub n_ge_2k: bool,
    pub omega_le_phi: bool,
}

impl crate::output::Record for OmegaRow {
    const FIELDS: &'static [&'static str] = &["sigma", "n", "k", "omega", "phi", "n_ge_2k", "omega_le_phi"];
}

pub fn omega_rows(table: &OmegaTable, counts: &dyn Counts) -> Vec<OmegaRow> {
    (1..=table.n)
        .map(|k| {
            let omega = table.omega(k);
            let phi = counts.phi(k, table.sigma);
            OmegaRow {
                sigma: table.sigma,
                n: table.n,
                k,
                omega_le_phi: omega <= phi,
                omega,
                phi,
                n_ge_2k: table.n >= 2 * k,
            }
        })
        .collect()
}

/// Result of checking `Omega(n, k) <= phi(k)` over a grid, together with
/// the partition check `sum_k Omega(n, k) = sigma^n`.
#[derive(Debug, Clone)]
pub struct OmegaBoundReport {
    pub sigma: u32,
    /// Rows with `k <= k_max` and `n >= 2k`.
    pub rows: Vec<OmegaRow>,
    /// `(n, sum_k Omega(n, k), sigma^n)`.
    pub partitions: Vec<(u32, BigUint, BigUint)>,
}

impl OmegaBoundReport {
    pub fn violations(&self) -> impl Iterator<Item = &OmegaRow> {
        self.rows.iter().filter(|r| !r.omega_le_phi)
    }

    pub fn holds(&self) -> bool {
        self.violations().next().is_none() && self.partitions.iter().all(|(_, a, b)| a == b)
    }
}

pub fn verify_omega_bounds(
    sigma: u32,
    k_max: u32,
    n_max: u32,
    budget: u64,
    workers: Workers,
    counts: &dyn Counts,
) -> Result<OmegaBoundReport> {
    let mut rows = Vec::new();
    let mut partitions = Vec::new();
    for n in 2..=n_max {
        if (1..=k_max).all(|k| n < 2 * k) {
            continue;
        }
        let table = omega_table(n, sigma, budget, workers)?;
        partitions.push((n, table.total(), crate::enumerate::string_count(n, sigma)));
        rows.extend(
            omega_rows(&table, counts)
                .into_iter()
                .filter(|r| r.k <= k_max && r.n_ge_2k),
        );
    }
    Ok(OmegaBoundReport { sigma, rows, partitions })
}

/// `(m + 1) sigma^(m + 1)`.
pub fn phi_prefix_ceiling(m: u32, sigma: u32) -> BigUint {
    BigUint::from(m + 1) * BigUint::from(sigma).pow(m + 1)
}

/// `sigma (sigma - 1)^(j - 1)`.
pub fn mu_floor(j: u32, sigma: u32) -> BigUint {
    BigUint::from(sigma) * BigUint::from(sigma.saturating_sub(1)).pow(j.saturating_sub(1))
}

/// `sigma^j - sigma`.
pub fn mu_ceiling(j: u32, sigma: u32) -> BigUint {
    BigUint::from(sigma).pow(j) - sigma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_BUDGET;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn mu_u(j: u32, sigma: u32) -> u64 {
        mu(j, sigma).unwrap().try_into().unwrap()
    }

    /// Independent oracle: count aperiodic strings by decoding every index.
    fn aperiodic_by_decoding(j: u32, sigma: u32) -> u64 {
        let total = (sigma as u64).pow(j);
        (0..total)
            .filter(|&code| {
                let s: Vec<u32> = (0..j).map(|i| (code / (sigma as u64).pow(i) % sigma as u64) as u32).collect();
                let n = s.len();
                !(1..n).any(|d| n.is_multiple_of(d) && (0..n - d).all(|i| s[i] == s[i + d]))
            })
            .count() as u64
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_u(1, 3), 3);
        assert_eq!(mu_u(3, 3), 24);
        assert_eq!(mu_u(2, 2), 2);
        assert_eq!(mu_u(8, 3), 6480);
        assert_eq!(mu_u(8, 3), 6561 - 72 - 6 - 3);
        assert!(mu(0, 2).is_err());
    }

    #[test]
    fn mu_matches_decoding_oracle() {
        for sigma in 2..=3 {
            for j in 1..=8 {
                assert_eq!(mu_u(j, sigma), aperiodic_by_decoding(j, sigma), "j={j} sigma={sigma}");
            }
        }
    }

    #[test]
    fn binary_row_is_recurrence() {
        let row: Vec<u64> = (1..=9).map(|j| mu_u(j, 2)).collect();
        assert_eq!(row, vec![2, 2, 6, 12, 30, 54, 126, 240, 504]);
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(mu_prime_power(2, 2, 2).unwrap(), big(12));
        assert_eq!(mu_prime_power(5, 1, 5).unwrap(), big(3120));
        assert_eq!(mu_prime_power(3, 2, 2).unwrap(), big(504));
        assert_eq!(mu_prime_power(3, 2, 2).unwrap(), mu(9, 2).unwrap());
        assert!(matches!(mu_prime_power(4, 1, 2), Err(Error::NotPrime(4))));
        assert!(matches!(mu_prime_power(1, 1, 2), Err(Error::NotPrime(1))));
        assert!(mu_prime_power(2, 0, 2).is_err());
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(1, 2).unwrap().value, big(2));
        assert_eq!(phi(2, 2).unwrap().value, big(4));
        assert_eq!(phi(3, 2).unwrap().value, big(12));
        assert_eq!(phi(1, 5).unwrap().value, big(5));
        assert!(phi(0, 2).is_err());
        assert!(phi(2, 1).is_err());
    }

    #[test]
    fn phi_prefix_examples() {
        assert_eq!(phi_prefix_sum(1, 2).unwrap(), big(2));
        assert_eq!(phi_prefix_ceiling(1, 2), big(8));
        assert_eq!(phi_prefix_sum(3, 2).unwrap(), big(18));
        assert_eq!(phi_prefix_ceiling(3, 2), big(64));
        assert!(phi_prefix_sum(5, 3).unwrap() <= phi_prefix_ceiling(5, 3));
    }

    #[test]
    fn omega_examples() {
        let w = Workers(2);
        assert_eq!(omega_bruteforce(2, 2, 2, DEFAULT_BUDGET, w).unwrap(), big(2));
        assert_eq!(omega_bruteforce(2, 1, 2, DEFAULT_BUDGET, w).unwrap(), big(2));
        assert!(omega_bruteforce(2, 3, 2, DEFAULT_BUDGET, w).is_err());
        assert!(matches!(
            omega_bruteforce(30, 1, 2, DEFAULT_BUDGET, w),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn omega_full_growth_count() {
        // growth n iff S[1] never reappears
        for sigma in 2..=3u32 {
            for n in 1..=10u32 {
                if (sigma as u64).pow(n) > 1 << 16 {
                    continue;
                }
                let t = omega_table(n, sigma, DEFAULT_BUDGET, Workers(0)).unwrap();
                assert_eq!(t.omega(n), mu_floor(n, sigma), "n={n} sigma={sigma}");
                assert_eq!(t.total(), crate::enumerate::string_count(n, sigma));
            }
        }
    }

    #[test]
    fn omega_bounds_small_grids() {
        let c = Combinatorics::new();
        let r = verify_omega_bounds(2, 4, 10, DEFAULT_BUDGET, Workers(0), &c).unwrap();
        assert!(r.holds());
        assert!(r.rows.iter().any(|row| row.n == 4 && row.k == 2 && row.phi == big(4)));
        let r = verify_omega_bounds(3, 3, 7, DEFAULT_BUDGET, Workers(0), &c).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn mu_floor_ceiling_bounds() {
        for sigma in 2..=6 {
            for j in 1..=20 {
                let m = mu(j, sigma).unwrap();
                if j > 1 {
                    assert!(m <= mu_ceiling(j, sigma));
                }
                assert!(m >= mu_floor(j, sigma));
                assert!(phi(j, sigma).unwrap().within_ceiling());
            }
        }
    }

    #[test]
    fn shared_cache_is_consistent_across_threads() {
        let c = Combinatorics::new();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| assert_eq!(c.mu(12, 3).unwrap(), mu(12, 3).unwrap()));
            }
        });
    }
}
