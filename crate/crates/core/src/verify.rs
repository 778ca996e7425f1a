//! One-shot verification of the counting identities and inequalities and of
//! the exhaustive tree identities. Every checked relation becomes one
//! [`Check`]; any failing check makes the run fail.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    aperiodic_bruteforce, is_prime, mu_ceiling, mu_floor, mu_prime_power, phi_prefix_ceiling, verify_omega_bounds, Counts,
};
use crate::enumerate::{fold_all, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::parallel::Workers;
use crate::strings::{Alphabet, Str};
use crate::tree::{growth_of_slice, growth_oracle, growth_tree, CompactSuffixTree, NaiveSuffixTree};

/// Published table of aperiodic-string counts, `sigma` by `j = 1..8`.
pub const TABLE1_CSV: &str = include_str!("../data/table1_mu.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// A documented misprint in the published table.
    KnownTypo,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub item: String,
    pub lhs: String,
    pub relation: String,
    pub rhs: String,
    pub status: Status,
}

impl crate::output::Record for Check {
    const FIELDS: &'static [&'static str] = &["suite", "item", "lhs", "relation", "rhs", "status"];
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::KnownTypo => "KNOWN-TYPO",
            Status::Fail => "FAIL",
        };
        write!(f, "[{tag}] {} {}: {} {} {}", self.suite, self.item, self.lhs, self.relation, self.rhs)
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn known_typos(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::KnownTypo)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    fn push(&mut self, suite: &str, item: String, lhs: impl ToString, relation: &str, rhs: impl ToString, ok: bool) {
        self.checks.push(Check {
            suite: suite.into(),
            item,
            lhs: lhs.to_string(),
            relation: relation.into(),
            rhs: rhs.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub budget: u64,
    pub workers: Workers,
    /// Table to compare against; the embedded copy when `None`.
    pub table_csv: Option<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            budget: DEFAULT_BUDGET,
            workers: Workers::default(),
            table_csv: None,
        }
    }
}

/// Misprints in the published table that the recurrence disagrees with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownTypo {
    /// The row lists `mu(1), mu(3), .., mu(9)`.
    RowShift { sigma: u32 },
    /// A single entry printed as `printed`.
    Entry { sigma: u32, j: u32, printed: u64 },
}

pub const KNOWN_TABLE1_TYPOS: [KnownTypo; 2] = [
    KnownTypo::RowShift { sigma: 2 },
    KnownTypo::Entry {
        sigma: 3,
        j: 8,
        printed: 648,
    },
];

/// `(sigma, [mu(1), .., mu(8)])` rows of a table file.
pub fn parse_table(csv_text: &str) -> Result<Vec<(u32, Vec<BigUint>)>> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let mut fields = rec.iter();
        let sigma: u32 = fields
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("bad sigma in table row {rec:?}")))?;
        let values = fields
            .map(|v| v.trim().parse::<BigUint>().map_err(|e| Error::InvalidArgument(format!("bad table value {v:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push((sigma, values));
    }
    Ok(rows)
}

fn check_table(report: &mut VerifyReport, counts: &dyn Counts, table: &[(u32, Vec<BigUint>)]) {
    const SUITE: &str = "table1";
    for (sigma, printed) in table {
        let sigma = *sigma;
        let computed: Vec<BigUint> = (1..=printed.len() as u32).map(|j| counts.mu(j, sigma)).collect();
        if &computed == printed {
            for (j, v) in computed.iter().enumerate() {
                report.push(SUITE, format!("mu({},{sigma})", j + 1), v, "==", v, true);
            }
            continue;
        }
        let shifted: Vec<BigUint> = std::iter::once(1)
            .chain(3..=printed.len() as u32 + 1)
            .map(|j| counts.mu(j, sigma))
            .collect();
        if &shifted == printed && KNOWN_TABLE1_TYPOS.contains(&KnownTypo::RowShift { sigma }) {
            report.checks.push(Check {
                suite: SUITE.into(),
                item: format!("row sigma={sigma}"),
                lhs: join(printed),
                relation: "shifted from recurrence".into(),
                rhs: join(&computed),
                status: Status::KnownTypo,
            });
            continue;
        }
        for (j, (c, p)) in computed.iter().zip(printed).enumerate() {
            let j = j as u32 + 1;
            let item = format!("mu({j},{sigma})");
            if c == p {
                report.push(SUITE, item, c, "==", p, true);
                continue;
            }
            let documented = KNOWN_TABLE1_TYPOS.iter().any(|t| match *t {
                KnownTypo::Entry { sigma: s, j: jj, printed } => s == sigma && jj == j && BigUint::from(printed) == *p,
                KnownTypo::RowShift { .. } => false,
            });
            report.checks.push(Check {
                suite: SUITE.into(),
                item,
                lhs: c.to_string(),
                relation: "vs printed".into(),
                rhs: p.to_string(),
                status: if documented { Status::KnownTypo } else { Status::Fail },
            });
        }
    }
}

fn join(v: &[BigUint]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn check_counting(report: &mut VerifyReport, counts: &dyn Counts, config: &VerifyConfig) -> Result<()> {
    for sigma in [2u32, 3] {
        let mut j = 1;
        while (sigma as u64).pow(j) <= 1 << 20 {
            let brute = aperiodic_bruteforce(j, sigma, config.budget, config.workers)?;
            let m = counts.mu(j, sigma);
            report.push("mu-bruteforce", format!("mu({j},{sigma})"), &m, "==", &brute, m == brute);
            j += 1;
        }
    }

    for sigma in 2..=5u32 {
        for p in (2..=32u32).filter(|&p| is_prime(p as u64)) {
            let mut t = 1;
            while p.pow(t) <= 32 {
                let closed = mu_prime_power(p, t, sigma)?;
                let m = counts.mu(p.pow(t), sigma);
                report.push("prime-power", format!("mu({p}^{t},{sigma})"), &m, "==", &closed, m == closed);
                t += 1;
            }
        }
    }

    for sigma in 2..=6u32 {
        for j in 1..=20u32 {
            let m = counts.mu(j, sigma);
            if j > 1 {
                let hi = mu_ceiling(j, sigma);
                report.push("mu-upper", format!("mu({j},{sigma})"), &m, "<=", &hi, m <= hi);
            }
            let lo = mu_floor(j, sigma);
            report.push("mu-lower", format!("mu({j},{sigma})"), &m, ">=", &lo, m >= lo);
        }
    }

    for sigma in 2..=5u32 {
        let mut prefix = BigUint::default();
        for k in 1..=20u32 {
            let phi = counts.phi(k, sigma);
            let ceiling = BigUint::from(k) * BigUint::from(sigma).pow(k);
            report.push("phi-ceiling", format!("phi({k},{sigma})"), &phi, "<=", &ceiling, phi <= ceiling);
            prefix += phi;
            let bound = phi_prefix_ceiling(k, sigma);
            report.push("phi-prefix", format!("sum phi(1..={k},{sigma})"), &prefix, "<=", &bound, prefix <= bound);
        }
    }

    for (sigma, k_max, n_max) in [(2u32, 5u32, 12u32), (3, 3, 7)] {
        let t1 = verify_omega_bounds(sigma, k_max, n_max, config.budget, config.workers, counts)?;
        for r in &t1.rows {
            report.push(
                "omega-le-phi",
                format!("Omega({},{},{sigma})", r.n, r.k),
                &r.omega,
                "<=",
                &r.phi,
                r.omega_le_phi,
            );
        }
        for (n, total, expected) in &t1.partitions {
            report.push("omega-partition", format!("sum_k Omega({n},k,{sigma})"), total, "==", expected, total == expected);
        }
    }
    Ok(())
}

fn check_trees(report: &mut VerifyReport, config: &VerifyConfig) -> Result<()> {
    for (text, sigma, expected) in [("aabccb", 3u32, 5usize), ("abcdefabcdab", 6, 8)] {
        let s = Str::from_text(text, Alphabet::new(sigma)?)?;
        let by_tree = growth_tree(&s)?.get();
        let by_lcp = growth_oracle(&s)?.get();
        report.push("growth", format!("tree({text})"), by_tree, "==", expected, by_tree == expected);
        report.push("growth", format!("lcp({text})"), by_lcp, "==", expected, by_lcp == expected);
    }

    let fig = Str::from_text("aabccb", Alphabet::new(3)?)?;
    let naive = NaiveSuffixTree::build(&fig)?;
    report.push("reference-trees", "naive nodes(aabccb)".into(), naive.node_count(), "==", 25, naive.node_count() == 25);
    let compact = CompactSuffixTree::from_naive(&naive);
    report.push("reference-trees", "compact nodes(aabccb)".into(), compact.node_count(), "==", 10, compact.node_count() == 10);
    let mut labels = compact.edge_labels();
    labels.sort();
    let mut expected: Vec<String> = ["c", "b", "a", "b$", "cb$", "ccb$", "$", "bccb$", "abccb$"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    expected.sort();
    report.push("reference-trees", "compact labels(aabccb)".into(), labels.join(" "), "==", expected.join(" "), labels == expected);

    for (sigma, n_max) in [(2u32, 12u32), (3, 7)] {
        let alphabet = Alphabet::new(sigma)?;
        for n in 1..=n_max {
            // (strings, growth mismatches, identity mismatches, invalid trees)
            let (seen, growth_bad, identity_bad, invalid) = fold_all(
                n,
                sigma,
                config.budget,
                config.workers,
                || (0u64, 0u64, 0u64, 0u64),
                |acc, raw| {
                    let tree = NaiveSuffixTree::build(&Str::from_trusted(raw.to_vec(), alphabet)).expect("nonempty");
                    acc.0 += 1;
                    acc.1 += u64::from(tree.growth() != growth_of_slice(raw));
                    if raw.len() >= 2 {
                        let rhs: usize = (0..raw.len() - 1).map(|m| growth_of_slice(&raw[m..])).sum::<usize>() + 2 + raw.len();
                        acc.2 += u64::from(tree.node_count() != rhs);
                    }
                    let compact = CompactSuffixTree::from_naive(&tree);
                    acc.3 += u64::from(tree.validate().is_err() || compact.validate().is_err());
                },
                |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3),
            )?;
            let item = format!("sigma={sigma} n={n} strings={seen}");
            report.push("growth-equivalence", item.clone(), growth_bad, "==", 0, growth_bad == 0);
            if n >= 2 {
                report.push("node-identity", item.clone(), identity_bad, "==", 0, identity_bad == 0);
            }
            report.push("tree-invariants", item, invalid, "==", 0, invalid == 0);
        }
    }
    Ok(())
}

pub fn run_verify(counts: &dyn Counts, config: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let table = parse_table(config.table_csv.as_deref().unwrap_or(TABLE1_CSV))?;
    check_table(&mut report, counts, &table);
    check_counting(&mut report, counts, config)?;
    check_trees(&mut report, config)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Combinatorics;

    #[test]
    fn embedded_table_has_exactly_two_known_typos() {
        let c = Combinatorics::new();
        let mut report = VerifyReport::default();
        check_table(&mut report, &c, &parse_table(TABLE1_CSV).unwrap());
        assert!(report.passed());
        let typos: Vec<_> = report.known_typos().map(|c| c.item.clone()).collect();
        assert_eq!(typos, vec!["row sigma=2", "mu(8,3)"]);
    }

    #[test]
    fn undocumented_table_error_fails() {
        let c = Combinatorics::new();
        let tampered = TABLE1_CSV.replace("4,4,12,60,240", "4,4,12,61,240");
        let mut report = VerifyReport::default();
        check_table(&mut report, &c, &parse_table(&tampered).unwrap());
        assert!(!report.passed());
        assert_eq!(report.failures().count(), 1);
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn corrected_table_has_no_typos() {
        let c = Combinatorics::new();
        let fixed = TABLE1_CSV
            .replace("2,2,6,12,30,54,126,240,504", "2,2,2,6,12,30,54,126,240")
            .replace(",648\n", ",6480\n");
        let mut report = VerifyReport::default();
        check_table(&mut report, &c, &parse_table(&fixed).unwrap());
        assert!(report.passed());
        assert_eq!(report.known_typos().count(), 0);
    }

    #[test]
    fn bad_table_file_is_an_error() {
        assert!(parse_table("sigma,mu1\nx,2\n").is_err());
        assert!(parse_table("sigma,mu1\n2,-3\n").is_err());
    }
}
