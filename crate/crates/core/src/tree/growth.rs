use std::fmt;

use super::NaiveSuffixTree;
use crate::error::{Error, Result};
use crate::strings::{Str, Symbol};

/// Growth `k` of a nonempty string, `1 <= k <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrowthValue(pub usize);

impl GrowthValue {
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for GrowthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Growth read off the naive suffix tree: the number of internal nodes on
/// the path to leaf 1 below its nearest branching ancestor.
pub fn growth_tree(s: &Str) -> Result<GrowthValue> {
    Ok(GrowthValue(NaiveSuffixTree::build(s)?.growth()))
}

/// Growth by direct comparison: `n` minus the longest common prefix of `S`
/// with any proper suffix `S[j,n]`, `j >= 2`.
pub fn growth_oracle(s: &Str) -> Result<GrowthValue> {
    if s.is_empty() {
        return Err(Error::EmptyString);
    }
    Ok(GrowthValue(growth_of_slice(s.as_slice())))
}

pub(crate) fn growth_of_slice(s: &[Symbol]) -> usize {
    let n = s.len();
    let mut best = 0;
    for j in 1..n {
        // a suffix shorter than the current best cannot beat it
        if n - j <= best {
            break;
        }
        let lcp = s[j..].iter().zip(s).take_while(|(a, b)| a == b).count();
        best = best.max(lcp);
    }
    n - best
}

/// Both sides of the node-count identity for the naive tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthIdentity {
    /// Nodes of the naive tree.
    pub lhs: usize,
    /// `sum_{m=1}^{n-1} growth(S[m,n]) + 2 + n`.
    pub rhs: usize,
    pub equal: bool,
}

/// Compares the naive tree's node count with the suffix-growth sum plus the
/// root, the single internal node above leaf `n`, and the `n` leaves.
pub fn growth_sum_identity(s: &Str) -> Result<GrowthIdentity> {
    let n = s.len();
    if n < 2 {
        return Err(Error::TooShort { min: 2, len: n });
    }
    let lhs = NaiveSuffixTree::build(s)?.node_count();
    let raw = s.as_slice();
    let rhs = (0..n - 1).map(|m| growth_of_slice(&raw[m..])).sum::<usize>() + 2 + n;
    Ok(GrowthIdentity {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}
