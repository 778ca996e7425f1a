//! Non-compact ("naive") and compact suffix trees, and the growth statistic.

mod compact;
mod dot;
mod growth;
mod naive;

use std::fmt;

pub use compact::{CompactSuffixTree, Span};
pub use growth::{growth_oracle, growth_sum_identity, growth_tree, GrowthIdentity, GrowthValue};
pub(crate) use growth::growth_of_slice;
pub use naive::NaiveSuffixTree;

use crate::strings::{push_symbol, Str, Symbol, TERMINATOR_CHAR};

pub type NodeId = usize;

/// Label of a naive-tree edge. Ordering puts every symbol before the
/// terminator, which fixes child order everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    Sym(Symbol),
    Terminator,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        match *self {
            EdgeLabel::Sym(x) => push_symbol(&mut s, x),
            EdgeLabel::Terminator => s.push(TERMINATOR_CHAR),
        }
        f.write_str(&s)
    }
}

/// `S[j,n]` followed by the terminator, as edge labels.
pub fn suffix_labels(source: &Str, j: usize) -> Vec<EdgeLabel> {
    source.as_slice()[j - 1..]
        .iter()
        .map(|&x| EdgeLabel::Sym(x))
        .chain(std::iter::once(EdgeLabel::Terminator))
        .collect()
}

fn check_children(v: NodeId, children: &[(EdgeLabel, NodeId)]) -> Result<(), String> {
    if children.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(format!("children of node {v} are not strictly ordered"));
    }
    Ok(())
}

/// Node counts of a constructed tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeCounts {
    pub total: usize,
    /// Non-leaf nodes, root included.
    pub internal: usize,
    pub leaves: usize,
}

/// One-line summary consumed by the harness:
/// `n=<n> sigma=<s> nodes=<total> internal=<i> leaves=<n> growth=<g>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    pub n: usize,
    pub sigma: u32,
    pub counts: NodeCounts,
    pub growth: usize,
}

impl fmt::Display for TreeStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} sigma={} nodes={} internal={} leaves={} growth={}",
            self.n, self.sigma, self.counts.total, self.counts.internal, self.counts.leaves, self.growth
        )
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::{CompactSuffixTree, NaiveSuffixTree};
    use crate::strings::{Alphabet, Str};

    pub fn s(text: &str, sigma: u32) -> Str {
        Str::from_text(text, Alphabet::new(sigma).unwrap()).unwrap()
    }

    pub fn assert_naive_invariants(t: &NaiveSuffixTree) {
        if let Err(e) = t.validate() {
            panic!("{:?}: {e}", t.source());
        }
    }

    pub fn assert_compact_invariants(t: &CompactSuffixTree) {
        if let Err(e) = t.validate() {
            panic!("{:?}: {e}", t.source());
        }
    }

    pub fn naive_scan(text: &Str, p: &Str) -> Vec<usize> {
        let (t, p) = (text.as_slice(), p.as_slice());
        (0..t.len())
            .filter(|&i| t[i..].starts_with(p))
            .map(|i| i + 1)
            .collect()
    }
}
