use super::{EdgeLabel, NodeCounts, NodeId};
use crate::error::{Error, Result};
use crate::strings::Str;

#[derive(Debug, Clone)]
pub(super) struct NaiveNode {
    pub(super) parent: Option<NodeId>,
    pub(super) incoming: Option<EdgeLabel>,
    /// Sorted by label.
    pub(super) children: Vec<(EdgeLabel, NodeId)>,
    pub(super) leaf: Option<usize>,
    /// Edges from the root.
    pub(super) depth: usize,
    /// A suffix whose root-to-leaf path passes through this node.
    pub(super) witness: usize,
}

/// Suffix tree with one symbol per edge, built by inserting the suffixes
/// `S[1,n]$, S[2,n]$, ..` in order, each by walking the longest matching
/// path and hanging the rest of the suffix below it.
#[derive(Debug, Clone)]
pub struct NaiveSuffixTree {
    pub(super) nodes: Vec<NaiveNode>,
    /// `leaves[j - 1]` is leaf `j`.
    pub(super) leaves: Vec<NodeId>,
    pub(super) source: Str,
    new_internal: Vec<usize>,
}

pub(super) const ROOT: NodeId = 0;

impl NaiveSuffixTree {
    pub fn build(source: &Str) -> Result<Self> {
        let n = source.len();
        if n == 0 {
            return Err(Error::EmptyString);
        }
        let s = source.as_slice();
        let mut tree = NaiveSuffixTree {
            nodes: vec![NaiveNode {
                parent: None,
                incoming: None,
                children: Vec::new(),
                leaf: None,
                depth: 0,
                witness: 1,
            }],
            leaves: Vec::with_capacity(n),
            source: source.clone(),
            new_internal: Vec::with_capacity(n),
        };

        for j in 1..=n {
            // X = S[j,n] + $, with X[t] 1-based.
            let x_len = n - j + 2;
            let x_at = |t: usize| {
                if t < x_len {
                    EdgeLabel::Sym(s[j + t - 2])
                } else {
                    EdgeLabel::Terminator
                }
            };

            let mut v = ROOT;
            let mut i = 0;
            while i < x_len {
                match tree.child(v, x_at(i + 1)) {
                    Some(u) => {
                        v = u;
                        i += 1;
                    }
                    None => break,
                }
            }
            // The terminator makes every suffix diverge before its end.
            debug_assert!(i < x_len);

            // Path of n - j - i + 2 edges labelled X[i+1..].
            let path_len = x_len - i;
            for t in i + 1..=x_len {
                let is_leaf = t == x_len;
                v = tree.push_child(v, x_at(t), if is_leaf { Some(j) } else { None }, j);
            }
            tree.leaves.push(v);
            tree.new_internal.push(path_len - 1);
        }
        Ok(tree)
    }

    fn push_child(&mut self, parent: NodeId, label: EdgeLabel, leaf: Option<usize>, witness: usize) -> NodeId {
        let id = self.nodes.len();
        let depth = self.nodes[parent].depth + 1;
        self.nodes.push(NaiveNode {
            parent: Some(parent),
            incoming: Some(label),
            children: Vec::new(),
            leaf,
            depth,
            witness,
        });
        let children = &mut self.nodes[parent].children;
        let pos = children.partition_point(|&(l, _)| l < label);
        children.insert(pos, (label, id));
        id
    }

    pub fn child(&self, v: NodeId, label: EdgeLabel) -> Option<NodeId> {
        let children = &self.nodes[v].children;
        children
            .binary_search_by(|&(l, _)| l.cmp(&label))
            .ok()
            .map(|k| children[k].1)
    }

    pub fn root(&self) -> NodeId {
        ROOT
    }

    pub fn source(&self) -> &Str {
        &self.source
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn counts(&self) -> NodeCounts {
        NodeCounts {
            total: self.nodes.len(),
            internal: self.nodes.len() - self.leaves.len(),
            leaves: self.leaves.len(),
        }
    }

    /// Node of leaf `j` (1-based).
    pub fn leaf(&self, j: usize) -> Option<NodeId> {
        j.checked_sub(1).and_then(|k| self.leaves.get(k)).copied()
    }

    pub fn children(&self, v: NodeId) -> impl Iterator<Item = (EdgeLabel, NodeId)> + '_ {
        self.nodes[v].children.iter().copied()
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v].parent
    }

    pub fn leaf_number(&self, v: NodeId) -> Option<usize> {
        self.nodes[v].leaf
    }

    /// Internal nodes created while inserting suffix `j`, indexed `j - 1`.
    pub fn new_internal_per_suffix(&self) -> &[usize] {
        &self.new_internal
    }

    /// Edge labels from the root down to `v`.
    pub fn path_label(&self, v: NodeId) -> Vec<EdgeLabel> {
        let mut labels = Vec::with_capacity(self.nodes[v].depth);
        let mut cur = v;
        while let Some(l) = self.nodes[cur].incoming {
            labels.push(l);
            cur = self.nodes[cur].parent.expect("non-root node has a parent");
        }
        labels.reverse();
        labels
    }

    /// Distance from leaf 1 to its nearest ancestor with at least two
    /// children, minus one. Falls back to the root when no ancestor branches.
    pub fn growth(&self) -> usize {
        let mut v = self.nodes[self.leaves[0]].parent.expect("leaf has a parent");
        let mut dist = 1;
        while v != ROOT && self.nodes[v].children.len() < 2 {
            v = self.nodes[v].parent.expect("non-root node has a parent");
            dist += 1;
        }
        dist - 1
    }

    /// Checks the structural invariants: `n` leaves numbered `1..=n` behind
    /// terminator edges, distinct child labels, and leaf path labels
    /// `S[j,n]$`.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.source.len();
        if self.leaves.len() != n {
            return Err(format!("{} leaves for length {n}", self.leaves.len()));
        }
        for (v, node) in self.nodes.iter().enumerate() {
            super::check_children(v, &node.children)?;
            if node.leaf.is_some() && !node.children.is_empty() {
                return Err(format!("leaf node {v} has children"));
            }
        }
        for j in 1..=n {
            let v = self.leaves[j - 1];
            if self.nodes[v].leaf != Some(j) {
                return Err(format!("leaf slot {j} points at node {v}"));
            }
            if self.nodes[v].incoming != Some(EdgeLabel::Terminator) {
                return Err(format!("leaf {j} is not entered by the terminator"));
            }
            if self.path_label(v) != super::suffix_labels(&self.source, j) {
                return Err(format!("path label of leaf {j} differs from S[{j},n]$"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::Alphabet;
    use crate::tree::test_support::{assert_naive_invariants, s};

    #[test]
    fn aabccb_naive_tree() {
        let t = NaiveSuffixTree::build(&s("aabccb", 3)).unwrap();
        assert_eq!(t.node_count(), 25);
        assert_eq!(t.counts().internal, 19);
        assert_eq!(t.counts().leaves, 6);
        assert_eq!(t.growth(), 5);
        assert_naive_invariants(&t);
    }

    #[test]
    fn small_trees() {
        let a = NaiveSuffixTree::build(&s("a", 2)).unwrap();
        assert_eq!(a.node_count(), 3);
        let ab = NaiveSuffixTree::build(&s("ab", 2)).unwrap();
        assert_eq!(ab.node_count(), 6);
        assert_eq!(ab.new_internal_per_suffix(), &[2, 1]);
        assert_naive_invariants(&ab);
    }

    #[test]
    fn empty_rejected() {
        let e = Str::new(vec![], Alphabet::new(2).unwrap()).unwrap();
        assert!(matches!(NaiveSuffixTree::build(&e), Err(Error::EmptyString)));
    }

    #[test]
    fn root_children_ordered_with_terminator_last() {
        let t = NaiveSuffixTree::build(&s("ba", 2)).unwrap();
        let root: Vec<_> = t.children(t.root()).map(|(l, _)| l).collect();
        assert_eq!(root, vec![EdgeLabel::Sym(1), EdgeLabel::Sym(2)]);
        let aa = NaiveSuffixTree::build(&s("aa", 2)).unwrap();
        let a = aa.child(aa.root(), EdgeLabel::Sym(1)).unwrap();
        let under: Vec<_> = aa.children(a).map(|(l, _)| l).collect();
        assert_eq!(under, vec![EdgeLabel::Sym(1), EdgeLabel::Terminator]);
    }
}
