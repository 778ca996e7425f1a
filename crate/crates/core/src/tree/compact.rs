use super::naive::{NaiveSuffixTree, ROOT};
use super::{EdgeLabel, NodeCounts, NodeId};
use crate::error::{Error, Result};
use crate::strings::{push_symbol, Str, TERMINATOR_CHAR};

/// Edge label of a compact tree: `S[start,end]` (1-based, inclusive, empty
/// when `end < start`) optionally followed by the terminator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub terminator: bool,
}

impl Span {
    pub fn symbol_len(&self) -> usize {
        (self.end + 1).saturating_sub(self.start)
    }

    /// Label length in edges of the naive tree.
    pub fn len(&self) -> usize {
        self.symbol_len() + usize::from(self.terminator)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn labels(&self, source: &Str) -> Vec<EdgeLabel> {
        let s = source.as_slice();
        let mut out: Vec<EdgeLabel> = (self.start..=self.end).map(|p| EdgeLabel::Sym(s[p - 1])).collect();
        if self.terminator {
            out.push(EdgeLabel::Terminator);
        }
        out
    }

    pub fn render(&self, source: &Str) -> String {
        let mut out = String::new();
        if self.end >= self.start {
            for &x in &source.as_slice()[self.start - 1..self.end] {
                push_symbol(&mut out, x);
            }
        }
        if self.terminator {
            out.push(TERMINATOR_CHAR);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub(super) struct CompactNode {
    pub(super) parent: Option<NodeId>,
    pub(super) incoming: Option<Span>,
    /// Keyed by the first label of the edge, sorted.
    pub(super) children: Vec<(EdgeLabel, NodeId)>,
    pub(super) leaf: Option<usize>,
}

/// Suffix tree whose unary chains are merged into single edges labelled by
/// spans of the source string.
#[derive(Debug, Clone)]
pub struct CompactSuffixTree {
    pub(super) nodes: Vec<CompactNode>,
    pub(super) leaves: Vec<NodeId>,
    pub(super) source: Str,
}

impl CompactSuffixTree {
    pub fn build(source: &Str) -> Result<Self> {
        Ok(Self::from_naive(&NaiveSuffixTree::build(source)?))
    }

    /// Compresses every maximal unary chain of `naive` into one edge.
    pub fn from_naive(naive: &NaiveSuffixTree) -> Self {
        let n = naive.source.len();
        let mut tree = CompactSuffixTree {
            nodes: vec![CompactNode {
                parent: None,
                incoming: None,
                children: Vec::new(),
                leaf: None,
            }],
            leaves: vec![0; n],
            source: naive.source.clone(),
        };

        // (naive node, compact node) pairs still to expand.
        let mut stack = vec![(ROOT, 0usize)];
        while let Some((u, cu)) = stack.pop() {
            let du = naive.nodes[u].depth;
            for &(first, c) in &naive.nodes[u].children {
                let mut w = c;
                while naive.nodes[w].leaf.is_none() && naive.nodes[w].children.len() == 1 {
                    w = naive.nodes[w].children[0].1;
                }
                let node = &naive.nodes[w];
                let j = node.witness;
                let dw = node.depth;
                // Labels du+1..=dw of S[j,n]$, i.e. positions j+du..=j+dw-1.
                let terminator = j + dw - 1 == n + 1;
                let span = Span {
                    start: j + du,
                    end: if terminator { n } else { j + dw - 1 },
                    terminator,
                };
                let cw = tree.nodes.len();
                tree.nodes.push(CompactNode {
                    parent: Some(cu),
                    incoming: Some(span),
                    children: Vec::new(),
                    leaf: node.leaf,
                });
                tree.nodes[cu].children.push((first, cw));
                if let Some(leaf) = node.leaf {
                    tree.leaves[leaf - 1] = cw;
                }
                stack.push((w, cw));
            }
        }
        tree
    }

    pub fn root(&self) -> NodeId {
        0
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

    pub fn edge_span(&self, v: NodeId) -> Option<Span> {
        self.nodes[v].incoming
    }

    pub fn edge_text(&self, v: NodeId) -> Option<String> {
        self.nodes[v].incoming.map(|sp| sp.render(&self.source))
    }

    /// Rendered labels of every edge, in arena order.
    pub fn edge_labels(&self) -> Vec<String> {
        (1..self.nodes.len()).filter_map(|v| self.edge_text(v)).collect()
    }

    pub fn path_label(&self, v: NodeId) -> Vec<EdgeLabel> {
        let mut spans = Vec::new();
        let mut cur = v;
        while let Some(sp) = self.nodes[cur].incoming {
            spans.push(sp);
            cur = self.nodes[cur].parent.expect("non-root node has a parent");
        }
        spans
            .iter()
            .rev()
            .flat_map(|sp| sp.labels(&self.source))
            .collect()
    }

    fn child_by_first(&self, v: NodeId, label: EdgeLabel) -> Option<NodeId> {
        let children = &self.nodes[v].children;
        children
            .binary_search_by(|&(l, _)| l.cmp(&label))
            .ok()
            .map(|k| children[k].1)
    }

    /// Sorted 1-based start positions of `pattern` in the source.
    pub fn find_occurrences(&self, pattern: &Str) -> Result<Vec<usize>> {
        let p = pattern.as_slice();
        if p.is_empty() {
            return Err(Error::EmptyString);
        }
        let s = self.source.as_slice();
        let mut v = self.root();
        let mut matched = 0;
        while matched < p.len() {
            let Some(c) = self.child_by_first(v, EdgeLabel::Sym(p[matched])) else {
                return Ok(Vec::new());
            };
            let span = self.nodes[c].incoming.expect("child has an edge");
            let take = span.symbol_len().min(p.len() - matched);
            if s[span.start - 1..span.start - 1 + take] != p[matched..matched + take] {
                return Ok(Vec::new());
            }
            matched += take;
            if matched < p.len() && span.terminator {
                return Ok(Vec::new());
            }
            v = c;
        }
        let mut out = self.leaves_below(v);
        out.sort_unstable();
        Ok(out)
    }

    fn leaves_below(&self, v: NodeId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if let Some(j) = self.nodes[u].leaf {
                out.push(j);
            }
            stack.extend(self.nodes[u].children.iter().map(|&(_, c)| c));
        }
        out
    }

    /// Checks that non-root internal nodes branch, that child keys match
    /// their edge labels, that leaf path labels are `S[j,n]$` and that the
    /// tree has at most `2n` nodes.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.source.len();
        if self.nodes.len() > 2 * n {
            return Err(format!("{} nodes exceed 2n = {}", self.nodes.len(), 2 * n));
        }
        for (v, node) in self.nodes.iter().enumerate() {
            super::check_children(v, &node.children)?;
            match node.leaf {
                Some(_) if !node.children.is_empty() => return Err(format!("leaf node {v} has children")),
                None if v != 0 && node.children.len() < 2 => {
                    return Err(format!("internal node {v} has {} children", node.children.len()))
                }
                _ => {}
            }
            for &(first, c) in &node.children {
                let span = self.nodes[c].incoming.ok_or("child without edge")?;
                if span.is_empty() || span.labels(&self.source)[0] != first {
                    return Err(format!("edge into {c} does not start with its key"));
                }
            }
        }
        for j in 1..=n {
            let v = self.leaves[j - 1];
            if self.nodes[v].leaf != Some(j) {
                return Err(format!("leaf slot {j} points at node {v}"));
            }
            if self.path_label(v) != super::suffix_labels(&self.source, j) {
                return Err(format!("path label of leaf {j} differs from S[{j},n]$"));
            }
        }
        Ok(())
    }
}
