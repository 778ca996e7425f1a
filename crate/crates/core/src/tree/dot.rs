//! Graphviz rendering. Nodes are emitted in preorder with children in label
//! order, so output is a pure function of the input string.

use std::collections::HashMap;
use std::fmt::Write;

use super::{CompactSuffixTree, NaiveSuffixTree, NodeId};

fn render(
    name: &str,
    root: NodeId,
    children: impl Fn(NodeId) -> Vec<NodeId>,
    leaf: impl Fn(NodeId) -> Option<usize>,
    edge: impl Fn(NodeId) -> String,
) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  node [shape=circle, width=0.2, label=\"\"];").unwrap();

    let mut order = Vec::new();
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        let mut cs = children(v);
        cs.reverse();
        stack.extend(cs);
    }
    let index: HashMap<NodeId, usize> = order.iter().enumerate().map(|(k, &v)| (v, k)).collect();

    for (k, &v) in order.iter().enumerate() {
        match leaf(v) {
            Some(j) => writeln!(out, "  n{k} [shape=plaintext, label=\"{j}\"];").unwrap(),
            None => writeln!(out, "  n{k};").unwrap(),
        }
    }
    for (k, &v) in order.iter().enumerate() {
        for c in children(v) {
            writeln!(out, "  n{k} -> n{} [label=\"{}\"];", index[&c], edge(c)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

impl NaiveSuffixTree {
    pub fn to_dot(&self) -> String {
        render(
            "naive_suffix_tree",
            self.root(),
            |v| self.children(v).map(|(_, c)| c).collect(),
            |v| self.leaf_number(v),
            |c| self.nodes[c].incoming.expect("edge").to_string(),
        )
    }
}

impl CompactSuffixTree {
    pub fn to_dot(&self) -> String {
        render(
            "compact_suffix_tree",
            self.root(),
            |v| self.children(v).map(|(_, c)| c).collect(),
            |v| self.leaf_number(v),
            |c| self.edge_text(c).expect("edge"),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::test_support::s;

    #[test]
    fn naive_single_letter() {
        let dot = NaiveSuffixTree::build(&s("a", 2)).unwrap().to_dot();
        assert_eq!(
            dot,
            "digraph naive_suffix_tree {\n  node [shape=circle, width=0.2, label=\"\"];\n  n0;\n  n1;\n  n2 [shape=plaintext, label=\"1\"];\n  n0 -> n1 [label=\"a\"];\n  n1 -> n2 [label=\"$\"];\n}\n"
        );
    }

    #[test]
    fn compact_aabccb_dot() {
        let x = s("aabccb", 3);
        let dot = CompactSuffixTree::build(&x).unwrap().to_dot();
        assert_eq!(dot.matches(" -> ").count(), 9);
        assert_eq!(dot.lines().filter(|l| l.starts_with("  n") && !l.starts_with("  node") && !l.contains("->")).count(), 10);
        assert!(dot.contains("[label=\"abccb$\"]"));
        assert_eq!(dot, CompactSuffixTree::build(&x).unwrap().to_dot());
    }
}
