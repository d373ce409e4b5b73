//! DOT export of membership graphs. Cycle edges are dashed, matching the
//! broken-branch convention of the constructor diagrams; emission order
//! is canonical so output is deterministic.

use std::collections::HashSet;

use tuniv_core::system::{NodeId, SetSystem};

const LABEL_LIMIT: usize = 40;

fn label(sys: &SetSystem, n: NodeId) -> String {
    let canon = sys.canon(n);
    let mut text = if canon.len() > LABEL_LIMIT {
        let mut cut = LABEL_LIMIT - 3;
        while !canon.is_char_boundary(cut) {
            cut -= 1;
        }
        format!("{}...", &canon[..cut])
    } else {
        canon.to_string()
    };
    text = text.replace('\\', "\\\\").replace('"', "\\\"");
    text
}

/// True when the membership edge `from -> to` lies on a cycle.
fn on_cycle_edge(sys: &SetSystem, from: NodeId, to: NodeId) -> bool {
    let mut seen = HashSet::new();
    let mut stack = vec![to];
    while let Some(n) = stack.pop() {
        if n == from {
            return true;
        }
        if seen.insert(n) {
            stack.extend_from_slice(sys.members(n));
        }
    }
    false
}

pub fn export_dot(sys: &SetSystem, root: NodeId) -> String {
    let mut nodes: Vec<NodeId> = Vec::new();
    let mut seen = HashSet::new();
    let mut stack = vec![root];
    while let Some(n) = stack.pop() {
        if seen.insert(n) {
            nodes.push(n);
            stack.extend_from_slice(sys.members(n));
        }
    }
    nodes.sort_by(|a, b| sys.canon_cmp(*a, *b));
    let index = |n: NodeId| nodes.iter().position(|&m| m == n).unwrap();

    let mut out = String::from("digraph set {\n");
    out.push_str("  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, &n) in nodes.iter().enumerate() {
        let extra = if n == root { ", penwidth=2" } else { "" };
        out.push_str(&format!("  n{i} [label=\"{}\"{extra}];\n", label(sys, n)));
    }
    for (i, &n) in nodes.iter().enumerate() {
        for &m in sys.members(n) {
            let style = if on_cycle_edge(sys, n, m) { " [style=dashed]" } else { "" };
            out.push_str(&format!("  n{i} -> n{}{style};\n", index(m)));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infiniton_is_one_dashed_self_loop() {
        let mut sys = SetSystem::new();
        let e = sys.empty_set();
        let i = sys.infiniton(e).unwrap();
        let dot = export_dot(&sys, i);
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("n0 -> n0 [style=dashed];"));
    }

    #[test]
    fn semi_mixes_solid_and_dashed_edges() {
        let mut sys = SetSystem::new();
        let e = sys.empty_set();
        let a = sys.mk_numeral(1).unwrap();
        let g = sys.singleton(a);
        let z = sys.semi_infiniton(g, e).unwrap();
        let dot = export_dot(&sys, z);
        assert!(dot.contains("[style=dashed]"));
        assert!(dot.lines().any(|l| l.contains("->") && !l.contains("dashed")));
    }

    #[test]
    fn output_is_deterministic() {
        let build = || {
            let mut sys = SetSystem::new();
            let e = sys.empty_set();
            let one = sys.mk_numeral(1).unwrap();
            let two = sys.mk_numeral(2).unwrap();
            let q = sys.quasi_infiniton(&[one, two], e, 0).unwrap();
            export_dot(&sys, q)
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn quasi_cycle_is_dashed_two_ways() {
        let mut sys = SetSystem::new();
        let e = sys.empty_set();
        let one = sys.mk_numeral(1).unwrap();
        let two = sys.mk_numeral(2).unwrap();
        let q = sys.quasi_infiniton(&[one, two], e, 0).unwrap();
        let dot = export_dot(&sys, q);
        assert_eq!(dot.matches("[style=dashed]").count(), 2);
    }
}
