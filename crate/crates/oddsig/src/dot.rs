//! Graphviz output.

use std::fmt::Write as _;

use oddsig_core::homposet::Poset;
use oddsig_core::Graph;

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram, edges drawn upward from each element to its covers.
pub fn poset_dot(p: &Poset, name: &str) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quoted(name));
    for x in 0..p.len() {
        writeln!(out, "  n{x} [label={}];", quoted(p.label(x))).expect("string write");
    }
    for (x, y) in p.covers() {
        writeln!(out, "  n{x} -> n{y};").expect("string write");
    }
    out.push_str("}\n");
    out
}

pub fn graph_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", quoted(name));
    for v in 0..g.vertex_count() {
        writeln!(out, "  {v};").expect("string write");
    }
    for &(u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").expect("string write");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use oddsig_core::homposet::q_poset;

    #[test]
    fn q1_hasse() {
        let d = poset_dot(q_poset(1).poset(), "Q1");
        assert_eq!(d.matches(" -> ").count(), 4);
        assert!(d.contains("n0 [label=\"+0\"];"));
        assert!(graph_dot(&Graph::complete(3), "K\"3").contains("graph \"K\\\"3\""));
    }
}
