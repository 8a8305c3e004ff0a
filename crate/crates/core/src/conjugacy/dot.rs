//! Graphviz export of shift graphs.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::shift_neighbors;
use crate::element::{Element, GeneratorSet};
use crate::system::CoxeterSystem;

/// DOT digraph on `nodes` with an edge `w -> s·w·s` for each shift arrow
/// whose target is also a node. Labels use `names` (default: indices).
pub fn shift_graph_dot(sys: &CoxeterSystem, j: &GeneratorSet, nodes: &[Element], names: Option<&[String]>) -> String {
    let name = |s: u8| match names {
        Some(n) => n[usize::from(s)].clone(),
        None => s.to_string(),
    };
    let label = |w: &Element| {
        if w.is_identity() {
            "e".to_string()
        } else {
            w.word().iter().map(|&s| name(s)).collect::<Vec<_>>().join(" ")
        }
    };
    let mut sorted: Vec<&Element> = nodes.iter().collect();
    sorted.sort();
    sorted.dedup();
    let ids: BTreeMap<&Element, usize> = sorted.iter().enumerate().map(|(i, w)| (*w, i)).collect();

    let mut out = String::from("digraph shifts {\n");
    for (w, i) in &ids {
        writeln!(out, "  n{i} [label=\"{}\"];", label(w)).unwrap();
    }
    for (w, i) in &ids {
        for a in shift_neighbors(sys, j, w, None) {
            if let Some(t) = ids.get(&a.target) {
                writeln!(out, "  n{i} -> n{t} [label=\"{}\"];", name(a.generator)).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
