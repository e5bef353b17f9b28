//! Graphviz DOT output. Node and edge order follow vertex and arrow order,
//! so the text is the same on every run.

use std::fmt::Write;

use crate::covering::{CoveringWindow, Slice};
use crate::quiver::Quiver;
use crate::typea::{Cut, MutationGraph};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A quiver; arrows of `cut` are drawn bold.
pub fn quiver_dot(q: &Quiver, cut: Option<&Cut>) -> String {
    let mut out = String::from("digraph Q {\n");
    for v in q.vertices() {
        writeln!(out, "  {};", quote(&v.id)).unwrap();
    }
    for (a, arr) in q.arrows().iter().enumerate() {
        let bold = if cut.is_some_and(|c| c.contains(a)) { ", style=bold" } else { "" };
        writeln!(
            out,
            "  {} -> {} [label={}{bold}];",
            quote(&q.vertex(arr.source).id),
            quote(&q.vertex(arr.target).id),
            quote(&arr.id)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// A window of the covering quiver; vertices on `slice` are bold, and so
/// are arrows lying over `cut`.
pub fn window_dot(w: &CoveringWindow, slice: Option<&Slice>, cut: Option<&Cut>) -> String {
    let q = &w.quiver;
    let mut out = String::from("digraph W {\n");
    for (i, v) in q.vertices().iter().enumerate() {
        let cv = w.vertices[i];
        let on = slice.is_some_and(|s| s.level(cv.vertex) == cv.level);
        let style = if on { " [style=bold]" } else { "" };
        writeln!(out, "  {}{style};", quote(&v.id)).unwrap();
    }
    for (a, arr) in q.arrows().iter().enumerate() {
        let bold = cut.is_some_and(|c| c.contains(w.arrow_base[a]));
        let style = if bold { " [style=bold]" } else { "" };
        writeln!(out, "  {} -> {}{style};", quote(&q.vertex(arr.source).id), quote(&q.vertex(arr.target).id))
            .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Cuts as nodes labelled by their arrow ids, one undirected edge per
/// mutation.
pub fn mutation_graph_dot(q: &Quiver, g: &MutationGraph) -> String {
    let mut out = String::from("digraph M {\n");
    if !g.edges.is_empty() {
        out.push_str("  edge [dir=none];\n");
    }
    for (i, c) in g.cuts.iter().enumerate() {
        writeln!(out, "  c{i} [label={}];", quote(&c.ids(q).join(" "))).unwrap();
    }
    for &(i, j) in &g.edges {
        writeln!(out, "  c{i} -> c{j};").unwrap();
    }
    out.push_str("}\n");
    out
}
