//! Graphviz rendering of the chamber graph.
//!
//! Vertices are the chambers `w·C_M⁺` (`w ∈ W_M⁰`), labeled by a reduced
//! word in the simple relative reflections. Two chambers are joined when they
//! share a wall, i.e. when they differ by a simple reflection on the right.
//! Components of the complement of the walls of `S` become clusters, and
//! edges crossing a wall of `S` are drawn in red.

use std::fmt::Write as _;

use crate::pipeline::Context;
use crate::report::signs;

fn label(word: &[usize]) -> String {
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|k| format!("s{k}")).collect::<Vec<_>>().join(" ")
    }
}

pub fn chamber_graph(ctx: &Context<'_>) -> String {
    let ld = ctx.levi;
    let g = ctx.group;
    let arr = ctx.arrangement;
    let walls = ctx.report.walls.roots();
    let mut out = String::new();
    let _ = writeln!(out, "graph chambers {{");
    let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
    for c in &ctx.report.constituents {
        let _ = writeln!(out, "  subgraph cluster_{} {{", c.id);
        let sv = if c.sign_vector.is_empty() {
            String::new()
        } else {
            format!(" {}", signs(&c.sign_vector))
        };
        let _ = writeln!(out, "    label=\"component {}{sv}\";", c.id);
        for &w in &c.chambers {
            let word = g.small_word(w).unwrap_or(&[]);
            let _ = writeln!(out, "    c{} [label=\"{}\"];", arr.chamber_of(w), label(word));
        }
        let _ = writeln!(out, "  }}");
    }
    for &u in g.small() {
        for (k, &s) in g.simple_reflections().iter().enumerate() {
            let v = g.product(u, s);
            let (a, b) = (arr.chamber_of(u), arr.chamber_of(v));
            if a >= b {
                continue;
            }
            let mut wall = g.act(u, ld.delta_m0()[k]);
            if !ld.is_positive(wall) {
                wall = ld.negation(wall);
            }
            let style = if walls.contains(&wall) {
                ", color=red, penwidth=2"
            } else {
                ""
            };
            let _ = writeln!(out, "  c{a} -- c{b} [label=\"{wall}\"{style}];");
        }
    }
    let _ = writeln!(out, "}}");
    out
}
