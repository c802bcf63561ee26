use std::fmt::Write as _;

use super::ShapeGraph;

/// Graphviz text for the graph. Each node carries its shape-id mnemonic as
/// label and its centroid as a pinned `pos` (x = column, y = row).
pub fn to_dot(g: &ShapeGraph) -> String {
    let mut out = String::from("graph shape {\n");
    for (i, f) in g.nodes().iter().enumerate() {
        let c = f.centroid();
        let _ = writeln!(
            out,
            "  n{i} [label=\"{} ({})\", shape_id={}, pos=\"{},{}!\"];",
            f.kind().mnemonic(),
            f.shape_id(),
            f.shape_id(),
            c.x,
            c.y
        );
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  n{a} -- n{b};");
    }
    out.push_str("}\n");
    out
}
