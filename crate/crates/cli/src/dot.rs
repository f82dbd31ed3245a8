//! Graphviz DOT rendering of a game: vertices labelled with their owner,
//! edges with their per-player cost tuples, everything ordered by id.

use std::fmt::Write;

use spg_core::game::SPGame;

pub fn export_dot(game: &SPGame) -> String {
    let g = game.graph();
    let mut out = String::from("digraph spgame {\n");
    for v in g.vertices() {
        let label = match game.owner(v) {
            Some(p) => format!("v{}:{}", v.0, p),
            None => "t".to_string(),
        };
        writeln!(out, "    v{} [label=\"{label}\"];", v.0).unwrap();
    }
    for (id, e) in g.edges() {
        let costs: Vec<String> = game.players().map(|p| game.cost(id, p).to_string()).collect();
        writeln!(
            out,
            "    v{} -> v{} [label=\"({})\"];",
            e.tail.0,
            e.head.0,
            costs.join(",")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spg_core::samples;

    #[test]
    fn renders_the_triangle() {
        let dot = export_dot(&samples::triangle());
        assert!(dot.starts_with("digraph spgame {"));
        assert!(dot.contains("v0 [label=\"v0:P1\"];"));
        assert!(dot.contains("v1 [label=\"v1:P2\"];"));
        assert!(dot.contains("v2 [label=\"t\"];"));
        assert!(dot.contains("v0 -> v1 [label=\"(1,1)\"];"));
        assert!(dot.contains("v0 -> v2 [label=\"(10,10)\"];"));
        // The terminal has no outgoing edges.
        assert!(!dot.contains("v2 ->"));
        // Deterministic output.
        assert_eq!(dot, export_dot(&samples::triangle()));
    }
}
