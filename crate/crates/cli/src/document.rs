//! The on-disk game format.
//!
//! A game document is JSON with explicit dense ids, one-based player
//! numbers, and costs as canonical rational strings ("7", "3/4"), so the
//! structural round-trip is lossless and byte-stable.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use spg_core::game::{Player, SPGame};
use spg_core::graph::{Digraph, VertexId};
use spg_core::rational::Rational;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GameDocument {
    pub schema_version: String,
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexDoc {
    pub id: usize,
    pub owner: OwnerDoc,
}

/// Either a one-based player number or the string `"terminal"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum OwnerDoc {
    Player(usize),
    Label(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeDoc {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    /// One canonical rational string per player.
    pub costs: Vec<String>,
}

/// Raw structural pieces of a document, before any normalization.
pub struct GameParts {
    pub graph: Digraph,
    pub n: usize,
    pub owner: Vec<Option<Player>>,
    pub costs: Vec<Vec<Rational>>,
}

impl GameDocument {
    pub fn parse(text: &str) -> Result<GameDocument> {
        let doc: GameDocument = serde_json::from_str(text).context("game document is not valid JSON")?;
        if doc.schema_version != SCHEMA_VERSION {
            bail!("unsupported schema_version {:?}", doc.schema_version);
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents serialize");
        text.push('\n');
        text
    }

    /// Structural conversion; model invariants (positivity, normalization)
    /// are left to `validate`-style checks downstream.
    pub fn to_parts(&self) -> Result<GameParts> {
        let count = self.vertices.len();
        let mut owner: Vec<Option<Player>> = vec![None; count];
        let mut seen = vec![false; count];
        for v in &self.vertices {
            if v.id >= count {
                bail!("vertex id {} out of dense range 0..{count}", v.id);
            }
            if seen[v.id] {
                bail!("vertex id {} appears twice", v.id);
            }
            seen[v.id] = true;
            owner[v.id] = match &v.owner {
                OwnerDoc::Label(l) if l == "terminal" => None,
                OwnerDoc::Label(l) => bail!("unknown owner label {l:?} on vertex {}", v.id),
                OwnerDoc::Player(p) => {
                    if *p < 1 || *p > self.n {
                        bail!("owner {p} of vertex {} out of range 1..={}", v.id, self.n);
                    }
                    Some(Player(p - 1))
                }
            };
        }
        for (id, slot) in owner.iter().enumerate() {
            let is_t = id == self.t;
            if is_t && slot.is_some() {
                bail!("terminal vertex {id} must be marked \"terminal\"");
            }
            if !is_t && slot.is_none() {
                bail!("non-terminal vertex {id} must name an owner");
            }
        }

        let mut edge_list = vec![None; self.edges.len()];
        let mut costs: Vec<Vec<Rational>> = vec![vec![Rational::from_integer(0); self.edges.len()]; self.n];
        for e in &self.edges {
            if e.id >= self.edges.len() {
                bail!("edge id {} out of dense range 0..{}", e.id, self.edges.len());
            }
            if edge_list[e.id].is_some() {
                bail!("edge id {} appears twice", e.id);
            }
            if e.costs.len() != self.n {
                bail!("edge {} needs {} cost entries, found {}", e.id, self.n, e.costs.len());
            }
            for (p, text) in e.costs.iter().enumerate() {
                costs[p][e.id] = parse_rational(text)
                    .with_context(|| format!("edge {} cost for player {}", e.id, p + 1))?;
            }
            edge_list[e.id] = Some((VertexId(e.tail), VertexId(e.head)));
        }
        let edge_list: Vec<(VertexId, VertexId)> = edge_list
            .into_iter()
            .enumerate()
            .map(|(id, e)| e.ok_or_else(|| anyhow!("edge id {id} missing from dense range")))
            .collect::<Result<_>>()?;

        let graph = Digraph::new(count, VertexId(self.s), VertexId(self.t), edge_list)
            .map_err(|e| anyhow!("{e}"))?;
        Ok(GameParts { graph, n: self.n, owner, costs })
    }

    pub fn to_game(&self) -> Result<SPGame> {
        let parts = self.to_parts()?;
        SPGame::new(parts.graph, parts.n, parts.owner, parts.costs).map_err(|e| anyhow!("{e}"))
    }

    pub fn from_game(game: &SPGame) -> GameDocument {
        let g = game.graph();
        let vertices = g
            .vertices()
            .map(|v| VertexDoc {
                id: v.0,
                owner: match game.owner(v) {
                    Some(p) => OwnerDoc::Player(p.number()),
                    None => OwnerDoc::Label("terminal".into()),
                },
            })
            .collect();
        let edges = g
            .edges()
            .map(|(id, e)| EdgeDoc {
                id: id.0,
                tail: e.tail.0,
                head: e.head.0,
                costs: game.players().map(|p| game.cost(id, p).to_string()).collect(),
            })
            .collect();
        GameDocument {
            schema_version: SCHEMA_VERSION.into(),
            n: game.player_count(),
            s: g.s().0,
            t: g.t().0,
            vertices,
            edges,
        }
    }
}

/// Accepts "p" or "p/q" with q > 0 after canonicalization.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        None => (text, "1"),
        Some((a, b)) => (a.trim(), b.trim()),
    };
    let num: i128 = num.parse().with_context(|| format!("bad numerator in {text:?}"))?;
    let den: i128 = den.parse().with_context(|| format!("bad denominator in {text:?}"))?;
    if den == 0 {
        bail!("zero denominator in {text:?}");
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use spg_core::rational::{rat, ratio};
    use spg_core::samples;

    #[test]
    fn round_trips_the_triangle() {
        let game = samples::triangle();
        let doc = GameDocument::from_game(&game);
        let text = doc.to_json();
        let parsed = GameDocument::parse(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.to_game().unwrap(), game);
    }

    #[test]
    fn parses_rational_strings() {
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rejects_owner_mismatches() {
        let game = samples::triangle();
        let mut doc = GameDocument::from_game(&game);
        doc.vertices[2].owner = OwnerDoc::Player(1);
        assert!(doc.to_parts().is_err());
        let mut doc = GameDocument::from_game(&game);
        doc.vertices[0].owner = OwnerDoc::Label("nobody".into());
        assert!(doc.to_parts().is_err());
        let mut doc = GameDocument::from_game(&game);
        doc.vertices[0].owner = OwnerDoc::Player(3);
        assert!(doc.to_parts().is_err());
    }

    #[test]
    fn rejects_wrong_cost_arity() {
        let game = samples::triangle();
        let mut doc = GameDocument::from_game(&game);
        doc.edges[1].costs.pop();
        assert!(doc.to_parts().is_err());
    }

    #[test]
    fn serialization_is_byte_stable() {
        let game = samples::strandable();
        let a = GameDocument::from_game(&game).to_json();
        let b = GameDocument::from_game(&game).to_json();
        assert_eq!(a, b);
    }
}
