//! Directed-graph substrate: storage, normalization, and structural queries.
//!
//! A [`Digraph`] is immutable after construction. Vertex and edge ids are
//! dense indices; edge insertion order is the canonical tie-break order used
//! everywhere a choice would otherwise be arbitrary.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Dense edge index. Parallel edges are distinct ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

/// Finite digraph with distinguished source `s` and terminal `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    s: VertexId,
    t: VertexId,
    /// Outgoing edge ids per vertex, in insertion (= id) order.
    adjacency: Vec<Vec<EdgeId>>,
}

impl Digraph {
    /// Builds a digraph from an edge list. Fails on out-of-range endpoints or
    /// `s == t`. Self-loops and parallel edges are accepted; [`normalize`]
    /// cleans them up.
    pub fn new(
        vertex_count: usize,
        s: VertexId,
        t: VertexId,
        edge_list: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        if s == t {
            return Err(Error::Malformed(format!("s and t must be distinct, got {s}")));
        }
        for &v in &[s, t] {
            if v.0 >= vertex_count {
                return Err(Error::Malformed(format!("{v} out of range 0..{vertex_count}")));
            }
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut edges = Vec::with_capacity(edge_list.len());
        for (i, (tail, head)) in edge_list.into_iter().enumerate() {
            if tail.0 >= vertex_count || head.0 >= vertex_count {
                return Err(Error::Malformed(format!(
                    "edge e{i} = ({tail}, {head}) out of range 0..{vertex_count}"
                )));
            }
            adjacency[tail.0].push(EdgeId(i));
            edges.push(Edge { tail, head });
        }
        Ok(Digraph { vertex_count, edges, s, t, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn s(&self) -> VertexId {
        self.s
    }

    pub fn t(&self) -> VertexId {
        self.t
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.0]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Edge)> + '_ {
        self.edges.iter().enumerate().map(|(i, &e)| (EdgeId(i), e))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn non_terminal_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        let t = self.t;
        self.vertices().filter(move |&v| v != t)
    }

    /// Outgoing edges of `v` in canonical (id) order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v.0]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    /// Vertices reachable from `from` along directed edges that pass `allowed`.
    pub fn reachable_from<F: Fn(EdgeId) -> bool>(&self, from: VertexId, allowed: F) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![from];
        seen[from.0] = true;
        while let Some(v) = stack.pop() {
            for &e in self.out_edges(v) {
                if !allowed(e) {
                    continue;
                }
                let h = self.edges[e.0].head;
                if !seen[h.0] {
                    seen[h.0] = true;
                    stack.push(h);
                }
            }
        }
        seen
    }

    /// Vertices from which `to` is reachable along directed edges that pass
    /// `allowed`.
    pub fn co_reachable<F: Fn(EdgeId) -> bool>(&self, to: VertexId, allowed: F) -> Vec<bool> {
        let mut rev = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            if allowed(EdgeId(i)) {
                rev[e.head.0].push(e.tail);
            }
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![to];
        seen[to.0] = true;
        while let Some(v) = stack.pop() {
            for &u in &rev[v.0] {
                if !seen[u.0] {
                    seen[u.0] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// True iff the graph already satisfies the three structural assumptions
    /// repaired by [`normalize`]: every non-terminal vertex has an outgoing
    /// edge and `t` has none, an (s,t)-path exists, and every edge has its
    /// tail reachable from `s` and `t` reachable from its head.
    pub fn is_normalized(&self) -> bool {
        if self.out_degree(self.t) != 0 {
            return false;
        }
        for v in self.non_terminal_vertices() {
            if self.out_degree(v) == 0 {
                return false;
            }
        }
        let from_s = self.reachable_from(self.s, |_| true);
        let to_t = self.co_reachable(self.t, |_| true);
        if !from_s[self.t.0] {
            return false;
        }
        self.edges.iter().all(|e| {
            e.tail != e.head && from_s[e.tail.0] && to_t[e.head.0]
        })
    }
}

/// Directed path, stored as a chained edge-id sequence.
///
/// The derived ordering (lexicographic on edge ids) is the canonical path
/// order used for tie-breaking and witness selection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn new(edges: Vec<EdgeId>) -> Self {
        Path { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertex sequence visited by the path (length `edges + 1`).
    /// Panics on an empty path.
    pub fn vertices(&self, g: &Digraph) -> Vec<VertexId> {
        let mut vs = Vec::with_capacity(self.edges.len() + 1);
        vs.push(g.edge(self.edges[0]).tail);
        for &e in &self.edges {
            vs.push(g.edge(e).head);
        }
        vs
    }

    /// Consecutive edges chain head-to-tail.
    pub fn is_chained(&self, g: &Digraph) -> bool {
        self.edges
            .windows(2)
            .all(|w| g.edge(w[0]).head == g.edge(w[1]).tail)
    }

    /// True when the last head returns to the first tail.
    pub fn is_closed(&self, g: &Digraph) -> bool {
        !self.edges.is_empty()
            && g.edge(*self.edges.last().unwrap()).head == g.edge(self.edges[0]).tail
    }

    pub fn total_weight(&self, weights: &[Rational]) -> Rational {
        self.edges.iter().map(|e| weights[e.0].clone()).sum()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", ids.join(","))
    }
}

/// What [`normalize`] did, in terms of the input graph's ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalizationReport {
    /// Non-terminal dead-end vertices identified with `t`.
    pub merged_vertices: Vec<VertexId>,
    /// Vertices dropped entirely (ended up with no incident edges).
    pub removed_vertices: Vec<VertexId>,
    /// Edges deleted (self-loops, edges leaving `t`, edges on no (s,t)-route).
    pub deleted_edges: Vec<EdgeId>,
    /// Old vertex id -> new vertex id for vertices that survive as themselves.
    /// Merged and removed vertices map to `None`.
    pub vertex_map: Vec<Option<VertexId>>,
    /// Old edge id -> new edge id for surviving (possibly redirected) edges.
    pub edge_map: Vec<Option<EdgeId>>,
}

impl NormalizationReport {
    pub fn is_trivial(&self) -> bool {
        self.merged_vertices.is_empty()
            && self.removed_vertices.is_empty()
            && self.deleted_edges.is_empty()
    }
}

/// Repairs the three structural assumptions to a fixpoint.
///
/// Dead-end non-terminal vertices are merged into `t` (their incoming edges
/// are redirected), edges are deleted when their tail is unreachable from
/// `s` or `t` is unreachable from their head, self-loops and edges leaving
/// `t` are deleted, and vertices left without incident edges are removed.
/// One repair can invalidate another assumption, so the loop reruns until
/// nothing changes. Fails with [`Error::NoPath`] when no (s,t)-path survives.
pub fn normalize(g: &Digraph) -> Result<(Digraph, NormalizationReport)> {
    let n = g.vertex_count;
    let mut alive_v = vec![true; n];
    // Working copy; `None` marks a deleted edge, heads mutate on merge.
    let mut work: Vec<Option<Edge>> = g.edges.iter().copied().map(Some).collect();
    let mut report = NormalizationReport::default();

    loop {
        let mut changed = false;

        // Self-loops and edges leaving t are never part of an (s,t)-route.
        for (i, slot) in work.iter_mut().enumerate() {
            if let Some(e) = *slot {
                if e.tail == e.head || e.tail == g.t {
                    *slot = None;
                    report.deleted_edges.push(EdgeId(i));
                    changed = true;
                }
            }
        }

        // Merge non-terminal dead ends into t: redirect their in-edges.
        let mut out_deg = vec![0usize; n];
        for e in work.iter().flatten() {
            out_deg[e.tail.0] += 1;
        }
        for v in 0..n {
            let vid = VertexId(v);
            if !alive_v[v] || vid == g.t || vid == g.s || out_deg[v] > 0 {
                continue;
            }
            let has_in = work.iter().flatten().any(|e| e.head == vid);
            if has_in {
                for slot in work.iter_mut() {
                    if let Some(e) = slot {
                        if e.head == vid {
                            e.head = g.t;
                        }
                    }
                }
                alive_v[v] = false;
                report.merged_vertices.push(vid);
                changed = true;
            }
        }

        // (jj): an (s,t)-path must exist in the working graph.
        let from_s = reach(n, &work, g.s, false);
        if !from_s[g.t.0] {
            return Err(Error::NoPath);
        }
        let to_t = reach(n, &work, g.t, true);

        // (jjj): drop edges with unreachable tails or heads that cannot
        // reach t.
        for (i, slot) in work.iter_mut().enumerate() {
            if let Some(e) = *slot {
                if !from_s[e.tail.0] || !to_t[e.head.0] {
                    *slot = None;
                    report.deleted_edges.push(EdgeId(i));
                    changed = true;
                }
            }
        }

        // Drop vertices with no incident edges left.
        let mut incident = vec![false; n];
        for e in work.iter().flatten() {
            incident[e.tail.0] = true;
            incident[e.head.0] = true;
        }
        for v in 0..n {
            let vid = VertexId(v);
            if alive_v[v] && !incident[v] && vid != g.s && vid != g.t {
                alive_v[v] = false;
                report.removed_vertices.push(vid);
                changed = true;
            }
        }

        if !changed {
            break;
        }
    }

    // Compact surviving vertices and edges to dense ids.
    let mut vertex_map = vec![None; n];
    let mut next = 0usize;
    for v in 0..n {
        if alive_v[v] {
            vertex_map[v] = Some(VertexId(next));
            next += 1;
        }
    }
    let mut edge_map = vec![None; g.edges.len()];
    let mut new_edges = Vec::new();
    for (i, e) in work.iter().enumerate() {
        if let Some(e) = e {
            edge_map[i] = Some(EdgeId(new_edges.len()));
            new_edges.push((
                vertex_map[e.tail.0].expect("tail of surviving edge is alive"),
                vertex_map[e.head.0].expect("head of surviving edge is alive"),
            ));
        }
    }
    let s = vertex_map[g.s.0].expect("s survives normalization");
    let t = vertex_map[g.t.0].expect("t survives normalization");
    let normalized = Digraph::new(next, s, t, new_edges)?;
    debug_assert!(normalized.is_normalized());
    report.vertex_map = vertex_map;
    report.edge_map = edge_map;
    Ok((normalized, report))
}

fn reach(n: usize, work: &[Option<Edge>], start: VertexId, backwards: bool) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for e in work.iter().flatten() {
        if backwards {
            adj[e.head.0].push(e.tail);
        } else {
            adj[e.tail.0].push(e.head);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start.0] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v.0] {
            if !seen[u.0] {
                seen[u.0] = true;
                stack.push(u);
            }
        }
    }
    seen
}

/// True iff every edge between non-terminal vertices has its reverse present.
/// Edges incident to `t` are exempt.
pub fn is_bidirected(g: &Digraph) -> bool {
    let present: BTreeSet<(VertexId, VertexId)> =
        g.edges.iter().map(|e| (e.tail, e.head)).collect();
    g.edges.iter().all(|e| {
        e.tail == g.t || e.head == g.t || present.contains(&(e.head, e.tail))
    })
}
