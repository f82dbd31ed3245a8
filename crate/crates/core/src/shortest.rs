//! Shortest paths, simple-path enumeration, and minimum-mean cycles, all in
//! exact rational arithmetic.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Digraph, EdgeId, Path, VertexId};
use crate::rational::{Cost, Rational};

fn check_positive<F: Fn(EdgeId) -> bool>(
    g: &Digraph,
    lengths: &[Rational],
    allowed: &F,
) -> Result<()> {
    assert_eq!(lengths.len(), g.edge_count(), "one length per edge");
    for (id, _) in g.edges() {
        if allowed(id) && lengths[id.0] <= Rational::zero() {
            return Err(Error::NonPositiveLength { edge: id });
        }
    }
    Ok(())
}

/// Single-source shortest distances under strictly positive lengths,
/// restricted to edges passing `allowed`. `None` marks unreachable vertices.
pub fn dijkstra_distances<F: Fn(EdgeId) -> bool>(
    g: &Digraph,
    lengths: &[Rational],
    from: VertexId,
    allowed: F,
) -> Result<Vec<Option<Rational>>> {
    check_positive(g, lengths, &allowed)?;
    Ok(distances(g, lengths, from, &allowed, false))
}

/// Shortest distances from every vertex *to* `to` (Dijkstra on the reverse
/// graph), restricted to edges passing `allowed`.
pub fn dijkstra_distances_to<F: Fn(EdgeId) -> bool>(
    g: &Digraph,
    lengths: &[Rational],
    to: VertexId,
    allowed: F,
) -> Result<Vec<Option<Rational>>> {
    check_positive(g, lengths, &allowed)?;
    Ok(distances(g, lengths, to, &allowed, true))
}

fn distances<F: Fn(EdgeId) -> bool>(
    g: &Digraph,
    lengths: &[Rational],
    src: VertexId,
    allowed: &F,
    backwards: bool,
) -> Vec<Option<Rational>> {
    let n = g.vertex_count();
    // (neighbour, edge) lists; reversed orientation when walking backwards.
    let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
    for (id, e) in g.edges() {
        if !allowed(id) {
            continue;
        }
        if backwards {
            adj[e.head.0].push((e.tail, id));
        } else {
            adj[e.tail.0].push((e.head, id));
        }
    }
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut fixed = vec![false; n];
    let mut heap: BinaryHeap<(Reverse<Rational>, usize)> = BinaryHeap::new();
    dist[src.0] = Some(Rational::zero());
    heap.push((Reverse(Rational::zero()), src.0));
    while let Some((Reverse(d), v)) = heap.pop() {
        if fixed[v] {
            continue;
        }
        fixed[v] = true;
        for &(u, e) in &adj[v] {
            if fixed[u.0] {
                continue;
            }
            let cand = &d + &lengths[e.0];
            if dist[u.0].as_ref().map_or(true, |cur| cand < *cur) {
                dist[u.0] = Some(cand.clone());
                heap.push((Reverse(cand), u.0));
            }
        }
    }
    dist
}

/// Shortest directed path from `from` to `to` under strictly positive edge
/// lengths, together with its exact length. Among equal-length paths the
/// lexicographically smallest edge-id sequence is returned, so the result is
/// independent of adjacency-list presentation.
pub fn dijkstra(
    g: &Digraph,
    lengths: &[Rational],
    from: VertexId,
    to: VertexId,
) -> Result<Option<(Path, Rational)>> {
    dijkstra_filtered(g, lengths, from, to, |_| true)
}

/// [`dijkstra`] restricted to edges passing `allowed`; only those edges'
/// lengths must be positive.
pub fn dijkstra_filtered<F: Fn(EdgeId) -> bool>(
    g: &Digraph,
    lengths: &[Rational],
    from: VertexId,
    to: VertexId,
    allowed: F,
) -> Result<Option<(Path, Rational)>> {
    check_positive(g, lengths, &allowed)?;
    let ds = distances(g, lengths, from, &allowed, false);
    let total = match &ds[to.0] {
        Some(d) => d.clone(),
        None => return Ok(None),
    };
    let dt = distances(g, lengths, to, &allowed, true);

    // Walk the shortest-path DAG greedily by edge id. An edge is "tight"
    // when a shortest from->to path runs through it; taking the smallest
    // tight id at every step yields the lexicographically least sequence.
    let mut edges = Vec::new();
    let mut v = from;
    while v != to {
        let mut next = None;
        for &e in g.out_edges(v) {
            if !allowed(e) {
                continue;
            }
            let h = g.edge(e).head;
            if let (Some(dv), Some(dh)) = (&ds[v.0], &dt[h.0]) {
                if dv + &lengths[e.0] + dh == total {
                    next = Some((e, h));
                    break;
                }
            }
        }
        let (e, h) = next.expect("a tight edge continues every shortest-path prefix");
        edges.push(e);
        v = h;
    }
    Ok(Some((Path::new(edges), total)))
}

/// All simple directed paths from `from` to `to` over edges passing
/// `allowed`, in lexicographic edge-id order. Fails loudly when more than
/// `cap` paths exist.
pub fn enumerate_simple_paths<F: Fn(EdgeId) -> bool>(
    g: &Digraph,
    from: VertexId,
    to: VertexId,
    cap: usize,
    allowed: &F,
) -> Result<Vec<Path>> {
    struct Dfs<'a, F> {
        g: &'a Digraph,
        allowed: &'a F,
        to: VertexId,
        cap: usize,
        visited: Vec<bool>,
        trail: Vec<EdgeId>,
        out: Vec<Path>,
    }
    impl<F: Fn(EdgeId) -> bool> Dfs<'_, F> {
        fn go(&mut self, v: VertexId) -> Result<()> {
            if v == self.to {
                if self.out.len() == self.cap {
                    return Err(Error::PathExplosion { cap: self.cap });
                }
                self.out.push(Path::new(self.trail.clone()));
                return Ok(());
            }
            self.visited[v.0] = true;
            for &e in self.g.out_edges(v) {
                if !(self.allowed)(e) {
                    continue;
                }
                let h = self.g.edge(e).head;
                if self.visited[h.0] {
                    continue;
                }
                self.trail.push(e);
                self.go(h)?;
                self.trail.pop();
            }
            self.visited[v.0] = false;
            Ok(())
        }
    }
    let mut dfs = Dfs {
        g,
        allowed,
        to,
        cap,
        visited: vec![false; g.vertex_count()],
        trail: Vec::new(),
        out: Vec::new(),
    };
    dfs.go(from)?;
    Ok(dfs.out)
}

/// All simple directed (s,t)-paths, in lexicographic edge-id order.
pub fn enumerate_st_paths(g: &Digraph, cap: usize) -> Result<Vec<Path>> {
    enumerate_simple_paths(g, g.s(), g.t(), cap, &|_| true)
}

/// All simple directed cycles, each reported once, rotated so its smallest
/// edge id comes first. Exponential; intended as an oracle on small graphs.
pub fn enumerate_simple_cycles(g: &Digraph, cap: usize) -> Result<Vec<Path>> {
    struct Dfs<'a> {
        g: &'a Digraph,
        root: VertexId,
        cap: usize,
        on_trail: Vec<bool>,
        trail: Vec<EdgeId>,
        out: Vec<Path>,
    }
    impl Dfs<'_> {
        fn go(&mut self, v: VertexId) -> Result<()> {
            for &e in self.g.out_edges(v) {
                let h = self.g.edge(e).head;
                // Canonical start: the cycle's smallest vertex id.
                if h.0 < self.root.0 {
                    continue;
                }
                if h == self.root {
                    if self.out.len() == self.cap {
                        return Err(Error::PathExplosion { cap: self.cap });
                    }
                    self.trail.push(e);
                    self.out.push(rotate_min_edge(&self.trail));
                    self.trail.pop();
                    continue;
                }
                if self.on_trail[h.0] {
                    continue;
                }
                self.on_trail[h.0] = true;
                self.trail.push(e);
                self.go(h)?;
                self.trail.pop();
                self.on_trail[h.0] = false;
            }
            Ok(())
        }
    }
    let mut cycles = Vec::new();
    for root in g.vertices() {
        let mut dfs = Dfs {
            g,
            root,
            cap: cap - cycles.len(),
            on_trail: vec![false; g.vertex_count()],
            trail: Vec::new(),
            out: Vec::new(),
        };
        dfs.on_trail[root.0] = true;
        dfs.go(root).map_err(|_| Error::PathExplosion { cap })?;
        cycles.append(&mut dfs.out);
    }
    Ok(cycles)
}

fn rotate_min_edge(cycle: &[EdgeId]) -> Path {
    let k = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, e)| e.0)
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut edges = Vec::with_capacity(cycle.len());
    edges.extend_from_slice(&cycle[k..]);
    edges.extend_from_slice(&cycle[..k]);
    Path::new(edges)
}

/// Exact minimum cycle mean over all directed cycles, with one witness cycle
/// attaining it, or `None` on acyclic graphs. Weights may have any sign.
///
/// The value comes from Karp's dynamic program run per strongly connected
/// component; the witness is a cycle of the subgraph whose edges are tight
/// for the reduced weights `w(e) - mean`, where every zero-mean cycle must
/// live.
pub fn min_mean_cycle(g: &Digraph, weights: &[Rational]) -> Option<(Rational, Path)> {
    assert_eq!(weights.len(), g.edge_count(), "one weight per edge");
    let comps = strongly_connected_components(g);
    let mut best: Option<(Rational, usize)> = None;
    for (ci, comp) in comps.iter().enumerate() {
        if let Some(mu) = karp_component(g, weights, comp) {
            if best.as_ref().map_or(true, |(b, _)| mu < *b) {
                best = Some((mu, ci));
            }
        }
    }
    let (mu, ci) = best?;
    let cycle = tight_cycle(g, weights, &comps[ci], &mu);
    debug_assert!(cycle.is_closed(g));
    debug_assert_eq!(
        cycle.total_weight(weights),
        &mu * Rational::from_integer(cycle.len() as i128)
    );
    Some((mu, cycle))
}

/// Karp's min-mean formula within one strongly connected component, or
/// `None` when the component contains no cycle (single vertex, no self-loop).
fn karp_component(g: &Digraph, weights: &[Rational], comp: &[VertexId]) -> Option<Rational> {
    let nc = comp.len();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in comp.iter().enumerate() {
        local[v.0] = i;
    }
    let internal: Vec<(usize, usize, EdgeId)> = g
        .edges()
        .filter_map(|(id, e)| {
            let (u, w) = (local[e.tail.0], local[e.head.0]);
            (u != usize::MAX && w != usize::MAX).then_some((u, w, id))
        })
        .collect();
    if internal.is_empty() {
        return None;
    }

    // f[k][v] = least weight of a walk of exactly k edges from comp[0] to v.
    let mut f: Vec<Vec<Option<Rational>>> = vec![vec![None; nc]; nc + 1];
    f[0][0] = Some(Rational::zero());
    for k in 1..=nc {
        for &(u, w, id) in &internal {
            if let Some(du) = f[k - 1][u].clone() {
                let cand = du + &weights[id.0];
                if f[k][w].as_ref().map_or(true, |cur| cand < *cur) {
                    f[k][w] = Some(cand);
                }
            }
        }
    }

    let mut mu: Option<Rational> = None;
    for v in 0..nc {
        let fn_v = match &f[nc][v] {
            Some(d) => d,
            None => continue,
        };
        let mut worst: Option<Rational> = None;
        for (k, fk) in f.iter().enumerate().take(nc) {
            if let Some(fk_v) = &fk[v] {
                let ratio = (fn_v - fk_v) / Rational::from_integer((nc - k) as i128);
                if worst.as_ref().map_or(true, |w| ratio > *w) {
                    worst = Some(ratio);
                }
            }
        }
        if let Some(w) = worst {
            if mu.as_ref().map_or(true, |m| w < *m) {
                mu = Some(w);
            }
        }
    }
    mu
}

/// Finds a cycle whose mean is exactly `mu` inside `comp`: under reduced
/// weights `w - mu` no cycle is negative and some cycle is zero; every edge
/// of a zero cycle is tight for shortest distances, so any cycle of the
/// tight subgraph works.
fn tight_cycle(g: &Digraph, weights: &[Rational], comp: &[VertexId], mu: &Rational) -> Path {
    let nc = comp.len();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in comp.iter().enumerate() {
        local[v.0] = i;
    }
    let internal: Vec<(usize, usize, EdgeId)> = g
        .edges()
        .filter_map(|(id, e)| {
            let (u, w) = (local[e.tail.0], local[e.head.0]);
            (u != usize::MAX && w != usize::MAX).then_some((u, w, id))
        })
        .collect();

    // Bellman-Ford from comp[0]; the component is strongly connected so
    // every distance is finite.
    let mut dist: Vec<Option<Rational>> = vec![None; nc];
    dist[0] = Some(Rational::zero());
    for _ in 0..nc {
        let mut improved = false;
        for &(u, w, id) in &internal {
            if let Some(du) = dist[u].clone() {
                let cand = du + &weights[id.0] - mu;
                if dist[w].as_ref().map_or(true, |cur| cand < *cur) {
                    dist[w] = Some(cand);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }

    // Tight adjacency, in edge-id order per vertex.
    let mut tight: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); nc];
    for &(u, w, id) in &internal {
        let (du, dw) = (dist[u].as_ref().unwrap(), dist[w].as_ref().unwrap());
        if du + &weights[id.0] - mu == *dw {
            tight[u].push((w, id));
        }
    }

    // DFS for any cycle of the tight subgraph.
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    fn dfs(
        v: usize,
        tight: &[Vec<(usize, EdgeId)>],
        color: &mut [Color],
        chain_v: &mut Vec<usize>,
        chain_e: &mut Vec<EdgeId>,
    ) -> Option<Path> {
        color[v] = Color::Gray;
        chain_v.push(v);
        for &(w, id) in &tight[v] {
            match color[w] {
                Color::Gray => {
                    let k = chain_v.iter().position(|&x| x == w).unwrap();
                    let mut edges: Vec<EdgeId> = chain_e[k..].to_vec();
                    edges.push(id);
                    return Some(rotate_min_edge(&edges));
                }
                Color::White => {
                    chain_e.push(id);
                    if let Some(p) = dfs(w, tight, color, chain_v, chain_e) {
                        return Some(p);
                    }
                    chain_e.pop();
                }
                Color::Black => {}
            }
        }
        chain_v.pop();
        color[v] = Color::Black;
        None
    }
    let mut color = vec![Color::White; nc];
    for v in 0..nc {
        if color[v] == Color::White {
            if let Some(p) = dfs(v, &tight, &mut color, &mut Vec::new(), &mut Vec::new()) {
                return p;
            }
        }
    }
    unreachable!("a zero-mean cycle exists in the tight subgraph by construction")
}

/// Strongly connected components (Kosaraju), each sorted ascending; the
/// component list order is deterministic.
fn strongly_connected_components(g: &Digraph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    // Iterative post-order on the forward graph.
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        seen[root] = true;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let out = g.out_edges(VertexId(v));
            if *i < out.len() {
                let h = g.edge(out[*i]).head.0;
                *i += 1;
                if !seen[h] {
                    seen[h] = true;
                    stack.push((h, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (_, e) in g.edges() {
        rev[e.head.0].push(e.tail.0);
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<VertexId>> = Vec::new();
    for &root in order.iter().rev() {
        if comp_of[root] != usize::MAX {
            continue;
        }
        let ci = comps.len();
        let mut members = vec![];
        let mut stack = vec![root];
        comp_of[root] = ci;
        while let Some(v) = stack.pop() {
            members.push(VertexId(v));
            for &u in &rev[v] {
                if comp_of[u] == usize::MAX {
                    comp_of[u] = ci;
                    stack.push(u);
                }
            }
        }
        members.sort();
        comps.push(members);
    }
    comps
}

/// Exact shortest-walk distance from every vertex to `t` under weights of
/// any sign (Bellman-Ford on the reverse graph). Vertices that cannot reach
/// `t` come back as `Cost::Infinite`. Fails if a negative-total-weight cycle
/// can reach `t`.
pub fn shortest_to_target(g: &Digraph, weights: &[Rational]) -> Result<Vec<Cost>> {
    assert_eq!(weights.len(), g.edge_count(), "one weight per edge");
    let n = g.vertex_count();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    dist[g.t().0] = Some(Rational::zero());
    for round in 0..=n {
        let mut improved = false;
        for (id, e) in g.edges() {
            if let Some(dh) = dist[e.head.0].clone() {
                let cand = dh + &weights[id.0];
                if dist[e.tail.0].as_ref().map_or(true, |cur| cand < *cur) {
                    dist[e.tail.0] = Some(cand);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
        if round == n {
            return Err(Error::Malformed(
                "negative-total-weight cycle reaches t".into(),
            ));
        }
    }
    Ok(dist
        .into_iter()
        .map(|d| d.map_or(Cost::Infinite, Cost::Finite))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn graph(n: usize, s: usize, t: usize, edges: &[(usize, usize)]) -> Digraph {
        Digraph::new(
            n,
            VertexId(s),
            VertexId(t),
            edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b))).collect(),
        )
        .unwrap()
    }

    /// s=0, a=1, t=2 with a return edge a->s.
    fn triangle() -> Digraph {
        graph(3, 0, 2, &[(0, 1), (1, 2), (0, 2), (1, 0)])
    }

    #[test]
    fn dijkstra_single_edge() {
        let g = graph(2, 0, 1, &[(0, 1)]);
        let (p, d) = dijkstra(&g, &[rat(5)], g.s(), g.t()).unwrap().unwrap();
        assert_eq!(p.edges, vec![EdgeId(0)]);
        assert_eq!(d, rat(5));
    }

    #[test]
    fn dijkstra_prefers_two_hop_route() {
        let g = graph(3, 0, 2, &[(0, 1), (1, 2), (0, 2)]);
        let (p, d) = dijkstra(&g, &[rat(1), rat(3), rat(10)], g.s(), g.t())
            .unwrap()
            .unwrap();
        assert_eq!(p.edges, vec![EdgeId(0), EdgeId(1)]);
        assert_eq!(d, rat(4));
    }

    #[test]
    fn dijkstra_unreachable_is_none() {
        let g = graph(3, 0, 2, &[(0, 1), (1, 0)]);
        assert_eq!(dijkstra(&g, &[rat(1), rat(1)], g.s(), g.t()).unwrap(), None);
    }

    #[test]
    fn dijkstra_rejects_non_positive_lengths() {
        let g = graph(2, 0, 1, &[(0, 1)]);
        assert_eq!(
            dijkstra(&g, &[rat(0)], g.s(), g.t()),
            Err(Error::NonPositiveLength { edge: EdgeId(0) })
        );
    }

    #[test]
    fn dijkstra_breaks_ties_lexicographically() {
        // Two s->t routes of equal length 4: [e0,e2] via v1 and [e1,e3] via v2.
        let g = graph(4, 0, 3, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let lengths = [rat(2), rat(2), rat(2), rat(2)];
        let (p, d) = dijkstra(&g, &lengths, g.s(), g.t()).unwrap().unwrap();
        assert_eq!(d, rat(4));
        assert_eq!(p.edges, vec![EdgeId(0), EdgeId(2)]);
    }

    #[test]
    fn dijkstra_matches_enumeration_minimum() {
        let g = triangle();
        let lengths = [ratio(1, 3), rat(2), ratio(7, 2), rat(1)];
        let (_, d) = dijkstra(&g, &lengths, g.s(), g.t()).unwrap().unwrap();
        let best = enumerate_st_paths(&g, 100)
            .unwrap()
            .iter()
            .map(|p| p.total_weight(&lengths))
            .min()
            .unwrap();
        assert_eq!(d, best);
    }

    #[test]
    fn st_paths_single_edge() {
        let g = graph(2, 0, 1, &[(0, 1)]);
        let ps = enumerate_st_paths(&g, 10).unwrap();
        assert_eq!(ps, vec![Path::new(vec![EdgeId(0)])]);
    }

    #[test]
    fn st_paths_listed_in_lexicographic_order() {
        let g = graph(3, 0, 2, &[(0, 1), (1, 2), (0, 2)]);
        let ps = enumerate_st_paths(&g, 10).unwrap();
        assert_eq!(
            ps,
            vec![
                Path::new(vec![EdgeId(0), EdgeId(1)]),
                Path::new(vec![EdgeId(2)]),
            ]
        );
    }

    #[test]
    fn st_paths_cap_fails_loudly() {
        // Complete bidirected digraph on 12 vertices, t = 11.
        let mut edges = Vec::new();
        for a in 0..12 {
            for b in 0..12 {
                if a != b && a != 11 {
                    edges.push((a, b));
                }
            }
        }
        let g = graph(12, 0, 11, &edges);
        assert_eq!(
            enumerate_st_paths(&g, 10),
            Err(Error::PathExplosion { cap: 10 })
        );
    }

    #[test]
    fn min_mean_cycle_absent_on_acyclic() {
        let g = graph(2, 0, 1, &[(0, 1)]);
        assert_eq!(min_mean_cycle(&g, &[rat(1)]), None);
    }

    #[test]
    fn min_mean_cycle_two_edge_loop() {
        let g = graph(3, 0, 2, &[(0, 1), (1, 0), (1, 2)]);
        let (mean, cycle) = min_mean_cycle(&g, &[rat(1), rat(1), rat(1)]).unwrap();
        assert_eq!(mean, rat(1));
        assert_eq!(cycle.edges, vec![EdgeId(0), EdgeId(1)]);
    }

    #[test]
    fn min_mean_cycle_handles_negative_weights() {
        let g = graph(3, 0, 2, &[(0, 1), (1, 0), (1, 2)]);
        let (mean, cycle) = min_mean_cycle(&g, &[rat(3), rat(-1), rat(1)]).unwrap();
        assert_eq!(mean, rat(1));
        assert_eq!(cycle.edges, vec![EdgeId(0), EdgeId(1)]);
    }

    #[test]
    fn min_mean_cycle_picks_smaller_of_two_cycles() {
        // Self-loop of weight 2 at v1 vs a two-edge cycle of mean 3/2.
        let g = graph(3, 0, 2, &[(0, 1), (1, 0), (1, 1), (1, 2)]);
        let (mean, cycle) =
            min_mean_cycle(&g, &[rat(1), rat(2), rat(2), rat(1)]).unwrap();
        assert_eq!(mean, ratio(3, 2));
        assert_eq!(cycle.edges, vec![EdgeId(0), EdgeId(1)]);

        let (mean, cycle) =
            min_mean_cycle(&g, &[rat(2), rat(2), rat(1), rat(1)]).unwrap();
        assert_eq!(mean, rat(1));
        assert_eq!(cycle.edges, vec![EdgeId(2)]);
    }

    #[test]
    fn min_mean_cycle_matches_cycle_enumeration() {
        let g = graph(4, 0, 3, &[(0, 1), (1, 2), (2, 0), (1, 0), (2, 3), (0, 3)]);
        let weights = [rat(5), rat(-2), rat(4), rat(-4), rat(1), rat(1)];
        let (mean, witness) = min_mean_cycle(&g, &weights).unwrap();
        let cycles = enumerate_simple_cycles(&g, 1000).unwrap();
        assert!(!cycles.is_empty());
        let best = cycles
            .iter()
            .map(|c| c.total_weight(&weights) / rat(c.len() as i128))
            .min()
            .unwrap();
        assert_eq!(mean, best);
        assert_eq!(
            witness.total_weight(&weights),
            &mean * rat(witness.len() as i128)
        );
    }

    #[test]
    fn cycle_enumeration_canonical_and_complete() {
        let g = triangle();
        let cycles = enumerate_simple_cycles(&g, 100).unwrap();
        assert_eq!(cycles, vec![Path::new(vec![EdgeId(0), EdgeId(3)])]);
    }

    #[test]
    fn bellman_ford_distances_with_negative_weights() {
        let g = triangle();
        // Reduced weights from a min-cycle-mean of 1/2 halved to eps = 1/4.
        let w = [ratio(11, 4), ratio(3, 4), ratio(3, 4), ratio(-9, 4)];
        let d = shortest_to_target(&g, &w).unwrap();
        assert_eq!(d[0], Cost::Finite(ratio(3, 4)));
        assert_eq!(d[1], Cost::Finite(ratio(-3, 2)));
        assert_eq!(d[2], Cost::Finite(rat(0)));
    }

    #[test]
    fn bellman_ford_leaves_stranded_vertices_infinite() {
        let g = graph(3, 0, 2, &[(0, 2), (1, 0)]);
        let d = shortest_to_target(&g, &[rat(1), rat(1)]).unwrap();
        assert_eq!(d[1], Cost::Finite(rat(2)));
        let g = graph(3, 0, 2, &[(0, 2), (1, 1)]);
        let d = shortest_to_target(&g, &[rat(1), rat(1)]).unwrap();
        assert_eq!(d[1], Cost::Infinite);
    }
}
