//! The n-person shortest-path game model: ownership partition, local costs,
//! strategies, plays, effective costs, equilibrium tests, and brute-force
//! enumeration.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{normalize, Digraph, EdgeId, NormalizationReport, VertexId};
use crate::rational::{Cost, Rational};
use crate::shortest::dijkstra_filtered;

/// Zero-based player index. Players are displayed one-based ("P1").
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Player(pub usize);

impl Player {
    /// One-based number as used in documents and reports.
    pub fn number(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0 + 1)
    }
}

/// Finite n-person shortest-path game: a digraph, an ownership partition of
/// the non-terminal vertices, and one strictly positive local cost per edge
/// per player (positivity is a model invariant reported by [`SPGame::validate`],
/// not enforced structurally, so transformed games with non-positive entries
/// can still be represented).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPGame {
    graph: Digraph,
    n: usize,
    /// `None` exactly at the terminal vertex.
    owner: Vec<Option<Player>>,
    /// Player-major: `costs[p][e]` is the local cost of edge `e` for player `p`.
    costs: Vec<Vec<Rational>>,
    /// Cached per player: every cost entry strictly positive.
    positive: Vec<bool>,
    /// Cached per player: owned vertices, ascending.
    owned: Vec<Vec<VertexId>>,
}

impl SPGame {
    /// Structural construction. Rejects malformed shapes (arity mismatches,
    /// owners out of range, an owned terminal); model-level invariants such
    /// as cost positivity and non-empty parts are left to [`SPGame::validate`].
    pub fn new(
        graph: Digraph,
        n: usize,
        owner: Vec<Option<Player>>,
        costs: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Malformed(format!("need at least 2 players, got {n}")));
        }
        if owner.len() != graph.vertex_count() {
            return Err(Error::Malformed("one owner entry per vertex required".into()));
        }
        for v in graph.vertices() {
            match owner[v.0] {
                None if v != graph.t() => {
                    return Err(Error::Malformed(format!("non-terminal {v} has no owner")));
                }
                Some(p) if v == graph.t() => {
                    return Err(Error::Malformed(format!("terminal {v} owned by {p}")));
                }
                Some(Player(i)) if i >= n => {
                    return Err(Error::Malformed(format!("owner of {v} out of range 1..={n}")));
                }
                _ => {}
            }
        }
        if costs.len() != n || costs.iter().any(|c| c.len() != graph.edge_count()) {
            return Err(Error::Malformed(
                "cost table must be n players by edge count".into(),
            ));
        }
        let positive = costs
            .iter()
            .map(|row| row.iter().all(|c| *c > Rational::zero()))
            .collect();
        let mut owned = vec![Vec::new(); n];
        for v in graph.vertices() {
            if let Some(p) = owner[v.0] {
                owned[p.0].push(v);
            }
        }
        Ok(SPGame { graph, n, owner, costs, positive, owned })
    }

    /// Normalizes the graph first, then carries ownership and costs across:
    /// surviving edges (including ones redirected into `t` by a merge) keep
    /// their cost vectors, merged and removed vertices drop out of the
    /// partition.
    pub fn normalized_from_parts(
        graph: Digraph,
        n: usize,
        owner: Vec<Option<Player>>,
        costs: Vec<Vec<Rational>>,
    ) -> Result<(Self, NormalizationReport)> {
        if owner.len() != graph.vertex_count() {
            return Err(Error::Malformed("one owner entry per vertex required".into()));
        }
        if costs.len() != n || costs.iter().any(|c| c.len() != graph.edge_count()) {
            return Err(Error::Malformed(
                "cost table must be n players by edge count".into(),
            ));
        }
        let (ng, report) = normalize(&graph)?;
        let mut new_owner = vec![None; ng.vertex_count()];
        for (old, new) in report.vertex_map.iter().enumerate() {
            if let Some(nv) = new {
                new_owner[nv.0] = owner[old];
            }
        }
        let mut new_costs = vec![Vec::new(); n];
        for p in 0..n {
            let mut row = vec![Rational::zero(); ng.edge_count()];
            for (old, new) in report.edge_map.iter().enumerate() {
                if let Some(ne) = new {
                    row[ne.0] = costs[p][old].clone();
                }
            }
            new_costs[p] = row;
        }
        let game = SPGame::new(ng, n, new_owner, new_costs)?;
        Ok((game, report))
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    pub fn players(&self) -> impl Iterator<Item = Player> {
        (0..self.n).map(Player)
    }

    pub fn owner(&self, v: VertexId) -> Option<Player> {
        self.owner[v.0]
    }

    pub fn owned_by(&self, p: Player) -> &[VertexId] {
        &self.owned[p.0]
    }

    pub fn cost(&self, e: EdgeId, p: Player) -> &Rational {
        &self.costs[p.0][e.0]
    }

    /// All of one player's edge costs, usable directly as Dijkstra lengths.
    pub fn player_costs(&self, p: Player) -> &[Rational] {
        &self.costs[p.0]
    }

    /// True when every local cost of `p` is strictly positive, which is what
    /// licenses the Dijkstra best-response route for that player.
    pub fn positive_for(&self, p: Player) -> bool {
        self.positive[p.0]
    }

    /// Same graph and partition, different cost table.
    pub fn with_costs(&self, costs: Vec<Vec<Rational>>) -> Result<Self> {
        SPGame::new(self.graph.clone(), self.n, self.owner.clone(), costs)
    }

    /// Model-invariant check. An empty result means the game is a valid
    /// shortest-path game with strictly positive costs on a normalized graph.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for p in self.players() {
            if self.owned[p.0].is_empty() {
                out.push(Violation::EmptyPart { player: p });
            }
        }
        for p in self.players() {
            for (e, _) in self.graph.edges() {
                if *self.cost(e, p) <= Rational::zero() {
                    out.push(Violation::NonPositiveCost { edge: e, player: p });
                }
            }
        }
        if !self.graph.is_normalized() {
            out.push(Violation::NotNormalized);
        }
        out
    }
}

/// A named model-invariant failure. Violations are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyPart { player: Player },
    NonPositiveCost { edge: EdgeId, player: Player },
    NotNormalized,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyPart { player } => {
                write!(f, "player {player} controls no position")
            }
            Violation::NonPositiveCost { edge, player } => {
                write!(f, "cost of {edge} for {player} is not strictly positive")
            }
            Violation::NotNormalized => write!(f, "graph violates a structural assumption"),
        }
    }
}

/// One player's pure stationary strategy: a chosen outgoing edge for every
/// owned vertex, ascending by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strategy {
    pub player: Player,
    pub choices: Vec<(VertexId, EdgeId)>,
}

impl Strategy {
    pub fn choice_at(&self, v: VertexId) -> Option<EdgeId> {
        self.choices
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.choices[i].1)
    }
}

/// A full profile: exactly one outgoing edge per non-terminal vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyProfile {
    /// Indexed by vertex; `None` exactly at the terminal.
    choice: Vec<Option<EdgeId>>,
}

impl StrategyProfile {
    pub fn new(game: &SPGame, choice: Vec<Option<EdgeId>>) -> Result<Self> {
        let g = game.graph();
        if choice.len() != g.vertex_count() {
            return Err(Error::Malformed("one choice slot per vertex required".into()));
        }
        for v in g.vertices() {
            match choice[v.0] {
                None if v != g.t() => {
                    return Err(Error::Malformed(format!("no choice at non-terminal {v}")));
                }
                Some(e) if v == g.t() => {
                    return Err(Error::Malformed(format!("terminal has a choice {e}")));
                }
                Some(e) => {
                    if e.0 >= g.edge_count() || g.edge(e).tail != v {
                        return Err(Error::Malformed(format!("choice {e} does not leave {v}")));
                    }
                }
                None => {}
            }
        }
        Ok(StrategyProfile { choice })
    }

    /// Assembles a profile from one strategy per player.
    pub fn from_strategies(game: &SPGame, strategies: &[Strategy]) -> Result<Self> {
        let g = game.graph();
        let mut choice = vec![None; g.vertex_count()];
        for s in strategies {
            for &(v, e) in &s.choices {
                if game.owner(v) != Some(s.player) {
                    return Err(Error::Malformed(format!("{v} is not owned by {}", s.player)));
                }
                choice[v.0] = Some(e);
            }
        }
        StrategyProfile::new(game, choice)
    }

    pub fn choice(&self, v: VertexId) -> Option<EdgeId> {
        self.choice[v.0]
    }

    pub fn choices(&self) -> &[Option<EdgeId>] {
        &self.choice
    }

    /// Extracts one player's strategy.
    pub fn strategy_of(&self, game: &SPGame, p: Player) -> Strategy {
        let choices = game
            .owned_by(p)
            .iter()
            .map(|&v| (v, self.choice[v.0].expect("owned vertices are non-terminal")))
            .collect();
        Strategy { player: p, choices }
    }

    /// The profile with one player's strategy swapped in (a unilateral
    /// deviation).
    pub fn with_strategy(&self, strategy: &Strategy) -> StrategyProfile {
        let mut choice = self.choice.clone();
        for &(v, e) in &strategy.choices {
            choice[v.0] = Some(e);
        }
        StrategyProfile { choice }
    }
}

/// The walk induced by a profile from an initial vertex: it either reaches
/// the terminal or closes a lasso (simple prefix plus simple cycle).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Play {
    Terminal { steps: Vec<EdgeId> },
    Cyclic { steps: Vec<EdgeId>, cycle_start: usize },
}

impl Play {
    pub fn is_terminal(&self) -> bool {
        matches!(self, Play::Terminal { .. })
    }

    pub fn steps(&self) -> &[EdgeId] {
        match self {
            Play::Terminal { steps } | Play::Cyclic { steps, .. } => steps,
        }
    }

    /// Index of the first cycle edge for cyclic plays.
    pub fn cycle_start(&self) -> Option<usize> {
        match self {
            Play::Terminal { .. } => None,
            Play::Cyclic { cycle_start, .. } => Some(*cycle_start),
        }
    }
}

/// Follows the profile from `v0` until the terminal is reached or a position
/// repeats. Stationary strategies exit every vertex the same way, so the
/// walk is fully determined.
pub fn play(game: &SPGame, profile: &StrategyProfile, v0: VertexId) -> Play {
    assert_ne!(v0, game.graph().t(), "plays start at a non-terminal position");
    let g = game.graph();
    let mut first_exit = vec![usize::MAX; g.vertex_count()];
    let mut steps = Vec::new();
    let mut v = v0;
    loop {
        if v == g.t() {
            return Play::Terminal { steps };
        }
        if first_exit[v.0] != usize::MAX {
            return Play::Cyclic { steps, cycle_start: first_exit[v.0] };
        }
        first_exit[v.0] = steps.len();
        let e = profile.choice(v).expect("profile covers every non-terminal");
        steps.push(e);
        v = g.edge(e).head;
    }
}

/// Per-player effective cost of a play: exact sums for terminal plays,
/// `+inf` for every player on cyclic plays.
pub fn effective_cost(game: &SPGame, p: &Play) -> Vec<Cost> {
    match p {
        Play::Terminal { steps } => game
            .players()
            .map(|i| {
                Cost::Finite(steps.iter().map(|e| game.cost(*e, i).clone()).sum())
            })
            .collect(),
        Play::Cyclic { .. } => vec![Cost::Infinite; game.player_count()],
    }
}

/// Reusable scratch space for cost-only walks in hot enumeration loops.
struct Walker {
    mark: Vec<u32>,
    epoch: u32,
}

impl Walker {
    fn new(n: usize) -> Self {
        Walker { mark: vec![0; n], epoch: 0 }
    }

    /// Cost to `player` of the walk from `v0` under `choices`, without
    /// materializing the play.
    fn cost(
        &mut self,
        game: &SPGame,
        choices: &[Option<EdgeId>],
        v0: VertexId,
        player: Player,
    ) -> Cost {
        let g = game.graph();
        self.epoch += 1;
        let mut acc = Rational::zero();
        let mut v = v0;
        loop {
            if v == g.t() {
                return Cost::Finite(acc);
            }
            if self.mark[v.0] == self.epoch {
                return Cost::Infinite;
            }
            self.mark[v.0] = self.epoch;
            let e = choices[v.0].expect("choices cover every non-terminal");
            acc += game.cost(e, player);
            v = g.edge(e).head;
        }
    }
}

/// Completes a set of on-path choices into a total strategy: every other
/// owned vertex takes its smallest outgoing edge id (the global tie-break).
fn complete_strategy(game: &SPGame, player: Player, on_path: &[(VertexId, EdgeId)]) -> Strategy {
    let g = game.graph();
    let choices = game
        .owned_by(player)
        .iter()
        .map(|&v| {
            let picked = on_path
                .iter()
                .find(|&&(w, _)| w == v)
                .map(|&(_, e)| e)
                .unwrap_or_else(|| g.out_edges(v)[0]);
            (v, picked)
        })
        .collect();
    Strategy { player, choices }
}

/// Cheapest effective cost player `i` can force from `v0` by a unilateral
/// strategy change, with a strategy attaining it.
///
/// Every other vertex keeps only its profile-chosen edge; on the resulting
/// single-choice graph a deviation realizes exactly the simple `v0 -> t`
/// paths, so with strictly positive costs Dijkstra under `r_i` finds the
/// optimum without enumerating the deviator's strategy space. Unreachable
/// terminal means `+inf` (the deviator cannot force termination).
pub fn best_response(
    game: &SPGame,
    profile: &StrategyProfile,
    player: Player,
    v0: VertexId,
) -> Result<(Cost, Strategy)> {
    let g = game.graph();
    let allowed = |e: EdgeId| {
        let tail = g.edge(e).tail;
        game.owner(tail) == Some(player) || profile.choice(tail) == Some(e)
    };
    let found = dijkstra_filtered(g, game.player_costs(player), v0, g.t(), allowed)?;
    Ok(match found {
        None => (Cost::Infinite, complete_strategy(game, player, &[])),
        Some((path, dist)) => {
            let on_path: Vec<(VertexId, EdgeId)> = path
                .edges
                .iter()
                .map(|&e| (g.edge(e).tail, e))
                .filter(|&(v, _)| game.owner(v) == Some(player))
                .collect();
            (Cost::Finite(dist), complete_strategy(game, player, &on_path))
        }
    })
}

/// Oracle twin of [`best_response`]: the exact minimum over the player's full
/// strategy space, valid for costs of any sign. Exponential in the player's
/// owned vertices.
pub fn best_response_exhaustive(
    game: &SPGame,
    profile: &StrategyProfile,
    player: Player,
    v0: VertexId,
) -> (Cost, Strategy) {
    let mut walker = Walker::new(game.graph().vertex_count());
    let mut choices = profile.choices().to_vec();
    let mut best: Option<(Cost, Vec<EdgeId>)> = None;
    for picks in StrategyIter::new(game, player) {
        for (&v, &e) in game.owned_by(player).iter().zip(&picks) {
            choices[v.0] = Some(e);
        }
        let cost = walker.cost(game, &choices, v0, player);
        if best.as_ref().map_or(true, |(b, _)| cost < *b) {
            best = Some((cost, picks));
        }
    }
    let (cost, picks) = best.expect("every player has at least one strategy");
    let choices = game.owned_by(player).iter().copied().zip(picks).collect();
    (cost, Strategy { player, choices })
}

/// Outcome of a Nash-equilibrium test at one initial position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NeCheck {
    Equilibrium,
    Improvable {
        player: Player,
        deviation: Strategy,
        current: Cost,
        improved: Cost,
    },
}

impl NeCheck {
    pub fn is_ne(&self) -> bool {
        matches!(self, NeCheck::Equilibrium)
    }
}

fn check_ne_with<B>(game: &SPGame, profile: &StrategyProfile, v0: VertexId, br: B) -> NeCheck
where
    B: Fn(&SPGame, &StrategyProfile, Player, VertexId) -> (Cost, Strategy),
{
    let current = effective_cost(game, &play(game, profile, v0));
    for p in game.players() {
        let (value, strategy) = br(game, profile, p, v0);
        if value < current[p.0] {
            return NeCheck::Improvable {
                player: p,
                deviation: strategy,
                current: current[p.0].clone(),
                improved: value,
            };
        }
    }
    NeCheck::Equilibrium
}

/// Nash-equilibrium test against pure stationary unilateral deviations.
/// Players with strictly positive costs are checked by the Dijkstra best
/// response; any other player falls back to exhaustive deviation search,
/// which stays exact for arbitrary cost signs.
pub fn check_ne(game: &SPGame, profile: &StrategyProfile, v0: VertexId) -> NeCheck {
    check_ne_with(game, profile, v0, |g, s, p, v| {
        if g.positive_for(p) {
            best_response(g, s, p, v).expect("positive costs admit Dijkstra")
        } else {
            best_response_exhaustive(g, s, p, v)
        }
    })
}

/// Independent oracle for [`check_ne`]: always enumerates every deviation.
pub fn check_ne_exhaustive(game: &SPGame, profile: &StrategyProfile, v0: VertexId) -> NeCheck {
    check_ne_with(game, profile, v0, best_response_exhaustive)
}

pub fn is_ne(game: &SPGame, profile: &StrategyProfile, v0: VertexId) -> bool {
    check_ne(game, profile, v0).is_ne()
}

/// Uniform (subgame perfect) Nash equilibrium: an NE from every non-terminal
/// initial position.
pub fn is_une(game: &SPGame, profile: &StrategyProfile) -> bool {
    game.graph()
        .non_terminal_vertices()
        .all(|v0| check_ne(game, profile, v0).is_ne())
}

/// Number of strategy profiles (product of out-degrees over non-terminal
/// vertices), saturating so oversized inputs trip the budget guard instead
/// of overflowing.
pub fn profile_space_size(game: &SPGame) -> u128 {
    game.graph()
        .non_terminal_vertices()
        .map(|v| game.graph().out_degree(v) as u128)
        .try_fold(1u128, |acc, d| acc.checked_mul(d))
        .unwrap_or(u128::MAX)
}

/// Number of strategies of one player, saturating like
/// [`profile_space_size`].
pub fn strategy_space_size(game: &SPGame, player: Player) -> u128 {
    game.owned_by(player)
        .iter()
        .map(|&v| game.graph().out_degree(v) as u128)
        .try_fold(1u128, |acc, d| acc.checked_mul(d))
        .unwrap_or(u128::MAX)
}

/// All strategies of one player, lexicographic over per-vertex edge choices
/// in vertex-id order.
pub fn enumerate_strategies(
    game: &SPGame,
    player: Player,
) -> impl Iterator<Item = Strategy> + '_ {
    StrategyIter::new(game, player).map(move |picks| Strategy {
        player,
        choices: game.owned_by(player).iter().copied().zip(picks).collect(),
    })
}

/// Odometer over one player's strategy space in vertex-id order; yields the
/// chosen edge per owned vertex. Deterministic lexicographic order.
struct StrategyIter<'a> {
    game: &'a SPGame,
    vertices: &'a [VertexId],
    digits: Vec<usize>,
    done: bool,
}

impl<'a> StrategyIter<'a> {
    fn new(game: &'a SPGame, player: Player) -> Self {
        let vertices = game.owned_by(player);
        StrategyIter {
            game,
            vertices,
            digits: vec![0; vertices.len()],
            done: false,
        }
    }
}

impl Iterator for StrategyIter<'_> {
    type Item = Vec<EdgeId>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let g = self.game.graph();
        let picks: Vec<EdgeId> = self
            .vertices
            .iter()
            .zip(&self.digits)
            .map(|(&v, &d)| g.out_edges(v)[d])
            .collect();
        // Advance the rightmost digit first.
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < g.out_degree(self.vertices[i]) {
                break;
            }
            self.digits[i] = 0;
        }
        if self.vertices.is_empty() {
            self.done = true;
        }
        Some(picks)
    }
}

/// Enumerates every player's strategies as full profiles, lexicographic over
/// per-vertex edge choices in vertex-id order.
pub struct ProfileIter<'a> {
    game: &'a SPGame,
    vertices: Vec<VertexId>,
    digits: Vec<usize>,
    done: bool,
}

impl<'a> ProfileIter<'a> {
    pub fn new(game: &'a SPGame) -> Self {
        let vertices: Vec<VertexId> = game.graph().non_terminal_vertices().collect();
        ProfileIter {
            game,
            digits: vec![0; vertices.len()],
            vertices,
            done: false,
        }
    }
}

impl Iterator for ProfileIter<'_> {
    type Item = StrategyProfile;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let g = self.game.graph();
        let mut choice = vec![None; g.vertex_count()];
        for (&v, &d) in self.vertices.iter().zip(&self.digits) {
            choice[v.0] = Some(g.out_edges(v)[d]);
        }
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < g.out_degree(self.vertices[i]) {
                break;
            }
            self.digits[i] = 0;
        }
        if self.vertices.is_empty() {
            self.done = true;
        }
        Some(StrategyProfile { choice })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeMode {
    All,
    First,
}

/// Brute-force Nash-equilibrium enumeration at one initial position, in
/// profile-odometer order. Fails upfront when the profile space exceeds the
/// budget.
pub fn enumerate_ne(
    game: &SPGame,
    v0: VertexId,
    mode: NeMode,
    budget: u128,
) -> Result<Vec<StrategyProfile>> {
    let required = profile_space_size(game);
    if required > budget {
        return Err(Error::BudgetExceeded { budget, required });
    }
    let mut out = Vec::new();
    for profile in ProfileIter::new(game) {
        if check_ne(game, &profile, v0).is_ne() {
            out.push(profile);
            if mode == NeMode::First {
                break;
            }
        }
    }
    Ok(out)
}

/// Splits every edge whose endpoints share an owner (terminal excluded) with
/// a fresh vertex of the other player, halving each player's cost across the
/// two halves. Two-person games only. The result has no same-owner edge
/// between non-terminal vertices.
pub fn subdivide_to_bipartite(game: &SPGame) -> SPGame {
    assert_eq!(game.player_count(), 2, "subdivision is defined for two players");
    let g = game.graph();
    let mut owner = (0..g.vertex_count())
        .map(|v| game.owner(VertexId(v)))
        .collect::<Vec<_>>();
    let mut edges = Vec::new();
    let mut costs: Vec<Vec<Rational>> = vec![Vec::new(); 2];
    let mut next_vertex = g.vertex_count();
    let half = crate::rational::ratio(1, 2);
    for (id, e) in g.edges() {
        let split = e.head != g.t() && game.owner(e.tail) == game.owner(e.head);
        if split {
            let mid = VertexId(next_vertex);
            next_vertex += 1;
            let Player(i) = game.owner(e.tail).expect("non-terminal tail is owned");
            owner.push(Some(Player(1 - i)));
            edges.push((e.tail, mid));
            edges.push((mid, e.head));
            for p in 0..2 {
                let h = game.cost(id, Player(p)) * &half;
                costs[p].push(h.clone());
                costs[p].push(h);
            }
        } else {
            edges.push((e.tail, e.head));
            for p in 0..2 {
                costs[p].push(game.cost(id, Player(p)).clone());
            }
        }
    }
    let graph = Digraph::new(next_vertex, g.s(), g.t(), edges)
        .expect("subdivision preserves well-formedness");
    SPGame::new(graph, 2, owner, costs).expect("subdivision preserves well-formedness")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::samples;

    const S: VertexId = VertexId(0);
    const A: VertexId = VertexId(1);
    const E0: EdgeId = EdgeId(0); // s -> a
    const E1: EdgeId = EdgeId(1); // a -> t
    const E2: EdgeId = EdgeId(2); // s -> t
    const E3: EdgeId = EdgeId(3); // a -> s

    fn profile(game: &SPGame, s_choice: EdgeId, a_choice: EdgeId) -> StrategyProfile {
        StrategyProfile::new(game, vec![Some(s_choice), Some(a_choice), None]).unwrap()
    }

    #[test]
    fn validate_accepts_the_triangle() {
        assert!(samples::triangle().validate().is_empty());
    }

    #[test]
    fn validate_reports_a_zero_cost() {
        let game = samples::triangle();
        let mut costs: Vec<Vec<Rational>> =
            game.players().map(|p| game.player_costs(p).to_vec()).collect();
        costs[0][E1.0] = rat(0);
        let bad = game.with_costs(costs).unwrap();
        assert_eq!(
            bad.validate(),
            vec![Violation::NonPositiveCost { edge: E1, player: Player(0) }]
        );
        assert!(!bad.positive_for(Player(0)));
        assert!(bad.positive_for(Player(1)));
    }

    #[test]
    fn validate_reports_an_empty_part() {
        let game = samples::triangle();
        let lopsided = SPGame::new(
            game.graph().clone(),
            2,
            vec![Some(Player(0)), Some(Player(0)), None],
            game.players().map(|p| game.player_costs(p).to_vec()).collect(),
        )
        .unwrap();
        assert_eq!(lopsided.validate(), vec![Violation::EmptyPart { player: Player(1) }]);
    }

    #[test]
    fn play_follows_choices_to_the_terminal() {
        let game = samples::triangle();
        let p = play(&game, &profile(&game, E0, E1), S);
        assert_eq!(p, Play::Terminal { steps: vec![E0, E1] });
    }

    #[test]
    fn play_closes_a_lasso_on_revisit() {
        let game = samples::triangle();
        let p = play(&game, &profile(&game, E0, E3), S);
        assert_eq!(p, Play::Cyclic { steps: vec![E0, E3], cycle_start: 0 });
    }

    #[test]
    fn play_single_move() {
        let game = samples::triangle();
        let p = play(&game, &profile(&game, E2, E3), S);
        assert_eq!(p, Play::Terminal { steps: vec![E2] });
    }

    #[test]
    fn effective_cost_sums_terminal_plays() {
        let game = samples::triangle();
        let p = Play::Terminal { steps: vec![E0, E1] };
        assert_eq!(
            effective_cost(&game, &p),
            vec![Cost::Finite(rat(3)), Cost::Finite(rat(4))]
        );
        let single = Play::Terminal { steps: vec![E2] };
        assert_eq!(
            effective_cost(&game, &single),
            vec![Cost::Finite(rat(10)), Cost::Finite(rat(10))]
        );
    }

    #[test]
    fn effective_cost_is_infinite_on_cycles() {
        let game = samples::triangle();
        let p = Play::Cyclic { steps: vec![E0, E3], cycle_start: 0 };
        assert_eq!(effective_cost(&game, &p), vec![Cost::Infinite, Cost::Infinite]);
    }

    #[test]
    fn best_response_uses_the_fixed_opponent_route() {
        let game = samples::triangle();
        let (value, strategy) = best_response(&game, &profile(&game, E0, E1), Player(0), S).unwrap();
        assert_eq!(value, Cost::Finite(rat(3)));
        assert_eq!(strategy.choices, vec![(S, E0)]);
    }

    #[test]
    fn best_response_escapes_a_cycle_through_the_direct_edge() {
        let game = samples::triangle();
        let (value, strategy) = best_response(&game, &profile(&game, E0, E3), Player(0), S).unwrap();
        assert_eq!(value, Cost::Finite(rat(10)));
        assert_eq!(strategy.choices, vec![(S, E2)]);
    }

    #[test]
    fn best_response_completes_off_path_vertices_by_smallest_edge() {
        let game = samples::triangle();
        let (value, strategy) = best_response(&game, &profile(&game, E2, E1), Player(1), S).unwrap();
        assert_eq!(value, Cost::Finite(rat(10)));
        assert_eq!(strategy.choices, vec![(A, E1)]);
    }

    #[test]
    fn best_response_agrees_with_exhaustive_search_on_the_triangle() {
        let game = samples::triangle();
        for profile in ProfileIter::new(&game) {
            for p in game.players() {
                for v0 in [S, A] {
                    let (fast, _) = best_response(&game, &profile, p, v0).unwrap();
                    let (slow, _) = best_response_exhaustive(&game, &profile, p, v0);
                    assert_eq!(fast, slow);
                }
            }
        }
    }

    #[test]
    fn ne_examples_from_the_triangle() {
        let game = samples::triangle();
        assert!(check_ne(&game, &profile(&game, E0, E1), S).is_ne());
        assert!(check_ne(&game, &profile(&game, E2, E3), S).is_ne());
        match check_ne(&game, &profile(&game, E2, E1), S) {
            NeCheck::Improvable { player, deviation, current, improved } => {
                assert_eq!(player, Player(0));
                assert_eq!(deviation.choices, vec![(S, E0)]);
                assert_eq!(current, Cost::Finite(rat(10)));
                assert_eq!(improved, Cost::Finite(rat(3)));
            }
            NeCheck::Equilibrium => panic!("deviation expected"),
        }
    }

    #[test]
    fn enumerate_ne_finds_both_equilibria() {
        let game = samples::triangle();
        let nes = enumerate_ne(&game, S, NeMode::All, 1 << 20).unwrap();
        assert_eq!(nes, vec![profile(&game, E0, E1), profile(&game, E2, E3)]);
        let first = enumerate_ne(&game, S, NeMode::First, 1 << 20).unwrap();
        assert_eq!(first, vec![profile(&game, E0, E1)]);
    }

    #[test]
    fn enumerate_ne_respects_the_budget() {
        let game = samples::triangle();
        assert_eq!(
            enumerate_ne(&game, S, NeMode::All, 3),
            Err(Error::BudgetExceeded { budget: 3, required: 4 })
        );
    }

    #[test]
    fn une_examples() {
        let game = samples::triangle();
        assert!(is_une(&game, &profile(&game, E0, E1)));
        assert!(!is_une(&game, &profile(&game, E2, E1)));
        // An NE at s only: (e2, e3) leaves player 2 cycling from a.
        assert!(is_ne(&game, &profile(&game, E2, E3), S));
        assert!(!is_une(&game, &profile(&game, E2, E3)));
    }

    #[test]
    fn every_une_is_a_ne_from_the_source() {
        let game = samples::triangle();
        for profile in ProfileIter::new(&game) {
            if is_une(&game, &profile) {
                assert!(is_ne(&game, &profile, S));
            }
        }
    }

    #[test]
    fn profile_iteration_is_lexicographic() {
        let game = samples::triangle();
        let seen: Vec<StrategyProfile> = ProfileIter::new(&game).collect();
        assert_eq!(
            seen,
            vec![
                profile(&game, E0, E1),
                profile(&game, E0, E3),
                profile(&game, E2, E1),
                profile(&game, E2, E3),
            ]
        );
        assert_eq!(profile_space_size(&game), 4);
        assert_eq!(strategy_space_size(&game, Player(1)), 2);
    }

    #[test]
    fn subdivision_leaves_bipartite_games_alone() {
        let game = samples::triangle();
        let sub = subdivide_to_bipartite(&game);
        assert_eq!(sub, game);
    }

    #[test]
    fn subdivision_splits_same_owner_edges_evenly() {
        // s and a both belong to player 1; a -> t keeps t unowned.
        let g = Digraph::new(
            3,
            VertexId(0),
            VertexId(2),
            vec![(VertexId(0), VertexId(1)), (VertexId(1), VertexId(2))],
        )
        .unwrap();
        let game = SPGame::new(
            g,
            2,
            vec![Some(Player(0)), Some(Player(0)), None],
            vec![vec![rat(4), rat(1)], vec![rat(6), rat(1)]],
        )
        .unwrap();
        let sub = subdivide_to_bipartite(&game);
        assert_eq!(sub.graph().vertex_count(), 4);
        assert_eq!(sub.graph().edge_count(), 3);
        let mid = VertexId(3);
        assert_eq!(sub.owner(mid), Some(Player(1)));
        assert_eq!(sub.graph().edge(EdgeId(0)).head, mid);
        assert_eq!(sub.graph().edge(EdgeId(1)).tail, mid);
        assert_eq!(*sub.cost(EdgeId(0), Player(0)), rat(2));
        assert_eq!(*sub.cost(EdgeId(1), Player(0)), rat(2));
        assert_eq!(*sub.cost(EdgeId(0), Player(1)), rat(3));
        assert_eq!(*sub.cost(EdgeId(1), Player(1)), rat(3));
        // No same-owner non-terminal edge survives.
        for (_, e) in sub.graph().edges() {
            if e.head != sub.graph().t() {
                assert_ne!(sub.owner(e.tail), sub.owner(e.head));
            }
        }
    }

    #[test]
    fn normalized_from_parts_carries_costs_through_a_merge() {
        // s -> d dead end: the edge survives redirected to t with its costs.
        let g = Digraph::new(
            3,
            VertexId(0),
            VertexId(2),
            vec![(VertexId(0), VertexId(2)), (VertexId(0), VertexId(1))],
        )
        .unwrap();
        let (game, report) = SPGame::normalized_from_parts(
            g,
            2,
            vec![Some(Player(0)), Some(Player(1)), None],
            vec![vec![rat(5), rat(7)], vec![rat(6), rat(8)]],
        )
        .unwrap();
        assert_eq!(report.merged_vertices, vec![VertexId(1)]);
        assert_eq!(game.graph().vertex_count(), 2);
        assert_eq!(*game.cost(EdgeId(1), Player(0)), rat(7));
        assert_eq!(*game.cost(EdgeId(1), Player(1)), rat(8));
        // Player 2 lost its only vertex; validate says so.
        assert_eq!(game.validate(), vec![Violation::EmptyPart { player: Player(1) }]);
    }
}
