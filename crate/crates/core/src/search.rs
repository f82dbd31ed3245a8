//! Conjecture campaigns: seeded instance generation, exhaustive small-family
//! enumeration, the equilibrium-free subgame machinery, and the campaign
//! driver.
//!
//! Any instance that looks like a conjecture counterexample is re-verified
//! through an independent brute-force route before it is reported; a false
//! counterexample claim is the worst failure mode of this engine. Campaign
//! results are a pure function of the configuration: per-instance seeds are
//! derived from the base seed and instance index, and the merge is ordered
//! by index, so reports do not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bisp::{
    bisp_check, bisp_check_oracle, ne_bisp_equivalence, ne_bisp_equivalence_oracle, BiSPVerdict,
    TieMode,
};
use crate::error::{Error, Result};
use crate::game::{
    check_ne, check_ne_exhaustive, effective_cost, enumerate_ne, is_une, play,
    profile_space_size, NeMode, Play, Player, ProfileIter, SPGame, StrategyProfile,
};
use crate::graph::{is_bidirected, normalize, Digraph, Edge, EdgeId, VertexId};
use crate::rational::{rat, Cost, Rational};
use crate::Budgets;

/// Parameters of the random instance model: out-degrees uniform in range,
/// targets uniform over eligible heads, integer costs uniform in range, with
/// structural repairs applied afterwards and degenerate results rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    /// Total vertex count range (terminal included), inclusive.
    pub vertices: (usize, usize),
    /// Out-degree range drawn per non-terminal vertex, inclusive.
    pub out_degree: (usize, usize),
    /// Positive integer cost range, inclusive.
    pub costs: (i64, i64),
    /// Force every non-terminal move to be reversible.
    pub bidirected: bool,
    /// Two-person only: forbid same-owner edges between non-terminal vertices.
    pub bipartite: bool,
    pub seed: u64,
}

impl GenParams {
    pub fn with_seed(&self, seed: u64) -> GenParams {
        GenParams { seed, ..self.clone() }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Malformed("need at least 2 players".into()));
        }
        if self.vertices.0 < self.n + 1 || self.vertices.0 > self.vertices.1 {
            return Err(Error::Malformed(format!(
                "vertex range must start at {} or above and be ordered",
                self.n + 1
            )));
        }
        if self.out_degree.0 < 1 || self.out_degree.0 > self.out_degree.1 {
            return Err(Error::Malformed("out-degree range must be ordered and >= 1".into()));
        }
        if self.costs.0 < 1 || self.costs.0 > self.costs.1 {
            return Err(Error::Malformed("cost range must be ordered and >= 1".into()));
        }
        if self.bipartite && self.n != 2 {
            return Err(Error::Malformed("bipartite generation is two-person".into()));
        }
        Ok(())
    }
}

const GEN_ATTEMPTS: u32 = 256;

/// Draws a normalized, validated game deterministically from the seed.
/// Structurally degenerate draws (no terminal route, a player losing every
/// vertex to normalization, a broken constraint) are rejected and redrawn a
/// bounded number of times.
pub fn gen_random_game(params: &GenParams) -> Result<SPGame> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..GEN_ATTEMPTS {
        if let Some(game) = try_generate(params, &mut rng) {
            return Ok(game);
        }
    }
    Err(Error::GenerationExhausted { attempts: GEN_ATTEMPTS })
}

fn try_generate(params: &GenParams, rng: &mut ChaCha8Rng) -> Option<SPGame> {
    let n = params.n;
    let total = rng.gen_range(params.vertices.0..=params.vertices.1);
    let non_terminal = total - 1;
    let t = total - 1;

    // Ownership: every player gets one forced vertex, the rest are uniform.
    let mut owner: Vec<Option<Player>> = vec![None; total];
    let mut forced: Vec<usize> = (0..non_terminal).collect();
    forced.shuffle(rng);
    for (p, &v) in forced.iter().take(n).enumerate() {
        owner[v] = Some(Player(p));
    }
    for slot in owner.iter_mut().take(non_terminal) {
        if slot.is_none() {
            *slot = Some(Player(rng.gen_range(0..n)));
        }
    }

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for v in 0..non_terminal {
        let heads: Vec<usize> = (0..total)
            .filter(|&h| h != v && (!params.bipartite || h == t || owner[h] != owner[v]))
            .collect();
        if heads.is_empty() {
            return None;
        }
        let degree = rng.gen_range(params.out_degree.0..=params.out_degree.1);
        for _ in 0..degree {
            let h = heads[rng.gen_range(0..heads.len())];
            edges.push((VertexId(v), VertexId(h)));
        }
    }

    if params.bidirected {
        let mut present: BTreeSet<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a.0, b.0)).collect();
        let mut missing = Vec::new();
        for &(a, b) in &edges {
            if a.0 != t && b.0 != t && !present.contains(&(b.0, a.0)) {
                present.insert((b.0, a.0));
                missing.push((b, a));
            }
        }
        edges.extend(missing);
    }

    let costs: Vec<Vec<Rational>> = (0..n)
        .map(|_| {
            (0..edges.len())
                .map(|_| rat(rng.gen_range(params.costs.0..=params.costs.1) as i128))
                .collect()
        })
        .collect();

    let graph = Digraph::new(total, VertexId(0), VertexId(t), edges).ok()?;
    let (game, _) = SPGame::normalized_from_parts(graph, n, owner, costs).ok()?;
    if !game.validate().is_empty() {
        return None;
    }
    if params.bidirected && !is_bidirected(game.graph()) {
        return None;
    }
    if params.bipartite && has_same_owner_edge(&game) {
        return None;
    }
    Some(game)
}

fn has_same_owner_edge(game: &SPGame) -> bool {
    game.graph()
        .edges()
        .any(|(_, e)| e.head != game.graph().t() && game.owner(e.tail) == game.owner(e.head))
}

/// A small structured family: every digraph on `non_terminal` vertices (the
/// source is vertex 0, the terminal comes last) whose per-vertex target sets
/// are non-empty with size at most `max_out_degree`, combined with every
/// ownership partition into `n` non-empty parts and every cost assignment
/// from `costs`. Configurations that normalization would alter are skipped:
/// each of those is equivalent to a smaller configuration the stream visits
/// anyway, so the yielded games are exactly the already-normal members, each
/// once, in canonical odometer order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpace {
    pub non_terminal: usize,
    pub max_out_degree: usize,
    pub costs: Vec<i64>,
    pub n: usize,
}

impl FamilySpace {
    fn validate(&self) -> Result<Vec<i64>> {
        if self.non_terminal < 1 {
            return Err(Error::Malformed("need at least the source vertex".into()));
        }
        if self.max_out_degree < 1 {
            return Err(Error::Malformed("need out-degree at least 1".into()));
        }
        if self.n < 2 {
            return Err(Error::Malformed("need at least 2 players".into()));
        }
        let mut costs = self.costs.clone();
        costs.sort_unstable();
        costs.dedup();
        if costs.is_empty() || costs[0] < 1 {
            return Err(Error::Malformed("cost set must be non-empty and positive".into()));
        }
        Ok(costs)
    }

    /// Non-empty target sets of size at most `max_out_degree` for vertex `v`,
    /// in ascending bitmask order.
    fn target_subsets(&self, v: usize) -> Vec<Vec<VertexId>> {
        let targets: Vec<VertexId> =
            (0..=self.non_terminal).filter(|&h| h != v).map(VertexId).collect();
        let mut subsets = Vec::new();
        for mask in 1u32..(1 << targets.len()) {
            if (mask.count_ones() as usize) <= self.max_out_degree {
                subsets.push(
                    targets
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &h)| h)
                        .collect(),
                );
            }
        }
        subsets
    }

    /// Ownership assignments with every player non-empty, odometer order.
    fn surjective_partitions(&self) -> Vec<Vec<Player>> {
        let (k, n) = (self.non_terminal, self.n);
        let mut out = Vec::new();
        let mut digits = vec![0usize; k];
        loop {
            if (0..n).all(|p| digits.contains(&p)) {
                out.push(digits.iter().map(|&d| Player(d)).collect());
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < n {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

fn size_overflow() -> Error {
    Error::BudgetExceeded { budget: u128::MAX, required: u128::MAX }
}

/// Exact number of raw configurations in the family, before the
/// already-normal filter.
pub fn family_size(space: &FamilySpace) -> Result<u128> {
    let costs = space.validate()?;
    let subsets: Vec<Vec<Vec<VertexId>>> =
        (0..space.non_terminal).map(|v| space.target_subsets(v)).collect();
    let partitions = space.surjective_partitions().len() as u128;
    let base = costs.len() as u128;
    let mut total: u128 = 0;
    let mut structure = vec![0usize; space.non_terminal];
    'outer: loop {
        let edge_count: usize = structure
            .iter()
            .enumerate()
            .map(|(v, &i)| subsets[v][i].len())
            .sum();
        let assignments = base
            .checked_pow((space.n * edge_count) as u32)
            .ok_or_else(size_overflow)?;
        total = total
            .checked_add(partitions.checked_mul(assignments).ok_or_else(size_overflow)?)
            .ok_or_else(size_overflow)?;
        let mut v = space.non_terminal;
        loop {
            if v == 0 {
                break 'outer;
            }
            v -= 1;
            structure[v] += 1;
            if structure[v] < subsets[v].len() {
                break;
            }
            structure[v] = 0;
        }
    }
    Ok(total)
}

/// Streams every game of the family exactly once, in canonical order,
/// invoking `sink` per game. Returns the number of games yielded. Fails
/// upfront when the raw family exceeds `budget`.
pub fn enumerate_games<F: FnMut(SPGame)>(
    space: &FamilySpace,
    budget: u128,
    mut sink: F,
) -> Result<u64> {
    let required = family_size(space)?;
    if required > budget {
        return Err(Error::BudgetExceeded { budget, required });
    }
    let costs = space.validate()?;
    let k = space.non_terminal;
    let t = VertexId(k);
    let subsets: Vec<Vec<Vec<VertexId>>> = (0..k).map(|v| space.target_subsets(v)).collect();
    let partitions = space.surjective_partitions();

    let mut yielded = 0u64;
    let mut structure = vec![0usize; k];
    'structures: loop {
        let edge_list: Vec<(VertexId, VertexId)> = structure
            .iter()
            .enumerate()
            .flat_map(|(v, &i)| subsets[v][i].iter().map(move |&h| (VertexId(v), h)))
            .collect();
        let edge_count = edge_list.len();
        let graph = Digraph::new(k + 1, VertexId(0), t, edge_list)
            .expect("family targets are in range");
        let already_normal = matches!(normalize(&graph), Ok((ng, report)) if report.is_trivial() && ng == graph);
        if already_normal {
            for partition in &partitions {
                let mut owner: Vec<Option<Player>> =
                    partition.iter().map(|&p| Some(p)).collect();
                owner.push(None);
                let mut digits = vec![0usize; space.n * edge_count];
                loop {
                    let table: Vec<Vec<Rational>> = (0..space.n)
                        .map(|p| {
                            (0..edge_count)
                                .map(|e| rat(costs[digits[p * edge_count + e]] as i128))
                                .collect()
                        })
                        .collect();
                    let game = SPGame::new(graph.clone(), space.n, owner.clone(), table)
                        .expect("family construction is structurally sound");
                    debug_assert!(game.validate().is_empty());
                    yielded += 1;
                    sink(game);
                    let mut i = digits.len();
                    let exhausted = loop {
                        if i == 0 {
                            break true;
                        }
                        i -= 1;
                        digits[i] += 1;
                        if digits[i] < costs.len() {
                            break false;
                        }
                        digits[i] = 0;
                    };
                    if exhausted {
                        break;
                    }
                }
            }
        }
        let mut v = k;
        loop {
            if v == 0 {
                break 'structures;
            }
            v -= 1;
            structure[v] += 1;
            if structure[v] < subsets[v].len() {
                break;
            }
            structure[v] = 0;
        }
    }
    Ok(yielded)
}

/// The subgame left after eliminating the initial position: its incident
/// edges go, vertices stranded without moves are merged into the terminal,
/// and isolated vertices are dropped. No source-relative trimming is applied
/// because every remaining vertex still serves as an initial position for
/// the uniform-equilibrium check. The designated source becomes the smallest
/// surviving former successor of the removed vertex.
pub fn strip_initial(game: &SPGame) -> Result<SPGame> {
    let g = game.graph();
    let v0 = g.s();
    let successors: Vec<VertexId> = g.out_edges(v0).iter().map(|&e| g.edge(e).head).collect();

    let n_v = g.vertex_count();
    let mut alive = vec![true; n_v];
    alive[v0.0] = false;
    let mut work: Vec<Option<Edge>> = g
        .edges()
        .map(|(_, e)| (e.tail != v0 && e.head != v0).then_some(e))
        .collect();

    loop {
        let mut changed = false;
        let mut out_deg = vec![0usize; n_v];
        for e in work.iter().flatten() {
            out_deg[e.tail.0] += 1;
        }
        for v in 0..n_v {
            let vid = VertexId(v);
            if !alive[v] || vid == g.t() || out_deg[v] > 0 {
                continue;
            }
            if work.iter().flatten().any(|e| e.head == vid) {
                for slot in work.iter_mut() {
                    if let Some(e) = slot {
                        if e.head == vid {
                            e.head = g.t();
                        }
                    }
                }
            }
            alive[v] = false;
            changed = true;
        }
        if !changed {
            break;
        }
    }

    if !work.iter().flatten().any(|e| e.head == g.t()) {
        return Err(Error::EmptyGame { reason: "no move into the terminal remains".into() });
    }

    let mut vertex_map = vec![None; n_v];
    let mut next = 0usize;
    for v in 0..n_v {
        if alive[v] {
            vertex_map[v] = Some(VertexId(next));
            next += 1;
        }
    }
    let new_t = vertex_map[g.t().0].expect("terminal survives");
    let new_s = successors
        .iter()
        .filter(|&&v| v != g.t())
        .filter_map(|&v| vertex_map[v.0])
        .min()
        .or_else(|| (0..next).map(VertexId).find(|&v| v != new_t))
        .ok_or_else(|| Error::EmptyGame { reason: "no non-terminal position remains".into() })?;

    let mut edges = Vec::new();
    let mut costs: Vec<Vec<Rational>> = vec![Vec::new(); game.player_count()];
    for (i, e) in work.iter().enumerate() {
        if let Some(e) = e {
            edges.push((
                vertex_map[e.tail.0].expect("tail alive"),
                vertex_map[e.head.0].expect("head alive"),
            ));
            for p in game.players() {
                costs[p.0].push(game.cost(EdgeId(i), p).clone());
            }
        }
    }
    let mut owner = vec![None; next];
    for v in 0..n_v {
        if let Some(nv) = vertex_map[v] {
            if nv != new_t {
                owner[nv.0] = game.owner(VertexId(v));
            }
        }
    }
    for p in game.players() {
        if !owner.contains(&Some(p)) {
            return Err(Error::EmptyGame { reason: format!("player {p} loses every position") });
        }
    }

    let graph = Digraph::new(next, new_s, new_t, edges)
        .map_err(|_| Error::EmptyGame { reason: "no usable position remains".into() })?;
    SPGame::new(graph, game.player_count(), owner, costs)
}

/// Extends a subgame with a fresh initial vertex by backward induction: the
/// owner of the new vertex picks the move minimizing its own move cost plus
/// its effective cost of the supplied uniform equilibrium's play from the
/// move's target. The returned profile is a Nash equilibrium of the extended
/// game at the new initial vertex.
pub fn extend_with_initial(
    sub: &SPGame,
    une: &StrategyProfile,
    new_moves: &[(Vec<Rational>, VertexId)],
    owner_of_v0: Player,
) -> Result<(SPGame, StrategyProfile)> {
    if !is_une(sub, une) {
        return Err(Error::NotAUne);
    }
    if new_moves.is_empty() {
        return Err(Error::Malformed("at least one move from the new vertex required".into()));
    }
    if owner_of_v0.0 >= sub.player_count() {
        return Err(Error::Malformed("owner of the new vertex out of range".into()));
    }
    let g = sub.graph();
    for (cost, target) in new_moves {
        if cost.len() != sub.player_count() {
            return Err(Error::Malformed("one cost entry per player required".into()));
        }
        if cost.iter().any(|c| *c <= Rational::from_integer(0)) {
            return Err(Error::Malformed("new move costs must be positive".into()));
        }
        if target.0 >= g.vertex_count() {
            return Err(Error::Malformed(format!("target {target} out of range")));
        }
    }

    let v0 = VertexId(g.vertex_count());
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().map(|(_, e)| (e.tail, e.head)).collect();
    let mut costs: Vec<Vec<Rational>> =
        sub.players().map(|p| sub.player_costs(p).to_vec()).collect();
    for (cost, target) in new_moves {
        edges.push((v0, *target));
        for p in sub.players() {
            costs[p.0].push(cost[p.0].clone());
        }
    }
    let mut owner: Vec<Option<Player>> =
        (0..g.vertex_count()).map(|v| sub.owner(VertexId(v))).collect();
    owner.push(Some(owner_of_v0));

    // Ties go to the earliest move (smallest new edge id).
    let mut best: Option<(Cost, usize)> = None;
    for (i, (cost, target)) in new_moves.iter().enumerate() {
        let continuation = if *target == g.t() {
            Cost::zero()
        } else {
            effective_cost(sub, &play(sub, une, *target))[owner_of_v0.0].clone()
        };
        let total = continuation.saturating_add(&cost[owner_of_v0.0]);
        if best.as_ref().map_or(true, |(b, _)| total < *b) {
            best = Some((total, i));
        }
    }
    let chosen = EdgeId(g.edge_count() + best.expect("new_moves is non-empty").1);

    let graph = Digraph::new(g.vertex_count() + 1, v0, g.t(), edges)?;
    let extended = SPGame::new(graph, sub.player_count(), owner, costs)?;
    let mut choice: Vec<Option<EdgeId>> = une.choices().to_vec();
    choice.push(Some(chosen));
    let profile = StrategyProfile::new(&extended, choice)?;
    debug_assert!(check_ne(&extended, &profile, v0).is_ne());
    Ok((extended, profile))
}

/// Outcome of checking one game against "an equilibrium-free game leaves a
/// uniform-equilibrium-free subgame once the initial position is removed".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyVerdict {
    /// The game is NE-free and the stripped subgame has no uniform NE.
    Holds,
    /// The game is NE-free yet the stripped subgame has a uniform NE.
    Violated { une: StrategyProfile, subgame: SPGame },
    /// The implication is not exercised: the game has an NE, or stripping
    /// degenerates the subgame.
    NotApplicable { reason: String },
}

/// Brute-force check of the NE-free implies UNE-free-subgame property.
pub fn check_ne_free_implies_une_free(
    game: &SPGame,
    budgets: &Budgets,
) -> Result<PropertyVerdict> {
    let s = game.graph().s();
    if !enumerate_ne(game, s, NeMode::First, budgets.profiles)?.is_empty() {
        return Ok(PropertyVerdict::NotApplicable { reason: "game has a NE".into() });
    }
    let sub = match strip_initial(game) {
        Ok(sub) => sub,
        Err(Error::EmptyGame { reason }) => {
            return Ok(PropertyVerdict::NotApplicable {
                reason: format!("subgame degenerates: {reason}"),
            });
        }
        Err(e) => return Err(e),
    };
    let required = profile_space_size(&sub);
    if required > budgets.profiles {
        return Err(Error::BudgetExceeded { budget: budgets.profiles, required });
    }
    for profile in ProfileIter::new(&sub) {
        if is_une(&sub, &profile) {
            return Ok(PropertyVerdict::Violated { une: profile, subgame: sub });
        }
    }
    Ok(PropertyVerdict::Holds)
}

/// Which conjecture a campaign probes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// Two-person: the shortest-path sets share a real path.
    BispStrong,
    /// Two-person: the sets share a real path or both hold the symbolic one.
    BispWeak,
    /// Two-person: terminal-NE existence matches the set intersection.
    NeBispEquiv,
    /// Any n: some NE exists.
    NsNPerson,
    /// Any n on bidirected digraphs: some NE exists.
    NsBidirected,
    /// NE-free games leave UNE-free subgames.
    NeFreeUneFree,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::BispStrong => "bisp_strong",
            CheckKind::BispWeak => "bisp_weak",
            CheckKind::NeBispEquiv => "ne_bisp_equiv",
            CheckKind::NsNPerson => "ns_nperson",
            CheckKind::NsBidirected => "ns_bidirected",
            CheckKind::NeFreeUneFree => "ne_free_une_free",
        }
    }

    fn two_person(self) -> bool {
        matches!(
            self,
            CheckKind::BispStrong | CheckKind::BispWeak | CheckKind::NeBispEquiv
        )
    }
}

/// Where campaign instances come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceSource {
    Random { params: GenParams, count: u64 },
    Exhaustive { space: FamilySpace },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub check: CheckKind,
    pub source: InstanceSource,
    pub workers: usize,
    pub budgets: Budgets,
    /// Tie handling for the set-based checks.
    pub tie_mode: TieMode,
}

/// Per-instance verdict, folded into the report tallies by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceVerdict {
    StrongIntersect,
    WeakOnly,
    Empty,
    EquivalenceConsistent,
    EquivalenceDisagrees,
    /// Some equilibrium exists; the flag classifies the play of the first
    /// one in enumeration order (a cyclic first find does not preclude
    /// terminal equilibria elsewhere in the profile space).
    HasNe { terminal_play: bool },
    NeFree,
    PropertyHolds,
    PropertyNotApplicable { reason: String },
    PropertyViolated,
    /// The fast path and the brute-force oracle disagreed: an engine bug
    /// surfaced by double-verification, never silently dropped.
    OracleDisagreement { detail: String },
    /// The instance was not checked (per-instance budget or generation
    /// failure); recorded rather than fatal.
    Skipped { error: String },
}

impl InstanceVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            InstanceVerdict::StrongIntersect => "strong_intersect",
            InstanceVerdict::WeakOnly => "weak_only",
            InstanceVerdict::Empty => "empty",
            InstanceVerdict::EquivalenceConsistent => "equiv_consistent",
            InstanceVerdict::EquivalenceDisagrees => "equiv_disagrees",
            InstanceVerdict::HasNe { terminal_play: true } => "has_ne_terminal",
            InstanceVerdict::HasNe { terminal_play: false } => "has_ne_cyclic",
            InstanceVerdict::NeFree => "ne_free",
            InstanceVerdict::PropertyHolds => "holds",
            InstanceVerdict::PropertyNotApplicable { .. } => "not_applicable",
            InstanceVerdict::PropertyViolated => "violated",
            InstanceVerdict::OracleDisagreement { .. } => "oracle_disagreement",
            InstanceVerdict::Skipped { .. } => "skipped",
        }
    }

    /// True when this verdict refutes the campaign's conjecture.
    pub fn is_counterexample(&self, check: CheckKind) -> bool {
        match check {
            CheckKind::BispStrong => {
                matches!(self, InstanceVerdict::WeakOnly | InstanceVerdict::Empty)
            }
            CheckKind::BispWeak => matches!(self, InstanceVerdict::Empty),
            CheckKind::NeBispEquiv => matches!(self, InstanceVerdict::EquivalenceDisagrees),
            CheckKind::NsNPerson | CheckKind::NsBidirected => {
                matches!(self, InstanceVerdict::NeFree)
            }
            CheckKind::NeFreeUneFree => matches!(self, InstanceVerdict::PropertyViolated),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceRecord {
    pub index: u64,
    /// Derived seed for random sources; absent for exhaustive streams.
    pub seed: Option<u64>,
    pub verdict: InstanceVerdict,
    /// Wall-clock microseconds spent on this instance. Not part of any
    /// determinism comparison.
    pub micros: u64,
}

/// A conjecture-refuting instance, shipped with the full game for replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub index: u64,
    pub seed: Option<u64>,
    pub game: SPGame,
    pub verdict: InstanceVerdict,
    /// The independent oracle reproduced the verdict.
    pub confirmed: bool,
}

#[derive(Clone, Debug)]
pub struct CampaignReport {
    pub check: CheckKind,
    pub base_seed: Option<u64>,
    pub instances_run: u64,
    pub tallies: BTreeMap<String, u64>,
    pub records: Vec<InstanceRecord>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl CampaignReport {
    /// Equality of everything except wall-clock timing.
    pub fn same_outcome(&self, other: &CampaignReport) -> bool {
        let key = |r: &InstanceRecord| (r.index, r.seed, r.verdict.clone());
        self.check == other.check
            && self.base_seed == other.base_seed
            && self.instances_run == other.instances_run
            && self.tallies == other.tallies
            && self.records.len() == other.records.len()
            && self
                .records
                .iter()
                .zip(&other.records)
                .all(|(a, b)| key(a) == key(b))
            && self.counterexamples == other.counterexamples
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-instance seed, independent of worker scheduling.
pub fn instance_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(index.wrapping_add(1)))
}

/// Index-ordered parallel map over `0..count` with a fixed worker count.
/// Results merge by index, so the output is scheduling-independent.
fn parallel_map<T, F>(count: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    if workers <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    let next = AtomicU64::new(0);
    let chunks: Vec<Vec<(u64, T)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= count {
                            break;
                        }
                        local.push((i, f(i)));
                    }
                    local
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut all: Vec<(u64, T)> = chunks.into_iter().flatten().collect();
    all.sort_by_key(|&(i, _)| i);
    all.into_iter().map(|(_, t)| t).collect()
}

/// Runs the configured check over every instance, re-verifies candidate
/// counterexamples through the independent oracles, and aggregates a
/// deterministic report.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    let started = Instant::now();
    if config.workers == 0 {
        return Err(Error::Malformed("need at least one worker".into()));
    }
    let (count, base_seed, family): (u64, Option<u64>, Option<Vec<SPGame>>) =
        match &config.source {
            InstanceSource::Random { params, count } => {
                params.validate()?;
                if config.check.two_person() && params.n != 2 {
                    return Err(Error::Malformed(format!(
                        "{} is a two-person check",
                        config.check.name()
                    )));
                }
                if config.check == CheckKind::NsBidirected && !params.bidirected {
                    return Err(Error::Malformed(
                        "ns_bidirected requires bidirected generation".into(),
                    ));
                }
                (*count, Some(params.seed), None)
            }
            InstanceSource::Exhaustive { space } => {
                if config.check.two_person() && space.n != 2 {
                    return Err(Error::Malformed(format!(
                        "{} is a two-person check",
                        config.check.name()
                    )));
                }
                let mut games = Vec::new();
                enumerate_games(space, config.budgets.profiles, |g| games.push(g))?;
                (games.len() as u64, None, Some(games))
            }
        };

    let eval = |index: u64| -> (Option<u64>, InstanceVerdict, Option<SPGame>, u64) {
        let instance_started = Instant::now();
        let (seed, game) = match (&config.source, &family) {
            (InstanceSource::Random { params, .. }, _) => {
                let seed = instance_seed(params.seed, index);
                match gen_random_game(&params.with_seed(seed)) {
                    Ok(g) => (Some(seed), g),
                    Err(e) => {
                        return (
                            Some(seed),
                            InstanceVerdict::Skipped { error: e.to_string() },
                            None,
                            instance_started.elapsed().as_micros() as u64,
                        )
                    }
                }
            }
            (InstanceSource::Exhaustive { .. }, Some(games)) => {
                (None, games[index as usize].clone())
            }
            _ => unreachable!("family materialized for exhaustive sources"),
        };
        let verdict = evaluate_instance(config, &game);
        let keep = verdict.is_counterexample(config.check)
            || matches!(verdict, InstanceVerdict::OracleDisagreement { .. });
        (
            seed,
            verdict,
            keep.then_some(game),
            instance_started.elapsed().as_micros() as u64,
        )
    };

    let results = parallel_map(count, config.workers, eval);

    let mut tallies: BTreeMap<String, u64> = BTreeMap::new();
    let mut records = Vec::with_capacity(results.len());
    let mut counterexamples = Vec::new();
    for (index, (seed, verdict, game, micros)) in results.into_iter().enumerate() {
        *tallies.entry(verdict.label().to_string()).or_insert(0) += 1;
        if let Some(game) = game {
            counterexamples.push(Counterexample {
                index: index as u64,
                seed,
                game,
                verdict: verdict.clone(),
                confirmed: !matches!(verdict, InstanceVerdict::OracleDisagreement { .. }),
            });
        }
        records.push(InstanceRecord { index: index as u64, seed, verdict, micros });
    }
    Ok(CampaignReport {
        check: config.check,
        base_seed,
        instances_run: count,
        tallies,
        records,
        counterexamples,
        elapsed: started.elapsed(),
    })
}

/// One instance through one check, including oracle re-verification of any
/// candidate counterexample.
fn evaluate_instance(config: &CampaignConfig, game: &SPGame) -> InstanceVerdict {
    let budgets = &config.budgets;
    match config.check {
        CheckKind::BispStrong | CheckKind::BispWeak => {
            let fast = match bisp_check(game, config.tie_mode, budgets) {
                Ok(v) => v,
                Err(e) => return InstanceVerdict::Skipped { error: e.to_string() },
            };
            let verdict = match &fast {
                BiSPVerdict::StrongIntersect { .. } => InstanceVerdict::StrongIntersect,
                BiSPVerdict::WeakOnly => InstanceVerdict::WeakOnly,
                BiSPVerdict::Empty => InstanceVerdict::Empty,
            };
            if !verdict.is_counterexample(config.check) {
                return verdict;
            }
            match bisp_check_oracle(game, config.tie_mode, budgets) {
                Ok(oracle) if oracle == fast => verdict,
                Ok(oracle) => InstanceVerdict::OracleDisagreement {
                    detail: format!(
                        "set construction said {fast:?}, enumeration oracle said {oracle:?}"
                    ),
                },
                Err(e) => InstanceVerdict::Skipped { error: e.to_string() },
            }
        }
        CheckKind::NeBispEquiv => {
            let report = match ne_bisp_equivalence(game, budgets) {
                Ok(r) => r,
                Err(e) => return InstanceVerdict::Skipped { error: e.to_string() },
            };
            if report.consistent() {
                return InstanceVerdict::EquivalenceConsistent;
            }
            match ne_bisp_equivalence_oracle(game, budgets) {
                Ok(oracle) if !oracle.consistent() => InstanceVerdict::EquivalenceDisagrees,
                Ok(_) => InstanceVerdict::OracleDisagreement {
                    detail: "equivalence failed on the fast path only".into(),
                },
                Err(e) => InstanceVerdict::Skipped { error: e.to_string() },
            }
        }
        CheckKind::NsNPerson | CheckKind::NsBidirected => {
            let s = game.graph().s();
            let found = match enumerate_ne(game, s, NeMode::First, budgets.profiles) {
                Ok(f) => f,
                Err(e) => return InstanceVerdict::Skipped { error: e.to_string() },
            };
            if let Some(ne) = found.first() {
                let terminal = matches!(play(game, ne, s), Play::Terminal { .. });
                return InstanceVerdict::HasNe { terminal_play: terminal };
            }
            // Candidate NE-free game: confirm with exhaustive deviation
            // checking over the full profile space.
            let oracle_ne =
                ProfileIter::new(game).find(|p| check_ne_exhaustive(game, p, s).is_ne());
            match oracle_ne {
                None => InstanceVerdict::NeFree,
                Some(_) => InstanceVerdict::OracleDisagreement {
                    detail: "fast path found no NE but the exhaustive oracle did".into(),
                },
            }
        }
        CheckKind::NeFreeUneFree => match check_ne_free_implies_une_free(game, budgets) {
            Err(e) => InstanceVerdict::Skipped { error: e.to_string() },
            Ok(PropertyVerdict::Holds) => InstanceVerdict::PropertyHolds,
            Ok(PropertyVerdict::NotApplicable { reason }) => {
                InstanceVerdict::PropertyNotApplicable { reason }
            }
            Ok(PropertyVerdict::Violated { une, subgame }) => {
                let confirmed = subgame
                    .graph()
                    .non_terminal_vertices()
                    .all(|v0| check_ne_exhaustive(&subgame, &une, v0).is_ne());
                if confirmed {
                    InstanceVerdict::PropertyViolated
                } else {
                    InstanceVerdict::OracleDisagreement {
                        detail: "subgame UNE failed exhaustive re-verification".into(),
                    }
                }
            }
        },
    }
}
