//! Bi-shortest-path sets for two-person games.
//!
//! Fix a player `i` and one of its strategies: deleting every non-chosen
//! edge out of `i`'s vertices leaves a residual graph, and the shortest
//! (s,t)-paths there under the *opponent's* lengths contribute to `i`'s
//! shortest-path set. A strategy that strands the play (no residual
//! (s,t)-path) contributes a symbolic path `c` instead. Whether the two
//! players' sets always share a real path is exactly the two-person
//! Nash-solvability question, which is what the campaigns probe.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::{
    enumerate_ne, enumerate_strategies, play, NeMode, Player, SPGame, Strategy, StrategyProfile,
};
use crate::graph::{EdgeId, Path};
use crate::rational::Rational;
use crate::shortest::{
    dijkstra_distances, dijkstra_distances_to, dijkstra_filtered, enumerate_simple_paths,
};
use crate::Budgets;

/// Tie handling for shortest-path set construction.
///
/// `AllMin` collects every minimum-length residual path and is the safe mode
/// for equivalence checks; `LexUnique` keeps only the deterministic
/// tie-broken path, realizing the usual "all path lengths pairwise
/// different" reading without perturbing any costs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieMode {
    AllMin,
    LexUnique,
}

/// One player's shortest-path set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPSet {
    pub player: Player,
    pub paths: BTreeSet<Path>,
    /// Some strategy of the player left no (s,t)-path.
    pub contains_symbolic_c: bool,
}

/// Verdict on the intersection of the two shortest-path sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiSPVerdict {
    /// A real common path exists; the witness is the smallest one.
    StrongIntersect { witness: Path },
    /// Only the symbolic path `c` is shared.
    WeakOnly,
    /// No common element at all, even counting `c`.
    Empty,
}

fn require_two_person(game: &SPGame) -> Result<()> {
    if game.player_count() != 2 {
        return Err(Error::Malformed(format!(
            "shortest-path sets are two-person, got {} players",
            game.player_count()
        )));
    }
    Ok(())
}

fn residual_filter<'a>(
    game: &'a SPGame,
    strategy: &'a Strategy,
) -> impl Fn(EdgeId) -> bool + 'a {
    move |e: EdgeId| {
        let tail = game.graph().edge(e).tail;
        game.owner(tail) != Some(strategy.player) || strategy.choice_at(tail) == Some(e)
    }
}

/// The shortest-path set of `player` in a two-person game: one residual
/// shortest-path computation per strategy of the player, under the
/// opponent's lengths.
pub fn sp_set(game: &SPGame, player: Player, tie_mode: TieMode, budgets: &Budgets) -> Result<SPSet> {
    require_two_person(game)?;
    let g = game.graph();
    let opponent = Player(1 - player.0);
    let lengths = game.player_costs(opponent);
    let space = crate::game::strategy_space_size(game, player);
    if space > budgets.profiles {
        return Err(Error::BudgetExceeded { budget: budgets.profiles, required: space });
    }

    let mut paths = BTreeSet::new();
    let mut contains_symbolic_c = false;
    for strategy in enumerate_strategies(game, player) {
        let allowed = residual_filter(game, &strategy);
        match tie_mode {
            TieMode::LexUnique => {
                match dijkstra_filtered(g, lengths, g.s(), g.t(), &allowed)? {
                    Some((path, _)) => {
                        paths.insert(path);
                    }
                    None => contains_symbolic_c = true,
                }
            }
            TieMode::AllMin => {
                let ds = dijkstra_distances(g, lengths, g.s(), &allowed)?;
                let total = match ds[g.t().0].clone() {
                    Some(d) => d,
                    None => {
                        contains_symbolic_c = true;
                        continue;
                    }
                };
                let dt = dijkstra_distances_to(g, lengths, g.t(), &allowed)?;
                // Edges on some minimum-length residual path form a DAG whose
                // (s,t)-paths are exactly the minimum-length ones.
                let tight = |e: EdgeId| {
                    if !allowed(e) {
                        return false;
                    }
                    let edge = g.edge(e);
                    match (&ds[edge.tail.0], &dt[edge.head.0]) {
                        (Some(a), Some(b)) => a + &lengths[e.0] + b == total,
                        _ => false,
                    }
                };
                paths.extend(enumerate_simple_paths(g, g.s(), g.t(), budgets.paths, &tight)?);
            }
        }
    }
    Ok(SPSet { player, paths, contains_symbolic_c })
}

/// Oracle twin of [`sp_set`]: residual paths come from exhaustive
/// simple-path enumeration and exact minimum filtering, touching neither
/// Dijkstra nor the tight-edge pruning. In `LexUnique` mode the contributed
/// path is the minimum by length, then by edge-id sequence, matching the
/// deterministic tie-break of the fast path.
pub fn sp_set_oracle(
    game: &SPGame,
    player: Player,
    tie_mode: TieMode,
    budgets: &Budgets,
) -> Result<SPSet> {
    require_two_person(game)?;
    let g = game.graph();
    let opponent = Player(1 - player.0);
    let lengths = game.player_costs(opponent);
    let space = crate::game::strategy_space_size(game, player);
    if space > budgets.profiles {
        return Err(Error::BudgetExceeded { budget: budgets.profiles, required: space });
    }

    let mut paths = BTreeSet::new();
    let mut contains_symbolic_c = false;
    for strategy in enumerate_strategies(game, player) {
        let allowed = residual_filter(game, &strategy);
        let all = enumerate_simple_paths(g, g.s(), g.t(), budgets.paths, &allowed)?;
        if all.is_empty() {
            contains_symbolic_c = true;
            continue;
        }
        let best: Rational = all
            .iter()
            .map(|p| p.total_weight(lengths))
            .min()
            .expect("nonempty path list has a minimum");
        let minima = all.into_iter().filter(|p| p.total_weight(lengths) == best);
        match tie_mode {
            TieMode::AllMin => paths.extend(minima),
            TieMode::LexUnique => {
                paths.insert(minima.min().expect("at least one minimum exists"));
            }
        }
    }
    Ok(SPSet { player, paths, contains_symbolic_c })
}

/// Oracle twin of [`bisp_check`], built entirely on [`sp_set_oracle`].
pub fn bisp_check_oracle(
    game: &SPGame,
    tie_mode: TieMode,
    budgets: &Budgets,
) -> Result<BiSPVerdict> {
    let first = sp_set_oracle(game, Player(0), tie_mode, budgets)?;
    let second = sp_set_oracle(game, Player(1), tie_mode, budgets)?;
    Ok(verdict_of(&first, &second))
}

fn verdict_of(first: &SPSet, second: &SPSet) -> BiSPVerdict {
    if let Some(witness) = first.paths.intersection(&second.paths).next() {
        return BiSPVerdict::StrongIntersect { witness: witness.clone() };
    }
    if first.contains_symbolic_c && second.contains_symbolic_c {
        BiSPVerdict::WeakOnly
    } else {
        BiSPVerdict::Empty
    }
}

/// Builds both players' shortest-path sets and reports how they intersect.
/// `Empty` refutes both conjecture variants for this instance; `WeakOnly`
/// refutes only the strong one.
pub fn bisp_check(game: &SPGame, tie_mode: TieMode, budgets: &Budgets) -> Result<BiSPVerdict> {
    let first = sp_set(game, Player(0), tie_mode, budgets)?;
    let second = sp_set(game, Player(1), tie_mode, budgets)?;
    Ok(verdict_of(&first, &second))
}

/// Cross-check of the equivalence "some profile realizes a common shortest
/// path iff the game has a terminal-play Nash equilibrium".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdict: BiSPVerdict,
    /// Terminal-play equilibria at the source, with their play paths.
    pub terminal_ne: Vec<(StrategyProfile, Path)>,
    /// Equilibria whose play from the source cycles (every player at +inf).
    pub cyclic_ne: Vec<StrategyProfile>,
    /// Terminal-NE plays missing from either player's set, if any.
    pub missing_memberships: Vec<(StrategyProfile, Path)>,
}

impl EquivalenceReport {
    /// Existence sides match: a terminal NE exists iff the verdict is a
    /// strong intersection.
    pub fn existence_agrees(&self) -> bool {
        let strong = matches!(self.verdict, BiSPVerdict::StrongIntersect { .. });
        strong == !self.terminal_ne.is_empty()
    }

    /// Full consistency: existence agrees and every terminal-NE play belongs
    /// to both shortest-path sets.
    pub fn consistent(&self) -> bool {
        self.existence_agrees() && self.missing_memberships.is_empty()
    }
}

/// Runs both sides of the equivalence on one game: brute-force equilibrium
/// enumeration at the source against the `AllMin` set intersection.
/// Disagreements are returned in full, never reconciled silently; they are
/// either engine bugs or material for the conjecture.
pub fn ne_bisp_equivalence(game: &SPGame, budgets: &Budgets) -> Result<EquivalenceReport> {
    require_two_person(game)?;
    let s = game.graph().s();
    let first = sp_set(game, Player(0), TieMode::AllMin, budgets)?;
    let second = sp_set(game, Player(1), TieMode::AllMin, budgets)?;
    let verdict = verdict_of(&first, &second);

    let mut terminal_ne = Vec::new();
    let mut cyclic_ne = Vec::new();
    let mut missing_memberships = Vec::new();
    for profile in enumerate_ne(game, s, NeMode::All, budgets.profiles)? {
        let p = play(game, &profile, s);
        if p.is_terminal() {
            let path = Path::new(p.steps().to_vec());
            if !(first.paths.contains(&path) && second.paths.contains(&path)) {
                missing_memberships.push((profile.clone(), path.clone()));
            }
            terminal_ne.push((profile, path));
        } else {
            cyclic_ne.push(profile);
        }
    }
    Ok(EquivalenceReport { verdict, terminal_ne, cyclic_ne, missing_memberships })
}

/// Oracle twin of [`ne_bisp_equivalence`]: equilibrium existence via
/// exhaustive deviation checking and sets via [`sp_set_oracle`]. Used to
/// confirm candidate disagreements before they are reported.
pub fn ne_bisp_equivalence_oracle(game: &SPGame, budgets: &Budgets) -> Result<EquivalenceReport> {
    require_two_person(game)?;
    let s = game.graph().s();
    let first = sp_set_oracle(game, Player(0), TieMode::AllMin, budgets)?;
    let second = sp_set_oracle(game, Player(1), TieMode::AllMin, budgets)?;
    let verdict = verdict_of(&first, &second);

    let required = crate::game::profile_space_size(game);
    if required > budgets.profiles {
        return Err(Error::BudgetExceeded { budget: budgets.profiles, required });
    }
    let mut terminal_ne = Vec::new();
    let mut cyclic_ne = Vec::new();
    let mut missing_memberships = Vec::new();
    for profile in crate::game::ProfileIter::new(game) {
        if !crate::game::check_ne_exhaustive(game, &profile, s).is_ne() {
            continue;
        }
        let p = play(game, &profile, s);
        if p.is_terminal() {
            let path = Path::new(p.steps().to_vec());
            if !(first.paths.contains(&path) && second.paths.contains(&path)) {
                missing_memberships.push((profile.clone(), path.clone()));
            }
            terminal_ne.push((profile, path));
        } else {
            cyclic_ne.push(profile);
        }
    }
    Ok(EquivalenceReport { verdict, terminal_ne, cyclic_ne, missing_memberships })
}
