//! Cost-function conditions and the potential transformation.
//!
//! Strict positivity of every local cost looks stronger than strict
//! positivity of every directed cycle's total cost, but the two are
//! equivalent: given positive cycles, reweighting each edge by a vertex
//! potential difference restores per-edge positivity without changing the
//! game, because cycle sums are preserved exactly and every (s,t)-path
//! shifts by the same constant.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game::{Player, SPGame};
use crate::graph::{EdgeId, Path};
use crate::rational::{rat, ratio, Cost, Rational};
use crate::shortest::{min_mean_cycle, shortest_to_target};

/// A vertex potential for one player, normalized to zero at the terminal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    pub player: Player,
    /// One value per vertex.
    pub x: Vec<Rational>,
}

/// Per-edge positivity: true iff every cost entry of every player is
/// strictly positive. Violations name the edge and player.
pub fn check_condition_i(game: &SPGame) -> (bool, Vec<(EdgeId, Player)>) {
    let mut violations = Vec::new();
    for p in game.players() {
        for (e, _) in game.graph().edges() {
            if *game.cost(e, p) <= Rational::zero() {
                violations.push((e, p));
            }
        }
    }
    (violations.is_empty(), violations)
}

/// Per-cycle positivity for one player: true iff the graph is acyclic or its
/// minimum cycle mean under that player's costs is strictly positive. On
/// failure the witness is a directed cycle with total cost at most zero.
pub fn check_condition_ii(game: &SPGame, player: Player) -> (bool, Option<Path>) {
    match min_mean_cycle(game.graph(), game.player_costs(player)) {
        None => (true, None),
        Some((mean, cycle)) => {
            if mean > Rational::zero() {
                (true, None)
            } else {
                (false, Some(cycle))
            }
        }
    }
}

/// Builds a potential that makes every transformed cost of `player` strictly
/// positive, given that all of the player's cycles have positive total cost.
///
/// With `mu` the minimum cycle mean (taken as `+inf` on acyclic graphs) any
/// margin `0 < eps < mu` keeps every cycle positive under the reduced
/// weights `r(e) - eps`; `eps = mu/2` (or 1 when acyclic) is the
/// deterministic choice. Shortest reduced-weight distances `d` to the
/// terminal then exist, and `x = -d` yields transformed costs
/// `r(e) - d(tail) + d(head) >= eps` by the shortest-path triangle
/// inequality.
pub fn gallai_potential(game: &SPGame, player: Player) -> Result<Potential> {
    let g = game.graph();
    let weights = game.player_costs(player);
    let eps = match min_mean_cycle(g, weights) {
        None => rat(1),
        Some((mu, witness)) => {
            if mu <= Rational::zero() {
                return Err(Error::ConditionIiViolated { player, witness });
            }
            mu * ratio(1, 2)
        }
    };
    let reduced: Vec<Rational> = weights.iter().map(|w| w - &eps).collect();
    let dist = shortest_to_target(g, &reduced)?;
    let mut x = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        match &dist[v.0] {
            Cost::Finite(d) => x.push(-d.clone()),
            Cost::Infinite => return Err(Error::NoPath),
        }
    }
    let potential = Potential { player, x };
    debug_assert!(transformed_costs(game, &potential).iter().all(|c| *c >= eps));
    Ok(potential)
}

fn transformed_costs(game: &SPGame, potential: &Potential) -> Vec<Rational> {
    game.graph()
        .edges()
        .map(|(id, e)| {
            game.cost(id, potential.player) + &potential.x[e.tail.0] - &potential.x[e.head.0]
        })
        .collect()
}

/// Rewrites every player's costs by that player's potential:
/// `r'(e) = r(e) + x(tail) - x(head)`. Graph and ownership are untouched;
/// the result may violate per-edge positivity, which callers check.
pub fn apply_potentials(game: &SPGame, potentials: &[Potential]) -> Result<SPGame> {
    if potentials.len() != game.player_count() {
        return Err(Error::Malformed("one potential per player required".into()));
    }
    for (i, p) in potentials.iter().enumerate() {
        if p.player != Player(i) {
            return Err(Error::Malformed(format!(
                "potential {i} labelled for {}",
                p.player
            )));
        }
        if p.x.len() != game.graph().vertex_count() {
            return Err(Error::Malformed("potential must cover every vertex".into()));
        }
    }
    let costs = potentials.iter().map(|p| transformed_costs(game, p)).collect();
    game.with_costs(costs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{enumerate_ne, NeMode};
    use crate::samples;
    use crate::shortest::{enumerate_simple_cycles, enumerate_st_paths};

    fn with_player1_costs(costs: [i128; 4]) -> SPGame {
        let game = samples::triangle();
        let mut table: Vec<Vec<Rational>> =
            game.players().map(|p| game.player_costs(p).to_vec()).collect();
        table[0] = costs.iter().map(|&c| rat(c)).collect();
        game.with_costs(table).unwrap()
    }

    #[test]
    fn condition_i_examples() {
        let (ok, violations) = check_condition_i(&samples::triangle());
        assert!(ok);
        assert!(violations.is_empty());

        let bad = with_player1_costs([1, 2, 10, 0]);
        let (ok, violations) = check_condition_i(&bad);
        assert!(!ok);
        assert_eq!(violations, vec![(EdgeId(3), Player(0))]);
    }

    #[test]
    fn condition_ii_examples() {
        let (ok, _) = check_condition_ii(&samples::triangle(), Player(0));
        assert!(ok);

        // Cycle s -> a -> s now sums to 1 + (-1) = 0.
        let bad = with_player1_costs([1, 2, 10, -1]);
        let (ok, witness) = check_condition_ii(&bad, Player(0));
        assert!(!ok);
        let cycle = witness.unwrap();
        assert_eq!(cycle.edges, vec![EdgeId(0), EdgeId(3)]);
        assert_eq!(cycle.total_weight(bad.player_costs(Player(0))), rat(0));
        // Player 2 is untouched.
        assert!(check_condition_ii(&bad, Player(1)).0);
    }

    #[test]
    fn gallai_restores_positivity_on_a_negative_edge() {
        // Cycle sum 3 + (-2) = 1 > 0, so a potential exists.
        let game = with_player1_costs([3, 1, 1, -2]);
        let p = gallai_potential(&game, Player(0)).unwrap();
        assert_eq!(p.x, vec![ratio(-3, 4), ratio(3, 2), rat(0)]);
        let transformed = transformed_costs(&game, &p);
        assert_eq!(
            transformed,
            vec![ratio(3, 4), ratio(5, 2), ratio(1, 4), ratio(1, 4)]
        );
        // Margin is half the minimum cycle mean, 1/4 here.
        assert!(transformed.iter().all(|c| *c >= ratio(1, 4)));
    }

    #[test]
    fn gallai_rejects_a_zero_cycle() {
        let game = with_player1_costs([1, 2, 10, -1]);
        assert!(matches!(
            gallai_potential(&game, Player(0)),
            Err(Error::ConditionIiViolated { player: Player(0), .. })
        ));
    }

    #[test]
    fn gallai_on_a_positive_game_still_yields_a_valid_potential() {
        let game = samples::triangle();
        for player in game.players() {
            let p = gallai_potential(&game, player).unwrap();
            assert!(transformed_costs(&game, &p).iter().all(|c| *c > Rational::zero()));
        }
    }

    #[test]
    fn apply_potentials_matches_hand_arithmetic() {
        let game = samples::triangle();
        let x = vec![rat(1), rat(0), rat(0)];
        let ps = vec![
            Potential { player: Player(0), x: x.clone() },
            Potential { player: Player(1), x },
        ];
        let out = apply_potentials(&game, &ps).unwrap();
        let expect = |e: usize, a: i128, b: i128| {
            assert_eq!(*out.cost(EdgeId(e), Player(0)), rat(a));
            assert_eq!(*out.cost(EdgeId(e), Player(1)), rat(b));
        };
        expect(0, 2, 2);
        expect(1, 2, 3);
        expect(2, 11, 11);
        expect(3, 0, 0);
    }

    #[test]
    fn zero_potentials_change_nothing() {
        let game = samples::triangle();
        let zero = vec![rat(0); 3];
        let ps: Vec<Potential> = game
            .players()
            .map(|player| Potential { player, x: zero.clone() })
            .collect();
        assert_eq!(apply_potentials(&game, &ps).unwrap(), game);
    }

    #[test]
    fn transformation_preserves_cycle_sums_and_shifts_path_sums() {
        let game = samples::triangle();
        let ps = vec![
            Potential { player: Player(0), x: vec![rat(1), rat(-2), rat(0)] },
            Potential { player: Player(1), x: vec![rat(3), rat(5), rat(0)] },
        ];
        let out = apply_potentials(&game, &ps).unwrap();
        let g = game.graph();
        for player in game.players() {
            let before = game.player_costs(player);
            let after = out.player_costs(player);
            for cycle in enumerate_simple_cycles(g, 100).unwrap() {
                assert_eq!(cycle.total_weight(before), cycle.total_weight(after));
            }
            let shift = &ps[player.0].x[g.s().0] - &ps[player.0].x[g.t().0];
            for path in enumerate_st_paths(g, 100).unwrap() {
                assert_eq!(path.total_weight(after) - path.total_weight(before), shift);
            }
        }
    }

    #[test]
    fn ne_set_is_invariant_under_the_transformation() {
        let game = samples::triangle();
        // This potential drives r(e3) to zero, forcing the exhaustive
        // best-response route on the transformed side.
        let x = vec![rat(1), rat(0), rat(0)];
        let ps = vec![
            Potential { player: Player(0), x: x.clone() },
            Potential { player: Player(1), x },
        ];
        let out = apply_potentials(&game, &ps).unwrap();
        assert!(!out.positive_for(Player(0)));
        let s = game.graph().s();
        let before = enumerate_ne(&game, s, NeMode::All, 1 << 20).unwrap();
        let after = enumerate_ne(&out, s, NeMode::All, 1 << 20).unwrap();
        assert_eq!(before, after);
    }
}
