//! Engine-wide error type.

use thiserror::Error;

use crate::graph::{EdgeId, Path};
use crate::game::Player;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    /// No directed (s,t)-path exists and normalization cannot repair it.
    #[error("no (s,t)-path exists; the graph is unrepairable")]
    NoPath,

    /// A shortest-path query received a zero or negative edge length.
    #[error("non-positive length on edge {edge:?}; Dijkstra requires strictly positive lengths")]
    NonPositiveLength { edge: EdgeId },

    /// Simple-path enumeration exceeded its cap.
    #[error("more than {cap} simple (s,t)-paths exist")]
    PathExplosion { cap: usize },

    /// A brute-force enumeration would exceed the configured budget.
    #[error("search space of {required} exceeds budget {budget}")]
    BudgetExceeded { budget: u128, required: u128 },

    /// A cycle with non-positive total cost blocks the potential construction.
    #[error("player {player:?} has a directed cycle with non-positive total cost")]
    ConditionIiViolated { player: Player, witness: Path },

    /// The random generator could not satisfy its constraints.
    #[error("random game generation failed after {attempts} attempts")]
    GenerationExhausted { attempts: u32 },

    /// Removing the initial position left no usable subgame.
    #[error("stripping the initial position degenerates the game: {reason}")]
    EmptyGame { reason: String },

    /// A profile supplied as a uniform equilibrium fails the uniform NE test.
    #[error("supplied profile is not a uniform Nash equilibrium of the subgame")]
    NotAUne,

    /// Structurally malformed input (indices out of range, arity mismatches).
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
