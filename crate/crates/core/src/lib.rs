//! Exact-arithmetic engine for finite n-person shortest-path games on
//! digraphs.
//!
//! Players jointly steer a token from a source vertex toward the terminal,
//! each paying per-edge local costs; cyclic plays cost everyone `+inf`. The
//! crate computes plays and effective costs, tests and enumerates Nash and
//! uniform equilibria, builds the per-player shortest-path sets whose
//! intersection characterizes two-person solvability, applies potential
//! reweightings that restore strict cost positivity, and runs seeded search
//! campaigns hunting for counterexamples to the solvability conjectures.
//!
//! All arithmetic is exact rational; every tie is broken deterministically
//! by edge-id order, so campaign results replay bit-for-bit.

pub mod bisp;
pub mod error;
pub mod game;
pub mod graph;
pub mod potential;
pub mod rational;
pub mod samples;
pub mod search;
pub mod shortest;

pub use error::{Error, Result};

/// Caps on the brute-force surfaces. Enumerations fail loudly with
/// [`Error::BudgetExceeded`] or [`Error::PathExplosion`] instead of running
/// away.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Largest profile (or one-player strategy) space that may be enumerated.
    pub profiles: u128,
    /// Largest number of simple paths an enumeration may produce.
    pub paths: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { profiles: 1 << 20, paths: 1_000_000 }
    }
}
