//! Exact rational arithmetic and the extended cost domain.
//!
//! Every weight, cost, distance, and cycle mean in this crate is a
//! `Rational`. There is no floating point anywhere in the engine; ties and
//! sign checks are decided exactly.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

/// Exact rational weight, kept in canonical reduced form by `num_rational`.
///
/// Backed by `i128`, which gives ample headroom for the small integer costs
/// and short paths this engine works with. Overflow checks are enabled in
/// every build profile, so an overflow aborts instead of corrupting a
/// verdict.
pub type Rational = Ratio<i128>;

/// Shorthand for an integer-valued weight.
pub fn rat(n: i128) -> Rational {
    Ratio::from_integer(n)
}

/// Weight `p/q`. Panics if `q == 0`.
pub fn ratio(p: i128, q: i128) -> Rational {
    Ratio::new(p, q)
}

/// Effective cost of a play for one player: a finite exact total for
/// terminal plays, `+inf` for cyclic plays.
///
/// The ordering puts `Infinite` above every finite value and equal to
/// itself, which is exactly the comparison rule used when testing whether a
/// deviation improves on a cyclic play.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cost {
    Finite(Rational),
    Infinite,
}

impl Cost {
    pub fn zero() -> Self {
        Cost::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Cost::Finite(r) => Some(r),
            Cost::Infinite => None,
        }
    }

    /// Finite values add; anything plus `+inf` is `+inf`.
    pub fn saturating_add(&self, rhs: &Rational) -> Cost {
        match self {
            Cost::Finite(r) => Cost::Finite(r + rhs),
            Cost::Infinite => Cost::Infinite,
        }
    }
}

impl From<Rational> for Cost {
    fn from(r: Rational) -> Self {
        Cost::Finite(r)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(r) => write!(f, "{r}"),
            Cost::Infinite => write!(f, "inf"),
        }
    }
}
