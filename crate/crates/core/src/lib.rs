//! Bounds, constructions and exact searches for large sumfree and
//! l-fold-sumfree subsets of the lattice box `{1..n}^k` and the cube `[0,1]^k`.
//!
//! A set is l-fold-sumfree when no `x_1 + … + x_l` (repetition allowed) of its
//! members is again a member; `l = 2` is the ordinary sumfree case.
//!
//! * [`exact_math`]: simplex volumes, bounded-composition counts, the
//!   multiplicative-wedge volume.
//! * [`constructions`]: stripe sets, cross-section unions, the predicate.
//! * [`bounds`]: lower and upper bounds on the limiting densities.
//! * [`search`]: exact branch-and-bound optimum for tiny boxes.
//! * [`par`]: sequential/parallel execution switch used by all of the above.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod exact_math;
pub mod par;
pub mod rational;
pub mod search;

pub use error::{Error, Result};
pub use par::Exec;
pub use rational::Rational;
