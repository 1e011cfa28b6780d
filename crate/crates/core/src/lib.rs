//! Exact rational numerics for tilt-stability on threefolds of Picard rank one.
//!
//! Classes are numerical Chern characters `(r, c, d2, d3)` written in powers
//! of the ample generator `H`. Everything is computed in arbitrary-precision
//! rationals; where an ample scale `alpha` would be irrational the `_t`
//! variants take `t = alpha^2` instead.

pub mod charges;
pub mod error;
pub mod inequalities;
pub mod numlattice;
pub mod polycharge;
pub mod rational;
pub mod scenarios;
pub mod walls;

pub use error::{Error, Result};
pub use numlattice::{NumClass, VarietyModel};
pub use rational::{format_q, parse_q, Q};
