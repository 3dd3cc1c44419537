//! Finite monoid biactions and their reversible parts.
//!
//! The crate works with actions of finitely generated monoids on finite
//! sets, where an action is a commuting pair of a left and a right action.
//! It provides equivariance checks, reversible-core computation and the
//! inverting functors, weak equivalences with pushouts, pullbacks and the
//! 3-arrow factorization, Burnside ring arithmetic for `N^k`, and attractor
//! analysis of semiautomata.

pub mod action;
pub mod attractor;
pub mod burnside;
pub mod cli;
mod error;
pub mod homotopy;
pub mod inverse;
pub mod machines;
pub mod monoid;
mod transform;

pub use action::{EquivariantMap, FiniteBiAction, SubActionFlags, DEFAULT_FUNCSET_LIMIT};
pub use error::{Error, Result, Side};
pub use inverse::{InversionSide, InvertedAction};
pub use monoid::{MonoidKind, MonoidPresentation, TransitionMonoid, Word};
pub use transform::Transform;
