//! Exact computation with the free nilpotent groups G(n) of class 2: their
//! multipliers, the simplicity of the associated twisted group C*-algebras,
//! the action of Aut G(n) on multiplier parameters, and the extension group
//! built from the dual cocycle.

pub mod automorphism;
pub mod cli;
pub mod cocycle;
pub mod error;
pub mod extension;
pub mod group;
pub mod random;
pub mod scalars;
pub mod simplicity;

pub use cocycle::{CocycleParams, ExponentVector, ParamIndex};
pub use error::{Error, Result};
pub use group::{generators, word_evaluate, Generator, GroupElement, Pair};
pub use scalars::{CircleExponent, IntegerMatrix, IrrationalBasis, LatticeBasis};
