//! Coherent configurations of transitive permutation groups, their central
//! idempotents, design-orthogonality tests, and witnesses for the
//! synchronisation hierarchy.

pub mod algebra;
pub mod cc;
pub mod constructions;
pub mod delsarte;
pub mod hierarchy;
pub mod io;
pub mod perm;
pub mod rational;
pub mod report;
pub mod vector;

pub use cc::{CcError, CoherentConfiguration, RelationMatrix};
pub use perm::{GeneratorSet, Permutation};
pub use rational::Rational;
pub use vector::RationalVector;
