//! Finite-field geometry and stored fixtures.

pub mod agl15;
pub mod conic;
pub mod gf;
pub mod graph;
pub mod groups;
pub mod hermitian;

pub use agl15::{agl15_fixture, Agl15Fixture, FixtureCorrupt};
pub use conic::{conic_external_action, ConicAction};
pub use gf::{gf, FiniteField};
pub use graph::Graph;
pub use hermitian::{hermitian_points, HermitianPoints};
