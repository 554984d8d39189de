//! Non-adiabatic holonomic gates in decoherence-free subspaces of the
//! decoupling group `{I, X^N, Y^N, Z^N}`, with dynamical decoupling and
//! pulse-error simulation.
//!
//! Numeric code is generic over [`scalar::Real`]; the aliases below fix the
//! precision for the common cases.

pub mod dd;
pub mod dfs;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod pauli;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Matrix64 = linalg::ComplexMatrix<f64>;
pub type Matrix32 = linalg::ComplexMatrix<f32>;
pub type State64 = linalg::StateVector<f64>;
pub type State32 = linalg::StateVector<f32>;
pub type PauliSum64 = pauli::PauliSum<f64>;
pub type PauliSum32 = pauli::PauliSum<f32>;
pub type Schedule64 = gates::GateSchedule<f64>;
pub type Schedule32 = gates::GateSchedule<f32>;
pub type Basis64 = dfs::LogicalBasis<f64>;
pub type Basis32 = dfs::LogicalBasis<f32>;
