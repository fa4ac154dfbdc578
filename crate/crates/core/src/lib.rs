//! Statevector quantum-circuit simulation with QFT arithmetic and
//! maximum-likelihood amplitude estimation, built around a Monte Carlo
//! pi-estimation experiment.
//!
//! The crate is organized bottom-up:
//!
//! - [`statevector`]: dense simulation kernel (state allocation, gate
//!   application, measurement probabilities, seeded shot sampling);
//! - [`circuit`]: gate-level IR with inversion, add-control and gate counting;
//! - [`arith`]: builders for QFT, QFT adders, two multipliers and two
//!   squarers;
//! - [`mlqae`]: generic maximum-likelihood amplitude estimation (Grover
//!   operator construction, measurement schedules, likelihood maximization);
//! - [`pi`]: the pi experiment wiring the above together, plus the exact
//!   lattice-counting oracle it is compared against.
//!
//! Simulation and estimation are generic over the floating-point [`Scalar`];
//! the `*64` aliases below are the default double-precision instantiations.

pub mod arith;
pub mod circuit;
pub mod error;
pub mod mlqae;
pub mod pi;
pub mod rng;
pub mod scalar;
pub mod statevector;

pub use circuit::{Circuit, GateCounts, GateKind, GateOp};
pub use error::{Error, Result};
pub use rng::RngStream;
pub use scalar::Scalar;
pub use statevector::{StateVector, DEFAULT_MAX_QUBITS};

/// Double-precision statevector (the default).
pub type StateVector64 = StateVector<f64>;
/// Single-precision statevector for memory-constrained runs.
pub type StateVector32 = StateVector<f32>;
/// Double-precision amplitude estimate.
pub type AmplitudeEstimate64 = mlqae::AmplitudeEstimate<f64>;
/// Double-precision pi-experiment result.
pub type PiEstimate64 = pi::PiEstimate<f64>;
