//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by state allocation, gate application and circuit building.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Requested state exceeds the configured amplitude budget.
    #[error(
        "state of {qubits} qubits needs {required_bytes} bytes of amplitudes \
         (limit is {max_qubits} qubits)"
    )]
    ResourceLimit {
        qubits: usize,
        required_bytes: u128,
        max_qubits: usize,
    },

    /// A gate references a qubit outside the state.
    #[error("qubit index {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    /// A gate lists the same qubit as target and control (or twice as target).
    #[error("qubit {qubit} used as both target and control")]
    TargetControlOverlap { qubit: usize },

    /// Circuit and state disagree on register width.
    #[error("circuit spans {circuit} qubits but state has {state}")]
    QubitCountMismatch { circuit: usize, state: usize },

    /// A register (or a control qubit) collides with another register.
    #[error("registers overlap at qubit {qubit}")]
    RegisterOverlap { qubit: usize },

    /// A builder was handed an empty register where at least one qubit is required.
    #[error("register '{name}' must not be empty")]
    EmptyRegister { name: &'static str },

    /// The adder-based squarer needs its dedicated ancilla qubit.
    #[error("missing ancilla qubit")]
    MissingAncilla,

    /// Attempt to add a control that the circuit already references.
    #[error("control qubit {qubit} is already referenced by the circuit")]
    ControlInUse { qubit: usize },

    /// Catch-all for invalid parameter combinations.
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
