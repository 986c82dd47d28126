//! Ideal simulator of a 5-qubit gate-model quantum computer.
//!
//! The machine keeps qubits in separate registers for as long as
//! possible, merging only when entanglement forces it, so gate matrices
//! stay small and separable states stay legible. Programs can be driven
//! through the [`computer::QuantumComputer`] API directly or written in
//! the hardware-compatible circuit language and run with
//! [`program::execute`].

pub mod collection;
pub mod computer;
pub mod error;
pub mod gate;
pub mod linalg;
pub mod probability;
pub mod program;
pub mod register;
pub mod reorder;
pub mod separability;
pub mod state;

pub use computer::{BlochCoords, QuantumComputer};
pub use error::{Error, Result};
pub use gate::{cnot, lift_single, GateMatrix, StandardGate};
pub use probability::{get_probabilities, pretty_print, ProbabilityVector};
pub use program::{check, execute, parse, Program};
pub use state::{CanonicalState, StateVector};
