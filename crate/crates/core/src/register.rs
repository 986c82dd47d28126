//! A named, ordered group of qubits owning one shared state vector.

use crate::state::{StateVector, STATE_TOL};

/// A quantum register: the qubits it holds (in tensor order), their
/// joint state, and an optional snapshot of the state as it was before
/// the first measurement collapsed it.
#[derive(Debug, Clone)]
pub struct QuantumRegister {
    qubit_names: Vec<String>,
    state: StateVector,
    noop: Option<StateVector>,
}

impl QuantumRegister {
    pub fn new(qubit_names: Vec<String>, state: StateVector) -> Self {
        assert_eq!(qubit_names.len(), state.qubit_count(), "name count must match state size");
        let mut seen = qubit_names.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), qubit_names.len(), "qubit names must be distinct");
        Self { qubit_names, state, noop: None }
    }

    /// Fresh single-qubit register in |0>.
    pub fn singleton(name: impl Into<String>) -> Self {
        Self::new(vec![name.into()], StateVector::zero(1))
    }

    pub fn num_qubits(&self) -> usize {
        self.qubit_names.len()
    }

    pub fn qubit_names(&self) -> &[String] {
        &self.qubit_names
    }

    pub fn contains(&self, name: &str) -> bool {
        self.qubit_names.iter().any(|n| n == name)
    }

    /// Tensor position of `name` inside this register.
    pub fn position_of(&self, name: &str) -> Option<usize> {
        self.qubit_names.iter().position(|n| n == name)
    }

    pub fn get_state(&self) -> &StateVector {
        &self.state
    }

    pub fn set_state(&mut self, state: StateVector) {
        assert_eq!(state.qubit_count(), self.qubit_names.len());
        self.state = state;
    }

    /// The pre-collapse snapshot, present only after a measurement.
    pub fn get_noop(&self) -> Option<&StateVector> {
        self.noop.as_ref()
    }

    /// Records the pre-collapse state. The first write wins: once set,
    /// later measurements leave the snapshot alone.
    pub fn record_noop(&mut self, state: StateVector) {
        assert_eq!(state.qubit_count(), self.qubit_names.len());
        if self.noop.is_none() {
            self.noop = Some(state);
        }
    }

    pub(crate) fn swap_names(&mut self, i: usize, j: usize) {
        self.qubit_names.swap(i, j);
    }

    /// Same name sequence and entrywise-equal states.
    pub fn equals(&self, other: &QuantumRegister) -> bool {
        self.qubit_names == other.qubit_names && self.state.approx_eq(&other.state, STATE_TOL)
    }
}
