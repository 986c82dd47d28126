//! Partition of the machine's qubits into disjoint registers.
//!
//! Registers start out as singletons and only grow when entanglement
//! forces a merge; the storage across registers stays at 2n complex
//! numbers until then, rather than 2^n.

use crate::error::{Error, Result};
use crate::register::QuantumRegister;

/// The set of registers covering every machine qubit exactly once.
#[derive(Debug, Clone)]
pub struct RegisterCollection {
    registers: Vec<QuantumRegister>,
    machine_order: Vec<String>,
}

impl RegisterCollection {
    /// Fresh partition: one singleton register per qubit, all in |0>.
    pub fn new(machine_order: Vec<String>) -> Self {
        let registers = machine_order.iter().map(QuantumRegister::singleton).collect();
        Self { registers, machine_order }
    }

    pub fn machine_order(&self) -> &[String] {
        &self.machine_order
    }

    /// Machine index of a qubit name.
    pub fn machine_index(&self, name: &str) -> Result<usize> {
        self.machine_order
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownQubit(name.to_string()))
    }

    pub fn num_registers(&self) -> usize {
        self.registers.len()
    }

    /// Registers enumerated in a stable order: by the smallest machine
    /// index among each register's members.
    pub fn registers(&self) -> Vec<&QuantumRegister> {
        let mut indexed: Vec<(usize, &QuantumRegister)> = self
            .registers
            .iter()
            .map(|r| (self.min_machine_index(r), r))
            .collect();
        indexed.sort_by_key(|(min, _)| *min);
        indexed.into_iter().map(|(_, r)| r).collect()
    }

    fn min_machine_index(&self, r: &QuantumRegister) -> usize {
        r.qubit_names()
            .iter()
            .map(|n| self.machine_index(n).expect("register holds machine qubits"))
            .min()
            .expect("register is nonempty")
    }

    /// The unique register containing the named qubit.
    pub fn register_of(&self, name: &str) -> Result<&QuantumRegister> {
        self.machine_index(name)?;
        Ok(self
            .registers
            .iter()
            .find(|r| r.contains(name))
            .expect("partition covers every machine qubit"))
    }

    pub fn register_of_mut(&mut self, name: &str) -> Result<&mut QuantumRegister> {
        self.machine_index(name)?;
        Ok(self
            .registers
            .iter_mut()
            .find(|r| r.contains(name))
            .expect("partition covers every machine qubit"))
    }

    /// Merges the registers holding `name_a` and `name_b` into one, a's
    /// names first, state the tensor product a (x) b. The merged
    /// register starts with an empty snapshot slot: the snapshots of the
    /// sources described register identities that no longer exist.
    pub fn entangle_qubits(&mut self, name_a: &str, name_b: &str) -> Result<&mut QuantumRegister> {
        self.machine_index(name_a)?;
        self.machine_index(name_b)?;
        let idx_a = self.registers.iter().position(|r| r.contains(name_a)).unwrap();
        let idx_b = self.registers.iter().position(|r| r.contains(name_b)).unwrap();
        if idx_a == idx_b {
            return Err(Error::AlreadyEntangled);
        }
        // Remove the later index first so the earlier one stays valid.
        let (first, second) = if idx_a < idx_b { (idx_a, idx_b) } else { (idx_b, idx_a) };
        let r_second = self.registers.remove(second);
        let r_first = self.registers.remove(first);
        let (ra, rb) = if idx_a < idx_b { (r_first, r_second) } else { (r_second, r_first) };

        let mut names = ra.qubit_names().to_vec();
        names.extend_from_slice(rb.qubit_names());
        let state = ra.get_state().kron(rb.get_state());
        self.registers.push(QuantumRegister::new(names, state));
        Ok(self.registers.last_mut().unwrap())
    }

    /// Concatenation of each register's qubit order, registers
    /// enumerated by smallest member index.
    pub fn qubit_order(&self) -> Vec<String> {
        self.registers()
            .into_iter()
            .flat_map(|r| r.qubit_names().iter().cloned())
            .collect()
    }

    /// Total amplitude storage across registers, in complex numbers.
    pub fn total_storage(&self) -> usize {
        self.registers.iter().map(|r| 1usize << r.num_qubits()).sum()
    }

    #[cfg(debug_assertions)]
    pub(crate) fn check_partition(&self) {
        let mut names: Vec<&String> =
            self.registers.iter().flat_map(|r| r.qubit_names().iter()).collect();
        names.sort();
        let mut expected: Vec<&String> = self.machine_order.iter().collect();
        expected.sort();
        assert_eq!(names, expected, "register partition broke");
    }
}
