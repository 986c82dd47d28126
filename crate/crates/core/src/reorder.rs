//! Reordering: merge registers where needed, bubble-sort qubits with
//! state-permuting swaps, and emit a combined state over the requested
//! qubits in increasing machine-index order.

use crate::collection::RegisterCollection;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Complex};
use crate::register::QuantumRegister;
use crate::state::StateVector;

/// A requested output order: qubit names in strictly increasing machine
/// index. Non-increasing or duplicate requests are rejected here rather
/// than silently sorted.
#[derive(Debug, Clone)]
pub struct RequestedOrder {
    names: Vec<String>,
}

impl RequestedOrder {
    pub fn new(names: Vec<String>, collection: &RegisterCollection) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidOrder("requested order is empty".into()));
        }
        let mut last: Option<usize> = None;
        for name in &names {
            let idx = collection.machine_index(name)?;
            if let Some(prev) = last {
                if idx <= prev {
                    return Err(Error::InvalidOrder(format!(
                        "qubit indices must be strictly increasing, got \"{name}\" after index {prev}"
                    )));
                }
            }
            last = Some(idx);
        }
        Ok(Self { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }
}

/// Exchanges two elements of a list.
pub fn swap_helper<T>(l: &mut [T], i: usize, j: usize) {
    l.swap(i, j);
}

/// Exchanges qubits `i` and `i+1` of a register: permutes the state by
/// the matrix that swaps those bit positions across every canonical
/// basis label, then exchanges the names. Bubble sort only ever needs
/// adjacent swaps, so non-adjacent indices are rejected.
pub fn swap(r: &mut QuantumRegister, i: usize, j: usize) -> Result<()> {
    if j != i + 1 {
        return Err(Error::NonAdjacentSwap { i, j });
    }
    let n = r.num_qubits();
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, size: n });
    }
    let dim = 1usize << n;
    let bit_i = n - 1 - i;
    let bit_j = n - 1 - j;
    let mut permute = CMatrix::zeros(dim, dim);
    for label in 0..dim {
        let a = label >> bit_i & 1;
        let b = label >> bit_j & 1;
        let mut image = label & !(1 << bit_i) & !(1 << bit_j);
        image |= b << bit_i | a << bit_j;
        permute.set(image, label, Complex::new(1.0, 0.0));
    }
    let state = StateVector::new(permute.matvec(r.get_state().amplitudes())?);
    r.set_state(state);
    r.swap_names(i, j);
    Ok(())
}

/// The reordering algorithm, in three phases.
///
/// Phase 1 merges any register spanned by a requested qubit that lives
/// elsewhere, so that sorting can make the request contiguous. Phase 2
/// checks that every register is entirely inside or entirely outside
/// the request, then bubble-sorts the inside registers into increasing
/// machine order. Phase 3 tensors the inside registers together in
/// increasing-index order.
pub fn reorder(collection: &mut RegisterCollection, order: &RequestedOrder) -> Result<StateVector> {
    // Phase 1 - merge quantum registers
    for q in order.names() {
        loop {
            let q_idx = collection.machine_index(q)?;
            let mut merge_with: Option<String> = None;
            for r in collection.registers() {
                if r.contains(q) {
                    continue;
                }
                let indices: Vec<usize> = r
                    .qubit_names()
                    .iter()
                    .map(|n| collection.machine_index(n))
                    .collect::<Result<_>>()?;
                let rmin = *indices.iter().min().unwrap();
                let rmax = *indices.iter().max().unwrap();
                if q_idx >= rmin && q_idx <= rmax {
                    merge_with = Some(r.qubit_names()[0].clone());
                    break;
                }
            }
            match merge_with {
                // Spanning register first, then the register holding q;
                // phase 2 repairs any interior misordering.
                Some(anchor) => {
                    collection.entangle_qubits(&anchor, q)?;
                }
                None => break,
            }
        }
    }

    // Phase 2 - check membership and sort the relevant registers
    let register_leads: Vec<String> = collection
        .registers()
        .iter()
        .map(|r| r.qubit_names()[0].clone())
        .collect();
    let mut relevant_leads = Vec::new();
    for lead in &register_leads {
        let r = collection.register_of(lead)?;
        let inside = r.qubit_names().iter().filter(|n| order.contains(n)).count();
        if inside == 0 {
            continue;
        }
        if inside != r.num_qubits() {
            let outsider = r
                .qubit_names()
                .iter()
                .find(|n| !order.contains(n))
                .expect("mixed register has an unrequested member");
            return Err(Error::ReorderFailure(outsider.clone()));
        }
        relevant_leads.push(lead.clone());
    }
    for lead in &relevant_leads {
        let indices: Vec<usize> = {
            let r = collection.register_of(lead)?;
            r.qubit_names()
                .iter()
                .map(|n| collection.machine_index(n))
                .collect::<Result<_>>()?
        };
        let mut keys = indices;
        let n = keys.len();
        let mut swapped = true;
        while swapped {
            swapped = false;
            for i in 0..n - 1 {
                if keys[i] > keys[i + 1] {
                    swap(collection.register_of_mut(lead)?, i, i + 1)?;
                    swap_helper(&mut keys, i, i + 1);
                    swapped = true;
                }
            }
        }
    }

    // Phase 3 - create the combined answer state
    let mut answer: Option<StateVector> = None;
    for r in collection.registers() {
        if !order.contains(&r.qubit_names()[0]) {
            continue;
        }
        answer = Some(match answer {
            Some(acc) => acc.kron(r.get_state()),
            None => r.get_state().clone(),
        });
    }
    #[cfg(debug_assertions)]
    collection.check_partition();
    answer.ok_or_else(|| Error::InvalidOrder("requested order matched no register".into()))
}
