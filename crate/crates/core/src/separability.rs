//! The "easy" separation check: decide whether a state is a tensor
//! product of canonical single-qubit states and extract the factors.
//!
//! A miss here does not mean the state is fundamentally inseparable,
//! only that it is not a product of states from the six-state alphabet
//! {|0>, |1>, |+>, |->, |i>, |-i>} up to one global phase.

use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::state::{relative_phase, CanonicalState, StateVector};

/// Tolerance for factor matching; looser than the linalg tolerances to
/// absorb error accumulated over long gate sequences.
pub const SEPARATION_TOL: f64 = 1e-9;

/// Contraction of the leading qubit against a fixed single-qubit bra:
/// `<f| (x) I` applied to `v`, halving the dimension.
fn project_leading(factor: &StateVector, v: &CVector) -> CVector {
    let half = v.len() / 2;
    let f0 = factor.amplitude(0).conj();
    let f1 = factor.amplitude(1).conj();
    let mut out = Vec::with_capacity(half);
    for k in 0..half {
        out.push(f0 * v.get(k) + f1 * v.get(half + k));
    }
    CVector::new(out)
}

fn search(v: &CVector, alphabet: &[CanonicalState], factors: &mut Vec<CanonicalState>) -> bool {
    if v.len() == 2 {
        // Base case: the accumulated global phase lands here.
        for &candidate in alphabet {
            let c = candidate.state();
            if let Some(phase) = relative_phase(v, c.amplitudes(), SEPARATION_TOL) {
                if v.approx_eq(&c.amplitudes().scale(phase), SEPARATION_TOL) {
                    factors.push(candidate);
                    return true;
                }
            }
        }
        return false;
    }
    for &candidate in alphabet {
        let c = candidate.state();
        let rest = project_leading(&c, v);
        // Full overlap with the candidate slot is necessary for a
        // product decomposition; prune otherwise.
        if (rest.norm2() - 1.0).abs() > 1e-6 {
            continue;
        }
        if !c.amplitudes().kron(&rest).approx_eq(v, SEPARATION_TOL) {
            continue;
        }
        factors.push(candidate);
        if search(&rest, alphabet, factors) {
            return true;
        }
        factors.pop();
    }
    false
}

fn separate_with_alphabet(s: &StateVector, alphabet: &[CanonicalState]) -> Option<Vec<StateVector>> {
    let mut factors = Vec::with_capacity(s.qubit_count());
    if !search(s.amplitudes(), alphabet, &mut factors) {
        return None;
    }
    let states: Vec<StateVector> = factors.into_iter().map(CanonicalState::state).collect();
    debug_assert!(
        {
            let product = states
                .iter()
                .skip(1)
                .fold(states[0].clone(), |acc, f| acc.kron(f));
            product.approx_eq_up_to_phase(s, SEPARATION_TOL)
        },
        "separation returned factors whose product differs from the input"
    );
    Some(states)
}

/// Factors `s` into canonical single-qubit states, if it is such a
/// product up to one global phase. `None` is a value, not an error.
pub fn try_separate_all(s: &StateVector) -> Option<Vec<StateVector>> {
    separate_with_alphabet(s, &CanonicalState::ALL)
}

/// Two-qubit separation with factors restricted to {|0>, |1>}; this is
/// the check behind the CNOT register-split rule.
pub fn try_separate_z(s: &StateVector) -> Option<(StateVector, StateVector)> {
    assert_eq!(s.qubit_count(), 2, "try_separate_z takes a two-qubit state");
    let z_alphabet = [CanonicalState::Zero, CanonicalState::One];
    let mut factors = separate_with_alphabet(s, &z_alphabet)?;
    let second = factors.pop()?;
    let first = factors.pop()?;
    Some((first, second))
}

/// The factor at tensor position `position` of an easily separable
/// state.
pub fn extract_qubit(s: &StateVector, position: usize) -> Result<StateVector> {
    if position >= s.qubit_count() {
        return Err(Error::IndexOutOfRange { index: position, size: s.qubit_count() });
    }
    let factors = try_separate_all(s).ok_or(Error::NotSeparable)?;
    Ok(factors[position].clone())
}
