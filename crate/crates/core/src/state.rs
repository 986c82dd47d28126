//! Canonical qubit states and state-vector construction helpers.
//!
//! Qubit indices are 0-based throughout; the leftmost tensor factor is
//! qubit 0 and the most significant bit of the canonical basis ordering,
//! so `|10011>` is the basis vector with a 1 at index 19.

use crate::error::{Error, Result};
use crate::linalg::{CVector, Complex};
use std::f64::consts::FRAC_1_SQRT_2;
use std::str::FromStr;

/// Tolerance for basis-state recognition and state equality.
pub const STATE_TOL: f64 = 1e-10;

/// Normalized amplitude vector over the canonical basis ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
    qubit_count: usize,
}

impl StateVector {
    /// Wraps an amplitude vector; the length must be a power of two and
    /// the norm must be 1 within tolerance.
    pub fn new(amplitudes: CVector) -> Self {
        let len = amplitudes.len();
        assert!(len.is_power_of_two(), "state dimension {len} is not a power of two");
        let norm = amplitudes.norm2();
        assert!(
            (norm - 1.0).abs() <= STATE_TOL,
            "state vector is not normalized: norm2 = {norm}"
        );
        let qubit_count = len.trailing_zeros() as usize;
        Self { amplitudes, qubit_count }
    }

    /// The all-zeros basis state on `n` qubits.
    pub fn zero(n: usize) -> Self {
        Self::new(CVector::basis(1 << n, 0))
    }

    /// The canonical basis state with index `k` on `n` qubits.
    pub fn basis(n: usize, k: usize) -> Self {
        Self::new(CVector::basis(1 << n, k))
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitude(&self, k: usize) -> Complex {
        self.amplitudes.get(k)
    }

    /// Tensor product; `self` becomes the more significant factor.
    pub fn kron(&self, other: &StateVector) -> StateVector {
        StateVector::new(self.amplitudes.kron(&other.amplitudes))
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.amplitudes.approx_eq(&other.amplitudes, tol)
    }

    /// Equality up to one global phase: `self == phase * other` for some
    /// unit-modulus scalar.
    pub fn approx_eq_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match relative_phase(&self.amplitudes, &other.amplitudes, tol) {
            Some(phase) => self.amplitudes.approx_eq(&other.amplitudes.scale(phase), tol),
            None => false,
        }
    }

    /// If the state is a canonical basis vector up to global phase,
    /// returns its index.
    pub fn basis_index(&self) -> Option<usize> {
        let mut index = None;
        for k in 0..self.dim() {
            if self.amplitude(k).norm_sqr() > STATE_TOL {
                if index.is_some() {
                    return None;
                }
                index = Some(k);
            }
        }
        let k = index?;
        ((self.amplitude(k).norm() - 1.0).abs() <= STATE_TOL).then_some(k)
    }
}

/// Phase `p` with |p| = 1 such that `a ~= p * b`, estimated from the
/// first amplitude of `b` that is distinguishable from zero.
pub(crate) fn relative_phase(a: &CVector, b: &CVector, tol: f64) -> Option<Complex> {
    for k in 0..b.len() {
        if b.get(k).norm() > tol.sqrt() {
            let phase = a.get(k) / b.get(k);
            return ((phase.norm() - 1.0).abs() <= 1e-6).then_some(phase);
        }
    }
    None
}

/// The six canonical single-qubit states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalState {
    /// |0>, standard (z) basis.
    Zero,
    /// |1>, standard (z) basis.
    One,
    /// |+>, diagonal (x) basis.
    Plus,
    /// |->, diagonal (x) basis.
    Minus,
    /// |i> (clockwise), circular (y) basis.
    PlusI,
    /// |-i> (counterclockwise), circular (y) basis.
    MinusI,
}

impl CanonicalState {
    pub const ALL: [CanonicalState; 6] = [
        CanonicalState::Zero,
        CanonicalState::One,
        CanonicalState::Plus,
        CanonicalState::Minus,
        CanonicalState::PlusI,
        CanonicalState::MinusI,
    ];

    pub fn state(self) -> StateVector {
        let s = FRAC_1_SQRT_2;
        let amps = match self {
            CanonicalState::Zero => vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
            CanonicalState::One => vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
            CanonicalState::Plus => vec![Complex::new(s, 0.0), Complex::new(s, 0.0)],
            CanonicalState::Minus => vec![Complex::new(s, 0.0), Complex::new(-s, 0.0)],
            CanonicalState::PlusI => vec![Complex::new(s, 0.0), Complex::new(0.0, s)],
            CanonicalState::MinusI => vec![Complex::new(s, 0.0), Complex::new(0.0, -s)],
        };
        StateVector::new(CVector::new(amps))
    }
}

impl FromStr for CanonicalState {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        match name {
            "zero" => Ok(CanonicalState::Zero),
            "one" => Ok(CanonicalState::One),
            "plus" => Ok(CanonicalState::Plus),
            "minus" => Ok(CanonicalState::Minus),
            "plus_i" => Ok(CanonicalState::PlusI),
            "minus_i" => Ok(CanonicalState::MinusI),
            other => Err(Error::UnknownState(other.to_string())),
        }
    }
}

/// Builds the basis state named by a binary string, leftmost character
/// most significant: "10011" gives the basis vector at index 19.
pub fn state_from_string(bits: &str) -> Result<StateVector> {
    if bits.is_empty() {
        return Err(Error::UnknownState(String::new()));
    }
    let mut index = 0usize;
    for ch in bits.chars() {
        index = match ch {
            '0' => index << 1,
            '1' => (index << 1) | 1,
            other => return Err(Error::InvalidBinaryDigit(other)),
        };
    }
    Ok(StateVector::basis(bits.len(), index))
}

/// Inverse of [`state_from_string`]: recovers the binary string of a
/// canonical basis state, accepting a global phase.
pub fn string_from_state(s: &StateVector) -> Result<String> {
    let index = s.basis_index().ok_or(Error::NotBasisState)?;
    let n = s.qubit_count();
    let mut out = String::with_capacity(n);
    for bit in (0..n).rev() {
        out.push(if index >> bit & 1 == 1 { '1' } else { '0' });
    }
    Ok(out)
}

/// Measurement/expectation basis letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Diagonal basis {|+>, |->}.
    X,
    /// Circular basis {|i>, |-i>}.
    Y,
    /// Standard basis {|0>, |1>}.
    Z,
}

/// Rotates a single-qubit state so that the named basis becomes the
/// standard one: H for x, S-dagger then H for y (|i> maps to |0> and
/// |-i> to |1> up to global phase). The z basis is the identity.
pub fn change_basis(s: &StateVector, basis: Basis) -> Result<StateVector> {
    if s.qubit_count() != 1 {
        return Err(Error::NotSingleQubit(s.qubit_count()));
    }
    let transform = match basis {
        Basis::Z => return Ok(s.clone()),
        Basis::X => crate::gate::StandardGate::H.gate().matrix().clone(),
        Basis::Y => {
            let h = crate::gate::StandardGate::H.gate();
            let sdg = crate::gate::StandardGate::Sdagger.gate();
            h.matrix().matmul(sdg.matrix()).expect("2x2 product")
        }
    };
    Ok(StateVector::new(transform.matvec(s.amplitudes())?))
}
