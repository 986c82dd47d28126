//! The supported gate set and the constructors that lift single-qubit
//! gates onto n-qubit registers.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Complex};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::str::FromStr;

/// A unitary matrix acting on `arity` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix {
    matrix: CMatrix,
    arity: usize,
}

impl GateMatrix {
    /// Wraps a square matrix of dimension 2^k. Unitarity is the caller's
    /// invariant; debug builds verify it.
    pub fn new(matrix: CMatrix) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "gate matrix must be square");
        let dim = matrix.rows();
        assert!(dim.is_power_of_two());
        let arity = dim.trailing_zeros() as usize;
        debug_assert!(
            matrix
                .conj_transpose()
                .matmul(&matrix)
                .unwrap()
                .approx_eq(&CMatrix::identity(dim), 1e-10),
            "gate matrix is not unitary"
        );
        Self { matrix, arity }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

/// The nine single-qubit gates available on the target hardware.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardGate {
    H,
    X,
    Y,
    Z,
    S,
    Sdagger,
    T,
    Tdagger,
    I,
}

impl StandardGate {
    pub const ALL: [StandardGate; 9] = [
        StandardGate::H,
        StandardGate::X,
        StandardGate::Y,
        StandardGate::Z,
        StandardGate::S,
        StandardGate::Sdagger,
        StandardGate::T,
        StandardGate::Tdagger,
        StandardGate::I,
    ];

    pub fn gate(self) -> GateMatrix {
        let zero = Complex::new(0.0, 0.0);
        let one = Complex::new(1.0, 0.0);
        let i = Complex::new(0.0, 1.0);
        let h = Complex::new(FRAC_1_SQRT_2, 0.0);
        let t_phase = Complex::from_polar(1.0, FRAC_PI_4);
        let rows: [[Complex; 2]; 2] = match self {
            StandardGate::H => [[h, h], [h, -h]],
            StandardGate::X => [[zero, one], [one, zero]],
            StandardGate::Y => [[zero, -i], [i, zero]],
            StandardGate::Z => [[one, zero], [zero, -one]],
            StandardGate::S => [[one, zero], [zero, i]],
            StandardGate::Sdagger => [[one, zero], [zero, -i]],
            StandardGate::T => [[one, zero], [zero, t_phase]],
            StandardGate::Tdagger => [[one, zero], [zero, t_phase.conj()]],
            StandardGate::I => [[one, zero], [zero, one]],
        };
        GateMatrix::new(CMatrix::from_rows(&[&rows[0], &rows[1]]))
    }
}

impl FromStr for StandardGate {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        match name {
            "H" => Ok(StandardGate::H),
            "X" => Ok(StandardGate::X),
            "Y" => Ok(StandardGate::Y),
            "Z" => Ok(StandardGate::Z),
            "S" => Ok(StandardGate::S),
            "Sdagger" => Ok(StandardGate::Sdagger),
            "T" => Ok(StandardGate::T),
            "Tdagger" => Ok(StandardGate::Tdagger),
            "I" => Ok(StandardGate::I),
            other => Err(Error::UnknownGate(other.to_string())),
        }
    }
}

/// Lifts a single-qubit gate to act on qubit `target_index` of an
/// `register_size`-qubit register: the tensor product of identities with
/// the gate in the target slot, leftmost factor most significant.
pub fn lift_single(g: &GateMatrix, target_index: usize, register_size: usize) -> Result<GateMatrix> {
    assert_eq!(g.arity(), 1, "lift_single takes a one-qubit gate");
    if target_index >= register_size {
        return Err(Error::IndexOutOfRange { index: target_index, size: register_size });
    }
    let i2 = CMatrix::identity(2);
    let mut out: Option<CMatrix> = None;
    for slot in 0..register_size {
        let factor = if slot == target_index { g.matrix() } else { &i2 };
        out = Some(match out {
            Some(acc) => acc.kron(factor),
            None => factor.clone(),
        });
    }
    Ok(GateMatrix::new(out.expect("register_size >= 1")))
}

/// CNOT on an n-qubit register: the permutation matrix flipping the
/// target bit of each canonical basis label whenever the control bit is
/// set. Built directly over the basis so non-adjacent control/target
/// pairs need no special casing.
pub fn cnot(control_index: usize, target_index: usize, register_size: usize) -> Result<GateMatrix> {
    if control_index == target_index {
        return Err(Error::ControlEqualsTarget);
    }
    for &idx in &[control_index, target_index] {
        if idx >= register_size {
            return Err(Error::IndexOutOfRange { index: idx, size: register_size });
        }
    }
    let dim = 1usize << register_size;
    // qubit i occupies bit (n-1-i) of the basis index
    let control_bit = register_size - 1 - control_index;
    let target_bit = register_size - 1 - target_index;
    let mut m = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        let image = if k >> control_bit & 1 == 1 { k ^ (1 << target_bit) } else { k };
        m.set(image, k, Complex::new(1.0, 0.0));
    }
    Ok(GateMatrix::new(m))
}
