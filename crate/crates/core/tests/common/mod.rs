//! A deliberately naive reference simulator used to cross-check the
//! lazy-register machine: it keeps one dense state vector over all five
//! qubits at all times and builds every gate by explicit Kronecker
//! lifting. It shares no code with the crate under test beyond the
//! complex number type.

use num_complex::Complex64;

pub const QUBITS: usize = 5;
const DIM: usize = 1 << QUBITS;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// 2x2 gate matrices in row-major order, written out from first
/// principles rather than imported.
pub fn gate_matrix(name: &str) -> [C; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e8 = C::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    match name {
        "h" => [c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)],
        "x" => [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        "y" => [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
        "z" => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
        "s" => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
        "sdg" => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)],
        "t" => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), e8],
        "tdg" => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), e8.conj()],
        "id" => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        other => panic!("unknown gate {other}"),
    }
}

pub const SINGLE_GATES: [&str; 9] = ["h", "x", "y", "z", "s", "sdg", "t", "tdg", "id"];

/// Always-dense simulator: |00000> start, qubit 0 is the most
/// significant bit of the basis index.
pub struct DenseOracle {
    state: Vec<C>,
}

impl DenseOracle {
    pub fn new() -> Self {
        let mut state = vec![c(0.0, 0.0); DIM];
        state[0] = c(1.0, 0.0);
        Self { state }
    }

    pub fn state(&self) -> &[C] {
        &self.state
    }

    /// Applies a single-qubit gate to `qubit` by walking every basis
    /// index and mixing the pair of amplitudes that differ in that
    /// qubit's bit.
    pub fn apply_single(&mut self, name: &str, qubit: usize) {
        let [m00, m01, m10, m11] = gate_matrix(name);
        let bit = QUBITS - 1 - qubit;
        let mask = 1usize << bit;
        let mut next = self.state.clone();
        for k in 0..DIM {
            if k & mask == 0 {
                let a0 = self.state[k];
                let a1 = self.state[k | mask];
                next[k] = m00 * a0 + m01 * a1;
                next[k | mask] = m10 * a0 + m11 * a1;
            }
        }
        self.state = next;
    }

    /// CNOT as a permutation of basis amplitudes.
    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        assert_ne!(control, target);
        let cmask = 1usize << (QUBITS - 1 - control);
        let tmask = 1usize << (QUBITS - 1 - target);
        let mut next = vec![c(0.0, 0.0); DIM];
        for k in 0..DIM {
            let image = if k & cmask != 0 { k ^ tmask } else { k };
            next[image] = self.state[k];
        }
        self.state = next;
    }
}

/// Entrywise equality of two dense states after dividing out one global
/// phase, anchored at the largest-magnitude amplitude.
pub fn states_match_up_to_phase(a: &[C], b: &[C], tol: f64) -> bool {
    assert_eq!(a.len(), b.len());
    let anchor = (0..a.len()).max_by(|&i, &j| {
        a[i].norm_sqr().partial_cmp(&a[j].norm_sqr()).unwrap()
    });
    let Some(anchor) = anchor else { return true };
    if a[anchor].norm() < tol {
        return b.iter().all(|v| v.norm() < tol);
    }
    if b[anchor].norm() < tol.sqrt() {
        return false;
    }
    let phase = a[anchor] / b[anchor];
    if (phase.norm() - 1.0).abs() > 1e-6 {
        return false;
    }
    a.iter().zip(b.iter()).all(|(x, y)| (x - y * phase).norm() <= tol)
}
