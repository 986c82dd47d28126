//! Probability extraction, transcript-style pretty printing, and
//! single-qubit Pauli expectation values.

use crate::error::{Error, Result};
use crate::gate::StandardGate;
use crate::state::{Basis, StateVector};

/// Probabilities below this are treated as zero when printing.
const PRINT_THRESHOLD: f64 = 1e-10;

/// Probabilities over the canonical basis ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    probabilities: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(probabilities: Vec<f64>) -> Self {
        Self { probabilities }
    }

    pub fn values(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn approx_eq(&self, other: &ProbabilityVector, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .probabilities
                .iter()
                .zip(other.probabilities.iter())
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Squared amplitude moduli in canonical order.
pub fn get_probabilities(s: &StateVector) -> ProbabilityVector {
    ProbabilityVector::new((0..s.dim()).map(|k| s.amplitude(k).norm_sqr()).collect())
}

fn basis_label(k: usize, n: usize) -> String {
    let mut out = String::with_capacity(n);
    for bit in (0..n).rev() {
        out.push(if k >> bit & 1 == 1 { '1' } else { '0' });
    }
    out
}

/// Renders one amplitude for the `|psi>=` header. Coefficients equal to
/// 1 are suppressed; otherwise they print as signed decimals to four
/// places, with a parenthesized `a+bi` form when both parts are nonzero.
fn format_amplitude(c: crate::linalg::Complex) -> String {
    if (c.re - 1.0).abs() < PRINT_THRESHOLD && c.im.abs() < PRINT_THRESHOLD {
        return String::new();
    }
    if c.im.abs() < PRINT_THRESHOLD {
        format!("{:.4}", c.re)
    } else if c.re.abs() < PRINT_THRESHOLD {
        format!("{:.4}i", c.im)
    } else if c.im < 0.0 {
        format!("({:.4}{:.4}i)", c.re, c.im)
    } else {
        format!("({:.4}+{:.4}i)", c.re, c.im)
    }
}

/// Prints a state the way the hardware transcript does: a `|psi>=`
/// header listing the participating basis states, then one
/// `Pr(|bits>)=f;` line per nonzero probability, f to six places.
pub fn pretty_print(s: &StateVector) -> String {
    let n = s.qubit_count();
    let mut header = String::from("|psi>=");
    let mut lines = Vec::new();
    let mut first = true;
    for k in 0..s.dim() {
        let amp = s.amplitude(k);
        let prob = amp.norm_sqr();
        if prob <= PRINT_THRESHOLD {
            continue;
        }
        let coeff = format_amplitude(amp);
        if !first && !coeff.starts_with('-') {
            header.push('+');
        }
        header.push_str(&coeff);
        header.push('|');
        header.push_str(&basis_label(k, n));
        header.push('>');
        lines.push(format!("Pr(|{}>)={:.6};", basis_label(k, n), prob));
        first = false;
    }
    let mut out = header;
    for line in lines {
        out.push('\n');
        out.push_str(&line);
    }
    out
}

/// Expectation value of the Pauli operator named by `basis` on a
/// single-qubit state.
pub fn expectation(s: &StateVector, basis: Basis) -> Result<f64> {
    if s.qubit_count() != 1 {
        return Err(Error::NotSingleQubit(s.qubit_count()));
    }
    let pauli = match basis {
        Basis::X => StandardGate::X,
        Basis::Y => StandardGate::Y,
        Basis::Z => StandardGate::Z,
    };
    let applied = pauli.gate().matrix().matvec(s.amplitudes())?;
    let mut value = crate::linalg::Complex::new(0.0, 0.0);
    for k in 0..s.dim() {
        value += s.amplitude(k).conj() * applied.get(k);
    }
    Ok(value.re)
}
