use thiserror::Error;

/// Errors raised by the simulator core.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: matrix is {rows}x{cols} but vector has length {len}")]
    DimensionMismatch { rows: usize, cols: usize, len: usize },

    #[error("unknown qubit \"{0}\"")]
    UnknownQubit(String),

    #[error("unknown gate \"{0}\"")]
    UnknownGate(String),

    #[error("unknown state \"{0}\"")]
    UnknownState(String),

    #[error("qubit index {index} out of range for register of {size} qubits")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("control and target qubit must be distinct")]
    ControlEqualsTarget,

    #[error("invalid character '{0}' in binary string")]
    InvalidBinaryDigit(char),

    #[error("not a computational basis state")]
    NotBasisState,

    #[error("expected a single-qubit state, got {0} qubits")]
    NotSingleQubit(usize),

    #[error("state is not easily separable")]
    NotSeparable,

    #[error("qubits already share a register")]
    AlreadyEntangled,

    #[error("invalid requested order: {0}")]
    InvalidOrder(String),

    #[error("cannot separate requested qubits: register holding {0} mixes requested and unrequested qubits")]
    ReorderFailure(String),

    #[error("swap requires adjacent indices, got {i} and {j}")]
    NonAdjacentSwap { i: usize, j: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("runtime error on line {line}: {source}")]
    Runtime {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("program carries no expected results")]
    NoExpectations,
}

pub type Result<T> = std::result::Result<T, Error>;
