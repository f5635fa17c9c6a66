use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("state must have at least 2 qubits, got {0}")]
    TooFewQubits(usize),
    #[error("expected {expected} amplitudes for {n} qubits, got {actual}")]
    LengthMismatch {
        n: usize,
        expected: usize,
        actual: usize,
    },
    #[error("amplitude index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("all amplitudes are zero")]
    ZeroState,
    #[error("malformed exact scalar {0:?}")]
    MalformedScalar(String),
    #[error("malformed state document: {0}")]
    Document(String),
    #[error("expected {expected} local operators, got {actual}")]
    OperatorCount { expected: usize, actual: usize },
    #[error("local operator on qubit {qubit} is singular")]
    SingularOperator { qubit: usize },
    #[error("local operator on qubit {qubit} does not have determinant one")]
    NotSpecialLinear { qubit: usize },
    #[error("could not draw an invertible operator with a square-root determinant after {0} attempts")]
    RedrawExhausted(usize),
    #[error("invalid row bits ({q1}, {q2}) for {n} qubits")]
    InvalidRowBits { q1: usize, q2: usize, n: usize },
    #[error("states have different qubit counts: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("ambiguous numerical {0}")]
    Ambiguous(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {name}: missing parameter {param:?}")]
    MissingParameter { name: String, param: String },
    #[error("fixture {name}: side condition violated: {condition}")]
    SideCondition { name: String, condition: String },
    #[error("small-system classification needs 2 or 3 qubits, got {0}")]
    NotSmallSystem(usize),
    #[error("operation requires the {0} field")]
    WrongField(&'static str),
}
