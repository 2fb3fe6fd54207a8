use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("hyperedge {index} has {found} vertices, expected {expected}")]
    WrongHyperedgeSize {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("hyperedge {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("hyperedges {0} and {1} have the same vertex set")]
    DuplicateHyperedge(usize, usize),
    #[error("graph is not bipartite: {0}")]
    NotBipartite(String),
    #[error("hypergraph is not linear: hyperedges {0} and {1} share two or more vertices")]
    NotLinear(usize, usize),
    #[error("expected uniformity {expected}, found {found}")]
    UniformityMismatch { expected: usize, found: usize },
    #[error("graph has a vertex of degree {degree} below the required {required}")]
    MinDegree { degree: usize, required: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("requested {m} hyperedges but at most {max} are allowed (half of C(n,a))")]
    DensityTooHigh { m: usize, max: u128 },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("search time limit exceeded")]
    TimeLimitExceeded,
    #[error("state space too large: {size} states exceed the cap {cap}")]
    StateSpaceTooLarge { size: u128, cap: u128 },
    #[error("too many cycles: more than {0}")]
    CycleCeiling(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
