use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph order {order} outside supported range 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0} in a loopless graph")]
    SelfLoop(usize),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("constraint matrix parse error on line {line}: {reason}")]
    Matrix { line: usize, reason: String },

    #[error("constraint graph has no edges once isolated vertices are removed")]
    EmptyConstraintGraph,

    #[error("graph is not regular")]
    NotRegular,

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),

    #[error("catalog: {0}")]
    Catalog(String),

    #[error("resource guard `{guard}` exceeded: need {needed}, limit {limit}")]
    Guard {
        guard: &'static str,
        needed: String,
        limit: String,
    },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn guard(guard: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::Guard {
            guard,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }
}
