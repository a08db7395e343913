use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("edge-list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("premise violated: {0}")]
    Premise(String),
    #[error("homomorphism map is not total: expected {expected} entries, got {got}")]
    PartialMap { expected: usize, got: usize },
    #[error("graph order {order} exceeds the bound {bound}: {hint}")]
    TooLarge { order: usize, bound: usize, hint: String },
    #[error("unknown graph family '{0}'")]
    UnknownFamily(String),
    #[error("class sizes are not integral at order {order}; least valid order is {least}")]
    NonIntegralSizes { order: usize, least: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
