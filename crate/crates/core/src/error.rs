use thiserror::Error;

use crate::obstruction::ObstructionWitness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: self-loop on vertex `{vertex}`")]
    SelfLoop { line: usize, vertex: String },

    #[error("line {line}: malformed token `{token}`")]
    MalformedToken { line: usize, token: String },

    #[error("line {line}: expected one or two vertex names, found {found} tokens")]
    MalformedLine { line: usize, found: usize },

    #[error("graph is empty (pass --allow-empty to accept it)")]
    EmptyGraph,

    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex set is not a subset of the graph")]
    VertexSetOutOfRange,

    #[error("enumeration supports 1 to 6 vertices, got {0}")]
    EnumerationRange(usize),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("malformed word token `{0}`")]
    MalformedWord(String),

    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),

    #[error("malformed pair `{0}`: expected `u | v`")]
    MalformedPair(String),

    #[error("graph is not subgroup separable: {0}")]
    ObstructionPresent(Box<ObstructionWitness>),

    #[error("coset enumeration did not close within {0} cosets")]
    Exhausted(usize),

    #[error("x equals h^{0}, so it lies in the cyclic subgroup")]
    NotOutside(i64),

    #[error("{0}")]
    Oracle(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
