use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid character {1:?} at position {0}; expected one of E, N, D")]
    InvalidCharacter(usize, char),

    #[error("path is not central: {0} E steps but {1} N steps")]
    NotCentral(usize, usize),

    #[error("vertex sequence is empty")]
    EmptyPath,

    #[error("first vertex must be the origin (0,0)")]
    BadOrigin,

    #[error("x-coordinate does not strictly increase at vertex {0}")]
    NonIncreasingX(usize),

    #[error("y-coordinate decreases at vertex {0}")]
    DecreasingY(usize),

    #[error("terminal vertex ({0},{1}) is not of the form (n+1, n)")]
    BadEndpoint(u32, u32),

    #[error("A and C label sets share the value {0}")]
    OverlappingAC(u32),

    #[error("{0} labels are not in the required order")]
    UnorderedLabels(&'static str),

    #[error("{0} labels must be positive")]
    ZeroLabel(&'static str),

    #[error("malformed vertex list: {0}")]
    VertexSyntax(String),
}
