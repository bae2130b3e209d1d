use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size must be between 1 and {max}, got {n}")]
    GroundSize { n: usize, max: usize },

    #[error("member {member} is empty")]
    EmptyMember { member: usize },

    #[error("member {member}: element {element} is outside [1, {n}]")]
    OutOfRange { member: usize, element: usize, n: usize },

    #[error("member {member}: element {element} is repeated")]
    RepeatedElement { member: usize, element: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    /// A one-vertex edge is monochromatic under every coloring.
    #[error("edge {edge} has a single vertex; no proper coloring exists for any number of colors")]
    SingletonEdge { edge: usize },

    #[error("certificate has {got} colors but the hypergraph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: String, cap: u64 },

    #[error("time budget exhausted")]
    BudgetExhausted,
}

impl Error {
    /// Resource caps and time budgets, as opposed to invalid input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::BudgetExhausted)
    }
}
