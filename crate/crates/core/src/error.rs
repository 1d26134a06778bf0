use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle: {0}")]
    MalformedCycle(String),
    #[error("{what} exceeded cap of {limit}")]
    CapExceeded { what: String, limit: usize },
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("action is not by automorphisms: {0}")]
    NotAutomorphisms(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{classes} conjugacy classes exceed the limit of {limit}")]
    TooManyClasses { classes: usize, limit: usize },
    #[error("operation requires a nontrivial group")]
    TrivialGroup,
    #[error("factor {0} is not a nonabelian simple group")]
    NotSimpleFactor(usize),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("subgroup is not invariant under the action")]
    NotInvariant,
    #[error("dimension too large: {0}")]
    DimensionTooLarge(String),
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("no filtration found: {0}")]
    SearchFailed(String),
    #[error("proposition violated: {0}")]
    PropositionViolated(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, limit: usize) -> Self {
        Error::CapExceeded { what: what.into(), limit }
    }

    /// True for the errors that signal a size limit rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::TooManyClasses { .. } | Error::DimensionTooLarge(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
