use thiserror::Error;

/// Errors raised by constructions and transformations in this crate.
///
/// Law violations discovered by the sweeping checkers are *not* errors; they
/// are reported as failing entries of a [`crate::report::LawReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ill-formed category: {law} violated at {witness}")]
    IllFormedCategory { law: &'static str, witness: String },

    #[error("ill-formed functor: {law} violated at {witness}")]
    IllFormedFunctor { law: &'static str, witness: String },

    #[error("ill-formed indexed category: {law} violated at {witness}")]
    IllFormedIndexed { law: &'static str, witness: String },

    #[error("naturality violated at {0}")]
    Naturality(String),

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("signature mismatch: expected {expected}, found {found}")]
    SignatureMismatch { expected: String, found: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("ill-formed signature: {0}")]
    IllFormedSignature(String),

    #[error("ill-formed morphism: {0}")]
    IllFormedMorphism(String),

    #[error("ill-formed sentence: {0}")]
    IllFormedSentence(String),

    #[error("ill-formed model: {0}")]
    IllFormedModel(String),

    #[error("not a block of the signature: {0}")]
    NotABlock(String),

    #[error("not a ring: {0}")]
    NotARing(String),

    #[error("institution law violated: {0}")]
    LawViolation(String),

    #[error("sort `{0}` has no ground terms")]
    EmptySort(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
