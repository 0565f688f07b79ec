use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("unsupported semigroup order {0} (enumeration supports 1..=4)")]
    UnsupportedOrder(usize),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("letter {0:?} is not in the alphabet")]
    ForeignLetter(char),
    #[error("unbound variable {0:?}")]
    UnboundVariable(char),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// A stable machine-readable name for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedTable(_) => "malformed_table",
            Error::NotAssociative { .. } => "not_associative",
            Error::UnsupportedOrder(_) => "unsupported_order",
            Error::Syntax { .. } => "syntax",
            Error::ForeignLetter(_) => "foreign_letter",
            Error::UnboundVariable(_) => "unbound_variable",
            Error::NotFound(_) => "not_found",
            Error::Domain(_) => "domain",
            Error::Unsupported(_) => "unsupported",
            Error::Contract(_) => "contract",
            Error::Internal(_) => "internal",
        }
    }
}
