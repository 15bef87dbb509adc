use thiserror::Error;

/// Location of a syntax problem inside a line of text (1-based column).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbdError {
    #[error("input error: {0}")]
    Input(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },

    #[error("unknown connective `{name}` at {pos}")]
    UnknownConnective { name: String, pos: Pos },

    #[error("connective `{name}` expects {expected} argument(s), found {found}{}", at(.pos))]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        pos: Option<Pos>,
    },

    #[error("variable `{0}` is not assigned")]
    Unassigned(String),

    #[error("connective `{0}` has no replacement template")]
    UncoveredConnective(String),

    #[error("operation `{0}` is not associative")]
    NotAssociative(String),

    #[error("target function is not in the clone generated by the base")]
    NoRepresentation,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("internal error: {0}")]
    Internal(String),
}

fn at(pos: &Option<Pos>) -> String {
    pos.map(|p| format!(" at {p}")).unwrap_or_default()
}

pub type Result<T> = std::result::Result<T, AbdError>;

impl AbdError {
    /// True for errors caused by exhausting a configured resource bound.
    pub fn is_budget(&self) -> bool {
        matches!(self, AbdError::Budget(_))
    }
}
