use std::fmt;

/// Line and column (both 1-based) of a token in the input text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input text.
    Parse { span: Span, msg: String },
    /// A typed error from the algebra core, with the source position that
    /// triggered it when the error arose while reading a function.
    Core { err: hnf_core::Error, span: Option<Span> },
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn parse(span: Span, msg: impl Into<String>) -> Self {
        CliError::Parse { span, msg: msg.into() }
    }

    pub fn core(err: hnf_core::Error, span: Option<Span>) -> Self {
        CliError::Core { err, span }
    }

    pub fn span(&self) -> Option<Span> {
        match self {
            CliError::Parse { span, .. } => Some(*span),
            CliError::Core { span, .. } => *span,
            _ => None,
        }
    }

    /// Process exit status: 1 for domain and IO failures, 2 for malformed
    /// input or invocation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core { .. } | CliError::Io(_) => 1,
            CliError::Parse { .. } | CliError::Usage(_) => 2,
        }
    }

    /// Prefixes the position with the name of the file it came from.
    pub fn in_source(self, source: &str) -> Self {
        match self {
            CliError::Parse { span, msg } => CliError::Parse {
                span,
                msg: format!("{msg} in {source}"),
            },
            other => other,
        }
    }
}

impl From<hnf_core::Error> for CliError {
    fn from(err: hnf_core::Error) -> Self {
        CliError::Core { err, span: None }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { span, msg } => {
                write!(f, "ParseError: line {}, column {}: {msg}", span.line, span.col)
            }
            CliError::Core { err, span: None } => write!(f, "{err}"),
            CliError::Core { err, span: Some(s) } => write!(f, "{err} (line {}, column {})", s.line, s.col),
            CliError::Usage(msg) => write!(f, "UsageError: {msg}"),
            CliError::Io(msg) => write!(f, "IOError: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}
