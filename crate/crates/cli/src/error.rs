use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] eisterms::Error),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl CliError {
    /// 2: hypothesis or input violation; 3: missing L-value data; 1: internal failure.
    pub fn exit_code(&self) -> i32 {
        use eisterms::Error as E;
        match self {
            CliError::Core(E::MissingLValue { .. }) => 3,
            CliError::Core(E::DivisionByZero) | CliError::Io(_) | CliError::Json(_) | CliError::Internal(_) => 1,
            CliError::Core(_) | CliError::Line { .. } | CliError::Usage(_) => 2,
        }
    }
}
