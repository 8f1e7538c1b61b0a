use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported group spec `{0}`")]
    UnsupportedGroup(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("quadrature too small: {0}")]
    QuadratureTooSmall(String),
    #[error("truncation exceeds quadrature capability: {0}")]
    TruncationTooLarge(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("operands live on different groups (`{left}` vs `{right}`)")]
    GroupMismatch { left: String, right: String },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("omission leaves no retained labels")]
    EmptyRetainedSet,
    #[error("family is not orthonormal: Gram residual {residual:e} exceeds {tol:e}")]
    NotOrthonormal { residual: f64, tol: f64 },
    #[error("expansion weights contain a zero entry at {0}")]
    ZeroWeight(String),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("degenerate range: {0}")]
    DegenerateRange(String),
    #[error("profile cannot be normalized: {0}")]
    NotNormalizable(String),
    #[error("irrep construction failed: {0}")]
    IrrepConstruction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a numerical invariant (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NotOrthonormal { .. } | Error::IrrepConstruction(_))
    }
}
