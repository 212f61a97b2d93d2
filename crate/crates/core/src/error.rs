use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("Bessel order {order} exceeds the supported maximum {max}")]
    OrderOverflow { order: usize, max: usize },
    #[error("argument outside the function domain: {0}")]
    DomainError(String),
    #[error("no sign change found while bracketing {0}")]
    BracketFailure(String),
    #[error("cut line misses the domain bounding box")]
    DegenerateCut,
    #[error("mirror precondition fails for the cut: {0}")]
    CutInvalid(String),
    #[error("domain is not star-shaped: {0}")]
    NotStarShaped(String),
    #[error("grid has no interior nodes (h = {0})")]
    EmptyGrid(f64),
    #[error("vector norm below 1e-14")]
    ZeroVector,
    #[error("eigensolver did not converge after {iterations} iterations (best residuals {residuals:?})")]
    NoConvergence {
        iterations: usize,
        residuals: Vec<f64>,
    },
    #[error("shift-invert factorization failed at shift {0}")]
    ShiftFailure(f64),
    #[error("factorization of A - {0}I met a pivot below threshold")]
    SingularShift(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Solver-side failures as opposed to rejected input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::ShiftFailure(_)
                | Error::SingularShift(_)
                | Error::BracketFailure(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidDomain(_) => "InvalidDomain",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::OrderOverflow { .. } => "OrderOverflow",
            Error::DomainError(_) => "DomainError",
            Error::BracketFailure(_) => "BracketFailure",
            Error::DegenerateCut => "DegenerateCut",
            Error::CutInvalid(_) => "CutInvalid",
            Error::NotStarShaped(_) => "NotStarShaped",
            Error::EmptyGrid(_) => "EmptyGrid",
            Error::ZeroVector => "ZeroVector",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::ShiftFailure(_) => "ShiftFailure",
            Error::SingularShift(_) => "SingularShift",
            Error::Io(_) => "IoError",
            Error::Json(_) => "JsonError",
            Error::Csv(_) => "CsvError",
        }
    }
}
