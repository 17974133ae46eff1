use thiserror::Error;

/// Errors raised by the pricing, calibration and optimisation routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("basis is not orthonormal (max deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("eigendecomposition did not converge")]
    EigenConvergence,

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("negative coefficient {0} (claims form a cone)")]
    NegativeCoefficient(f64),

    #[error("negative payout {value} at outcome {outcome}")]
    NegativePayout { outcome: usize, value: f64 },

    #[error("payout {value} at outcome {outcome} must be strictly positive for this utility")]
    NonPositivePayout { outcome: usize, value: f64 },

    #[error("invalid utility parameter {0}: power must lie in (-inf, 1) excluding 0")]
    InvalidUtility(f64),

    #[error("discount factor {0} must lie in (0, 1]")]
    InvalidDiscount(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("calibration system is rank deficient: rank {rank}, required {required}")]
    RankDeficient { rank: usize, required: usize },

    #[error("calibration residual {residual:e} exceeds tolerance {tolerance:e}")]
    CalibrationResidual { residual: f64, tolerance: f64 },

    #[error("calibrated state is not positive (min eigenvalue {0:e}); quotes admit arbitrage")]
    ArbitrageQuotes(f64),

    #[error("degenerate marginal at outcome {outcome}: p = {p:e}, q = {q:e}")]
    DegenerateMarginal { outcome: usize, p: f64, q: f64 },

    #[error("root finder failed: {0}")]
    RootFinder(String),

    #[error("distribution support violation at outcome {outcome}: p = {p:e}, q = {q:e}")]
    SupportViolation { outcome: usize, p: f64, q: f64 },

    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),

    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),

    #[error("zero price for return computation")]
    ZeroPrice,

    #[error("too many rays for exhaustive search: {rays} > {limit}")]
    SearchTooLarge { rays: usize, limit: usize },

    #[error("incidence precondition unmet: {0}")]
    Incidence(String),

    #[error("invalid ray system: {0}")]
    InvalidSystem(String),
}

impl Error {
    /// Numerical failures, as opposed to malformed or inconsistent input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigenConvergence
                | Error::RankDeficient { .. }
                | Error::CalibrationResidual { .. }
                | Error::ArbitrageQuotes(_)
                | Error::RootFinder(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
