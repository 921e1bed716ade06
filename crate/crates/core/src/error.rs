use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge multiplicity must be positive")]
    ZeroMultiplicity,

    #[error("graph is disconnected: infinite average resistance")]
    Disconnected,

    #[error("vertex {0} has no incident edge")]
    IsolatedVertex(usize),

    #[error("operation not allowed on the root vertex {0}")]
    RootVertex(usize),

    #[error("{what}: size {got} exceeds limit {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gave up after {attempts} attempts (best girth reached: {best_girth:?})")]
    AttemptsExhausted {
        attempts: usize,
        best_girth: Option<usize>,
    },

    #[error("girth precondition violated: need girth >= {required}, found {found:?}")]
    GirthTooSmall {
        required: usize,
        found: Option<usize>,
    },

    #[error("ball around vertex {0} is a single vertex")]
    DegenerateBall(usize),

    #[error("flows are defined over different graphs")]
    MismatchedFlows,

    #[error("asymmetric pair resistance: {forward} vs {backward}")]
    NumericalAsymmetry { forward: f64, backward: f64 },

    #[error("conjugate gradient did not converge: {iterations} iterations, relative residual {residual:e}")]
    SolverDiverged { iterations: usize, residual: f64 },

    #[error("matrix is not positive definite (pivot {pivot} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error("certificate violated at vertex {vertex}: ratio {ratio}")]
    CertificateViolated { vertex: usize, ratio: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
