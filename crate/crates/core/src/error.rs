use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite data: {0}")]
    NonFinite(String),

    #[error("quadrature did not converge: achieved error {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("invalid jet: {0}")]
    InvalidJet(String),

    #[error("gap {gap} ({a}, {b}): epsilon quantity is not finite ({quantity})")]
    NonFiniteEpsilon { gap: usize, a: f64, b: f64, quantity: &'static str },

    #[error("gap ({a}, {b}), plane {plane}: bound `{bound}` violated ({value:e} >= eps {eps:e})")]
    PreLemmaBound { a: f64, b: f64, plane: usize, bound: &'static str, value: f64, eps: f64 },

    #[error("internal construction error: {0}")]
    Internal(String),

    #[error("jet rejected: condition `{condition}` fails")]
    Rejected { condition: String },

    #[error(
        "removed measure {removed} does not fit the budget {eps} at this resolution; use a finer grid (currently {cells} cells)"
    )]
    BudgetExceeded { removed: f64, eps: f64, cells: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
