use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("target unreachable: cover number {actual} is below the requested {target}")]
    TargetUnreachable { target: usize, actual: usize },

    #[error("operation is not available for r = {0}")]
    InfeasibleArity(usize),

    #[error("arity k = {k} is smaller than the part count r = {r}")]
    ArityTooSmall { k: usize, r: usize },

    #[error("input is not a cover: {0}")]
    InputNotACover(String),

    #[error("edge assignment is incompatible with graph edge ({0}, {1})")]
    IncompatibleAssignment(usize, usize),

    #[error("refined component implication violated for vertices {u}, {v} in colour {colour}")]
    RefinementViolation { u: usize, v: usize, colour: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("counterexample found: {0}")]
    CounterexampleFound(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
