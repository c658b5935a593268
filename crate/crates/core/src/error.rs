use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map is not monotone: {0}")]
    NotMonotone(String),
    #[error("monotone map is not a morphism of the box category: {0}")]
    NotInBoxCategory(String),
    #[error("guard exceeded: {what} = {value} > {limit} (raise with CUBRIG_{env})")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
        env: &'static str,
    },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("complex has a directed loop: {0}")]
    LoopDetected(String),
    #[error("poset is not bounded")]
    Unbounded,
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("truncation bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn guard(
    what: &'static str,
    env: &'static str,
    value: usize,
    limit: usize,
) -> Result<()> {
    if value > limit {
        Err(Error::GuardExceeded {
            what,
            value,
            limit,
            env,
        })
    } else {
        Ok(())
    }
}
