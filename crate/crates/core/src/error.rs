use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("state is not in span{{u, v}} (residual norm {residual:e})")]
    NotInUvSpan { residual: f64 },

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("slit index {index} out of range 1..={count}")]
    SlitIndex { index: usize, count: usize },

    #[error("collapse is only defined on the transmitted state u (distance {distance:e})")]
    UnsupportedCollapse { distance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
