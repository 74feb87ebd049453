use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma function pole at {0}")]
    Pole(i64),

    #[error("quadrature did not converge: best estimate {estimate:e}, error estimate {error:e}")]
    Accuracy { estimate: f64, error: f64 },

    #[error("decay hint inconsistent with samples: {0}")]
    Hint(String),

    #[error("kernel zero search failed: {0}")]
    KernelZero(String),

    #[error("grid [{grid_min}, {grid_max}] does not cover the required range [{need_min}, {need_max}]")]
    Coverage {
        grid_min: f64,
        grid_max: f64,
        need_min: f64,
        need_max: f64,
    },

    #[error("log-grid truncation: {0}")]
    Range(String),

    #[error("step {step} does not resolve the oscillation (limit {limit})")]
    Resolution { step: f64, limit: f64 },

    #[error("matching point contaminated by residual potential {potential:e} (estimated phase bias {bias:e})")]
    Contamination { potential: f64, bias: f64 },

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
