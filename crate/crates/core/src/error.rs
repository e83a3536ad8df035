use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation received an out-of-contract parameter.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// Input data (samples, grids, files) is malformed or inconsistent.
    #[error("invalid input: {0}")]
    Input(String),
    /// A material model was evaluated outside its validity range.
    #[error("{medium}: wavelength {wavelength_nm:.1} nm is outside the validity range [{min_nm}, {max_nm}] nm")]
    Domain {
        medium: String,
        wavelength_nm: f64,
        min_nm: f64,
        max_nm: f64,
    },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("fit failed: {0}")]
    Fit(String),
    /// The interferogram does not have the expected single-feature shape.
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the caller's inputs rather than by the numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Parameter(_)
                | Error::Input(_)
                | Error::Domain { .. }
                | Error::Io(_)
                | Error::Csv(_)
                | Error::Json(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
