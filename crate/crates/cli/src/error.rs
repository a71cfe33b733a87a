use orbitlab_core::OrbitError;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, thiserror::Error)]
#[error("{kind}: {message}")]
pub struct CliError {
    #[serde(skip)]
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PRECONDITION,
            kind: "usage".into(),
            message: message.into(),
        }
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_PRECONDITION,
            kind: "io".into(),
            message: format!("{}: {e}", path.display()),
        }
    }
}

fn kind(e: &OrbitError) -> &'static str {
    match e {
        OrbitError::InputShape(_) => "input_shape",
        OrbitError::Input(_) => "input",
        OrbitError::Format { .. } => "format",
        OrbitError::Jacobi { .. } => "jacobi",
        OrbitError::Indeterminate(_) => "indeterminate",
        OrbitError::Precondition(_) => "precondition",
        OrbitError::AlgorithmFailure(_) => "algorithm_failure",
        OrbitError::CartanValidation { .. } => "cartan_validation",
        OrbitError::Clustering(_) => "clustering",
        OrbitError::NotRegular(_) => "not_regular",
        OrbitError::Degenerate { .. } => "degenerate",
        OrbitError::Stratum(_) => "stratum",
        OrbitError::Conditioning(_) => "conditioning",
    }
}

impl From<OrbitError> for CliError {
    /// Numerical failures of an algorithm on valid input count as failed
    /// verification; everything else is a precondition or format problem.
    fn from(e: OrbitError) -> Self {
        let code = match e {
            OrbitError::AlgorithmFailure(_) | OrbitError::Clustering(_) | OrbitError::NotRegular(_) => {
                EXIT_VERIFICATION
            }
            _ => EXIT_PRECONDITION,
        };
        Self {
            code,
            kind: kind(&e).into(),
            message: e.to_string(),
        }
    }
}
