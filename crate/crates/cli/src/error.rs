use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parameter error: {0}")]
    Param(String),
    #[error(transparent)]
    Core(#[from] vortexion_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 1 io, 2 parameters, 3 convergence or resolution, 4 capacity.
    pub fn exit_code(&self) -> i32 {
        use vortexion_core::Error as E;
        match self {
            CliError::Param(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                E::Domain(_) | E::Neutrality(_) | E::Coverage { .. } => 2,
                E::Convergence { .. } | E::Resolution(_) | E::Ambiguous(_) => 3,
                E::Capacity { .. } => 4,
            },
        }
    }
}
