use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spin {0}: expected a non-negative integer")]
    InvalidSpin(f64),

    #[error("spin {spin} too small for {context}: need at least {min}")]
    SpinTooSmall {
        spin: u32,
        min: u32,
        context: &'static str,
    },

    #[error("singular parameters a={a}, b={b}: condition 1-a-b=0 (|1-a-b| must exceed 1e-9)")]
    SingularParams { a: f64, b: f64 },

    #[error("parameters a={a}, b={b} rejected: {reason}")]
    Unsupported { a: f64, b: f64, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("joint spectrum of {irrep} still degenerate after {attempts} mixing draws (worst residual {residual:e})")]
    Degeneracy {
        irrep: String,
        attempts: usize,
        residual: f64,
    },

    #[error("projector {irrep}: numerical rank {rank} disagrees with trace {trace}")]
    RankMismatch {
        irrep: String,
        rank: usize,
        trace: usize,
    },

    #[error("matrix is not a signed permutation ({0})")]
    NotMonomial(String),

    #[error("{}", transport_message(.step, .reason, .crossing))]
    Transport {
        step: usize,
        reason: String,
        crossing: Option<String>,
    },
}

fn transport_message(step: &usize, reason: &str, crossing: &Option<String>) -> String {
    match crossing {
        Some(c) => format!("cell transport failed at step {step} while crossing {c}: {reason}"),
        None => format!("cell transport failed at step {step}: {reason}"),
    }
}

impl Error {
    /// Bad input as opposed to a numerical breakdown.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidSpin(_)
                | Error::SpinTooSmall { .. }
                | Error::SingularParams { .. }
                | Error::Unsupported { .. }
                | Error::InvalidArgument(_)
        )
    }
}
