use thiserror::Error;

use crate::rat::Rat;

/// Everything that can go wrong inside the engine.
///
/// Variants are grouped loosely by the layer that produces them; the CLI maps
/// them onto exit codes through [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    ParseRational(String),

    #[error("interval [{lo}, {hi}] is not a valid closed subinterval of [0,1]")]
    BadInterval { lo: Rat, hi: Rat },

    #[error("point {0} lies outside [0,1]")]
    OutOfUnitInterval(Rat),

    #[error("invalid homeomorphism: {0}")]
    BadHomeo(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("an arithmetic progression with step {step} starting at {start} is present")]
    ApPresent { start: Rat, step: Rat },

    #[error("no triples satisfy the gap constraints (vacuous minimum)")]
    VacuousDefect,

    #[error("malformed cells: {0}")]
    BadCells(String),

    #[error("refinement exhausted at generation {max_gen}: {reason}")]
    RefinementExhausted { max_gen: u32, reason: String },

    #[error("schedule infeasible at stage {stage}: effective step {eps} is below the floor {floor}")]
    ScheduleInfeasible { stage: usize, eps: Rat, floor: Rat },

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// Coarse classification used for exit codes and machine-readable reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    MalformedInput,
    Refinement,
    Verification,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::RefinementExhausted { .. } | Error::ScheduleInfeasible { .. } => ErrorKind::Refinement,
            Error::VerificationFailed(_) => ErrorKind::Verification,
            _ => ErrorKind::MalformedInput,
        }
    }

    /// Short stable tag for JSON error reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::ParseRational(_) => "parse_rational",
            Error::BadInterval { .. } => "bad_interval",
            Error::OutOfUnitInterval(_) => "out_of_unit_interval",
            Error::BadHomeo(_) => "bad_homeo",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::ApPresent { .. } => "ap_present",
            Error::VacuousDefect => "vacuous_defect",
            Error::BadCells(_) => "bad_cells",
            Error::RefinementExhausted { .. } => "refinement_exhausted",
            Error::ScheduleInfeasible { .. } => "schedule_infeasible",
            Error::VerificationFailed(_) => "verification_failed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
