use thiserror::Error;

use crate::model::ProfileFamily;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("interrogation time must be positive, got {0}")]
    NonPositiveDuration(f64),

    #[error("tabulated sample {index} is negative ({value})")]
    NegativeSample { index: usize, value: f64 },

    #[error("tabulated profile is identically zero and cannot be normalized")]
    ZeroProfile,

    #[error("tabulated profile needs at least two samples, got {0}")]
    TooFewSamples(usize),

    #[error("non-finite value for {0}")]
    NonFinite(&'static str),

    #[error("trap parameter `{name}` must be strictly positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e} (estimated error {estimate:e}) within {subdivisions} subdivisions")]
    QuadratureNonConvergence {
        tolerance: f64,
        estimate: f64,
        subdivisions: usize,
    },

    #[error("{0:?} profiles have no closed-form spectrum")]
    UnsupportedFamily(ProfileFamily),

    #[error("time {time} lies outside the interrogation window [0, {duration}]")]
    TimeOutOfRange { time: f64, duration: f64 },

    #[error("resolution {requested} is below the minimum {minimum}")]
    InsufficientResolution { requested: usize, minimum: usize },

    #[error("Fock truncation at {n_max} levels is insufficient: tail mass {tail_mass:e} at t = {time}")]
    TruncationInsufficient {
        n_max: usize,
        tail_mass: f64,
        time: f64,
    },

    #[error("{steps} propagation steps insufficient: step-halving error estimate {estimate:e} exceeds {tolerance:e}")]
    StepCountInsufficient {
        steps: usize,
        estimate: f64,
        tolerance: f64,
    },

    #[error("path has {0} samples; at least 3 are needed for an enclosed area")]
    DegeneratePath(usize),

    #[error("kappa undefined: geometric phase difference {0:e} vanishes (scheme is fully dynamic)")]
    KappaUndefined(f64),

    #[error("index {index} is not admissible for the {family:?} family (spectrum at trap frequency = {spectrum_re} + {spectrum_im}i)")]
    InvalidIndex {
        family: ProfileFamily,
        index: u32,
        spectrum_re: f64,
        spectrum_im: f64,
    },

    #[error("no spectral zero in bracket [{lower}, {upper}]: best |W(omega0)|^2 = {best:e}")]
    NoZeroInBracket { lower: f64, upper: f64, best: f64 },

    #[error("quantum Fisher information formula requires omega0*T = 2*K*pi; got omega0*T/(2*pi) = {0}")]
    QfiFormulaInvalid(f64),
}

impl Error {
    /// True for failures of a numerical method (as opposed to invalid input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNonConvergence { .. }
                | Error::TruncationInsufficient { .. }
                | Error::StepCountInsufficient { .. }
                | Error::NoZeroInBracket { .. }
        )
    }
}
