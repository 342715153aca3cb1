use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("potential tail |V(±x_max)| = {tail:e} MeV exceeds v_tail_tol = {tol:e} MeV")]
    TailTooLarge { tail: f64, tol: f64 },

    #[error(
        "transmission at E = {energy:e} MeV did not converge under grid refinement: \
         T(coarse) = {coarse:e}, T(refined) = {refined:e}"
    )]
    NonConvergence { energy: f64, coarse: f64, refined: f64 },

    #[error("flux not conserved at E = {energy:e} MeV: |T + R - 1| = {defect:e}")]
    FluxDefect { energy: f64, defect: f64 },

    #[error("quadrature did not converge: value {value:e}, error estimate {error:e}")]
    QuadratureNonConvergence { value: f64, error: f64 },

    #[error(
        "T(k)/k does not vanish as k -> 0 ({near_zero:e} at k_min vs {further:e} at 2 k_min); \
         the potential may have a zero-energy resonance"
    )]
    ZeroEnergyDivergence { near_zero: f64, further: f64 },

    #[error("at E = {energy:e} MeV: {source}")]
    AtEnergy { energy: f64, source: Box<Error> },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Whether the error came from a numerical method rather than from bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::InvalidParameter { .. } | Error::TailTooLarge { .. } => false,
            Error::AtEnergy { source, .. } => source.is_numerical(),
            _ => true,
        }
    }
}
