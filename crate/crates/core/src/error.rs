use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes shared across the crate.
///
/// Scalar payloads are reported as `f64` regardless of the instantiated
/// scalar type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix index {index} outside the valid range 0..=3")]
    IndexRange { index: usize },

    #[error("{what} = {value} lies at or beyond a singular coordinate boundary")]
    SingularCoordinate { what: &'static str, value: f64 },

    #[error("angular numbers out of range: j = {j}, m = {m} (need {min_j} <= j <= 30 and |m| <= j)")]
    AngularRange { j: u32, m: i32, min_j: u32 },

    #[error("hypergeometric series did not converge within {terms} terms at |z| = {abs_z:.6}")]
    SeriesDiverged { terms: usize, abs_z: f64 },

    #[error("hypergeometric series used outside its disk of convergence: |z| = {abs_z:.6}")]
    SeriesDomain { abs_z: f64 },

    #[error("gamma = {gamma_re}{gamma_im:+}i hits a series pole before termination")]
    GammaPole { gamma_re: f64, gamma_im: f64 },

    #[error("omega = {omega} is not quantized for j = {j}: closed S3 profiles need omega = n + 1 + j")]
    NotQuantized { omega: f64, j: u32 },

    #[error("parameter {what} = {value}: {need}")]
    Parameter {
        what: &'static str,
        value: f64,
        need: &'static str,
    },

    #[error("adaptive integrator step size underflowed at t = {t}")]
    StepUnderflow { t: f64 },

    #[error("adaptive integrator exceeded {max_steps} steps")]
    StepBudget { max_steps: usize },

    #[error("auxiliary component magnitude {magnitude:.3e} exceeds the physical-state bound {bound:.3e}")]
    NotPhysical { magnitude: f64, bound: f64 },
}
