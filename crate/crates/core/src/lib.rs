//! Maxwell's equations in 4x4 matrix form on static closed and open universes.
//!
//! The electromagnetic field enters through the complex combinations
//! `psi^k = E^k + i c B^k`, packed into a four-component vector
//! `Psi = (0, psi^1, psi^2, psi^3)`. In flat space the eight real Maxwell
//! equations collapse to `(-i d_0 + alpha^j d_j) Psi = J` for three constant
//! 4x4 matrices; on a curved static background the same structure survives
//! with position-dependent matrices built from an orthonormal tetrad and its
//! spin connection.
//!
//! The crate covers the closed spherical universe S3 and the open hyperbolic
//! universe H3:
//!
//! * [`matrix_core`]: the alpha-matrix algebra, rotation generators, and the
//!   unitary cyclic basis in which `s'_3` is diagonal;
//! * [`geometry`]: metric, tetrad, Christoffel symbols, Ricci rotation
//!   coefficients and the spin connection, with finite-difference oracles;
//! * [`wigner`]: Wigner d- and D-functions, the six contiguous recurrences
//!   used by mode separation, and the closed-form angular action;
//! * [`special`]: the Gauss hypergeometric function for complex parameters;
//! * [`radial`]: closed-form radial profiles, their first- and second-order
//!   residuals, and an adaptive Runge-Kutta oracle;
//! * [`modes`]: the discrete S3 frequency spectrum `omega = n + 1 + j`, full
//!   mode assembly, and curved-operator residuals (analytic and brute-force);
//! * [`flat_check`]: flat-space equivalence of the matrix form with the
//!   classical eight-equation form;
//! * [`verify`]: named checks with tolerances, consumed by the CLI and the
//!   acceptance tests.
//!
//! Numerical kernels are generic over the scalar via [`scalar::Real`];
//! the aliases below fix `f64`, which is what every quoted tolerance assumes.

pub mod error;
pub mod scalar;

pub mod matrix_core;

pub mod geometry;
pub mod ode;
pub mod special;
pub mod wigner;

pub mod radial;

pub mod flat_check;
pub mod modes;

pub mod verify;

pub use error::{Error, Result};
pub use scalar::{clit, cx, i_unit, Cx, Real};

/// Complex double.
pub type C64 = Cx<f64>;
/// 4x4 complex matrix over `f64`.
pub type Matrix4C64 = matrix_core::Matrix4C<f64>;
/// Field vector over `f64`.
pub type FieldVector64 = matrix_core::FieldVector<f64>;
/// Spacetime point over `f64`.
pub type Coordinates64 = geometry::Coordinates<f64>;
/// Background selector over `f64`.
pub type SpaceModel64 = geometry::SpaceModel<f64>;
