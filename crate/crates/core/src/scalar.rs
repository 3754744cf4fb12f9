//! Scalar abstraction for the numerical kernels.
//!
//! Everything numeric in this crate is generic over a real floating-point
//! type `T: Real`, with complex arithmetic built on `num_complex::Complex<T>`.
//! `f32` instantiations compile and run, but the tolerances quoted throughout
//! the verification suites assume `f64`; the concrete aliases at the crate
//! root pin `f64`.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

/// Real scalar type: IEEE float with transcendental functions, constants and
/// assignment operators, safe to move across threads.
pub trait Real: Float + FloatConst + NumAssign + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` literal into `T`.
    ///
    /// Panics when the literal is not representable (never the case for the
    /// finite constants used in this crate).
    fn lit(x: f64) -> Self {
        Self::from(x).expect("literal not representable in scalar type")
    }

    /// Converts a small integer into `T` exactly.
    fn int(n: i64) -> Self {
        Self::lit(n as f64)
    }

    /// Lossy view as `f64`, for diagnostics and error reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over the crate scalar.
pub type Cx<T> = Complex<T>;

/// Builds a complex number from real scalars.
#[inline]
pub fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

/// Builds a complex number from `f64` literals.
#[inline]
pub fn clit<T: Real>(re: f64, im: f64) -> Cx<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// The imaginary unit.
#[inline]
pub fn i_unit<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::one())
}

/// `n` evenly spaced samples covering `[a, b]` inclusive (`n >= 2`).
pub fn linspace<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    assert!(n >= 2, "linspace needs at least two samples");
    let step = (b - a) / T::int(n as i64 - 1);
    (0..n)
        .map(|k| if k == n - 1 { b } else { a + step * T::int(k as i64) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        assert_eq!(f64::lit(0.5), 0.5);
        assert_eq!(f32::lit(0.25), 0.25f32);
        assert_eq!(f64::int(-3), -3.0);
        assert_eq!(clit::<f64>(1.0, -2.0), Complex::new(1.0, -2.0));
    }

    #[test]
    fn i_unit_squares_to_minus_one() {
        let i = i_unit::<f64>();
        assert_eq!(i * i, Complex::new(-1.0, 0.0));
    }
}
