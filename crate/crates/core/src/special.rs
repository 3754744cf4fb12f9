//! Gauss hypergeometric function for complex parameters and argument.
//!
//! Two evaluation paths:
//! * polynomial: if `alpha` (or `beta`) is a non-positive integer `-n`, the
//!   series terminates after `n + 1` terms and is valid for any `z`;
//! * series: the defining power series inside `|z| < 1`.
//!
//! No transformation-formula continuation is provided. Radial profiles on
//! the open model keep `|z| < 1`, and the closed model only ever needs the
//! polynomial path; callers needing values closer to `z = 1` than the series
//! can deliver switch to ODE continuation (see the radial module).

use crate::error::{Error, Result};
use crate::scalar::{cx, Cx, Real};

/// Relative size at which a series term counts as negligible.
const TERM_CUTOFF: f64 = 1e-17;
/// Consecutive negligible terms required before stopping (guards against
/// oscillating complex terms passing through zero).
const QUIET_TERMS: usize = 3;
const MAX_TERMS: usize = 10_000;
/// Slack for recognizing non-positive integers in floating parameters.
const INT_EPS: f64 = 1e-9;

/// Parameter triple of `F(alpha, beta, gamma; z)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct HypParams<T> {
    pub alpha: Cx<T>,
    pub beta: Cx<T>,
    pub gamma: Cx<T>,
}

impl<T: Real> HypParams<T> {
    pub fn new(alpha: Cx<T>, beta: Cx<T>, gamma: Cx<T>) -> Self {
        Self { alpha, beta, gamma }
    }

    /// All three parameters from plain reals.
    pub fn real(alpha: T, beta: T, gamma: T) -> Self {
        Self::new(cx(alpha, T::zero()), cx(beta, T::zero()), cx(gamma, T::zero()))
    }

    /// Degree of the terminating polynomial, if any: the smallest `n` with
    /// `alpha = -n` or `beta = -n`.
    pub fn polynomial_degree(&self) -> Option<u32> {
        match (neg_int(self.alpha), neg_int(self.beta)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }
}

fn neg_int<T: Real>(x: Cx<T>) -> Option<u32> {
    if x.im.abs().as_f64() > INT_EPS {
        return None;
    }
    let re = x.re.as_f64();
    if re > INT_EPS {
        return None;
    }
    let n = (-re).round();
    if (re + n).abs() <= INT_EPS && n <= u32::MAX as f64 {
        Some(n as u32)
    } else {
        None
    }
}

/// `F(alpha, beta, gamma; z)`.
///
/// Polynomial parameters are accepted at any `z`; otherwise the series
/// requires `|z| < 1` and `gamma` away from the non-positive integers.
pub fn hyp2f1<T: Real>(p: HypParams<T>, z: Cx<T>) -> Result<Cx<T>> {
    match p.polynomial_degree() {
        Some(n) => sum_polynomial(p, z, n),
        None => sum_series(p, z),
    }
}

/// `d/dz F(alpha, beta, gamma; z) = (alpha beta / gamma) F(alpha+1, beta+1, gamma+1; z)`.
pub fn hyp2f1_derivative<T: Real>(p: HypParams<T>, z: Cx<T>) -> Result<Cx<T>> {
    if p.gamma.norm().as_f64() < INT_EPS {
        return Err(Error::GammaPole {
            gamma_re: p.gamma.re.as_f64(),
            gamma_im: p.gamma.im.as_f64(),
        });
    }
    // alpha = 0 or beta = 0 makes F constant; the shifted series may not even
    // converge, but the zero prefactor settles the value.
    if neg_int(p.alpha) == Some(0) || neg_int(p.beta) == Some(0) {
        return Ok(cx(T::zero(), T::zero()));
    }
    let one = cx(T::one(), T::zero());
    let shifted = HypParams::new(p.alpha + one, p.beta + one, p.gamma + one);
    let scale = p.alpha * p.beta / p.gamma;
    Ok(scale * hyp2f1(shifted, z)?)
}

/// Second `z`-derivative, via one more contiguous shift. The short-circuits
/// in [`hyp2f1_derivative`] keep terminating cases terminating.
pub fn hyp2f1_second_derivative<T: Real>(p: HypParams<T>, z: Cx<T>) -> Result<Cx<T>> {
    if neg_int(p.alpha) == Some(0) || neg_int(p.beta) == Some(0) {
        return Ok(cx(T::zero(), T::zero()));
    }
    if p.gamma.norm().as_f64() < INT_EPS {
        return Err(Error::GammaPole {
            gamma_re: p.gamma.re.as_f64(),
            gamma_im: p.gamma.im.as_f64(),
        });
    }
    let one = cx(T::one(), T::zero());
    let shifted = HypParams::new(p.alpha + one, p.beta + one, p.gamma + one);
    let scale = p.alpha * p.beta / p.gamma;
    Ok(scale * hyp2f1_derivative(shifted, z)?)
}

fn pole_error<T: Real>(gamma: Cx<T>) -> Error {
    Error::GammaPole {
        gamma_re: gamma.re.as_f64(),
        gamma_im: gamma.im.as_f64(),
    }
}

/// Exactly `n + 1` terms; `gamma` may be a non-positive integer as long as
/// the pole index lies beyond the terminating one.
fn sum_polynomial<T: Real>(p: HypParams<T>, z: Cx<T>, n: u32) -> Result<Cx<T>> {
    let mut term = cx(T::one(), T::zero());
    let mut sum = term;
    for k in 0..n {
        let kf = T::int(k as i64);
        let gk = p.gamma + cx(kf, T::zero());
        if gk.norm().as_f64() < INT_EPS {
            return Err(pole_error(p.gamma));
        }
        let num = (p.alpha + cx(kf, T::zero())) * (p.beta + cx(kf, T::zero()));
        term = term * num * z / (gk * (kf + T::one()));
        sum += term;
    }
    Ok(sum)
}

fn sum_series<T: Real>(p: HypParams<T>, z: Cx<T>) -> Result<Cx<T>> {
    let abs_z = z.norm().as_f64();
    if abs_z >= 1.0 {
        return Err(Error::SeriesDomain { abs_z });
    }
    let cutoff = T::lit(TERM_CUTOFF);
    let mut term = cx(T::one(), T::zero());
    let mut sum = term;
    let mut quiet = 0usize;
    for k in 0..MAX_TERMS {
        let kf = T::int(k as i64);
        let gk = p.gamma + cx(kf, T::zero());
        if gk.norm().as_f64() < INT_EPS {
            return Err(pole_error(p.gamma));
        }
        let num = (p.alpha + cx(kf, T::zero())) * (p.beta + cx(kf, T::zero()));
        term = term * num * z / (gk * (kf + T::one()));
        sum += term;
        if term.norm() < cutoff * sum.norm() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::SeriesDiverged {
        terms: MAX_TERMS,
        abs_z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;
    use num::BigInt;

    fn c(re: f64, im: f64) -> Cx<f64> {
        cx(re, im)
    }

    /// Complex rational arithmetic, enough for an exact termwise oracle.
    #[derive(Clone, PartialEq, Debug)]
    struct QC(BigRational, BigRational);

    impl QC {
        fn int(n: i64) -> Self {
            QC(BigRational::from(BigInt::from(n)), BigRational::from(BigInt::from(0)))
        }
        fn mul(&self, o: &QC) -> Self {
            QC(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
        }
        fn div_int(&self, d: i64) -> Self {
            let q = BigRational::from(BigInt::from(d));
            QC(&self.0 / &q, &self.1 / &q)
        }
        fn add(&self, o: &QC) -> Self {
            QC(&self.0 + &o.0, &self.1 + &o.1)
        }
        fn to_cx(&self) -> Cx<f64> {
            use num::ToPrimitive;
            c(self.0.to_f64().unwrap(), self.1.to_f64().unwrap())
        }
    }

    /// Termwise rational summation of the terminating series for integer
    /// parameters and Gaussian-rational z.
    fn exact_poly(alpha: i64, beta: i64, gamma: i64, z: (i64, i64), n: u32) -> Cx<f64> {
        let zq = QC(
            BigRational::from(BigInt::from(z.0)),
            BigRational::from(BigInt::from(z.1)),
        );
        let mut term = QC::int(1);
        let mut sum = term.clone();
        for k in 0..n as i64 {
            let num = QC::int(alpha + k).mul(&QC::int(beta + k));
            term = term.mul(&num).mul(&zq).div_int(gamma + k).div_int(k + 1);
            sum = sum.add(&term);
        }
        sum.to_cx()
    }

    #[test]
    fn zero_degree_polynomial_is_one() {
        let p = HypParams::real(0.0, 3.7, 1.2);
        for &z in &[c(0.3, 0.1), c(5.0, -2.0), c(100.0, 0.0)] {
            assert_eq!(hyp2f1(p, z).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn degree_one_polynomial() {
        let (beta, gamma) = (2.5, 4.0);
        let p = HypParams::real(-1.0, beta, gamma);
        let z = c(1.7, -0.4);
        let want = c(1.0, 0.0) - z * (beta / gamma);
        assert!((hyp2f1(p, z).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn matches_exact_rational_summation() {
        let got = hyp2f1(HypParams::real(-2.0, 2.0, 4.0), c(1.0, 1.0)).unwrap();
        let want = exact_poly(-2, 2, 4, (1, 1), 2);
        assert!((got - want).norm() < 1e-14, "{got} vs {want}");
        // F(-2, 2, 4; 1+i) = 1 - (1+i) + (3/10)(2i) = -0.4i
        assert!((got - c(0.0, -0.4)).norm() < 1e-15);
    }

    #[test]
    fn polynomial_matches_rational_widely() {
        for (a, b, g, z) in [
            (-3i64, 5i64, 7i64, (2i64, -1i64)),
            (-7, 2, 9, (1, 3)),
            (-20, 3, 11, (1, 0)),
            (-5, -9, 4, (0, 2)),
        ] {
            let p = HypParams::real(a as f64, b as f64, g as f64);
            let zc = c(z.0 as f64, z.1 as f64);
            let n = p.polynomial_degree().unwrap();
            let got = hyp2f1(p, zc).unwrap();
            let want = exact_poly(a, b, g, z, n);
            let rel = (got - want).norm() / want.norm().max(1.0);
            assert!(rel < 1e-13, "({a},{b},{g};{z:?}): {got} vs {want}");
        }
    }

    #[test]
    fn series_parameter_symmetry() {
        let z = c(0.35, 0.2);
        for (a, b, g) in [(0.7, 1.9, 2.3), (1.1, -0.4, 3.0), (2.2, 0.9, 1.7)] {
            let f1 = hyp2f1(HypParams::real(a, b, g), z).unwrap();
            let f2 = hyp2f1(HypParams::real(b, a, g), z).unwrap();
            assert!((f1 - f2).norm() / f1.norm() < 1e-13);
        }
    }

    #[test]
    fn series_agrees_with_log_closed_form() {
        // F(1, 1, 2; z) = -ln(1-z)/z
        let z = c(0.4, -0.3);
        let got = hyp2f1(HypParams::real(1.0, 1.0, 2.0), z).unwrap();
        let want = -(c(1.0, 0.0) - z).ln() / z;
        assert!((got - want).norm() < 1e-14);
    }

    #[test]
    fn gauss_contiguous_relation() {
        // gamma [F(a+1,b,g) - F(a,b,g)] = b z F(a+1,b+1,g+1)
        let z = c(0.41, -0.23);
        for (a, b, g) in [(0.6, 1.3, 2.1), (-0.8, 2.4, 3.7), (1.9, 0.5, 1.2)] {
            let f_a = hyp2f1(HypParams::real(a, b, g), z).unwrap();
            let f_a1 = hyp2f1(HypParams::real(a + 1.0, b, g), z).unwrap();
            let f_shift = hyp2f1(HypParams::real(a + 1.0, b + 1.0, g + 1.0), z).unwrap();
            let resid = (c(g, 0.0) * (f_a1 - f_a) - z * f_shift * b).norm();
            assert!(resid < 1e-12, "({a},{b},{g}): {resid}");
        }
    }

    #[test]
    fn derivative_of_linear_polynomial_is_constant() {
        let (beta, gamma) = (3.3, 5.1);
        let p = HypParams::real(-1.0, beta, gamma);
        for &z in &[c(0.2, 0.0), c(2.0, 3.0)] {
            let d = hyp2f1_derivative(p, z).unwrap();
            assert!((d - c(-beta / gamma, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let p = HypParams::real(0.0, 1.4, 2.2);
        assert_eq!(hyp2f1_derivative(p, c(0.7, 0.1)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn second_derivative_of_low_degree_polynomials_vanishes() {
        // alpha in {0, -1} keeps F at most linear, even for |z| > 1.
        let z = c(1.6, 0.4);
        for a in [0.0, -1.0] {
            let p = HypParams::real(a, 1.4, 2.2);
            assert_eq!(hyp2f1_second_derivative(p, z).unwrap(), c(0.0, 0.0));
        }
    }

    #[test]
    fn second_derivative_matches_central_difference() {
        let p = HypParams::real(0.8, 1.7, 2.9);
        let z = c(0.3, 0.2);
        let h = 1e-5;
        let fd = (hyp2f1_derivative(p, z + c(h, 0.0)).unwrap()
            - hyp2f1_derivative(p, z - c(h, 0.0)).unwrap())
            / c(2.0 * h, 0.0);
        let an = hyp2f1_second_derivative(p, z).unwrap();
        assert!((fd - an).norm() < 1e-8, "{fd} vs {an}");
    }

    #[test]
    fn derivative_matches_central_difference() {
        let p = HypParams::real(0.8, 1.7, 2.9);
        let z = c(0.3, 0.2);
        let h = 1e-6;
        let fd = (hyp2f1(p, z + c(h, 0.0)).unwrap() - hyp2f1(p, z - c(h, 0.0)).unwrap())
            / c(2.0 * h, 0.0);
        let an = hyp2f1_derivative(p, z).unwrap();
        assert!((fd - an).norm() < 1e-8, "{fd} vs {an}");
    }

    #[test]
    fn series_rejects_unit_disk_boundary() {
        let p = HypParams::real(0.5, 0.5, 1.5);
        assert!(matches!(
            hyp2f1(p, c(1.0, 0.0)),
            Err(Error::SeriesDomain { .. })
        ));
        assert!(matches!(
            hyp2f1(p, c(0.8, 0.8)),
            Err(Error::SeriesDomain { .. })
        ));
    }

    #[test]
    fn gamma_pole_detection() {
        // Pole hit before polynomial termination: gamma = -1 with alpha = -3.
        let p = HypParams::real(-3.0, 2.0, -1.0);
        assert!(matches!(hyp2f1(p, c(0.3, 0.0)), Err(Error::GammaPole { .. })));
        // Pole beyond termination is harmless: alpha = -1 stops at k = 1,
        // denominator gamma + 0 = -2 is fine.
        let p = HypParams::real(-1.0, 2.0, -2.0);
        assert!(hyp2f1(p, c(0.3, 0.0)).is_ok());
        // Irregular-branch shape: beta and gamma both non-positive integers,
        // beta terminating first.
        let p = HypParams::real(-3.0, -1.0, -2.0);
        assert!(hyp2f1(p, c(0.4, 0.0)).is_ok());
    }

    #[test]
    fn complex_parameters_series() {
        // F with complex parameters at modest |z| converges and respects
        // the symmetry in (alpha, beta).
        let p = HypParams::new(c(1.2, -0.7), c(0.4, 0.3), c(2.0, 0.1));
        let q = HypParams::new(c(0.4, 0.3), c(1.2, -0.7), c(2.0, 0.1));
        let z = c(0.5, 0.2);
        let (f1, f2) = (hyp2f1(p, z).unwrap(), hyp2f1(q, z).unwrap());
        assert!((f1 - f2).norm() / f1.norm() < 1e-13);
    }

    #[test]
    fn f32_smoke() {
        let p = HypParams::<f32>::real(-2.0, 2.0, 4.0);
        let got = hyp2f1(p, cx(1.0f32, 1.0)).unwrap();
        assert!((got - cx(0.0f32, -0.4)).norm() < 1e-6);
    }
}
