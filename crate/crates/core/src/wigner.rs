//! Wigner d- and D-functions and the angular structure of the modes.
//!
//! Conventions follow the standard angular-momentum normalization in which
//!
//! ```text
//! D^j_{m1 m2}(phi, theta, 0) = exp(-i m1 phi) d^j_{m1 m2}(theta),
//! d^1_{0 0} = cos(theta),      d^1_{1 0} = -sin(theta)/sqrt(2),
//! ```
//!
//! with the factorial-sum formula
//!
//! ```text
//! d^j_{m1 m2} = sum_s (-1)^{m1 - m2 + s} sqrt[(j+m1)!(j-m1)!(j+m2)!(j-m2)!]
//!               / [(j+m2-s)! s! (m1-m2+s)! (j-m1-s)!]
//!               * cos(theta/2)^{2j+m2-m1-2s} * sin(theta/2)^{m1-m2+2s}.
//! ```
//!
//! A mode with magnetic number `m` uses the triple `D_sigma =
//! D^j_{-m,sigma}`, `sigma = -1, 0, +1`. Those three functions satisfy six
//! contiguous relations in `sigma` (the derivative/ladder pairs checked by
//! [`recurrence_residuals`]), and the angular block of the field operator
//! acts on `(0, f1 D_-1, f2 D_0, f3 D_+1)` as multiplication by the
//! closed-form coefficients of [`angular_action`]:
//!
//! ```text
//! Sigma'_{theta phi} Psi' = (nu/sqrt(2)) *
//!     ( (f1+f3) D_0, -i f2 D_-1, i (f1-f3) D_0, i f2 D_+1 ),
//! nu = sqrt(j(j+1)).
//! ```

use crate::error::{Error, Result};
use crate::scalar::{cx, Cx, Real};

/// Largest supported level; keeps every factorial in range of an exact `f64`
/// product without resorting to logarithms.
pub const J_MAX: u32 = 30;

/// `D_sigma` slot layout of [`angular_action`] output: which `D` each of the
/// four coefficients multiplies.
pub const ACTION_SLOT_SIGMA: [i32; 4] = [0, -1, 0, 1];

const FACT_LEN: usize = 2 * J_MAX as usize + 1;

const FACT: [f64; FACT_LEN] = {
    let mut t = [1.0f64; FACT_LEN];
    let mut k = 1;
    while k < FACT_LEN {
        t[k] = t[k - 1] * k as f64;
        k += 1;
    }
    t
};

#[inline]
fn fact(n: i32) -> f64 {
    debug_assert!((0..FACT_LEN as i32).contains(&n));
    FACT[n as usize]
}

/// Mode labels `(j, m, sigma)` with `sigma` the cyclic component index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AngularIndex {
    pub j: u32,
    pub m: i32,
    pub sigma: i32,
}

impl AngularIndex {
    pub fn new(j: u32, m: i32, sigma: i32) -> Result<Self> {
        check_range(j, m, 1)?;
        if sigma.unsigned_abs() > j {
            return Err(Error::AngularRange { j, m: sigma, min_j: 1 });
        }
        Ok(Self { j, m, sigma })
    }
}

/// The two square-root factors entering the recurrences:
/// `nu = sqrt(j(j+1))` and `a_ang = sqrt((j-1)(j+2))` (zero at `j = 1`).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct AngularFactors<T> {
    pub nu: T,
    pub a_ang: T,
}

impl<T: Real> AngularFactors<T> {
    pub fn new(j: u32) -> Result<Self> {
        if j < 1 || j > J_MAX {
            return Err(Error::AngularRange { j, m: 0, min_j: 1 });
        }
        let jf = T::int(j as i64);
        Ok(Self {
            nu: (jf * (jf + T::one())).sqrt(),
            a_ang: ((jf - T::one()) * (jf + T::int(2))).sqrt(),
        })
    }
}

fn check_range(j: u32, m: i32, min_j: u32) -> Result<()> {
    if j < min_j || j > J_MAX || m.unsigned_abs() > j {
        return Err(Error::AngularRange { j, m, min_j });
    }
    Ok(())
}

/// Term-by-term evaluation shared by the d-function and its theta-derivative.
/// `deriv = false` accumulates `cos^p sin^q` terms, `deriv = true` their
/// theta-derivatives.
fn d_sum<T: Real>(j: i32, m1: i32, m2: i32, theta: T, deriv: bool) -> T {
    let pref = (fact(j + m1) * fact(j - m1) * fact(j + m2) * fact(j - m2)).sqrt();
    let s_min = 0.max(m2 - m1);
    let s_max = (j + m2).min(j - m1);
    let half = theta / T::int(2);
    let (ch, sh) = (half.cos(), half.sin());
    let mut acc = T::zero();
    let mut s = s_min;
    while s <= s_max {
        let sign = if (m1 - m2 + s) % 2 == 0 { 1.0 } else { -1.0 };
        let coeff =
            sign * pref / (fact(j + m2 - s) * fact(s) * fact(m1 - m2 + s) * fact(j - m1 - s));
        let p = 2 * j + m2 - m1 - 2 * s; // cos exponent
        let q = m1 - m2 + 2 * s; // sin exponent
        let term = if deriv {
            // d/dtheta [ch^p sh^q] = (q/2) ch^{p+1} sh^{q-1} - (p/2) ch^{p-1} sh^{q+1}
            let mut t = T::zero();
            if q > 0 {
                t = t + T::int(q as i64) * ch.powi(p + 1) * sh.powi(q - 1);
            }
            if p > 0 {
                t = t - T::int(p as i64) * ch.powi(p - 1) * sh.powi(q + 1);
            }
            t * T::lit(0.5)
        } else {
            ch.powi(p) * sh.powi(q)
        };
        acc = acc + T::lit(coeff) * term;
        s += 1;
    }
    acc
}

/// Wigner small-d function `d^j_{m1 m2}(theta)`.
pub fn small_d<T: Real>(j: u32, m1: i32, m2: i32, theta: T) -> Result<T> {
    check_range(j, m1, 0)?;
    check_range(j, m2, 0)?;
    Ok(d_sum(j as i32, m1, m2, theta, false))
}

/// Analytic theta-derivative of [`small_d`] (term-by-term, no finite
/// differences).
pub fn small_d_dtheta<T: Real>(j: u32, m1: i32, m2: i32, theta: T) -> Result<T> {
    check_range(j, m1, 0)?;
    check_range(j, m2, 0)?;
    Ok(d_sum(j as i32, m1, m2, theta, true))
}

/// Full `D^j_{m1 m2}(phi, theta, 0) = exp(-i m1 phi) d^j_{m1 m2}(theta)`.
pub fn big_d<T: Real>(j: u32, m1: i32, m2: i32, phi: T, theta: T) -> Result<Cx<T>> {
    let d = small_d(j, m1, m2, theta)?;
    let phase = cx(T::zero(), -T::int(m1 as i64) * phi).exp();
    Ok(phase * d)
}

/// `d^j_{-m,sigma}`, taken as zero outside `|sigma| <= j` (the convention
/// the ladder relations rely on).
fn d_or_zero<T: Real>(j: u32, m: i32, sigma: i32, theta: T, deriv: bool) -> T {
    if sigma.unsigned_abs() > j {
        T::zero()
    } else {
        d_sum(j as i32, -m, sigma, theta, deriv)
    }
}

/// Residuals of the six contiguous relations among `D_sigma = d^j_{-m,sigma}`
/// at one angle, ordered as (derivative, ladder) pairs for
/// `sigma = -1, 0, +1`:
///
/// ```text
/// d/dtheta D_-1              = (a D_-2 - nu D_0) / 2
/// (m - cos)/sin * D_-1       = (a D_-2 + nu D_0) / 2
/// d/dtheta D_0               = nu (D_-1 - D_+1) / 2
/// m/sin * D_0                = nu (D_-1 + D_+1) / 2
/// d/dtheta D_+1              = (nu D_0 - a D_+2) / 2
/// (m + cos)/sin * D_+1       = (nu D_0 + a D_+2) / 2
/// ```
pub fn recurrence_residuals<T: Real>(j: u32, m: i32, theta: T) -> Result<[T; 6]> {
    check_range(j, m, 1)?;
    let f = AngularFactors::<T>::new(j)?;
    let (nu, a) = (f.nu, f.a_ang);
    let d = |sigma: i32| d_or_zero(j, m, sigma, theta, false);
    let dd = |sigma: i32| d_or_zero(j, m, sigma, theta, true);
    let (st, ct) = (theta.sin(), theta.cos());
    let mf = T::int(m as i64);
    let half = T::lit(0.5);
    Ok([
        (dd(-1) - half * (a * d(-2) - nu * d(0))).abs(),
        ((mf - ct) / st * d(-1) - half * (a * d(-2) + nu * d(0))).abs(),
        (dd(0) - half * nu * (d(-1) - d(1))).abs(),
        (mf / st * d(0) - half * nu * (d(-1) + d(1))).abs(),
        (dd(1) - half * (nu * d(0) - a * d(2))).abs(),
        ((mf + ct) / st * d(1) - half * (nu * d(0) + a * d(2))).abs(),
    ])
}

/// Closed-form coefficients of the angular operator acting on a state with
/// radial profile `(f1, f2, f3)`. Slot `k` multiplies `D_sigma` with
/// `sigma = ACTION_SLOT_SIGMA[k]`.
pub fn angular_action<T: Real>(j: u32, f: [Cx<T>; 3]) -> Result<[Cx<T>; 4]> {
    let factors = AngularFactors::<T>::new(j)?;
    let s = factors.nu * T::FRAC_1_SQRT_2();
    let i = cx(T::zero(), T::one());
    Ok([
        (f[0] + f[2]) * s,
        -i * f[1] * s,
        i * (f[0] - f[2]) * s,
        i * f[1] * s,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, PI};

    #[test]
    fn j1_table() {
        let th = 0.7f64;
        let r2 = std::f64::consts::SQRT_2;
        assert!((small_d(1, 0, 0, th).unwrap() - th.cos()).abs() < 1e-15);
        assert!((small_d(1, 1, 0, th).unwrap() + th.sin() / r2).abs() < 1e-15);
        assert!((small_d(1, 0, 1, th).unwrap() - th.sin() / r2).abs() < 1e-15);
        assert!((small_d(1, 1, 1, th).unwrap() - (1.0 + th.cos()) / 2.0).abs() < 1e-15);
        assert!((small_d(1, 1, -1, th).unwrap() - (1.0 - th.cos()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn j2_center_value() {
        let th = 1.1f64;
        let want = 0.5 * (3.0 * th.cos().powi(2) - 1.0);
        assert!((small_d(2, 0, 0, th).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn unit_at_zero_angle() {
        for j in 0..=8u32 {
            for m in -(j as i32)..=(j as i32) {
                assert!((small_d(j, m, m, 0.0f64).unwrap() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-5;
        for j in 1..=6u32 {
            for &(m1, m2) in &[(0i32, 0i32), (1, -1), (j as i32, 0), (-(2i32.min(j as i32)), 1)] {
                if m1.unsigned_abs() > j || m2.unsigned_abs() > j {
                    continue;
                }
                for &th in &[0.3f64, 1.0, 2.4] {
                    let fd = (small_d(j, m1, m2, th + h).unwrap()
                        - small_d(j, m1, m2, th - h).unwrap())
                        / (2.0 * h);
                    let an = small_d_dtheta(j, m1, m2, th).unwrap();
                    assert!(
                        (fd - an).abs() < 1e-6,
                        "j={j} m1={m1} m2={m2} theta={th}: {fd} vs {an}"
                    );
                }
            }
        }
    }

    #[test]
    fn recurrences_tight_for_moderate_j() {
        for j in 1..=8u32 {
            for m in -(j as i32)..=(j as i32) {
                for k in 1..50 {
                    let th = 0.1 + (PI - 0.2) * (k as f64) / 50.0;
                    let res = recurrence_residuals(j, m, th).unwrap();
                    for (idx, r) in res.iter().enumerate() {
                        assert!(*r < 1e-10, "j={j} m={m} theta={th} relation {idx}: {r}");
                    }
                }
            }
        }
    }

    #[test]
    fn action_coefficients_special_cases() {
        let nu = 6.0f64.sqrt();
        let f = cx(0.8, -0.3);
        // f1 = f3, f2 = 0 collapses onto the first slot.
        let out = angular_action(2, [f, cx(0.0, 0.0), f]).unwrap();
        assert!((out[0] - f * (2.0 * nu / 2.0f64.sqrt())).norm() < 1e-15);
        assert!(out[1].norm() == 0.0 && out[2].norm() < 1e-16 && out[3].norm() == 0.0);
        // f1 = -f3, f2 = 0 collapses onto the third slot.
        let out = angular_action(2, [f, cx(0.0, 0.0), -f]).unwrap();
        assert!(out[0].norm() < 1e-16);
        assert!((out[2] - cx(0.0, 1.0) * f * (2.0 * nu / 2.0f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn range_checks() {
        assert!(small_d(3, 4, 0, 1.0f64).is_err());
        assert!(small_d(J_MAX + 1, 0, 0, 1.0f64).is_err());
        assert!(recurrence_residuals(0, 0, 1.0f64).is_err());
        assert!(AngularFactors::<f64>::new(0).is_err());
        assert!(AngularIndex::new(2, 1, -2).is_ok());
        assert!(AngularIndex::new(1, 1, -2).is_err());
    }

    #[test]
    fn a_ang_vanishes_at_j1() {
        let f = AngularFactors::<f64>::new(1).unwrap();
        assert_eq!(f.a_ang, 0.0);
        assert!((f.nu - 2.0f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn big_d_carries_first_index_phase() {
        let (j, m1, m2) = (3, 2, -1);
        let (phi, th) = (0.9f64, FRAC_PI_3);
        let d = big_d(j, m1, m2, phi, th).unwrap();
        let want = cx(0.0, -(m1 as f64) * phi).exp() * small_d(j, m1, m2, th).unwrap();
        assert!((d - want).norm() < 1e-16);
    }

    proptest! {
        #[test]
        fn phase_never_changes_magnitude(
            j in 1u32..=6,
            phi in -6.0f64..6.0,
            theta in 0.05f64..3.0,
        ) {
            let m1 = (j as i32).min(2);
            let d = big_d(j, m1, 0, phi, theta).unwrap();
            let plain = small_d(j, m1, 0, theta).unwrap();
            prop_assert!((d.norm() - plain.abs()).abs() <= 1e-13);
        }

        #[test]
        fn row_orthogonality_small_j(theta in 0.1f64..3.0) {
            // sum_m2 d^j_{m1 m2} d^j_{m1' m2} = delta at fixed theta (rows of
            // an orthogonal matrix).
            let j = 2u32;
            for m1 in -2i32..=2 {
                for m1p in -2i32..=2 {
                    let mut acc = 0.0;
                    for m2 in -2i32..=2 {
                        acc += small_d(j, m1, m2, theta).unwrap()
                            * small_d(j, m1p, m2, theta).unwrap();
                    }
                    let want = if m1 == m1p { 1.0 } else { 0.0 };
                    prop_assert!((acc - want).abs() <= 1e-13);
                }
            }
        }
    }
}
