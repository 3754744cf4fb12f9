//! Static spherical (S3) and hyperbolic (H3) backgrounds.
//!
//! Coordinates are `(t, chi, theta, phi)` with line element
//!
//! ```text
//! ds^2 = dt^2 - dchi^2 - r^2(chi) (dtheta^2 + sin^2(theta) dphi^2),
//! r(chi) = sin(chi)  on S3,      r(chi) = sinh(chi)  on H3,
//! ```
//!
//! in units of the curvature radius. The orthonormal tetrad is aligned with
//! the coordinate directions,
//!
//! ```text
//! e_(0) = d_t,   e_(3) = d_chi,   e_(1) = d_theta / r,   e_(2) = d_phi / (r sin(theta)),
//! ```
//!
//! and the module exposes the Christoffel symbols, the Ricci rotation
//! coefficients `gamma_abc = e_(b)beta;alpha e^beta_(a) e^alpha_(c)` and the
//! spin connection `A_rho = (1/2) j^{ab} e_(a)^beta (nabla_rho e_(b))_beta`
//! in closed form, next to finite-difference oracles that rebuild each object
//! from nothing but metric samples.
//!
//! Note the radial factor in the closed-form connection: `A_theta =
//! r'(chi) j^{31}` and `A_phi = r'(chi) sin(theta) j^{32} + cos(theta) j^{12}`.
//! Dropping `r'` is a classic slip; the finite-difference oracle and the
//! assembled mode residuals both pin it down.

use crate::error::{Error, Result};
use crate::matrix_core::{lorentz_generator, Basis, Matrix4C};
use crate::scalar::Real;

/// Guard band around singular coordinate boundaries (`chi = 0`, `chi = pi`
/// on S3, `theta = 0, pi`). Evaluations inside the band are rejected.
pub const GUARD: f64 = 1e-6;

/// Which background.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpaceKind {
    S3,
    H3,
}

impl SpaceKind {
    /// `r(chi)`: `sin` on S3, `sinh` on H3.
    #[inline]
    pub fn radial<T: Real>(&self, chi: T) -> T {
        match self {
            SpaceKind::S3 => chi.sin(),
            SpaceKind::H3 => chi.sinh(),
        }
    }

    /// `r'(chi)`: `cos` on S3, `cosh` on H3.
    #[inline]
    pub fn radial_deriv<T: Real>(&self, chi: T) -> T {
        match self {
            SpaceKind::S3 => chi.cos(),
            SpaceKind::H3 => chi.cosh(),
        }
    }

    /// `r'(chi) / r(chi)`: `cot` on S3, `coth` on H3.
    #[inline]
    pub fn cot_like<T: Real>(&self, chi: T) -> T {
        self.radial_deriv(chi) / self.radial(chi)
    }

    /// Upper end of the radial chart, if any (`pi` on S3).
    pub fn chi_sup<T: Real>(&self) -> Option<T> {
        match self {
            SpaceKind::S3 => Some(T::PI()),
            SpaceKind::H3 => None,
        }
    }
}

/// Background selector plus curvature radius `rho`.
///
/// All geometric quantities are evaluated in units of `rho` (dimensionless
/// `chi`); `rho` itself only rescales reported frequencies in the spectrum.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SpaceModel<T> {
    pub kind: SpaceKind,
    pub rho: T,
}

impl<T: Real> SpaceModel<T> {
    pub fn s3() -> Self {
        Self {
            kind: SpaceKind::S3,
            rho: T::one(),
        }
    }

    pub fn h3() -> Self {
        Self {
            kind: SpaceKind::H3,
            rho: T::one(),
        }
    }

    pub fn with_radius(kind: SpaceKind, rho: T) -> Result<Self> {
        if !(rho > T::zero()) || !rho.is_finite() {
            return Err(Error::Parameter {
                what: "rho",
                value: rho.as_f64(),
                need: "must be finite and positive",
            });
        }
        Ok(Self { kind, rho })
    }
}

/// A spacetime point `(t, chi, theta, phi)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Coordinates<T> {
    pub t: T,
    pub chi: T,
    pub theta: T,
    pub phi: T,
}

impl<T: Real> Coordinates<T> {
    pub fn new(t: T, chi: T, theta: T, phi: T) -> Self {
        Self { t, chi, theta, phi }
    }

    pub fn get(&self, idx: usize) -> T {
        match idx {
            0 => self.t,
            1 => self.chi,
            2 => self.theta,
            3 => self.phi,
            _ => unreachable!(),
        }
    }

    pub fn with(&self, idx: usize, value: T) -> Self {
        let mut x = *self;
        match idx {
            0 => x.t = value,
            1 => x.chi = value,
            2 => x.theta = value,
            3 => x.phi = value,
            _ => unreachable!(),
        }
        x
    }
}

/// Rejects points in the guard band around the coordinate singularities.
pub fn check_interior<T: Real>(kind: SpaceKind, x: &Coordinates<T>) -> Result<()> {
    let guard = T::lit(GUARD);
    match kind {
        SpaceKind::S3 => {
            if !(x.chi > guard && x.chi < T::PI() - guard) {
                return Err(Error::SingularCoordinate {
                    what: "chi",
                    value: x.chi.as_f64(),
                });
            }
        }
        SpaceKind::H3 => {
            if !(x.chi > guard && x.chi.is_finite()) {
                return Err(Error::SingularCoordinate {
                    what: "chi",
                    value: x.chi.as_f64(),
                });
            }
        }
    }
    if !(x.theta > guard && x.theta < T::PI() - guard) {
        return Err(Error::SingularCoordinate {
            what: "theta",
            value: x.theta.as_f64(),
        });
    }
    Ok(())
}

/// Diagonal metric components `(g_tt, g_chichi, g_thetatheta, g_phiphi)`.
pub fn metric_diag<T: Real>(kind: SpaceKind, x: &Coordinates<T>) -> Result<[T; 4]> {
    check_interior(kind, x)?;
    let r = kind.radial(x.chi);
    let st = x.theta.sin();
    Ok([T::one(), -T::one(), -r * r, -r * r * st * st])
}

/// Contravariant tetrad components `e[a][alpha]` (frame index first).
pub fn tetrad<T: Real>(kind: SpaceKind, x: &Coordinates<T>) -> Result<[[T; 4]; 4]> {
    check_interior(kind, x)?;
    let r = kind.radial(x.chi);
    let st = x.theta.sin();
    let z = T::zero();
    let o = T::one();
    Ok([
        [o, z, z, z],          // e_(0) = d_t
        [z, z, o / r, z],      // e_(1) = d_theta / r
        [z, z, z, o / (r * st)], // e_(2) = d_phi / (r sin theta)
        [z, o, z, z],          // e_(3) = d_chi
    ])
}

/// Covariant tetrad legs `e_(a)beta = g_betabeta e_(a)^beta`.
fn tetrad_covariant<T: Real>(kind: SpaceKind, x: &Coordinates<T>) -> Result<[[T; 4]; 4]> {
    let e = tetrad(kind, x)?;
    let g = metric_diag(kind, x)?;
    let mut out = [[T::zero(); 4]; 4];
    for a in 0..4 {
        for beta in 0..4 {
            out[a][beta] = g[beta] * e[a][beta];
        }
    }
    Ok(out)
}

/// Co-tetrad `E^(a)_rho` (the matrix inverse of `e[a][alpha]`).
fn cotetrad<T: Real>(kind: SpaceKind, x: &Coordinates<T>) -> Result<[[T; 4]; 4]> {
    check_interior(kind, x)?;
    let r = kind.radial(x.chi);
    let st = x.theta.sin();
    let z = T::zero();
    let o = T::one();
    Ok([
        [o, z, z, z],
        [z, z, r, z],
        [z, z, z, r * st],
        [z, o, z, z],
    ])
}

/// Christoffel symbols `Gamma[alpha][beta][gamma]` (upper index first),
/// symmetric in the lower pair.
pub fn christoffel<T: Real>(kind: SpaceKind, x: &Coordinates<T>) -> Result<[[[T; 4]; 4]; 4]> {
    check_interior(kind, x)?;
    let r = kind.radial(x.chi);
    let rp = kind.radial_deriv(x.chi);
    let (st, ct) = (x.theta.sin(), x.theta.cos());
    let mut g = [[[T::zero(); 4]; 4]; 4];
    g[1][2][2] = -r * rp;
    g[1][3][3] = -r * rp * st * st;
    g[2][3][3] = -st * ct;
    g[2][1][2] = rp / r;
    g[2][2][1] = rp / r;
    g[3][1][3] = rp / r;
    g[3][3][1] = rp / r;
    g[3][2][3] = ct / st;
    g[3][3][2] = ct / st;
    Ok(g)
}

/// Ricci rotation coefficients `gamma[a][b][c]`, antisymmetric in `(a, b)`.
///
/// Only four independent entries survive on these backgrounds:
/// `gamma_131 = -r'/r`, `gamma_122 = cot(theta)/r`, `gamma_232 = -r'/r`,
/// and their `(a, b)` partners with opposite sign.
pub fn ricci_rotation<T: Real>(kind: SpaceKind, x: &Coordinates<T>) -> Result<[[[T; 4]; 4]; 4]> {
    check_interior(kind, x)?;
    let l = kind.cot_like(x.chi);
    let ct_over_r = x.theta.cos() / (x.theta.sin() * kind.radial(x.chi));
    let mut g = [[[T::zero(); 4]; 4]; 4];
    g[1][3][1] = -l;
    g[3][1][1] = l;
    g[1][2][2] = ct_over_r;
    g[2][1][2] = -ct_over_r;
    g[2][3][2] = -l;
    g[3][2][2] = l;
    Ok(g)
}

/// Spin connection matrices `A_rho` in the requested matrix basis.
///
/// ```text
/// A_t = A_chi = 0,
/// A_theta = r'(chi) j^{31},
/// A_phi   = r'(chi) sin(theta) j^{32} + cos(theta) j^{12}.
/// ```
pub fn connection<T: Real>(
    kind: SpaceKind,
    x: &Coordinates<T>,
    basis: Basis,
) -> Result<[Matrix4C<T>; 4]> {
    check_interior(kind, x)?;
    let rp = kind.radial_deriv(x.chi);
    let (st, ct) = (x.theta.sin(), x.theta.cos());
    let j31 = lorentz_generator::<T>(3, 1, basis)?;
    let j32 = lorentz_generator::<T>(3, 2, basis)?;
    let j12 = lorentz_generator::<T>(1, 2, basis)?;
    Ok([
        Matrix4C::zero(),
        Matrix4C::zero(),
        j31.scale_re(rp),
        j32.scale_re(rp * st) + j12.scale_re(ct),
    ])
}

/// Same connection assembled through `A_rho = (1/2) j^{ab} gamma_abc E^(c)_rho`
/// from the closed-form rotation coefficients. Independent algebraic route
/// used to cross-check [`connection`].
pub fn connection_from_rotation<T: Real>(
    kind: SpaceKind,
    x: &Coordinates<T>,
    basis: Basis,
) -> Result<[Matrix4C<T>; 4]> {
    let gam = ricci_rotation(kind, x)?;
    let cot = cotetrad(kind, x)?;
    let half = T::lit(0.5);
    let mut out = [Matrix4C::zero(); 4];
    for a in 0..4 {
        for b in 0..4 {
            if a == b {
                continue;
            }
            let jab = lorentz_generator::<T>(a, b, basis)?;
            for c in 0..4 {
                if gam[a][b][c] == T::zero() {
                    continue;
                }
                for rho in 0..4 {
                    let w = half * gam[a][b][c] * cot[c][rho];
                    if w != T::zero() {
                        out[rho] = out[rho] + jab.scale_re(w);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Finite-difference oracles that rebuild the closed forms from metric and
/// tetrad samples only.
pub mod oracle {
    use super::*;

    /// Default central-difference step for the geometry oracles.
    pub const FD_STEP: f64 = 1e-4;

    /// Fourth-order five-point central difference; the hyperbolic metric
    /// grows fast enough with `chi` that a second-order stencil at this step
    /// would not clear the oracle tolerance.
    fn partial<T: Real, F>(f: F, x: &Coordinates<T>, idx: usize, h: T) -> Result<[T; 4]>
    where
        F: Fn(&Coordinates<T>) -> Result<[T; 4]>,
    {
        let at = |k: i64| f(&x.with(idx, x.get(idx) + h * T::int(k)));
        let (p1, m1, p2, m2) = (at(1)?, at(-1)?, at(2)?, at(-2)?);
        let mut out = [T::zero(); 4];
        for k in 0..4 {
            out[k] = (T::int(8) * (p1[k] - m1[k]) - p2[k] + m2[k]) / (T::int(12) * h);
        }
        Ok(out)
    }

    /// `Gamma^alpha_{beta gamma}` from central differences of the metric:
    /// `(1/2) g^{alpha alpha} (d_beta g_{alpha gamma} + d_gamma g_{alpha beta} - d_alpha g_{beta gamma})`.
    pub fn christoffel_fd<T: Real>(
        kind: SpaceKind,
        x: &Coordinates<T>,
        h: T,
    ) -> Result<[[[T; 4]; 4]; 4]> {
        let g = metric_diag(kind, x)?;
        // dg[delta][alpha beta] with the metric diagonal: dg[delta][alpha].
        let mut dg = [[T::zero(); 4]; 4];
        for delta in 0..4 {
            dg[delta] = partial(|p| metric_diag(kind, p), x, delta, h)?;
        }
        let half = T::lit(0.5);
        let mut out = [[[T::zero(); 4]; 4]; 4];
        for alpha in 0..4 {
            let ginv = T::one() / g[alpha];
            for beta in 0..4 {
                for gamma in 0..4 {
                    // Diagonal metric: d_beta g_{alpha gamma} is nonzero only
                    // for gamma == alpha.
                    let t1 = if gamma == alpha { dg[beta][alpha] } else { T::zero() };
                    let t2 = if beta == alpha { dg[gamma][alpha] } else { T::zero() };
                    let t3 = if beta == gamma { dg[alpha][beta] } else { T::zero() };
                    out[alpha][beta][gamma] = half * ginv * (t1 + t2 - t3);
                }
            }
        }
        Ok(out)
    }

    /// Covariant derivative of the covariant tetrad legs,
    /// `nabla[rho][a][beta] = d_rho e_(a)beta - Gamma^delta_{beta rho} e_(a)delta`,
    /// with finite-difference partials and finite-difference Christoffels.
    fn tetrad_grad_fd<T: Real>(
        kind: SpaceKind,
        x: &Coordinates<T>,
        h: T,
    ) -> Result<[[[T; 4]; 4]; 4]> {
        let gamma = christoffel_fd(kind, x, h)?;
        let ecov = tetrad_covariant(kind, x)?;
        let mut de = [[[T::zero(); 4]; 4]; 4]; // de[rho][a][beta]
        for rho in 0..4 {
            for a in 0..4 {
                de[rho][a] = partial(|p| Ok(tetrad_covariant(kind, p)?[a]), x, rho, h)?;
            }
        }
        let mut out = [[[T::zero(); 4]; 4]; 4];
        for rho in 0..4 {
            for a in 0..4 {
                for beta in 0..4 {
                    let mut v = de[rho][a][beta];
                    for delta in 0..4 {
                        v = v - gamma[delta][beta][rho] * ecov[a][delta];
                    }
                    out[rho][a][beta] = v;
                }
            }
        }
        Ok(out)
    }

    /// Definition-based `gamma_abc = e_(b)beta;alpha e^beta_(a) e^alpha_(c)`.
    pub fn ricci_rotation_fd<T: Real>(
        kind: SpaceKind,
        x: &Coordinates<T>,
        h: T,
    ) -> Result<[[[T; 4]; 4]; 4]> {
        let grad = tetrad_grad_fd(kind, x, h)?;
        let e = tetrad(kind, x)?;
        let mut out = [[[T::zero(); 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let mut v = T::zero();
                    for alpha in 0..4 {
                        if e[c][alpha] == T::zero() {
                            continue;
                        }
                        for beta in 0..4 {
                            v = v + grad[alpha][b][beta] * e[a][beta] * e[c][alpha];
                        }
                    }
                    out[a][b][c] = v;
                }
            }
        }
        Ok(out)
    }

    /// Definition-based spin connection
    /// `A_rho = (1/2) j^{ab} e_(a)^beta (nabla_rho e_(b))_beta`.
    pub fn connection_fd<T: Real>(
        kind: SpaceKind,
        x: &Coordinates<T>,
        h: T,
        basis: Basis,
    ) -> Result<[Matrix4C<T>; 4]> {
        let grad = tetrad_grad_fd(kind, x, h)?;
        let e = tetrad(kind, x)?;
        let half = T::lit(0.5);
        let mut out = [Matrix4C::zero(); 4];
        for rho in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    if a == b {
                        continue;
                    }
                    let mut w = T::zero();
                    for beta in 0..4 {
                        w = w + e[a][beta] * grad[rho][b][beta];
                    }
                    if w != T::zero() {
                        let jab = lorentz_generator::<T>(a, b, basis)?;
                        out[rho] = out[rho] + jab.scale_re(half * w);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Max-abs residual of metric compatibility,
    /// `d_delta g_{alpha beta} - Gamma^rho_{delta alpha} g_{rho beta}
    ///  - Gamma^rho_{delta beta} g_{alpha rho}`,
    /// with finite-difference metric partials against the closed-form
    /// Christoffels.
    pub fn metric_compatibility<T: Real>(kind: SpaceKind, x: &Coordinates<T>, h: T) -> Result<T> {
        let gamma = christoffel(kind, x)?;
        let g = metric_diag(kind, x)?;
        let mut worst = T::zero();
        for delta in 0..4 {
            let dg = partial(|p| metric_diag(kind, p), x, delta, h)?;
            for alpha in 0..4 {
                for beta in 0..4 {
                    let d = if alpha == beta { dg[alpha] } else { T::zero() };
                    let v = d - gamma[beta][delta][alpha] * g[beta] - gamma[alpha][delta][beta] * g[alpha];
                    worst = worst.max(v.abs());
                }
            }
        }
        Ok(worst)
    }
}

/// Max-abs difference between two rank-3 tables.
pub fn table_diff<T: Real>(a: &[[[T; 4]; 4]; 4], b: &[[[T; 4]; 4]; 4]) -> T {
    let mut worst = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                worst = worst.max((a[i][j][k] - b[i][j][k]).abs());
            }
        }
    }
    worst
}

/// Max-abs residual of tetrad orthonormality
/// `e_(a)^alpha e_(b)^beta g_{alpha beta} - eta_ab`.
pub fn orthonormality_residual<T: Real>(kind: SpaceKind, x: &Coordinates<T>) -> Result<T> {
    let e = tetrad(kind, x)?;
    let g = metric_diag(kind, x)?;
    let eta = [T::one(), -T::one(), -T::one(), -T::one()];
    let mut worst = T::zero();
    for a in 0..4 {
        for b in 0..4 {
            let mut v = T::zero();
            for alpha in 0..4 {
                v = v + e[a][alpha] * e[b][alpha] * g[alpha];
            }
            let want = if a == b { eta[a] } else { T::zero() };
            worst = worst.max((v - want).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_core::generator;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn pt(chi: f64, theta: f64) -> Coordinates<f64> {
        Coordinates::new(0.0, chi, theta, 0.7)
    }

    #[test]
    fn metric_matches_line_element() {
        let x = pt(FRAC_PI_4, FRAC_PI_2);
        let g = metric_diag(SpaceKind::S3, &x).unwrap();
        let r2 = FRAC_PI_4.sin().powi(2);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[1], -1.0);
        assert!((g[2] + r2).abs() < 1e-15);
        assert!((g[3] + r2).abs() < 1e-15);
    }

    #[test]
    fn h3_angular_metric_closes_like_chi_squared() {
        let x = pt(1e-3, FRAC_PI_2);
        let g = metric_diag(SpaceKind::H3, &x).unwrap();
        // g_thetatheta = -sinh^2(chi) ~ -chi^2 near the origin.
        assert!((g[2] + 1e-6).abs() < 1e-12);
    }

    #[test]
    fn guard_band_rejected() {
        assert!(metric_diag(SpaceKind::S3, &pt(1e-8, 1.0)).is_err());
        assert!(metric_diag(SpaceKind::S3, &pt(PI - 1e-8, 1.0)).is_err());
        assert!(metric_diag(SpaceKind::S3, &pt(1.0, 1e-9)).is_err());
        assert!(metric_diag(SpaceKind::H3, &pt(-0.5, 1.0)).is_err());
    }

    #[test]
    fn christoffel_spot_values() {
        let x = pt(FRAC_PI_4, FRAC_PI_4);
        let g = christoffel(SpaceKind::S3, &x).unwrap();
        // Gamma^theta_{chi theta} = cot(chi) = 1 at chi = pi/4.
        assert!((g[2][1][2] - 1.0).abs() < 1e-15);
        assert!((g[1][2][2] + FRAC_PI_4.sin() * FRAC_PI_4.cos()).abs() < 1e-15);
        assert!((g[3][2][3] - 1.0).abs() < 1e-15);
        let gh = christoffel(SpaceKind::H3, &x).unwrap();
        assert!((gh[2][1][2] - FRAC_PI_4.tanh().recip()).abs() < 1e-15);
    }

    #[test]
    fn rotation_coefficient_spot_values() {
        let x = pt(FRAC_PI_4, 1.0);
        let g = ricci_rotation(SpaceKind::S3, &x).unwrap();
        assert!((g[3][1][1] - 1.0).abs() < 1e-15, "gamma_311 = cot(pi/4)");
        assert!((g[1][3][1] + 1.0).abs() < 1e-15, "gamma_131 = -cot(pi/4)");
    }

    #[test]
    fn rotation_antisymmetry_exact() {
        for kind in [SpaceKind::S3, SpaceKind::H3] {
            let g = ricci_rotation(kind, &pt(0.9, 1.1)).unwrap();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        assert_eq!(g[a][b][c], -g[b][a][c]);
                    }
                }
            }
        }
    }

    #[test]
    fn christoffel_against_fd_oracle() {
        let h = oracle::FD_STEP;
        for kind in [SpaceKind::S3, SpaceKind::H3] {
            for &(chi, theta) in &[(0.4, 0.8), (1.2, 2.0), (2.0, 1.5), (2.6, 0.9)] {
                let x = pt(chi, theta);
                let diff = table_diff(
                    &christoffel(kind, &x).unwrap(),
                    &oracle::christoffel_fd(kind, &x, h).unwrap(),
                );
                assert!(diff < 1e-7, "{kind:?} at ({chi}, {theta}): {diff}");
            }
        }
    }

    #[test]
    fn rotation_against_fd_oracle() {
        let h = oracle::FD_STEP;
        for kind in [SpaceKind::S3, SpaceKind::H3] {
            let x = pt(1.1, 0.9);
            let diff = table_diff(
                &ricci_rotation(kind, &x).unwrap(),
                &oracle::ricci_rotation_fd(kind, &x, h).unwrap(),
            );
            assert!(diff < 1e-7, "{kind:?}: {diff}");
        }
    }

    #[test]
    fn connection_three_routes_agree() {
        let h = oracle::FD_STEP;
        for kind in [SpaceKind::S3, SpaceKind::H3] {
            for basis in [Basis::Cartesian, Basis::Cyclic] {
                let x = pt(0.8, 1.2);
                let closed = connection(kind, &x, basis).unwrap();
                let alg = connection_from_rotation(kind, &x, basis).unwrap();
                let fd = oracle::connection_fd(kind, &x, h, basis).unwrap();
                for rho in 0..4 {
                    assert!(
                        closed[rho].max_abs_diff(&alg[rho]) < 1e-13,
                        "{kind:?} {basis:?} rho={rho} closed vs algebraic"
                    );
                    assert!(
                        closed[rho].max_abs_diff(&fd[rho]) < 1e-7,
                        "{kind:?} {basis:?} rho={rho} closed vs fd"
                    );
                }
            }
        }
    }

    #[test]
    fn connection_radial_factor_present() {
        // At the S3 equator the radial factor r' = cos(chi) vanishes, so
        // A_theta must vanish there; away from it A_theta = r' j31.
        let x = pt(FRAC_PI_2, 1.0);
        let a = connection(SpaceKind::S3, &x, Basis::Cartesian).unwrap();
        assert!(a[2].max_abs() < 1e-15);
        let x = pt(0.7, FRAC_PI_2);
        let a = connection(SpaceKind::S3, &x, Basis::Cartesian).unwrap();
        let expect = generator::<f64>(2, Basis::Cartesian).unwrap().scale_re(0.7f64.cos());
        assert!(a[2].max_abs_diff(&expect) < 1e-15);
        // At theta = pi/2 the phi leg reduces to r' j32.
        let j32 = lorentz_generator::<f64>(3, 2, Basis::Cartesian).unwrap();
        assert!(a[3].max_abs_diff(&j32.scale_re(0.7f64.cos())) < 1e-15);
    }

    #[test]
    fn metric_compatibility_small() {
        for kind in [SpaceKind::S3, SpaceKind::H3] {
            let v = oracle::metric_compatibility(kind, &pt(1.0, 1.0), oracle::FD_STEP).unwrap();
            assert!(v < 1e-6, "{kind:?}: {v}");
        }
    }

    proptest! {
        #[test]
        fn tetrad_orthonormal_everywhere(
            chi in 0.2f64..2.9,
            theta in 0.2f64..2.9,
        ) {
            for kind in [SpaceKind::S3, SpaceKind::H3] {
                let x = pt(chi, theta);
                prop_assert!(orthonormality_residual(kind, &x).unwrap() <= 1e-13);
            }
        }
    }
}
