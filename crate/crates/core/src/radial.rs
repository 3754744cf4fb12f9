//! Radial profiles of the spherical field modes on both curved models.
//!
//! Everything funnels through the single second-order equation
//!
//! ```text
//! G'' + omega^2 G - nu^2 G / r(chi)^2 = 0,      r = sin chi | sinh chi,
//! ```
//!
//! whose closed solutions come from the substitution `z = 1 - e^(-2i chi)`
//! (closed model) or `z = 1 - e^(-2 chi)` (open model) and
//! `G = z^a (1-z)^b g(z)` with `g` a Gauss hypergeometric function. The
//! first-order system variables are recovered algebraically:
//!
//! ```text
//! F2 = i nu G / (omega r),  F = -(i/omega) G',
//! F1 = (F + G)/sqrt(2),     F3 = (F - G)/sqrt(2),     f_k = F_k / r.
//! ```
//!
//! On the closed model the regular exponent branch `a = j + 1` plus
//! polynomial termination forces `omega = n + 1 + j`; the open model accepts
//! any positive frequency. An adaptive Runge-Kutta oracle (see [`ode_oracle`])
//! provides the independent cross-check for all of it.
//!
//! Branch handling for the closed model: `z` circles the point `1`, so naive
//! principal-value powers of `z` jump mid-interval. The factored form
//! `z = 2 sin(chi) e^{i(pi/2 - chi)}` and `1 - z = e^{-2i chi}` keep
//! `z^a (1-z)^b` phase-continuous across all of `(0, pi)`.

use crate::error::{Error, Result};
use crate::geometry::SpaceKind;
use crate::ode::{integrate, OdeOptions};
use crate::scalar::{cx, Cx, Real};
use crate::special::{hyp2f1, hyp2f1_derivative, hyp2f1_second_derivative, HypParams};
use crate::wigner::J_MAX;

/// Largest `z` the open-model series path is trusted for; beyond it the
/// hypergeometric factor is continued by integrating its own ODE in `z`.
pub const Z_SERIES_MAX: f64 = 0.9;

/// Exponent branch at `z = 0`: `a = j + 1` (bounded at the coordinate
/// centers) or `a = -j` (kept only to exhibit the endpoint blow-up).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RadialBranch {
    Regular,
    Irregular,
}

/// Open-model sign of `b = -+ i omega / 2`; with the `e^{-i omega t}` time
/// factor the default pairs into the outward-running phase `e^{+i omega chi}`.
/// Both signs solve the equation; the model itself never selects one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WaveDirection {
    Outgoing,
    Incoming,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct RadialParams<T> {
    pub kind: SpaceKind,
    pub j: u32,
    pub omega: T,
    /// `sqrt(j(j+1))`.
    pub nu: T,
}

impl<T: Real> RadialParams<T> {
    pub fn new(kind: SpaceKind, j: u32, omega: T) -> Result<Self> {
        if j < 1 || j > J_MAX {
            return Err(Error::AngularRange { j, m: 0, min_j: 1 });
        }
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(Error::Parameter {
                what: "omega",
                value: omega.as_f64(),
                need: "a finite positive frequency",
            });
        }
        let jf = T::int(j as i64);
        Ok(Self {
            kind,
            j,
            omega,
            nu: (jf * (jf + T::one())).sqrt(),
        })
    }

    /// Closed-model mode frequency `omega = n + 1 + j` (curvature units).
    pub fn s3_quantized(j: u32, n: u32) -> Result<Self> {
        Self::new(SpaceKind::S3, j, T::int(n as i64 + 1 + j as i64))
    }

    /// The integer `n >= 0` with `omega = n + 1 + j`, if the frequency is
    /// quantized (closed model only).
    pub fn quantum_number(&self) -> Result<u32> {
        let not_quantized = || Error::NotQuantized {
            omega: self.omega.as_f64(),
            j: self.j,
        };
        if self.kind != SpaceKind::S3 {
            return Err(not_quantized());
        }
        let n = self.omega.as_f64() - 1.0 - self.j as f64;
        if n < -1e-9 || (n - n.round()).abs() > 1e-9 {
            return Err(not_quantized());
        }
        Ok(n.round().max(0.0) as u32)
    }
}

/// `z(chi)`: on the closed model the unit-diameter circle `1 - e^{-2i chi}`,
/// on the open model the real segment `1 - e^{-2 chi}`.
pub fn z_of_chi<T: Real>(kind: SpaceKind, chi: T) -> Cx<T> {
    let two = T::int(2);
    match kind {
        SpaceKind::S3 => cx(T::one(), T::zero()) - cx(T::zero(), -two * chi).exp(),
        SpaceKind::H3 => cx(T::one() - (-two * chi).exp(), T::zero()),
    }
}

/// `dz/dchi = kappa (1 - z)` with `kappa = 2i` (closed) or `2` (open).
pub fn chain_kappa<T: Real>(kind: SpaceKind) -> Cx<T> {
    match kind {
        SpaceKind::S3 => cx(T::zero(), T::int(2)),
        SpaceKind::H3 => cx(T::int(2), T::zero()),
    }
}

/// Residuals of the three substitution identities tying `chi` to `z`:
/// `dz/dchi = kappa(1-z)`, `cot_like(chi) = kappa(2-z)/(2z)`, and
/// `1/r^2(chi) = -+ 4(1-z)/z^2`.
pub fn change_of_variable_residuals<T: Real>(kind: SpaceKind, chi: T) -> [T; 3] {
    let z = z_of_chi(kind, chi);
    let one = cx(T::one(), T::zero());
    let two = cx(T::int(2), T::zero());
    let four = T::lit(4.0);
    let kappa: Cx<T> = chain_kappa(kind);
    // dz/dchi directly from the exponential form
    let dz = match kind {
        SpaceKind::S3 => cx(T::zero(), T::int(2)) * cx(T::zero(), -T::int(2) * chi).exp(),
        SpaceKind::H3 => cx(T::int(2) * (-T::int(2) * chi).exp(), T::zero()),
    };
    let r = kind.radial(chi);
    let cot = kind.cot_like(chi);
    let inv_r2_z = match kind {
        SpaceKind::S3 => -(one - z) * four / (z * z),
        SpaceKind::H3 => (one - z) * four / (z * z),
    };
    [
        (dz - kappa * (one - z)).norm(),
        (cx(cot, T::zero()) - kappa * (two - z) / (z * two)).norm(),
        (cx(T::one() / (r * r), T::zero()) - inv_r2_z).norm(),
    ]
}

/// Exponents and hypergeometric parameters of `G = z^a (1-z)^b g(z)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct HypReduction<T> {
    pub a_exp: Cx<T>,
    pub b_exp: Cx<T>,
    pub hyp: HypParams<T>,
}

impl<T: Real> HypReduction<T> {
    pub fn new(p: &RadialParams<T>, branch: RadialBranch, direction: WaveDirection) -> Self {
        let a = match branch {
            RadialBranch::Regular => cx(T::int(p.j as i64 + 1), T::zero()),
            RadialBranch::Irregular => cx(-T::int(p.j as i64), T::zero()),
        };
        // half = omega/2 (closed) or i omega/2 (open); b = -half by default,
        // the open model's opposite sign being the Incoming option.
        let half = match p.kind {
            SpaceKind::S3 => cx(p.omega / T::int(2), T::zero()),
            SpaceKind::H3 => cx(T::zero(), p.omega / T::int(2)),
        };
        let b = match (p.kind, direction) {
            (SpaceKind::H3, WaveDirection::Incoming) => half,
            _ => -half,
        };
        let two = cx(T::int(2), T::zero());
        HypReduction {
            a_exp: a,
            b_exp: b,
            hyp: HypParams::new(a + b - half, a + b + half, a * two),
        }
    }

    /// `|a(a-1) - nu^2|` and `|b^2 -+ omega^2/4|`: both must vanish for the
    /// reduction to close.
    pub fn exponent_residuals(&self, p: &RadialParams<T>) -> (T, T) {
        let one = cx(T::one(), T::zero());
        let nu2 = cx(p.nu * p.nu, T::zero());
        let w4 = cx(p.omega * p.omega / T::lit(4.0), T::zero());
        let first = (self.a_exp * (self.a_exp - one) - nu2).norm();
        let second = match p.kind {
            SpaceKind::S3 => (self.b_exp * self.b_exp - w4).norm(),
            SpaceKind::H3 => (self.b_exp * self.b_exp + w4).norm(),
        };
        (first, second)
    }
}

/// One closed-form sample: `z`, the hypergeometric factor, and `G` with its
/// first two `chi`-derivatives.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct RadialEval<T> {
    pub z: Cx<T>,
    pub hyp: Cx<T>,
    pub g: Cx<T>,
    pub dg: Cx<T>,
    pub d2g: Cx<T>,
}

/// Closed-form radial profile evaluator.
#[derive(Clone, Copy, Debug)]
pub struct ClosedForm<T> {
    pub params: RadialParams<T>,
    pub branch: RadialBranch,
    pub direction: WaveDirection,
    pub reduction: HypReduction<T>,
}

impl<T: Real> ClosedForm<T> {
    /// Physical profile: regular branch, default direction. Closed-model
    /// frequencies must be quantized for this path to exist at all.
    pub fn new(params: RadialParams<T>) -> Result<Self> {
        Self::with_branch(params, RadialBranch::Regular, WaveDirection::Outgoing)
    }

    pub fn with_branch(
        params: RadialParams<T>,
        branch: RadialBranch,
        direction: WaveDirection,
    ) -> Result<Self> {
        let reduction = HypReduction::new(&params, branch, direction);
        if params.kind == SpaceKind::S3
            && branch == RadialBranch::Regular
            && reduction.hyp.polynomial_degree().is_none()
        {
            return Err(Error::NotQuantized {
                omega: params.omega.as_f64(),
                j: params.j,
            });
        }
        Ok(Self {
            params,
            branch,
            direction,
            reduction,
        })
    }

    fn check_chi(&self, chi: T) -> Result<()> {
        let bad = chi <= T::zero()
            || (self.params.kind == SpaceKind::S3 && chi >= T::PI())
            || !chi.is_finite();
        if bad {
            Err(Error::SingularCoordinate {
                what: "chi",
                value: chi.as_f64(),
            })
        } else {
            Ok(())
        }
    }

    /// `z^a (1-z)^b` with phase-continuous logarithms.
    fn prefactor(&self, chi: T) -> Cx<T> {
        let (a, b) = (self.reduction.a_exp, self.reduction.b_exp);
        match self.params.kind {
            SpaceKind::S3 => {
                let ln_z = cx(
                    (T::int(2) * chi.sin()).ln(),
                    T::FRAC_PI_2() - chi,
                );
                let ln_w = cx(T::zero(), -T::int(2) * chi);
                (a * ln_z + b * ln_w).exp()
            }
            SpaceKind::H3 => {
                let z = T::one() - (-T::int(2) * chi).exp();
                let ln_z = cx(z.ln(), T::zero());
                let ln_w = cx(-T::int(2) * chi, T::zero());
                (a * ln_z + b * ln_w).exp()
            }
        }
    }

    fn needs_continuation(&self, z: Cx<T>) -> bool {
        self.params.kind == SpaceKind::H3
            && self.reduction.hyp.polynomial_degree().is_none()
            && z.re.as_f64() > Z_SERIES_MAX
    }

    /// Right-hand side of the hypergeometric ODE solved for `g''`.
    fn hyp_second(&self, z: Cx<T>, g: Cx<T>, dg: Cx<T>) -> Cx<T> {
        let p = self.reduction.hyp;
        let one = cx(T::one(), T::zero());
        (((p.alpha + p.beta + one) * z - p.gamma) * dg + p.alpha * p.beta * g) / (z * (one - z))
    }

    /// Assembles `G, G', G''` from `g, g'` at `z(chi)` via the chain rule
    /// `d/dchi = kappa (1-z) d/dz`.
    fn assemble(&self, chi: T, g_h: Cx<T>, dg_h: Cx<T>, d2g_h: Cx<T>) -> RadialEval<T> {
        let z = z_of_chi(self.params.kind, chi);
        let one = cx(T::one(), T::zero());
        let w = one - z;
        let (a, b) = (self.reduction.a_exp, self.reduction.b_exp);
        let pre = self.prefactor(chi);
        let l = a / z - b / w;
        let dl = -a / (z * z) - b / (w * w);
        let gz = pre * (l * g_h + dg_h);
        let gzz = pre * ((l * l + dl) * g_h + (l * dg_h) * T::int(2) + d2g_h);
        let kappa = chain_kappa::<T>(self.params.kind);
        let c = kappa * w;
        RadialEval {
            z,
            hyp: g_h,
            g: pre * g_h,
            dg: c * gz,
            d2g: c * (c * gzz - kappa * gz),
        }
    }

    /// Single-point evaluation. Open-model points beyond the series radius
    /// trigger a fresh ODE continuation; prefer [`Self::eval_grid`] for many
    /// points.
    pub fn eval(&self, chi: T) -> Result<RadialEval<T>> {
        self.check_chi(chi)?;
        let z = z_of_chi(self.params.kind, chi);
        if self.needs_continuation(z) {
            return Ok(self.eval_continued(&[chi])?.remove(0));
        }
        let p = self.reduction.hyp;
        let g = hyp2f1(p, z)?;
        let dg = hyp2f1_derivative(p, z)?;
        let d2g = hyp2f1_second_derivative(p, z)?;
        Ok(self.assemble(chi, g, dg, d2g))
    }

    /// Grid evaluation; open-model continuation points share one integrator
    /// pass (ascending in `z`). `g''` on the continued stretch comes from the
    /// hypergeometric ODE itself.
    pub fn eval_grid(&self, chis: &[T]) -> Result<Vec<RadialEval<T>>> {
        let mut cont: Vec<(usize, T)> = Vec::new();
        let mut out: Vec<Option<RadialEval<T>>> = vec![None; chis.len()];
        for (i, &chi) in chis.iter().enumerate() {
            self.check_chi(chi)?;
            if self.needs_continuation(z_of_chi(self.params.kind, chi)) {
                cont.push((i, chi));
            } else {
                out[i] = Some(self.eval(chi)?);
            }
        }
        if !cont.is_empty() {
            cont.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
            let chis_sorted: Vec<T> = cont.iter().map(|&(_, c)| c).collect();
            let evals = self.eval_continued(&chis_sorted)?;
            for ((i, _), ev) in cont.into_iter().zip(evals) {
                out[i] = Some(ev);
            }
        }
        Ok(out.into_iter().map(|o| o.unwrap()).collect())
    }

    /// Continues `g(z)` from the series edge by integrating the
    /// hypergeometric ODE along the real `z` axis (open model only; `chis`
    /// ascending).
    fn eval_continued(&self, chis: &[T]) -> Result<Vec<RadialEval<T>>> {
        let p = self.reduction.hyp;
        let z0 = T::lit(Z_SERIES_MAX);
        let zc0 = cx(z0, T::zero());
        let g0 = hyp2f1(p, zc0)?;
        let dg0 = hyp2f1_derivative(p, zc0)?;
        let targets: Vec<T> = chis
            .iter()
            .map(|&chi| T::one() - (-T::int(2) * chi).exp())
            .collect();
        let rhs = |z: T, y: &[Cx<T>; 2]| {
            let zc = cx(z, T::zero());
            [y[1], self.hyp_second(zc, y[0], y[1])]
        };
        let opts = OdeOptions::with_tol(T::lit(1e-12), T::lit(1e-14));
        let states = integrate(rhs, z0, [g0, dg0], &targets, opts)?;
        Ok(chis
            .iter()
            .zip(states)
            .map(|(&chi, y)| {
                let zc = z_of_chi(self.params.kind, chi);
                self.assemble(chi, y[0], y[1], self.hyp_second(zc, y[0], y[1]))
            })
            .collect())
    }
}

/// First-order variables recovered from `(G, G')` at one point.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FirstOrder<T> {
    pub cap_f: Cx<T>,
    pub cap_f1: Cx<T>,
    pub cap_f2: Cx<T>,
    pub cap_f3: Cx<T>,
    /// `(f1, f2, f3) = (F1, F2, F3) / r`.
    pub f: [Cx<T>; 3],
}

pub fn assemble_first_order<T: Real>(
    p: &RadialParams<T>,
    chi: T,
    g: Cx<T>,
    dg: Cx<T>,
) -> Result<FirstOrder<T>> {
    let r = p.kind.radial(chi);
    if r.abs() < T::lit(1e-12) {
        return Err(Error::SingularCoordinate {
            what: "chi",
            value: chi.as_f64(),
        });
    }
    let i = cx(T::zero(), T::one());
    let cap_f2 = i * g * (p.nu / p.omega) / r;
    let cap_f = -i * dg / p.omega;
    let rt2 = T::SQRT_2();
    let cap_f1 = (cap_f + g) / rt2;
    let cap_f3 = (cap_f - g) / rt2;
    Ok(FirstOrder {
        cap_f,
        cap_f1,
        cap_f2,
        cap_f3,
        f: [cap_f1 / r, cap_f2 / r, cap_f3 / r],
    })
}

/// The four first-order mode equations evaluated at one point (raw, not
/// normalized):
///
/// ```text
/// (1) f2' + 2 cot_like f2 + (nu/sqrt2)(f1 + f3)/r = 0
/// (2) -omega f1 - i f1' - i cot_like f1 - i (nu/sqrt2) f2 / r = 0
/// (3) -omega f2 + i (nu/sqrt2)(f1 - f3)/r = 0
/// (4) -omega f3 + i f3' + i cot_like f3 + i (nu/sqrt2) f2 / r = 0
/// ```
pub fn first_order_equations<T: Real>(
    p: &RadialParams<T>,
    chi: T,
    g: Cx<T>,
    dg: Cx<T>,
    d2g: Cx<T>,
) -> Result<[Cx<T>; 4]> {
    let fo = assemble_first_order(p, chi, g, dg)?;
    let r = p.kind.radial(chi);
    let dr = p.kind.radial_deriv(chi);
    let cot = dr / r;
    let i = cx(T::zero(), T::one());
    let rt2 = T::SQRT_2();
    let hv = p.nu / rt2;

    // chi-derivatives of f_k via the product rule on F_k / r
    let dcap_f = -i * d2g / p.omega;
    let dcap_f1 = (dcap_f + dg) / rt2;
    let dcap_f3 = (dcap_f - dg) / rt2;
    let df1 = (dcap_f1 - fo.cap_f1 * cot) / r;
    let df3 = (dcap_f3 - fo.cap_f3 * cot) / r;
    // f2 = i nu G/(omega r^2)
    let df2 = (i * dg * (p.nu / p.omega) / (r * r)) - fo.f[1] * (cot * T::int(2));

    let [f1, f2, f3] = fo.f;
    Ok([
        df2 + f2 * (cot * T::int(2)) + (f1 + f3) * (hv / r),
        -f1 * p.omega - i * df1 - i * f1 * cot - i * f2 * (hv / r),
        -f2 * p.omega + i * (f1 - f3) * (hv / r),
        -f3 * p.omega + i * df3 + i * f3 * cot + i * f2 * (hv / r),
    ])
}

/// Max relative residual of the second-order equation over a grid; the
/// sampler returns `(G, G'')`.
pub fn residual_second_order<T: Real>(
    p: &RadialParams<T>,
    sampler: impl Fn(T) -> Result<(Cx<T>, Cx<T>)>,
    grid: &[T],
) -> Result<T> {
    let mut worst = T::zero();
    let mut scale = T::zero();
    for &chi in grid {
        let (g, d2g) = sampler(chi)?;
        let r = p.kind.radial(chi);
        let res = d2g + g * (p.omega * p.omega) - g * (p.nu * p.nu) / (r * r);
        worst = worst.max(res.norm());
        scale = scale.max(g.norm());
    }
    if scale == T::zero() {
        return Ok(T::zero());
    }
    Ok(worst / scale)
}

/// Max relative residual of the four first-order equations over a grid; the
/// sampler returns `(G, G', G'')`.
pub fn residual_first_order<T: Real>(
    p: &RadialParams<T>,
    sampler: impl Fn(T) -> Result<(Cx<T>, Cx<T>, Cx<T>)>,
    grid: &[T],
) -> Result<T> {
    let mut worst = T::zero();
    let mut scale = T::zero();
    for &chi in grid {
        let (g, dg, d2g) = sampler(chi)?;
        let eqs = first_order_equations(p, chi, g, dg, d2g)?;
        for e in eqs {
            worst = worst.max(e.norm());
        }
        let fo = assemble_first_order(p, chi, g, dg)?;
        for f in fo.f {
            scale = scale.max(f.norm());
        }
    }
    if scale == T::zero() {
        return Ok(T::zero());
    }
    Ok(worst / scale)
}

/// Residual of the redundancy identity: substituting equation (3) and the
/// sum equation into equation (1) must cancel exactly, which is why only
/// three of the four first-order equations are independent.
pub fn redundancy_identity_residual<T: Real>(
    p: &RadialParams<T>,
    sampler: impl Fn(T) -> Result<(Cx<T>, Cx<T>, Cx<T>)>,
    grid: &[T],
) -> Result<T> {
    let mut worst = T::zero();
    let mut scale = T::zero();
    let i = cx(T::zero(), T::one());
    let rt2 = T::SQRT_2();
    for &chi in grid {
        let (g, dg, d2g) = sampler(chi)?;
        let fo = assemble_first_order(p, chi, g, dg)?;
        let r = p.kind.radial(chi);
        let cot = p.kind.cot_like(chi);
        // omega F2 replaced via equation (3)
        let wf2 = i * (fo.cap_f1 - fo.cap_f3) * (p.nu / (rt2 * r));
        // d/dchi of that expression from (G', G'')
        let dcap_f = -i * d2g / p.omega;
        let dcap_f1 = (dcap_f + dg) / rt2;
        let dcap_f3 = (dcap_f - dg) / rt2;
        let dwf2 = i * (p.nu / rt2) * ((dcap_f1 - dcap_f3) / r - (fo.cap_f1 - fo.cap_f3) * cot / r);
        let res = dwf2 + wf2 * cot + (fo.cap_f1 + fo.cap_f3) * (p.omega * p.nu / (rt2 * r));
        worst = worst.max(res.norm());
        scale = scale.max((fo.cap_f1.norm()).max(fo.cap_f3.norm()) * p.omega);
    }
    if scale == T::zero() {
        return Ok(T::zero());
    }
    Ok(worst / scale)
}

/// Integrates `G'' = (nu^2/r^2 - omega^2) G` with the adaptive Runge-Kutta
/// scheme, reporting `(G, G')` at each target. Completely independent of the
/// hypergeometric closed forms; `nu` may be zero (the formal harmonic limit).
pub fn ode_oracle<T: Real>(
    kind: SpaceKind,
    nu: T,
    omega: T,
    chi0: T,
    init: (Cx<T>, Cx<T>),
    targets: &[T],
    opts: OdeOptions<T>,
) -> Result<Vec<(Cx<T>, Cx<T>)>> {
    if chi0 <= T::zero() {
        return Err(Error::SingularCoordinate {
            what: "chi0",
            value: chi0.as_f64(),
        });
    }
    let rhs = move |chi: T, y: &[Cx<T>; 2]| {
        let r = kind.radial(chi);
        [y[1], y[0] * (nu * nu / (r * r) - omega * omega)]
    };
    let states = integrate(rhs, chi0, [init.0, init.1], targets, opts)?;
    Ok(states.into_iter().map(|y| (y[0], y[1])).collect())
}

/// Frobenius seed of the chosen branch near `chi = 0`:
/// `G = chi^p (1 + c1 chi^2 + c2 chi^4)` with `p = j+1` or `-j`, matching
/// the equation through the listed orders. Real data, returned complex for
/// the integrator.
pub fn frobenius_init<T: Real>(
    kind: SpaceKind,
    j: u32,
    omega: T,
    branch: RadialBranch,
    chi: T,
) -> (Cx<T>, Cx<T>) {
    let jf = T::int(j as i64);
    let nu2 = jf * (jf + T::one());
    // 1/r^2 = 1/chi^2 + s/3 + chi^2/15 + ..., s = +1 closed, -1 open
    let s = match kind {
        SpaceKind::S3 => T::one(),
        SpaceKind::H3 => -T::one(),
    };
    let u0 = s * nu2 / T::int(3) - omega * omega;
    let (p, den1, den2) = match branch {
        RadialBranch::Regular => (
            jf + T::one(),
            T::int(4 * j as i64 + 6),
            T::int(8 * j as i64 + 20),
        ),
        RadialBranch::Irregular => (
            -jf,
            T::int(2 - 4 * j as i64),
            T::int(12 - 8 * j as i64),
        ),
    };
    let c1 = u0 / den1;
    let c2 = (nu2 * (s * c1 / T::int(3) + T::lit(1.0 / 15.0)) - omega * omega * c1) / den2;
    let (x2, x4) = (chi * chi, chi * chi * chi * chi);
    let val = chi.powf(p) * (T::one() + c1 * x2 + c2 * x4);
    let der = chi.powf(p - T::one())
        * (p + (p + T::int(2)) * c1 * x2 + (p + T::int(4)) * c2 * x4);
    (cx(val, T::zero()), cx(der, T::zero()))
}

/// Endpoint growth probe for the closed model: integrate the branch regular
/// at `chi = 0` toward `chi = pi` and compare `|G|` at `pi - 0.05` against
/// `pi - 0.3`. Regular-at-both-ends solutions decay into the far endpoint
/// (ratio well under 1); any admixture of the irregular branch grows instead.
pub fn endpoint_growth_ratio<T: Real>(j: u32, omega: T) -> Result<T> {
    if j < 1 || j > J_MAX {
        return Err(Error::AngularRange { j, m: 0, min_j: 1 });
    }
    let jf = T::int(j as i64);
    let nu = (jf * (jf + T::one())).sqrt();
    let chi0 = T::lit(0.02);
    let init = frobenius_init(SpaceKind::S3, j, omega, RadialBranch::Regular, chi0);
    let far = T::PI() - T::lit(0.05);
    let near = T::PI() - T::lit(0.3);
    let states = ode_oracle(
        SpaceKind::S3,
        nu,
        omega,
        chi0,
        init,
        &[near, far],
        OdeOptions::default(),
    )?;
    let denom = states[0].0.norm();
    if denom == T::zero() {
        return Err(Error::Parameter {
            what: "endpoint probe",
            value: 0.0,
            need: "a nonzero reference sample",
        });
    }
    Ok(states[1].0.norm() / denom)
}

/// Sampled profile over a grid, normalized so the largest `|G|` sample is 1,
/// with residual diagnostics attached.
#[derive(Clone, Debug)]
pub struct RadialSolution<T> {
    pub chi: Vec<T>,
    pub g: Vec<Cx<T>>,
    pub cap_f: Vec<Cx<T>>,
    pub cap_f2: Vec<Cx<T>>,
    pub f1: Vec<Cx<T>>,
    pub f2: Vec<Cx<T>>,
    pub f3: Vec<Cx<T>>,
    pub residual_2nd: T,
    pub residual_1st: T,
}

pub fn solve_on_grid<T: Real>(cf: &ClosedForm<T>, grid: &[T]) -> Result<RadialSolution<T>> {
    let evals = cf.eval_grid(grid)?;
    let peak = evals
        .iter()
        .map(|e| e.g.norm())
        .fold(T::zero(), |a, b| a.max(b));
    let norm = if peak > T::zero() {
        T::one() / peak
    } else {
        T::one()
    };
    let mut sol = RadialSolution {
        chi: grid.to_vec(),
        g: Vec::with_capacity(grid.len()),
        cap_f: Vec::with_capacity(grid.len()),
        cap_f2: Vec::with_capacity(grid.len()),
        f1: Vec::with_capacity(grid.len()),
        f2: Vec::with_capacity(grid.len()),
        f3: Vec::with_capacity(grid.len()),
        residual_2nd: T::zero(),
        residual_1st: T::zero(),
    };
    for (&chi, ev) in grid.iter().zip(&evals) {
        let fo = assemble_first_order(&cf.params, chi, ev.g * norm, ev.dg * norm)?;
        sol.g.push(ev.g * norm);
        sol.cap_f.push(fo.cap_f);
        sol.cap_f2.push(fo.cap_f2);
        sol.f1.push(fo.f[0]);
        sol.f2.push(fo.f[1]);
        sol.f3.push(fo.f[2]);
    }
    let table: std::collections::HashMap<u64, RadialEval<T>> = grid
        .iter()
        .zip(&evals)
        .map(|(&c, e)| (c.as_f64().to_bits(), *e))
        .collect();
    let lookup = |chi: T| {
        table
            .get(&chi.as_f64().to_bits())
            .copied()
            .ok_or(Error::Parameter {
                what: "chi",
                value: chi.as_f64(),
                need: "a grid sample",
            })
    };
    sol.residual_2nd =
        residual_second_order(&cf.params, |chi| lookup(chi).map(|e| (e.g, e.d2g)), grid)?;
    sol.residual_1st = residual_first_order(
        &cf.params,
        |chi| lookup(chi).map(|e| (e.g, e.dg, e.d2g)),
        grid,
    )?;
    Ok(sol)
}
