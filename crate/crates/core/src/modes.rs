//! Full spacetime modes: spectrum enumeration, field assembly, and the
//! end-to-end operator residual check.
//!
//! A mode in the cyclic basis is the separated product
//!
//! ```text
//! Psi' = e^{-i omega t} (0, f1(chi) D_-1, f2(chi) D_0, f3(chi) D_+1),
//! D_sigma = D^j_{-m, sigma}(phi, theta, 0),
//! ```
//!
//! and the wave operator it must annihilate is
//!
//! ```text
//! Op = -i d_t + alpha'3 d_chi + C cot_like(chi) + Sigma'_{theta phi} / r(chi),
//! C = alpha'1 s'2 - alpha'2 s'1,
//! ```
//!
//! with `r = sin chi`, `cot_like = cos/sin` on the closed model and the
//! hyperbolic pair on the open one. The residual is computed two independent
//! ways: an analytic path using closed-form radial derivatives and the exact
//! angular-action coefficients, and a brute path using fourth-order finite
//! differences in all four coordinates. Row 0 of `Op Psi'` is the divergence
//! constraint; it is tracked separately.
//!
//! Closed-model frequencies are quantized as `omega = (n + 1 + j) / rho`;
//! the open model has no such condition. Everything here works in curvature
//! units (`rho = 1`); spectrum tables rescale on output.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{check_interior, Coordinates, SpaceKind};
use crate::matrix_core::{alpha, generator, Basis, FieldVector, Matrix4C};
use crate::radial::{ClosedForm, RadialEval, RadialParams};
use crate::scalar::{cx, linspace, Cx, Real};
use crate::wigner::{angular_action, small_d, ACTION_SLOT_SIGMA};

/// Frequency label: a closed-model radial quantum number, or a free
/// open-model frequency in curvature units.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Frequency<T> {
    Quantum(u32),
    Omega(T),
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ModeSpec<T> {
    pub kind: SpaceKind,
    pub j: u32,
    pub m: i32,
    pub freq: Frequency<T>,
}

impl<T: Real> ModeSpec<T> {
    pub fn s3(j: u32, m: i32, n: u32) -> Result<Self> {
        Self::new(SpaceKind::S3, j, m, Frequency::Quantum(n))
    }

    pub fn h3(j: u32, m: i32, omega: T) -> Result<Self> {
        Self::new(SpaceKind::H3, j, m, Frequency::Omega(omega))
    }

    pub fn new(kind: SpaceKind, j: u32, m: i32, freq: Frequency<T>) -> Result<Self> {
        match (kind, freq) {
            (SpaceKind::S3, Frequency::Omega(w)) => {
                return Err(Error::Parameter {
                    what: "omega",
                    value: w.as_f64(),
                    need: "closed-model modes are labeled by the quantum number n",
                });
            }
            (SpaceKind::H3, Frequency::Quantum(n)) => {
                return Err(Error::Parameter {
                    what: "n",
                    value: n as f64,
                    need: "open-model modes are labeled by a frequency omega",
                });
            }
            _ => {}
        }
        let spec = Self { kind, j, m, freq };
        // range checks (j >= 1, |m| <= j, omega > 0) ride on RadialParams
        spec.radial_params()?;
        if m.unsigned_abs() > j {
            return Err(Error::AngularRange { j, m, min_j: 1 });
        }
        Ok(spec)
    }

    /// Mode frequency in curvature units.
    pub fn omega(&self) -> T {
        match self.freq {
            Frequency::Quantum(n) => T::int(n as i64 + 1 + self.j as i64),
            Frequency::Omega(w) => w,
        }
    }

    pub fn radial_params(&self) -> Result<RadialParams<T>> {
        RadialParams::new(self.kind, self.j, self.omega())
    }
}

/// One discrete-spectrum row (closed model).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SpectrumRow<T> {
    pub j: u32,
    pub n: u32,
    pub omega: T,
    pub degeneracy: u32,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SpectrumTable<T> {
    pub rho: T,
    pub rows: Vec<SpectrumRow<T>>,
}

/// All closed-model frequencies `omega = (n + 1 + j)/rho` with `1 <= j <=
/// j_max`, `0 <= n <= n_max`; each `(j, n)` level is `(2j+1)`-fold
/// degenerate in `m`. The monopole label `j = 0` is excluded: its angular
/// factors vanish identically, so it supports no field.
pub fn spectrum<T: Real>(j_max: u32, n_max: u32, rho: T) -> Result<SpectrumTable<T>> {
    if j_max < 1 {
        return Err(Error::Parameter {
            what: "j_max",
            value: j_max as f64,
            need: "at least 1",
        });
    }
    if !(rho > T::zero()) {
        return Err(Error::Parameter {
            what: "rho",
            value: rho.as_f64(),
            need: "a positive curvature radius",
        });
    }
    let mut rows = Vec::new();
    for j in 1..=j_max {
        for n in 0..=n_max {
            rows.push(SpectrumRow {
                j,
                n,
                omega: T::int(n as i64 + 1 + j as i64) / rho,
                degeneracy: 2 * j + 1,
            });
        }
    }
    Ok(SpectrumTable { rho, rows })
}

/// The diagonal-action block `C = alpha'1 s'2 - alpha'2 s'1`, built from
/// matrix products.
pub fn diagonal_block<T: Real>() -> Matrix4C<T> {
    let a1 = alpha(1, Basis::Cyclic).unwrap();
    let a2 = alpha(2, Basis::Cyclic).unwrap();
    let s1 = generator(1, Basis::Cyclic).unwrap();
    let s2 = generator(2, Basis::Cyclic).unwrap();
    a1 * s2 - a2 * s1
}

/// Residual of the printed closed form of that block,
/// `diag-action rows (2 Psi_2, -i Psi_1, 0, +i Psi_3)`; exact up to rounding.
pub fn diagonal_block_identity_residual<T: Real>() -> T {
    let expected = Matrix4C::from_pairs([
        [(0.0, 0.0), (0.0, 0.0), (2.0, 0.0), (0.0, 0.0)],
        [(0.0, 0.0), (0.0, -1.0), (0.0, 0.0), (0.0, 0.0)],
        [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 1.0)],
    ]);
    diagonal_block::<T>().max_abs_diff(&expected)
}

/// Cached per-mode evaluator; build once, then evaluate points (thread-safe
/// once the radial cache is warmed).
pub struct ModeEvaluator<T> {
    pub spec: ModeSpec<T>,
    pub params: RadialParams<T>,
    closed: ClosedForm<T>,
    radial_cache: HashMap<u64, ([Cx<T>; 3], [Cx<T>; 3])>,
    alpha3: Matrix4C<T>,
    c_block: Matrix4C<T>,
}

impl<T: Real> ModeEvaluator<T> {
    pub fn new(spec: ModeSpec<T>) -> Result<Self> {
        let params = spec.radial_params()?;
        let closed = ClosedForm::new(params)?;
        let residual = diagonal_block_identity_residual::<T>();
        if residual.as_f64() > 1e-14 {
            return Err(Error::Parameter {
                what: "diagonal block identity",
                value: residual.as_f64(),
                need: "alpha'1 s'2 - alpha'2 s'1 must match its closed form",
            });
        }
        Ok(Self {
            spec,
            params,
            closed,
            radial_cache: HashMap::new(),
            alpha3: alpha(3, Basis::Cyclic).unwrap(),
            c_block: diagonal_block(),
        })
    }

    /// `(f1, f2, f3)` and their chi-derivatives from one radial sample.
    fn profile(&self, chi: T, ev: &RadialEval<T>) -> ([Cx<T>; 3], [Cx<T>; 3]) {
        let p = &self.params;
        let r = p.kind.radial(chi);
        let cot = p.kind.cot_like(chi);
        let i = cx(T::zero(), T::one());
        let rt2 = T::SQRT_2();
        let cap_f = -i * ev.dg / p.omega;
        let dcap_f = -i * ev.d2g / p.omega;
        let cap_f1 = (cap_f + ev.g) / rt2;
        let cap_f3 = (cap_f - ev.g) / rt2;
        let f1 = cap_f1 / r;
        let f3 = cap_f3 / r;
        let f2 = i * ev.g * (p.nu / p.omega) / (r * r);
        let df1 = ((dcap_f + ev.dg) / rt2 - cap_f1 * cot) / r;
        let df3 = ((dcap_f - ev.dg) / rt2 - cap_f3 * cot) / r;
        let df2 = i * ev.dg * (p.nu / p.omega) / (r * r) - f2 * (cot * T::int(2));
        ([f1, f2, f3], [df1, df2, df3])
    }

    /// Warm the radial cache for every chi in `chis` (one integrator pass on
    /// the open model).
    pub fn precompute(&mut self, chis: &[T]) -> Result<()> {
        let mut fresh: Vec<T> = Vec::new();
        for &chi in chis {
            if !self.radial_cache.contains_key(&chi.as_f64().to_bits()) {
                fresh.push(chi);
            }
        }
        fresh.sort_by(|a, b| a.partial_cmp(b).unwrap());
        fresh.dedup();
        let evals = self.closed.eval_grid(&fresh)?;
        for (chi, ev) in fresh.into_iter().zip(&evals) {
            let entry = self.profile(chi, ev);
            self.radial_cache.insert(chi.as_f64().to_bits(), entry);
        }
        Ok(())
    }

    fn radial_at(&self, chi: T) -> Result<([Cx<T>; 3], [Cx<T>; 3])> {
        if let Some(hit) = self.radial_cache.get(&chi.as_f64().to_bits()) {
            return Ok(*hit);
        }
        let ev = self.closed.eval(chi)?;
        Ok(self.profile(chi, &ev))
    }

    fn d_values(&self, theta: T) -> Result<[T; 3]> {
        let (j, m) = (self.spec.j, self.spec.m);
        Ok([
            small_d(j, -m, -1, theta)?,
            small_d(j, -m, 0, theta)?,
            small_d(j, -m, 1, theta)?,
        ])
    }

    fn phase(&self, t: T, phi: T, carrier: Option<T>) -> Cx<T> {
        let w = carrier.unwrap_or_else(|| self.spec.omega());
        let m = T::int(self.spec.m as i64);
        cx(T::zero(), m * phi - w * t).exp()
    }

    /// The mode vector at one point. `carrier` overrides the frequency of
    /// the time phase only (the spatial profile keeps the mode's own
    /// frequency); `None` is the physical mode.
    pub fn psi(&self, x: &Coordinates<T>, carrier: Option<T>) -> Result<FieldVector<T>> {
        check_interior(self.spec.kind, x)?;
        let (f, _) = self.radial_at(x.chi)?;
        let d = self.d_values(x.theta)?;
        let ph = self.phase(x.t, x.phi, carrier);
        Ok(FieldVector::new([
            cx(T::zero(), T::zero()),
            f[0] * d[0] * ph,
            f[1] * d[1] * ph,
            f[2] * d[2] * ph,
        ]))
    }

    /// `Op Psi'` along the analytic path: exact time derivative, closed-form
    /// radial derivatives, angular action by its coefficient formula.
    pub fn operator_analytic(&self, x: &Coordinates<T>, carrier: Option<T>) -> Result<FieldVector<T>> {
        check_interior(self.spec.kind, x)?;
        let (f, df) = self.radial_at(x.chi)?;
        let d = self.d_values(x.theta)?;
        let ph = self.phase(x.t, x.phi, carrier);
        let w_t = carrier.unwrap_or_else(|| self.spec.omega());
        let r = self.spec.kind.radial(x.chi);
        let cot = self.spec.kind.cot_like(x.chi);
        let zero = cx(T::zero(), T::zero());

        let psi = FieldVector::new([zero, f[0] * d[0] * ph, f[1] * d[1] * ph, f[2] * d[2] * ph]);
        let dpsi = FieldVector::new([zero, df[0] * d[0] * ph, df[1] * d[1] * ph, df[2] * d[2] * ph]);
        let act = angular_action(self.spec.j, f)?;
        let slot_d = |k: usize| match ACTION_SLOT_SIGMA[k] {
            -1 => d[0],
            0 => d[1],
            _ => d[2],
        };
        let mut ang = [zero; 4];
        for (k, a) in act.iter().enumerate() {
            ang[k] = *a * slot_d(k) * ph / r;
        }

        let out = psi.scale_re(-w_t)
            + self.alpha3 * dpsi
            + (self.c_block * psi).scale_re(cot)
            + FieldVector::new(ang);
        Ok(out)
    }

    /// `Op Psi'` by fourth-order central differences in all four
    /// coordinates; shares nothing with the analytic derivative path.
    pub fn operator_brute(&self, x: &Coordinates<T>, carrier: Option<T>, h: T) -> Result<FieldVector<T>> {
        check_interior(self.spec.kind, x)?;
        let fd4 = |axis: usize| -> Result<FieldVector<T>> {
            let v = |k: i32| self.psi(&x.with(axis, x.get(axis) + h * T::int(k as i64)), carrier);
            let num = (v(1)? - v(-1)?).scale_re(T::int(8)) - v(2)? + v(-2)?;
            Ok(num.scale_re(T::one() / (T::int(12) * h)))
        };
        let psi = self.psi(x, carrier)?;
        let r = self.spec.kind.radial(x.chi);
        let cot = self.spec.kind.cot_like(x.chi);
        let (st, ct) = (x.theta.sin(), x.theta.cos());
        let s3p = generator(3, Basis::Cyclic).unwrap();
        let a1 = alpha(1, Basis::Cyclic).unwrap();
        let a2 = alpha(2, Basis::Cyclic).unwrap();

        let minus_i = cx(T::zero(), -T::one());
        let t_term = fd4(0)?.scale(minus_i);
        let chi_term = self.alpha3 * fd4(1)?;
        let c_term = (self.c_block * psi).scale_re(cot);
        let ang = a1 * fd4(2)? + a2 * ((fd4(3)? + (s3p * psi).scale_re(ct)).scale_re(T::one() / st));
        Ok(t_term + chi_term + c_term + ang.scale_re(T::one() / r))
    }
}

/// One-off mode evaluation (cyclic basis) at a single spacetime point.
pub fn evaluate_mode<T: Real>(spec: &ModeSpec<T>, x: &Coordinates<T>) -> Result<FieldVector<T>> {
    ModeEvaluator::new(*spec)?.psi(x, None)
}

/// Rectangular residual grid; one time slice, guarded interior in the
/// spatial coordinates.
#[derive(Clone, Debug)]
pub struct ModeGrid<T> {
    pub t: T,
    pub chi: Vec<T>,
    pub theta: Vec<T>,
    pub phi: Vec<T>,
}

impl<T: Real> ModeGrid<T> {
    /// `n^3` points over `chi in [0.1, chi_max]`, `theta in [0.15, pi-0.15]`,
    /// `phi in [0, 2pi)`. `chi_max` defaults to `pi - 0.1` (closed) or `1.5`
    /// (open).
    pub fn guarded(kind: SpaceKind, n: usize, chi_max: Option<T>) -> Self {
        let hi = chi_max.unwrap_or_else(|| match kind {
            SpaceKind::S3 => T::PI() - T::lit(0.1),
            SpaceKind::H3 => T::lit(1.5),
        });
        let margin = T::lit(0.15);
        Self {
            t: T::lit(0.4),
            chi: linspace(T::lit(0.1), hi, n),
            theta: linspace(margin, T::PI() - margin, n),
            phi: linspace(T::zero(), T::lit(std::f64::consts::PI * 1.9), n),
        }
    }

    pub fn points(&self) -> Vec<Coordinates<T>> {
        let mut pts = Vec::with_capacity(self.chi.len() * self.theta.len() * self.phi.len());
        for &chi in &self.chi {
            for &theta in &self.theta {
                for &phi in &self.phi {
                    pts.push(Coordinates::new(self.t, chi, theta, phi));
                }
            }
        }
        pts
    }
}

/// Residual summary of [`curved_operator_residual`]: all maxima are relative
/// to the largest `|Psi'|` component on the grid.
#[derive(Clone, Copy, Debug)]
pub struct OperatorResiduals<T> {
    pub analytic: T,
    pub brute: T,
    /// Row 0 of the analytic-path result (divergence-constraint slot).
    pub constraint: T,
    pub psi_scale: T,
}

#[derive(Clone, Copy, Debug)]
pub struct OperatorOptions<T> {
    /// Override for the time-phase frequency (detuning control).
    pub carrier_omega: Option<T>,
    pub fd_step: T,
}

impl<T: Real> Default for OperatorOptions<T> {
    fn default() -> Self {
        Self {
            carrier_omega: None,
            fd_step: T::lit(1e-3),
        }
    }
}

/// Applies the full curved-space operator over the grid along both paths and
/// reports max relative residuals.
pub fn curved_operator_residual<T: Real>(
    spec: &ModeSpec<T>,
    grid: &ModeGrid<T>,
    opts: OperatorOptions<T>,
) -> Result<OperatorResiduals<T>> {
    let mut eval = ModeEvaluator::new(*spec)?;
    let h = opts.fd_step;
    let mut chis: Vec<T> = Vec::new();
    for &chi in &grid.chi {
        for k in -2i64..=2 {
            chis.push(chi + h * T::int(k));
        }
    }
    eval.precompute(&chis)?;
    let pts = grid.points();

    let acc = pts
        .par_iter()
        .map(|x| -> Result<(T, T, T, T)> {
            let psi = eval.psi(x, opts.carrier_omega)?;
            let an = eval.operator_analytic(x, opts.carrier_omega)?;
            let br = eval.operator_brute(x, opts.carrier_omega, h)?;
            Ok((
                an.max_abs(),
                br.max_abs(),
                an.component(0).norm(),
                psi.max_abs(),
            ))
        })
        .try_reduce(
            || (T::zero(), T::zero(), T::zero(), T::zero()),
            |a, b| Ok((a.0.max(b.0), a.1.max(b.1), a.2.max(b.2), a.3.max(b.3))),
        )?;

    if acc.3 == T::zero() {
        return Err(Error::Parameter {
            what: "psi scale",
            value: 0.0,
            need: "a nonzero field on the residual grid",
        });
    }
    Ok(OperatorResiduals {
        analytic: acc.0 / acc.3,
        brute: acc.1 / acc.3,
        constraint: acc.2 / acc.3,
        psi_scale: acc.3,
    })
}

/// Converts a cyclic-basis state back to physical fields: `psi = U4^{-1}
/// Psi'`, then `E = Re psi`, `cB = Im psi`. Errors when the auxiliary
/// component is not negligible against the field scale.
pub fn to_physical_fields<T: Real>(psi_cyclic: &FieldVector<T>) -> Result<([T; 3], [T; 3])> {
    let (_, u_inv) = crate::matrix_core::cyclic_transform::<T>();
    let cart = u_inv * *psi_cyclic;
    let scale = cart.max_abs();
    let aux = cart.component(0).norm();
    if scale > T::zero() && aux > T::lit(1e-9) * scale {
        return Err(Error::NotPhysical {
            magnitude: aux.as_f64(),
            bound: (T::lit(1e-9) * scale).as_f64(),
        });
    }
    let mut e = [T::zero(); 3];
    let mut cb = [T::zero(); 3];
    for k in 0..3 {
        let c = cart.component(k + 1);
        e[k] = c.re;
        cb[k] = c.im;
    }
    Ok((e, cb))
}
