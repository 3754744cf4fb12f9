//! Named verification suites: each suite runs a module's identity and
//! oracle checks at stated tolerances and reports one record per check.
//!
//! The suites are the programmatic backend of the `verify` command; every
//! tolerance can be overridden through [`Tolerances`]. All orchestration
//! here is `f64`.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::flat_check::{
    classical_residual, equivalence_residual, matrix_residual, matrix_residual_fd,
    max_abs_complex, max_abs_real, FlatField, FlatPoint, PlaneWave, PointCharge, StandingWave,
    ZeroField,
};
use crate::geometry::{self, oracle, Coordinates, SpaceKind};
use crate::matrix_core::{
    alpha, cyclic_transform, generator, verify_algebra, verify_cyclic_transform, Basis,
    FieldVector,
};
use crate::modes::{
    curved_operator_residual, spectrum, to_physical_fields, ModeGrid, ModeSpec, OperatorOptions,
};
use crate::radial::{
    change_of_variable_residuals, endpoint_growth_ratio, ode_oracle, solve_on_grid, ClosedForm,
    RadialParams,
};
use crate::scalar::{cx, linspace, Cx};
use crate::ode::OdeOptions;
use crate::wigner::{angular_action, big_d, recurrence_residuals, small_d, small_d_dtheta};

/// Default residual bounds, one per check family. Override individual
/// fields to tighten or relax a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Matrix algebra identities.
    pub algebra: f64,
    /// Closed-form geometry vs finite-difference oracle.
    pub geometry: f64,
    /// Exact algebraic reassemblies (alternate closed-form routes).
    pub exact_route: f64,
    /// Six rotation-matrix recurrence relations.
    pub recurrence: f64,
    /// Rotation-matrix derivative and action checks limited by FD steps.
    pub wigner_fd: f64,
    /// Orthogonality integrals via Gauss-Legendre quadrature.
    pub orthogonality: f64,
    /// Second-order radial equation residual.
    pub radial_second: f64,
    /// First-order radial system residual.
    pub radial_first: f64,
    /// Closed form vs adaptive integrator oracle.
    pub oracle: f64,
    /// Full curved-space operator, analytic derivative path.
    pub operator_analytic: f64,
    /// Full curved-space operator, finite-difference path.
    pub operator_fd: f64,
    /// Divergence-constraint slot of the operator output.
    pub constraint: f64,
    /// Minimum residual a 5% frequency detuning must produce.
    pub detune_floor: f64,
    /// Endpoint-regularity growth ratio at a quantized frequency.
    pub endpoint_regular: f64,
    /// Minimum growth ratio once the frequency is detuned.
    pub endpoint_growth: f64,
    /// Matrix-vs-classical regrouping identity.
    pub equivalence: f64,
    /// Flat-space residuals with analytic derivatives.
    pub flat_analytic: f64,
    /// Flat-space residuals with finite-difference derivatives.
    pub flat_fd: f64,
    /// Unitary round trips and basis changes.
    pub unitarity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebra: 1e-15,
            geometry: 1e-7,
            exact_route: 1e-12,
            recurrence: 1e-10,
            wigner_fd: 1e-6,
            orthogonality: 1e-8,
            radial_second: 1e-8,
            radial_first: 1e-8,
            oracle: 1e-6,
            operator_analytic: 1e-8,
            operator_fd: 1e-6,
            constraint: 1e-8,
            detune_floor: 1e-2,
            endpoint_regular: 0.1,
            endpoint_growth: 1.0,
            equivalence: 1e-13,
            flat_analytic: 1e-10,
            flat_fd: 1e-6,
            unitarity: 1e-14,
        }
    }
}

/// Direction of a bound: residuals stay below it, negative controls stay
/// above it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    AtMost,
    AtLeast,
}

/// One executed check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub sense: Sense,
    pub threshold: f64,
    pub observed: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, threshold: f64, observed: f64) -> Self {
        Self {
            name: name.into(),
            sense: Sense::AtMost,
            threshold,
            observed,
            passed: observed.is_finite() && observed <= threshold,
        }
    }

    pub fn at_least(name: impl Into<String>, threshold: f64, observed: f64) -> Self {
        Self {
            name: name.into(),
            sense: Sense::AtLeast,
            threshold,
            observed,
            passed: observed.is_finite() && observed >= threshold,
        }
    }

    /// Folds an operational error into a failed check instead of aborting
    /// the suite.
    pub fn from_result(name: impl Into<String>, threshold: f64, r: Result<f64>) -> Self {
        match r {
            Ok(v) => Self::at_most(name, threshold, v),
            Err(e) => Self {
                name: format!("{} [error: {e}]", name.into()),
                sense: Sense::AtMost,
                threshold,
                observed: f64::NAN,
                passed: false,
            },
        }
    }
}

/// A named batch of checks with its wall-clock cost.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(name: &'static str, checks: Vec<Check>, started: Instant) -> Self {
        Self {
            name,
            checks,
            elapsed: started.elapsed(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Optional narrowing of the radial and mode suites to one configuration;
/// `None` fields fall back to the full default sweeps.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ModeSelection {
    pub kind: Option<SpaceKind>,
    pub j: Option<u32>,
    pub m: Option<i32>,
    pub n: Option<u32>,
    pub omega: Option<f64>,
}

impl ModeSelection {
    fn include(&self, kind: SpaceKind) -> bool {
        self.kind.map_or(true, |k| k == kind)
    }

    fn j_list(&self, j_max: u32) -> Vec<u32> {
        self.j.map_or_else(|| (1..=j_max).collect(), |j| vec![j])
    }

    fn n_list(&self, n_max: u32) -> Vec<u32> {
        self.n.map_or_else(|| (0..=n_max).collect(), |n| vec![n])
    }

    fn omega_list(&self) -> Vec<f64> {
        self.omega.map_or_else(|| vec![0.5, 1.3, 2.7], |w| vec![w])
    }
}

/// Grid densities for the operator suite: `showcase` for the two
/// dual-path examples, `sweep` for the all-modes constraint scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSizes {
    pub showcase: usize,
    pub sweep: usize,
}

impl Default for GridSizes {
    fn default() -> Self {
        Self {
            showcase: 20,
            sweep: 6,
        }
    }
}

/// Every identity of the alpha algebra, the generator commutators, and the
/// cyclic change of basis.
pub fn algebra_suite(tol: &Tolerances) -> SuiteReport {
    let started = Instant::now();
    let mut checks = Vec::new();
    for basis in [Basis::Cartesian, Basis::Cyclic] {
        let tag = match basis {
            Basis::Cartesian => "cartesian",
            Basis::Cyclic => "cyclic",
        };
        for id in verify_algebra::<f64>(basis) {
            checks.push(Check::at_most(
                format!("{tag} basis: {}", id.name),
                tol.algebra,
                id.residual,
            ));
        }
    }
    for id in verify_cyclic_transform::<f64>() {
        checks.push(Check::at_most(
            format!("basis change: {}", id.name),
            tol.algebra,
            id.residual,
        ));
    }
    SuiteReport::new("algebra", checks, started)
}

fn random_interior(kind: SpaceKind, rng: &mut StdRng) -> Coordinates<f64> {
    let chi_hi = match kind {
        SpaceKind::S3 => PI - 0.1,
        SpaceKind::H3 => 3.0,
    };
    Coordinates::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(0.1..chi_hi),
        rng.gen_range(0.15..PI - 0.15),
        rng.gen_range(0.0..2.0 * PI),
    )
}

/// Closed-form Christoffel symbols, rotation coefficients and matrix
/// connections against the definition-based finite-difference oracle at
/// `points` random interior points per space.
pub fn geometry_suite(seed: u64, points: usize, tol: &Tolerances) -> SuiteReport {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let h = oracle::FD_STEP;
    for kind in [SpaceKind::S3, SpaceKind::H3] {
        let tag = match kind {
            SpaceKind::S3 => "s3",
            SpaceKind::H3 => "h3",
        };
        let run = |mut f: Box<dyn FnMut(&Coordinates<f64>) -> Result<f64>>,
                   rng: &mut StdRng|
         -> Result<f64> {
            let mut worst = 0.0f64;
            for _ in 0..points {
                let x = random_interior(kind, rng);
                worst = worst.max(f(&x)?);
            }
            Ok(worst)
        };
        checks.push(Check::from_result(
            format!("{tag}: Christoffel symbols, closed form vs finite differences ({points} points)"),
            tol.geometry,
            run(
                Box::new(move |x| {
                    Ok(geometry::table_diff(
                        &geometry::christoffel(kind, x)?,
                        &oracle::christoffel_fd(kind, x, h)?,
                    ))
                }),
                &mut rng,
            ),
        ));
        checks.push(Check::from_result(
            format!("{tag}: rotation coefficients, closed form vs finite differences ({points} points)"),
            tol.geometry,
            run(
                Box::new(move |x| {
                    Ok(geometry::table_diff(
                        &geometry::ricci_rotation(kind, x)?,
                        &oracle::ricci_rotation_fd(kind, x, h)?,
                    ))
                }),
                &mut rng,
            ),
        ));
        for basis in [Basis::Cartesian, Basis::Cyclic] {
            let btag = match basis {
                Basis::Cartesian => "cartesian",
                Basis::Cyclic => "cyclic",
            };
            checks.push(Check::from_result(
                format!("{tag}: matrix connection vs finite differences, {btag} basis ({points} points)"),
                tol.geometry,
                run(
                    Box::new(move |x| {
                        let a = geometry::connection(kind, x, basis)?;
                        let b = oracle::connection_fd(kind, x, h, basis)?;
                        let mut worst = 0.0f64;
                        for k in 0..4 {
                            worst = worst.max(a[k].max_abs_diff(&b[k]));
                        }
                        Ok(worst)
                    }),
                    &mut rng,
                ),
            ));
        }
        checks.push(Check::from_result(
            format!("{tag}: connection reassembled from rotation coefficients ({points} points)"),
            tol.exact_route,
            run(
                Box::new(move |x| {
                    let a = geometry::connection(kind, x, Basis::Cartesian)?;
                    let b = geometry::connection_from_rotation(kind, x, Basis::Cartesian)?;
                    let mut worst = 0.0f64;
                    for k in 0..4 {
                        worst = worst.max(a[k].max_abs_diff(&b[k]));
                    }
                    Ok(worst)
                }),
                &mut rng,
            ),
        ));
        checks.push(Check::from_result(
            format!("{tag}: metric compatibility of the Christoffel symbols ({points} points)"),
            tol.geometry,
            run(
                Box::new(move |x| oracle::metric_compatibility(kind, x, h)),
                &mut rng,
            ),
        ));
        checks.push(Check::from_result(
            format!("{tag}: tetrad orthonormality ({points} points)"),
            tol.exact_route,
            run(
                Box::new(move |x| geometry::orthonormality_residual(kind, x)),
                &mut rng,
            ),
        ));
    }
    SuiteReport::new("geometry", checks, started)
}

/// Legendre polynomial value and derivative at `x` by upward recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

/// Applies the angular operator to an assembled spin-weight vector by
/// finite differences and compares with the coefficient formula.
fn action_fd_residual(j: u32, m: i32, f: [Cx<f64>; 3], theta: f64, phi: f64) -> Result<f64> {
    let a1 = alpha::<f64>(1, Basis::Cyclic)?;
    let a2 = alpha::<f64>(2, Basis::Cyclic)?;
    let s3 = generator::<f64>(3, Basis::Cyclic)?;
    let assemble = |theta: f64, phi: f64| -> Result<FieldVector<f64>> {
        let zero = cx(0.0, 0.0);
        Ok(FieldVector::new([
            zero,
            f[0] * big_d(j, -m, -1, phi, theta)?,
            f[1] * big_d(j, -m, 0, phi, theta)?,
            f[2] * big_d(j, -m, 1, phi, theta)?,
        ]))
    };
    let h = 1e-3;
    let fd = |axis_theta: bool| -> Result<FieldVector<f64>> {
        let v = |k: i32| {
            let off = h * k as f64;
            if axis_theta {
                assemble(theta + off, phi)
            } else {
                assemble(theta, phi + off)
            }
        };
        let num = (v(1)? - v(-1)?).scale_re(8.0) - v(2)? + v(-2)?;
        Ok(num.scale_re(1.0 / (12.0 * h)))
    };
    let v0 = assemble(theta, phi)?;
    let applied =
        a1 * fd(true)? + a2 * ((fd(false)? + (s3 * v0).scale_re(theta.cos())).scale_re(1.0 / theta.sin()));

    let coefs = angular_action(j, f)?;
    let slots = [
        big_d(j, -m, 0, phi, theta)?,
        big_d(j, -m, -1, phi, theta)?,
        big_d(j, -m, 0, phi, theta)?,
        big_d(j, -m, 1, phi, theta)?,
    ];
    let mut worst = 0.0f64;
    for k in 0..4 {
        worst = worst.max((applied.component(k) - coefs[k] * slots[k]).norm());
    }
    Ok(worst)
}

/// Rotation-matrix suite: the six recurrences, derivative and azimuthal
/// checks, orthogonality integrals, and the angular-action identity.
pub fn wigner_suite(tol: &Tolerances) -> SuiteReport {
    let started = Instant::now();
    let mut checks = Vec::new();

    let thetas = linspace(0.05f64, PI - 0.05, 50);
    let recur = (|| -> Result<f64> {
        let mut worst = 0.0f64;
        for j in 1..=8u32 {
            for m in -(j as i32)..=(j as i32) {
                for &theta in &thetas {
                    let res = recurrence_residuals(j, m, theta)?;
                    for r in res {
                        worst = worst.max(r);
                    }
                }
            }
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        "six derivative/ratio recurrences (j <= 8, all m, 50 theta points)",
        tol.recurrence,
        recur,
    ));

    let deriv = (|| -> Result<f64> {
        let h = 1e-5;
        let mut worst = 0.0f64;
        for j in 1..=6u32 {
            for m in -(j as i32)..=(j as i32) {
                for sigma in -1i32..=1 {
                    for &theta in &[0.3f64, 1.0, 1.9, 2.7] {
                        let an = small_d_dtheta(j, m, sigma, theta)?;
                        let fd = (small_d(j, m, sigma, theta + h)? - small_d(j, m, sigma, theta - h)?)
                            / (2.0 * h);
                        worst = worst.max((an - fd).abs());
                    }
                }
            }
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        "theta derivative vs central difference (j <= 6)",
        tol.wigner_fd,
        deriv,
    ));

    let ortho = (|| -> Result<f64> {
        let (xs, ws) = gauss_legendre(64);
        let mut worst = 0.0f64;
        for j1 in 1..=6u32 {
            for j2 in j1..=6u32 {
                let m_cap = j1.min(j2) as i32;
                for m in -m_cap..=m_cap {
                    for sigma in -1i32..=1 {
                        let mut acc = 0.0f64;
                        for (x, w) in xs.iter().zip(&ws) {
                            let theta = (x + 1.0) * PI / 2.0;
                            acc += w * (PI / 2.0)
                                * small_d(j1, m, sigma, theta)?
                                * small_d(j2, m, sigma, theta)?
                                * theta.sin();
                        }
                        let expect = if j1 == j2 { 2.0 / (2.0 * j1 as f64 + 1.0) } else { 0.0 };
                        worst = worst.max((acc - expect).abs());
                    }
                }
            }
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        "orthogonality integrals, 64-node Gauss-Legendre (j, j' <= 6)",
        tol.orthogonality,
        ortho,
    ));

    let azim = (|| -> Result<f64> {
        let h = 1e-4;
        let mut worst = 0.0f64;
        for j in 1..=5u32 {
            for m1 in -(j as i32)..=(j as i32) {
                for &(theta, phi) in &[(0.8, 0.4), (1.7, 2.9), (2.4, 5.3)] {
                    let v = |k: i32| big_d(j, m1, 0, phi + h * k as f64, theta);
                    let fd = ((v(1)? - v(-1)?) * cx(8.0, 0.0) - v(2)? + v(-2)?) / cx(12.0 * h, 0.0);
                    let an = big_d(j, m1, 0, phi, theta)? * cx(0.0, -(m1 as f64));
                    worst = worst.max((fd - an).norm());
                }
            }
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        "azimuthal derivative identity of the full rotation matrix",
        tol.orthogonality,
        azim,
    ));

    let action = (|| -> Result<f64> {
        let mut rng = StdRng::seed_from_u64(7);
        let mut worst = 0.0f64;
        for j in 1..=5u32 {
            for m in -(j as i32)..=(j as i32) {
                let f = [
                    cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                ];
                for &(theta, phi) in &[(0.35, 0.9), (1.2, 3.3), (2.6, 5.1)] {
                    worst = worst.max(action_fd_residual(j, m, f, theta, phi)?);
                }
            }
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        "angular action coefficients vs finite-difference operator (j <= 5, random profiles)",
        tol.wigner_fd,
        action,
    ));

    SuiteReport::new("wigner", checks, started)
}

/// Distance from `omega` to the nearest admissible quantized frequency for
/// angular index `j` (curvature units).
fn quantization_distance(j: u32, omega: f64) -> f64 {
    let floor = (j + 1) as f64;
    let nearest = omega.round().max(floor);
    (omega - nearest).abs()
}

/// Radial suite: substitutions, closed-form residuals, integrator oracles,
/// and endpoint regularity.
pub fn radial_suite(sel: &ModeSelection, tol: &Tolerances) -> SuiteReport {
    let started = Instant::now();
    let mut checks = Vec::new();

    for kind in [SpaceKind::S3, SpaceKind::H3] {
        if !sel.include(kind) {
            continue;
        }
        let (tag, hi) = match kind {
            SpaceKind::S3 => ("s3", PI - 0.05),
            SpaceKind::H3 => ("h3", 5.0),
        };
        let mut worst = 0.0f64;
        for &chi in linspace(0.05, hi, 40).iter() {
            for r in change_of_variable_residuals(kind, chi) {
                worst = worst.max(r);
            }
        }
        checks.push(Check::at_most(
            format!("{tag}: change-of-variable identities on the radial domain"),
            tol.exact_route,
            worst,
        ));
    }

    if sel.include(SpaceKind::S3) {
        let grid = linspace(0.05, PI - 0.05, 60);
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut gate_failed = false;
        if let Some(omega) = sel.omega {
            // explicit frequency on the closed model: quantization gate
            for j in sel.j_list(4) {
                let dist = quantization_distance(j, omega);
                checks.push(Check::at_most(
                    format!(
                        "s3: frequency quantization, omega = {omega} must equal n+1+j for integer n >= 0 (j = {j})"
                    ),
                    1e-9,
                    dist,
                ));
                if dist <= 1e-9 {
                    pairs.push((j, omega.round() as u32 - 1 - j));
                } else {
                    gate_failed = true;
                }
            }
        } else {
            for j in sel.j_list(4) {
                for n in sel.n_list(3) {
                    pairs.push((j, n));
                }
            }
        }

        if !pairs.is_empty() {
            let run = (|| -> Result<(f64, f64)> {
                let mut worst2 = 0.0f64;
                let mut worst1 = 0.0f64;
                for &(j, n) in &pairs {
                    let cf = ClosedForm::new(RadialParams::s3_quantized(j, n)?)?;
                    let sol = solve_on_grid(&cf, &grid)?;
                    worst2 = worst2.max(sol.residual_2nd);
                    worst1 = worst1.max(sol.residual_1st);
                }
                Ok((worst2, worst1))
            })();
            match run {
                Ok((r2, r1)) => {
                    checks.push(Check::at_most(
                        format!("s3: second-order radial equation residual ({} modes)", pairs.len()),
                        tol.radial_second,
                        r2,
                    ));
                    checks.push(Check::at_most(
                        format!("s3: first-order radial system residual ({} modes)", pairs.len()),
                        tol.radial_first,
                        r1,
                    ));
                }
                Err(e) => checks.push(Check {
                    name: format!("s3 radial sweep [error: {e}]"),
                    sense: Sense::AtMost,
                    threshold: tol.radial_second,
                    observed: f64::NAN,
                    passed: false,
                }),
            }
        }

        if !gate_failed && sel.omega.is_none() {
            let oracle_run = (|| -> Result<f64> {
                let mut worst = 0.0f64;
                for &(j, n) in &[(1u32, 0u32), (2, 1)] {
                    worst = worst.max(closed_vs_integrator(
                        SpaceKind::S3,
                        RadialParams::s3_quantized(j, n)?,
                        0.1,
                        PI - 0.1,
                    )?);
                }
                Ok(worst)
            })();
            checks.push(Check::from_result(
                "s3: closed form vs adaptive-integrator oracle",
                tol.oracle,
                oracle_run,
            ));

            for j in sel.j_list(3) {
                let omega = (1 + j) as f64;
                checks.push(Check::from_result(
                    format!("s3: endpoint regularity at the quantized frequency (j = {j}, omega = {omega})"),
                    tol.endpoint_regular,
                    endpoint_growth_ratio(j, omega),
                ));
                let detuned = omega + 0.5;
                let grown = endpoint_growth_ratio(j, detuned);
                checks.push(match grown {
                    Ok(v) => Check::at_least(
                        format!("s3: endpoint growth once detuned (j = {j}, omega = {detuned})"),
                        tol.endpoint_growth,
                        v,
                    ),
                    e => Check::from_result(
                        format!("s3: endpoint growth once detuned (j = {j}, omega = {detuned})"),
                        tol.endpoint_growth,
                        e,
                    ),
                });
            }
        }
    }

    if sel.include(SpaceKind::H3) {
        let grid = linspace(0.05, 5.0, 60);
        let js = sel.j_list(4);
        let omegas = sel.omega_list();
        let run = (|| -> Result<(f64, f64, f64)> {
            let mut worst2 = 0.0f64;
            let mut worst1 = 0.0f64;
            let mut worst_orc = 0.0f64;
            for &j in &js {
                for &omega in &omegas {
                    let p = RadialParams::new(SpaceKind::H3, j, omega)?;
                    let sol = solve_on_grid(&ClosedForm::new(p)?, &grid)?;
                    worst2 = worst2.max(sol.residual_2nd);
                    worst1 = worst1.max(sol.residual_1st);
                    worst_orc = worst_orc.max(closed_vs_integrator(SpaceKind::H3, p, 0.05, 2.0)?);
                }
            }
            Ok((worst2, worst1, worst_orc))
        })();
        match run {
            Ok((r2, r1, orc)) => {
                let label = format!("{} j values x {} frequencies", js.len(), omegas.len());
                checks.push(Check::at_most(
                    format!("h3: second-order radial equation residual ({label})"),
                    tol.radial_second,
                    r2,
                ));
                checks.push(Check::at_most(
                    format!("h3: first-order radial system residual ({label})"),
                    tol.radial_first,
                    r1,
                ));
                checks.push(Check::at_most(
                    format!("h3: closed form vs adaptive-integrator oracle on chi in [0.05, 2] ({label})"),
                    tol.oracle,
                    orc,
                ));
            }
            Err(e) => checks.push(Check {
                name: format!("h3 radial sweep [error: {e}]"),
                sense: Sense::AtMost,
                threshold: tol.radial_second,
                observed: f64::NAN,
                passed: false,
            }),
        }
    }

    SuiteReport::new("radial", checks, started)
}

/// Integrates the radial equation from closed-form initial data and
/// compares the result against closed-form samples, relative to the peak.
fn closed_vs_integrator(
    kind: SpaceKind,
    p: RadialParams<f64>,
    chi0: f64,
    chi1: f64,
) -> Result<f64> {
    let cf = ClosedForm::new(p)?;
    let targets = linspace(chi0, chi1, 40);
    let first = cf.eval(chi0)?;
    let states = ode_oracle(
        kind,
        p.nu,
        p.omega,
        chi0,
        (first.g, first.dg),
        &targets,
        OdeOptions::with_tol(1e-12, 1e-14),
    )?;
    let closed = cf.eval_grid(&targets)?;
    let peak = closed.iter().map(|e| e.g.norm()).fold(0.0f64, f64::max);
    let mut worst = 0.0f64;
    for (ev, st) in closed.iter().zip(&states) {
        worst = worst.max((ev.g - st.0).norm());
    }
    Ok(worst / peak)
}

/// Mode suite: spectrum spot values, dual-path operator residuals on the
/// showcase modes, detuning control, the all-modes constraint sweep, and
/// the physical-fields round trip.
pub fn modes_suite(sel: &ModeSelection, sizes: &GridSizes, tol: &Tolerances) -> SuiteReport {
    let started = Instant::now();
    let mut checks = Vec::new();

    let spot = |j: u32, n: u32, rho: f64| -> Result<f64> {
        let table = spectrum(j, n, rho)?;
        let row = table
            .rows
            .iter()
            .find(|r| r.j == j && r.n == n)
            .expect("requested row present");
        Ok((row.omega - ((n + 1 + j) as f64) / rho).abs())
    };
    checks.push(Check::from_result(
        "spectrum value at (j=1, n=0, rho=1)",
        tol.algebra,
        spot(1, 0, 1.0),
    ));
    checks.push(Check::from_result(
        "spectrum value at (j=2, n=3, rho=1)",
        tol.algebra,
        spot(2, 3, 1.0),
    ));
    checks.push(Check::from_result(
        "spectrum value at (j=1, n=0, rho=2)",
        tol.algebra,
        spot(1, 0, 2.0),
    ));

    let showcase = |spec: ModeSpec<f64>, tag: &str, checks: &mut Vec<Check>| {
        let grid = ModeGrid::guarded(spec.kind, sizes.showcase, None);
        match curved_operator_residual(&spec, &grid, OperatorOptions::default()) {
            Ok(res) => {
                checks.push(Check::at_most(
                    format!("{tag}: operator residual, analytic derivative path"),
                    tol.operator_analytic,
                    res.analytic,
                ));
                checks.push(Check::at_most(
                    format!("{tag}: operator residual, finite-difference path"),
                    tol.operator_fd,
                    res.brute,
                ));
                checks.push(Check::at_most(
                    format!("{tag}: divergence-constraint slot"),
                    tol.constraint,
                    res.constraint,
                ));
            }
            Err(e) => checks.push(Check {
                name: format!("{tag}: operator residual [error: {e}]"),
                sense: Sense::AtMost,
                threshold: tol.operator_analytic,
                observed: f64::NAN,
                passed: false,
            }),
        }
    };

    if sel.include(SpaceKind::S3) {
        let j = sel.j.unwrap_or(1);
        let m = sel.m.unwrap_or(0);
        let n = sel.n.unwrap_or(0);
        match ModeSpec::s3(j, m, n) {
            Ok(spec) => {
                let tag = format!("s3 mode (j={j}, m={m}, n={n})");
                showcase(spec, &tag, &mut checks);

                let grid = ModeGrid::guarded(SpaceKind::S3, sizes.showcase, None);
                let detuned = OperatorOptions {
                    carrier_omega: Some(spec.omega() * 1.05),
                    ..OperatorOptions::default()
                };
                match curved_operator_residual(&spec, &grid, detuned) {
                    Ok(res) => checks.push(Check::at_least(
                        format!("{tag}: negative control, 5% detuned frequency must leave a residual"),
                        tol.detune_floor,
                        res.analytic.min(res.brute),
                    )),
                    Err(e) => checks.push(Check {
                        name: format!("{tag}: detuning control [error: {e}]"),
                        sense: Sense::AtLeast,
                        threshold: tol.detune_floor,
                        observed: f64::NAN,
                        passed: false,
                    }),
                }
            }
            Err(e) => checks.push(Check {
                name: format!("s3 mode construction [error: {e}]"),
                sense: Sense::AtMost,
                threshold: tol.operator_analytic,
                observed: f64::NAN,
                passed: false,
            }),
        }

        if sel.j.is_none() && sel.m.is_none() && sel.n.is_none() {
            let sweep = (|| -> Result<(f64, f64)> {
                let grid = ModeGrid::guarded(SpaceKind::S3, sizes.sweep, None);
                let mut worst_an = 0.0f64;
                let mut worst_c0 = 0.0f64;
                for j in 1..=4u32 {
                    for n in 0..=3u32 {
                        for m in -(j as i32)..=(j as i32) {
                            let spec = ModeSpec::s3(j, m, n)?;
                            let res =
                                curved_operator_residual(&spec, &grid, OperatorOptions::default())?;
                            worst_an = worst_an.max(res.analytic);
                            worst_c0 = worst_c0.max(res.constraint);
                        }
                    }
                }
                Ok((worst_an, worst_c0))
            })();
            match sweep {
                Ok((an, c0)) => {
                    checks.push(Check::at_most(
                        "s3 sweep (j <= 4, n <= 3, all m): operator residual, analytic path",
                        tol.operator_fd,
                        an,
                    ));
                    checks.push(Check::at_most(
                        "s3 sweep (j <= 4, n <= 3, all m): divergence-constraint slot",
                        tol.constraint,
                        c0,
                    ));
                }
                Err(e) => checks.push(Check {
                    name: format!("s3 mode sweep [error: {e}]"),
                    sense: Sense::AtMost,
                    threshold: tol.operator_fd,
                    observed: f64::NAN,
                    passed: false,
                }),
            }
        }
    }

    if sel.include(SpaceKind::H3) {
        let j = sel.j.unwrap_or(1);
        let m = sel.m.unwrap_or(0);
        let omega = sel.omega.unwrap_or(1.3);
        match ModeSpec::h3(j, m, omega) {
            Ok(spec) => {
                showcase(spec, &format!("h3 mode (j={j}, m={m}, omega={omega})"), &mut checks);
            }
            Err(e) => checks.push(Check {
                name: format!("h3 mode construction [error: {e}]"),
                sense: Sense::AtMost,
                threshold: tol.operator_analytic,
                observed: f64::NAN,
                passed: false,
            }),
        }
    }

    let round_trip = (|| -> Result<f64> {
        let (u, _) = cyclic_transform::<f64>();
        let e = [0.6, -0.2, 1.1];
        let cb = [-0.9, 0.35, 0.05];
        let cart = FieldVector::physical([cx(e[0], cb[0]), cx(e[1], cb[1]), cx(e[2], cb[2])]);
        let (e2, cb2) = to_physical_fields(&(u * cart))?;
        let mut worst = 0.0f64;
        for k in 0..3 {
            worst = worst.max((e[k] - e2[k]).abs()).max((cb[k] - cb2[k]).abs());
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        "physical fields round trip through the cyclic basis",
        tol.unitarity,
        round_trip,
    ));

    SuiteReport::new("modes", checks, started)
}

/// Flat-space suite: the three analytic field families on both forms of the
/// equations plus the regrouping equivalence.
pub fn flat_suite(tol: &Tolerances) -> SuiteReport {
    let started = Instant::now();
    let mut checks = Vec::new();
    let wave_points = [
        FlatPoint::new(0.0, 0.0, 0.0, 0.0),
        FlatPoint::new(0.7, 0.2, -1.1, 0.4),
        FlatPoint::new(-1.3, 2.0, 0.5, -0.8),
        FlatPoint::new(2.4, -0.6, 1.7, 3.1),
    ];
    let charge_points = [
        FlatPoint::new(0.0, 1.0, 0.0, 0.0),
        FlatPoint::new(0.5, 0.6, -0.7, 0.9),
        FlatPoint::new(-1.0, -1.2, 0.3, 1.5),
    ];

    let family = |name: &str,
                  field: &dyn ErasedField,
                  pts: &[FlatPoint<f64>],
                  checks: &mut Vec<Check>| {
        let mut m = 0.0f64;
        let mut c = 0.0f64;
        let mut eqv = 0.0f64;
        for p in pts {
            m = m.max(field.matrix(p));
            c = c.max(field.classical(p));
            eqv = eqv.max(field.equivalence(p));
        }
        checks.push(Check::at_most(
            format!("{name}: matrix-form residual, analytic derivatives"),
            tol.flat_analytic,
            m,
        ));
        checks.push(Check::at_most(
            format!("{name}: classical eight-equation residual"),
            tol.flat_analytic,
            c,
        ));
        checks.push(Check::at_most(
            format!("{name}: real/imaginary regrouping equivalence"),
            tol.equivalence,
            eqv,
        ));
    };

    family("plane wave", &PlaneWave, &wave_points, &mut checks);
    family("standing wave", &StandingWave, &wave_points, &mut checks);
    family("point charge", &PointCharge, &charge_points, &mut checks);

    let mut fd_worst = 0.0f64;
    for p in &charge_points {
        fd_worst = fd_worst.max(max_abs_complex(&matrix_residual_fd(&PointCharge, p, 1e-3)));
    }
    checks.push(Check::at_most(
        "point charge: matrix-form residual, finite-difference derivatives",
        tol.flat_fd,
        fd_worst,
    ));

    let p: FlatPoint<f64> = FlatPoint::new(0.3, 0.1, 0.2, 0.3);
    checks.push(Check::at_most(
        "zero field and source: exactly zero residual",
        0.0,
        max_abs_complex(&matrix_residual(&ZeroField, &p))
            .max(max_abs_real(&classical_residual(&ZeroField, &p))),
    ));

    SuiteReport::new("flat", checks, started)
}

/// Object-safe adapter so the family loop can take any analytic field.
trait ErasedField {
    fn matrix(&self, p: &FlatPoint<f64>) -> f64;
    fn classical(&self, p: &FlatPoint<f64>) -> f64;
    fn equivalence(&self, p: &FlatPoint<f64>) -> f64;
}

impl<F: FlatField<f64>> ErasedField for F {
    fn matrix(&self, p: &FlatPoint<f64>) -> f64 {
        max_abs_complex(&matrix_residual(self, p))
    }
    fn classical(&self, p: &FlatPoint<f64>) -> f64 {
        max_abs_real(&classical_residual(self, p))
    }
    fn equivalence(&self, p: &FlatPoint<f64>) -> f64 {
        equivalence_residual(self, p)
    }
}

/// Runs every suite with default selections.
pub fn all_suites(seed: u64, tol: &Tolerances) -> Vec<SuiteReport> {
    let sel = ModeSelection::default();
    vec![
        algebra_suite(tol),
        geometry_suite(seed, 120, tol),
        wigner_suite(tol),
        radial_suite(&sel, tol),
        modes_suite(&sel, &GridSizes::default(), tol),
        flat_suite(tol),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (xs, ws) = gauss_legendre(8);
        // degree up to 2n-1 = 15 is exact; int x^k over [-1,1]
        for k in 0..=15usize {
            let got: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(k as i32)).sum();
            let want = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((got - want).abs() < 1e-13, "k = {k}: {got} vs {want}");
        }
        let total: f64 = ws.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn check_records_sense_correctly() {
        assert!(Check::at_most("x", 1e-8, 1e-9).passed);
        assert!(!Check::at_most("x", 1e-8, 1e-7).passed);
        assert!(Check::at_least("x", 1e-2, 0.5).passed);
        assert!(!Check::at_least("x", 1e-2, 1e-3).passed);
        assert!(!Check::at_most("x", 1e-8, f64::NAN).passed);
    }

    #[test]
    fn algebra_suite_passes() {
        let s = algebra_suite(&Tolerances::default());
        assert!(s.passed(), "failures: {:?}", s.failures());
        assert!(!s.checks.is_empty());
    }

    #[test]
    fn flat_suite_passes() {
        let s = flat_suite(&Tolerances::default());
        assert!(s.passed(), "failures: {:?}", s.failures());
    }

    #[test]
    fn quantization_distance_examples() {
        assert_eq!(quantization_distance(1, 2.0), 0.0);
        assert!((quantization_distance(1, 2.5) - 0.5).abs() < 1e-15);
        // below the first admissible frequency the distance measures up to it
        assert!((quantization_distance(2, 1.2) - 1.8).abs() < 1e-15);
    }

    #[test]
    fn radial_suite_reports_quantization_violation() {
        let sel = ModeSelection {
            kind: Some(SpaceKind::S3),
            j: Some(1),
            omega: Some(2.5),
            ..ModeSelection::default()
        };
        let s = radial_suite(&sel, &Tolerances::default());
        assert!(!s.passed());
        assert!(s
            .failures()
            .iter()
            .any(|c| c.name.contains("quantization")));
    }

    #[test]
    fn radial_suite_accepts_quantized_omega() {
        let sel = ModeSelection {
            kind: Some(SpaceKind::S3),
            j: Some(1),
            omega: Some(2.0),
            ..ModeSelection::default()
        };
        let s = radial_suite(&sel, &Tolerances::default());
        assert!(s.passed(), "failures: {:?}", s.failures());
    }

    #[test]
    fn selection_narrowing() {
        let sel = ModeSelection {
            j: Some(2),
            ..ModeSelection::default()
        };
        assert_eq!(sel.j_list(4), vec![2]);
        assert_eq!(ModeSelection::default().j_list(3), vec![1, 2, 3]);
        assert!(sel.include(SpaceKind::S3) && sel.include(SpaceKind::H3));
    }
}
