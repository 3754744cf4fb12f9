//! Flat-space equivalence between the matrix form of Maxwell's equations
//! and the classical eight-equation system.
//!
//! With `psi^k = E^k + i cB^k`, `Psi = (0, psi^1, psi^2, psi^3)` and the
//! source vector `J = (rho, i j^1, i j^2, i j^3)` (units `epsilon_0 = 1`,
//! `c = 1`), the matrix form is
//!
//! ```text
//! (-i d_0 + alpha^j d_j) Psi = J.
//! ```
//!
//! Regrouping real and imaginary parts of the four complex residuals yields
//! the classical system: row 0 carries `div E - rho` (real) and `div cB`
//! (imaginary); rows 1..3 carry Faraday `(curl E + d_0 cB)` (real) and
//! Ampere `(curl cB - d_0 E - j)` (imaginary). [`equivalence_residual`]
//! checks that regrouping as a numeric identity.
//!
//! The charge density `rho` here is a source, unrelated to the curvature
//! radius used by the spectrum table.

use crate::matrix_core::{alpha, Basis, FieldVector, Matrix4C};
use crate::scalar::{cx, Cx, Real};

/// Cartesian spacetime point `(t, x, y, z)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FlatPoint<T> {
    pub t: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> FlatPoint<T> {
    pub fn new(t: T, x: T, y: T, z: T) -> Self {
        Self { t, x, y, z }
    }

    fn get(&self, axis: usize) -> T {
        match axis {
            0 => self.t,
            1 => self.x,
            2 => self.y,
            _ => self.z,
        }
    }

    fn with(&self, axis: usize, v: T) -> Self {
        let mut p = *self;
        match axis {
            0 => p.t = v,
            1 => p.x = v,
            2 => p.y = v,
            _ => p.z = v,
        }
        p
    }
}

/// Field and source data at one point; `current` is the charge current
/// density `j`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FlatFieldSample<T> {
    pub e: [T; 3],
    pub cb: [T; 3],
    pub rho_charge: T,
    pub current: [T; 3],
}

impl<T: Real> FlatFieldSample<T> {
    pub fn vacuum(e: [T; 3], cb: [T; 3]) -> Self {
        Self {
            e,
            cb,
            rho_charge: T::zero(),
            current: [T::zero(); 3],
        }
    }
}

/// An analytic field configuration: values plus exact partial derivatives.
pub trait FlatField<T: Real> {
    fn sample(&self, p: &FlatPoint<T>) -> FlatFieldSample<T>;

    /// Partial derivative of `(E, cB)` along `axis` (0 = t, 1..3 = x, y, z).
    fn gradient(&self, p: &FlatPoint<T>, axis: usize) -> ([T; 3], [T; 3]);
}

/// Vacuum plane wave moving along +z: `E = (cos(z-t), 0, 0)`,
/// `cB = (0, cos(z-t), 0)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PlaneWave;

impl<T: Real> FlatField<T> for PlaneWave {
    fn sample(&self, p: &FlatPoint<T>) -> FlatFieldSample<T> {
        let u = (p.z - p.t).cos();
        FlatFieldSample::vacuum([u, T::zero(), T::zero()], [T::zero(), u, T::zero()])
    }

    fn gradient(&self, p: &FlatPoint<T>, axis: usize) -> ([T; 3], [T; 3]) {
        let s = (p.z - p.t).sin();
        let du = match axis {
            0 => s,
            3 => -s,
            _ => T::zero(),
        };
        ([du, T::zero(), T::zero()], [T::zero(), du, T::zero()])
    }
}

/// Vacuum standing wave: `E = (sin z cos t, 0, 0)`,
/// `cB = (0, -cos z sin t, 0)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct StandingWave;

impl<T: Real> FlatField<T> for StandingWave {
    fn sample(&self, p: &FlatPoint<T>) -> FlatFieldSample<T> {
        let e1 = p.z.sin() * p.t.cos();
        let b2 = -p.z.cos() * p.t.sin();
        FlatFieldSample::vacuum([e1, T::zero(), T::zero()], [T::zero(), b2, T::zero()])
    }

    fn gradient(&self, p: &FlatPoint<T>, axis: usize) -> ([T; 3], [T; 3]) {
        let (de, db) = match axis {
            0 => (-p.z.sin() * p.t.sin(), -p.z.cos() * p.t.cos()),
            3 => (p.z.cos() * p.t.cos(), p.z.sin() * p.t.sin()),
            _ => (T::zero(), T::zero()),
        };
        ([de, T::zero(), T::zero()], [T::zero(), db, T::zero()])
    }
}

/// Static point-charge field `E = x_vec / r^3` (charge `4 pi`), evaluated
/// away from the origin where `rho = 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PointCharge;

impl<T: Real> FlatField<T> for PointCharge {
    fn sample(&self, p: &FlatPoint<T>) -> FlatFieldSample<T> {
        let r2 = p.x * p.x + p.y * p.y + p.z * p.z;
        let r3 = r2 * r2.sqrt();
        FlatFieldSample::vacuum([p.x / r3, p.y / r3, p.z / r3], [T::zero(); 3])
    }

    fn gradient(&self, p: &FlatPoint<T>, axis: usize) -> ([T; 3], [T; 3]) {
        if axis == 0 {
            return ([T::zero(); 3], [T::zero(); 3]);
        }
        let xs = [p.x, p.y, p.z];
        let r2 = xs[0] * xs[0] + xs[1] * xs[1] + xs[2] * xs[2];
        let r = r2.sqrt();
        let r3 = r2 * r;
        let r5 = r3 * r2;
        let i = axis - 1;
        let mut de = [T::zero(); 3];
        for (k, dek) in de.iter_mut().enumerate() {
            // d_i (x_k / r^3) = delta_ik / r^3 - 3 x_i x_k / r^5
            *dek = -T::int(3) * xs[i] * xs[k] / r5;
            if k == i {
                *dek += T::one() / r3;
            }
        }
        (de, [T::zero(); 3])
    }
}

/// Identically zero field and source.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroField;

impl<T: Real> FlatField<T> for ZeroField {
    fn sample(&self, _: &FlatPoint<T>) -> FlatFieldSample<T> {
        FlatFieldSample::vacuum([T::zero(); 3], [T::zero(); 3])
    }

    fn gradient(&self, _: &FlatPoint<T>, _: usize) -> ([T; 3], [T; 3]) {
        ([T::zero(); 3], [T::zero(); 3])
    }
}

fn psi_vector<T: Real>(e: &[T; 3], cb: &[T; 3]) -> FieldVector<T> {
    FieldVector::physical([cx(e[0], cb[0]), cx(e[1], cb[1]), cx(e[2], cb[2])])
}

fn source_vector<T: Real>(s: &FlatFieldSample<T>) -> FieldVector<T> {
    FieldVector::new([
        cx(s.rho_charge, T::zero()),
        cx(T::zero(), s.current[0]),
        cx(T::zero(), s.current[1]),
        cx(T::zero(), s.current[2]),
    ])
}

fn matrix_residual_from_gradients<T: Real>(
    sample: &FlatFieldSample<T>,
    grads: &[([T; 3], [T; 3]); 4],
) -> [Cx<T>; 4] {
    let alphas: [Matrix4C<T>; 3] = [
        alpha(1, Basis::Cartesian).unwrap(),
        alpha(2, Basis::Cartesian).unwrap(),
        alpha(3, Basis::Cartesian).unwrap(),
    ];
    let dpsi_t = psi_vector(&grads[0].0, &grads[0].1);
    let mut r = dpsi_t.scale(cx(T::zero(), -T::one())) - source_vector(sample);
    for (k, a) in alphas.iter().enumerate() {
        r = r + *a * psi_vector(&grads[k + 1].0, &grads[k + 1].1);
    }
    [r.component(0), r.component(1), r.component(2), r.component(3)]
}

fn analytic_gradients<T: Real>(field: &impl FlatField<T>, p: &FlatPoint<T>) -> [([T; 3], [T; 3]); 4] {
    [
        field.gradient(p, 0),
        field.gradient(p, 1),
        field.gradient(p, 2),
        field.gradient(p, 3),
    ]
}

fn fd_gradients<T: Real>(
    field: &impl FlatField<T>,
    p: &FlatPoint<T>,
    h: T,
) -> [([T; 3], [T; 3]); 4] {
    let mut out = [([T::zero(); 3], [T::zero(); 3]); 4];
    for (axis, slot) in out.iter_mut().enumerate() {
        let v = |k: i64| field.sample(&p.with(axis, p.get(axis) + h * T::int(k)));
        let (p1, m1, p2, m2) = (v(1), v(-1), v(2), v(-2));
        let w = T::one() / (T::int(12) * h);
        for c in 0..3 {
            slot.0[c] = (T::int(8) * (p1.e[c] - m1.e[c]) - p2.e[c] + m2.e[c]) * w;
            slot.1[c] = (T::int(8) * (p1.cb[c] - m1.cb[c]) - p2.cb[c] + m2.cb[c]) * w;
        }
    }
    out
}

/// Four complex residuals of the matrix form, analytic derivatives.
pub fn matrix_residual<T: Real>(field: &impl FlatField<T>, p: &FlatPoint<T>) -> [Cx<T>; 4] {
    matrix_residual_from_gradients(&field.sample(p), &analytic_gradients(field, p))
}

/// Matrix-form residuals with fourth-order finite-difference derivatives of
/// step `h`; needs only [`FlatField::sample`].
pub fn matrix_residual_fd<T: Real>(
    field: &impl FlatField<T>,
    p: &FlatPoint<T>,
    h: T,
) -> [Cx<T>; 4] {
    matrix_residual_from_gradients(&field.sample(p), &fd_gradients(field, p, h))
}

fn classical_from_gradients<T: Real>(
    sample: &FlatFieldSample<T>,
    grads: &[([T; 3], [T; 3]); 4],
) -> [T; 8] {
    let de_t = grads[0].0;
    let db_t = grads[0].1;
    // spatial Jacobians: de[i][k] = d_i E_k
    let de = [grads[1].0, grads[2].0, grads[3].0];
    let db = [grads[1].1, grads[2].1, grads[3].1];
    let curl = |g: &[[T; 3]; 3], k: usize| {
        let (a, b) = ((k + 1) % 3, (k + 2) % 3);
        g[a][b] - g[b][a]
    };
    let div = |g: &[[T; 3]; 3]| g[0][0] + g[1][1] + g[2][2];
    let mut out = [T::zero(); 8];
    out[0] = div(&de) - sample.rho_charge;
    for k in 0..3 {
        out[1 + k] = curl(&db, k) - de_t[k] - sample.current[k];
    }
    out[4] = div(&db);
    for k in 0..3 {
        out[5 + k] = curl(&de, k) + db_t[k];
    }
    out
}

/// The eight classical equation residuals, in the order: Gauss
/// `div E - rho`; Ampere `(curl cB - d_t E - j)` (3); magnetic Gauss
/// `div cB`; Faraday `(curl E + d_t cB)` (3). Analytic derivatives.
pub fn classical_residual<T: Real>(field: &impl FlatField<T>, p: &FlatPoint<T>) -> [T; 8] {
    classical_from_gradients(&field.sample(p), &analytic_gradients(field, p))
}

/// Classical residuals via finite differences of step `h`.
pub fn classical_residual_fd<T: Real>(
    field: &impl FlatField<T>,
    p: &FlatPoint<T>,
    h: T,
) -> [T; 8] {
    classical_from_gradients(&field.sample(p), &fd_gradients(field, p, h))
}

/// Max deviation between the regrouped matrix residuals and the classical
/// ones, from the same analytic derivative samples. This is the linear
/// bijection: `Re/Im` of row 0 pair with the two Gauss laws, `Re/Im` of
/// rows 1..3 with Faraday and Ampere.
pub fn equivalence_residual<T: Real>(field: &impl FlatField<T>, p: &FlatPoint<T>) -> T {
    let sample = field.sample(p);
    let grads = analytic_gradients(field, p);
    let m = matrix_residual_from_gradients(&sample, &grads);
    let c = classical_from_gradients(&sample, &grads);
    let mut worst = (m[0].re - c[0]).abs().max((m[0].im - c[4]).abs());
    for k in 0..3 {
        worst = worst.max((m[1 + k].re - c[5 + k]).abs());
        worst = worst.max((m[1 + k].im - c[1 + k]).abs());
    }
    worst
}

pub fn max_abs_complex<T: Real>(r: &[Cx<T>; 4]) -> T {
    r.iter().fold(T::zero(), |acc, c| acc.max(c.norm()))
}

pub fn max_abs_real<T: Real>(r: &[T; 8]) -> T {
    r.iter().fold(T::zero(), |acc, c| acc.max(c.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_core::cyclic_transform;
    use crate::modes::to_physical_fields;
    use proptest::prelude::*;

    fn sample_points() -> Vec<FlatPoint<f64>> {
        vec![
            FlatPoint::new(0.0, 0.0, 0.0, 0.0),
            FlatPoint::new(0.7, 0.2, -1.1, 0.4),
            FlatPoint::new(-1.3, 2.0, 0.5, -0.8),
            FlatPoint::new(2.4, -0.6, 1.7, 3.1),
        ]
    }

    #[test]
    fn plane_wave_solves_matrix_form() {
        for p in sample_points() {
            let r = matrix_residual(&PlaneWave, &p);
            assert!(max_abs_complex(&r) <= 1e-10, "residual {:?} at {:?}", r, p);
        }
    }

    #[test]
    fn plane_wave_solves_classical_form() {
        for p in sample_points() {
            let r = classical_residual(&PlaneWave, &p);
            assert!(max_abs_real(&r) <= 1e-10);
        }
    }

    #[test]
    fn standing_wave_solves_both_forms() {
        for p in sample_points() {
            assert!(max_abs_complex(&matrix_residual(&StandingWave, &p)) <= 1e-10);
            assert!(max_abs_real(&classical_residual(&StandingWave, &p)) <= 1e-10);
        }
    }

    #[test]
    fn point_charge_analytic_and_fd() {
        let pts = [
            FlatPoint::new(0.0, 1.0, 0.0, 0.0),
            FlatPoint::new(0.5, 0.6, -0.7, 0.9),
            FlatPoint::new(-1.0, -1.2, 0.3, 1.5),
        ];
        for p in pts {
            assert!(max_abs_complex(&matrix_residual(&PointCharge, &p)) <= 1e-12);
            let fd = matrix_residual_fd(&PointCharge, &p, 1e-3);
            assert!(max_abs_complex(&fd) <= 1e-6, "fd residual at {:?}", p);
        }
    }

    #[test]
    fn zero_field_zero_residual() {
        let p = FlatPoint::new(0.3, 0.1, 0.2, 0.3);
        assert_eq!(max_abs_complex(&matrix_residual(&ZeroField, &p)), 0.0);
        assert_eq!(max_abs_real(&classical_residual(&ZeroField, &p)), 0.0);
    }

    #[test]
    fn wrong_sign_magnetic_field_fails() {
        struct Flipped;
        impl FlatField<f64> for Flipped {
            fn sample(&self, p: &FlatPoint<f64>) -> FlatFieldSample<f64> {
                let mut s = PlaneWave.sample(p);
                s.cb[1] = -s.cb[1];
                s
            }
            fn gradient(&self, p: &FlatPoint<f64>, axis: usize) -> ([f64; 3], [f64; 3]) {
                let (de, mut db) = PlaneWave.gradient(p, axis);
                db[1] = -db[1];
                (de, db)
            }
        }
        let p = FlatPoint::new(0.4, 0.0, 0.0, 1.0);
        assert!(max_abs_complex(&matrix_residual(&Flipped, &p)) > 0.5);
    }

    #[test]
    fn equivalence_on_library_fields() {
        for p in sample_points() {
            assert!(equivalence_residual(&PlaneWave, &p) <= 1e-13);
            assert!(equivalence_residual(&StandingWave, &p) <= 1e-13);
        }
        let off_origin = FlatPoint::new(0.0, 0.9, -0.4, 0.7);
        assert!(equivalence_residual(&PointCharge, &off_origin) <= 1e-13);
    }

    #[test]
    fn plane_wave_fields_orthogonal_after_round_trip() {
        let (u, _) = cyclic_transform::<f64>();
        let p = FlatPoint::new(0.2, 0.0, 0.0, 0.5);
        let s = PlaneWave.sample(&p);
        let cyclic = u * psi_vector(&s.e, &s.cb);
        let (e, cb) = to_physical_fields(&cyclic).unwrap();
        let dot: f64 = (0..3).map(|k| e[k] * cb[k]).sum();
        assert!(dot.abs() <= 1e-14);
        for k in 0..3 {
            assert!((e[k] - s.e[k]).abs() <= 1e-14);
            assert!((cb[k] - s.cb[k]).abs() <= 1e-14);
        }
    }

    /// Low-order polynomial field with exact derivatives; rho and j are free
    /// constants, so residuals are generally nonzero but the regrouping
    /// identity must still hold.
    #[derive(Clone, Debug)]
    struct PolyField {
        // per component: constant + linear coefficients in (t,x,y,z)
        e_coef: [[f64; 5]; 3],
        b_coef: [[f64; 5]; 3],
        rho: f64,
        j: [f64; 3],
    }

    impl FlatField<f64> for PolyField {
        fn sample(&self, p: &FlatPoint<f64>) -> FlatFieldSample<f64> {
            let vars = [1.0, p.t, p.x, p.y, p.z];
            let eval = |c: &[f64; 5]| c.iter().zip(&vars).map(|(a, v)| a * v).sum::<f64>();
            FlatFieldSample {
                e: [eval(&self.e_coef[0]), eval(&self.e_coef[1]), eval(&self.e_coef[2])],
                cb: [eval(&self.b_coef[0]), eval(&self.b_coef[1]), eval(&self.b_coef[2])],
                rho_charge: self.rho,
                current: self.j,
            }
        }
        fn gradient(&self, _: &FlatPoint<f64>, axis: usize) -> ([f64; 3], [f64; 3]) {
            let pick = |c: &[[f64; 5]; 3]| [c[0][axis + 1], c[1][axis + 1], c[2][axis + 1]];
            (pick(&self.e_coef), pick(&self.b_coef))
        }
    }

    proptest! {
        #[test]
        fn equivalence_holds_for_random_linear_fields(
            e in prop::array::uniform3(prop::array::uniform5(-2.0f64..2.0)),
            b in prop::array::uniform3(prop::array::uniform5(-2.0f64..2.0)),
            rho in -1.0f64..1.0,
            j in prop::array::uniform3(-1.0f64..1.0),
            t in -2.0f64..2.0,
            x in -2.0f64..2.0,
            y in -2.0f64..2.0,
            z in -2.0f64..2.0,
        ) {
            let field = PolyField { e_coef: e, b_coef: b, rho, j };
            let p = FlatPoint::new(t, x, y, z);
            prop_assert!(equivalence_residual(&field, &p) <= 1e-13);
            // FD derivatives of a linear field are exact up to rounding
            let m_an = matrix_residual(&field, &p);
            let m_fd = matrix_residual_fd(&field, &p, 1e-2);
            for k in 0..4 {
                prop_assert!((m_an[k] - m_fd[k]).norm() <= 1e-9);
            }
        }
    }
}
