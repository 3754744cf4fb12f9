//! The 4x4 matrix algebra underlying the field equation.
//!
//! Maxwell's equations for the complex combination psi^k = E^k + icB^k take
//! the form `(-i d_0 + alpha^j d_j) Psi = J` with `Psi = (0, psi^1, psi^2,
//! psi^3)`. The three `alpha` matrices obey a quaternion-like product rule
//!
//! ```text
//! alpha^1 alpha^2 = -alpha^2 alpha^1 = alpha^3   (cyclic),
//! (alpha^j)^2 = -I,              alpha^0 = I,
//! ```
//!
//! and the spin generators `s_1, s_2, s_3` close under commutation,
//! `[s_1, s_2] = s_3` (cyclic). The `Cyclic` basis is reached by conjugating
//! with the unitary block matrix `U4 = diag(1, U)`; in that basis `s'_3` is
//! diagonal, which is what makes separation in Wigner functions possible.
//!
//! All matrix entries here are exact: 0, +-1, +-i, or +-1/sqrt(2) times those.

use crate::error::{Error, Result};
use crate::scalar::{clit, Cx, Real};

/// Matrix and field-vector dimension.
pub const DIM: usize = 4;

/// Dense 4x4 complex matrix with exact entry-level constructors.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Matrix4C<T> {
    e: [[Cx<T>; DIM]; DIM],
}

impl<T: Real> Matrix4C<T> {
    pub fn zero() -> Self {
        Self {
            e: [[Cx::new(T::zero(), T::zero()); DIM]; DIM],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..DIM {
            m.e[k][k] = Cx::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_rows(rows: [[Cx<T>; DIM]; DIM]) -> Self {
        Self { e: rows }
    }

    /// Builds a matrix from `(re, im)` literal pairs.
    pub fn from_pairs(rows: [[(f64, f64); DIM]; DIM]) -> Self {
        let mut m = Self::zero();
        for r in 0..DIM {
            for c in 0..DIM {
                m.e[r][c] = clit(rows[r][c].0, rows[r][c].1);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Cx<T> {
        self.e[r][c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Cx<T>) {
        self.e[r][c] = v;
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        let mut m = *self;
        for r in 0..DIM {
            for c in 0..DIM {
                m.e[r][c] = m.e[r][c] * s;
            }
        }
        m
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(Cx::new(s, T::zero()))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for r in 0..DIM {
            for c in 0..DIM {
                m.e[r][c] = self.e[c][r].conj();
            }
        }
        m
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        *a * *b - *b * *a
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for r in 0..DIM {
            for c in 0..DIM {
                m = m.max(self.e[r][c].norm());
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }
}

impl<T: Real> std::ops::Add for Matrix4C<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for r in 0..DIM {
            for c in 0..DIM {
                m.e[r][c] = m.e[r][c] + rhs.e[r][c];
            }
        }
        m
    }
}

impl<T: Real> std::ops::Sub for Matrix4C<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for r in 0..DIM {
            for c in 0..DIM {
                m.e[r][c] = m.e[r][c] - rhs.e[r][c];
            }
        }
        m
    }
}

impl<T: Real> std::ops::Neg for Matrix4C<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-T::one())
    }
}

impl<T: Real> std::ops::Mul for Matrix4C<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for r in 0..DIM {
            for c in 0..DIM {
                let mut acc = Cx::new(T::zero(), T::zero());
                for k in 0..DIM {
                    acc = acc + self.e[r][k] * rhs.e[k][c];
                }
                m.e[r][c] = acc;
            }
        }
        m
    }
}

impl<T: Real> std::ops::Mul<FieldVector<T>> for Matrix4C<T> {
    type Output = FieldVector<T>;
    fn mul(self, v: FieldVector<T>) -> FieldVector<T> {
        let mut out = FieldVector::zero();
        for r in 0..DIM {
            let mut acc = Cx::new(T::zero(), T::zero());
            for k in 0..DIM {
                acc = acc + self.e[r][k] * v.c[k];
            }
            out.c[r] = acc;
        }
        out
    }
}

/// Four-component complex field vector `(Psi^0, psi^1, psi^2, psi^3)`.
///
/// Physical states carry `Psi^0 = 0`; the slot exists so the matrix algebra
/// closes.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FieldVector<T> {
    c: [Cx<T>; DIM],
}

impl<T: Real> FieldVector<T> {
    pub fn zero() -> Self {
        Self {
            c: [Cx::new(T::zero(), T::zero()); DIM],
        }
    }

    pub fn new(components: [Cx<T>; DIM]) -> Self {
        Self { c: components }
    }

    /// Physical state: auxiliary slot zero, three field components.
    pub fn physical(psi: [Cx<T>; 3]) -> Self {
        Self {
            c: [Cx::new(T::zero(), T::zero()), psi[0], psi[1], psi[2]],
        }
    }

    #[inline]
    pub fn component(&self, k: usize) -> Cx<T> {
        self.c[k]
    }

    pub fn components(&self) -> [Cx<T>; DIM] {
        self.c
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        let mut v = *self;
        for k in 0..DIM {
            v.c[k] = v.c[k] * s;
        }
        v
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(Cx::new(s, T::zero()))
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for k in 0..DIM {
            m = m.max(self.c[k].norm());
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// True when the auxiliary component is negligible against the field
    /// components.
    pub fn is_physical(&self, rel_tol: T) -> bool {
        self.c[0].norm() <= rel_tol * self.max_abs().max(T::min_positive_value())
    }
}

impl<T: Real> std::ops::Add for FieldVector<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut v = self;
        for k in 0..DIM {
            v.c[k] = v.c[k] + rhs.c[k];
        }
        v
    }
}

impl<T: Real> std::ops::Sub for FieldVector<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut v = self;
        for k in 0..DIM {
            v.c[k] = v.c[k] - rhs.c[k];
        }
        v
    }
}

impl<T: Real> std::ops::Neg for FieldVector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-T::one())
    }
}

/// Matrix basis selector.
///
/// `Cartesian` is the basis in which psi components are the Cartesian field
/// combinations; `Cyclic` diagonalizes `s'_3` and is the working basis for
/// mode separation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    Cartesian,
    Cyclic,
}

const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn alpha_cartesian<T: Real>(k: usize) -> Matrix4C<T> {
    match k {
        0 => Matrix4C::identity(),
        1 => Matrix4C::from_pairs([
            [(0., 0.), (1., 0.), (0., 0.), (0., 0.)],
            [(-1., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (-1., 0.)],
            [(0., 0.), (0., 0.), (1., 0.), (0., 0.)],
        ]),
        2 => Matrix4C::from_pairs([
            [(0., 0.), (0., 0.), (1., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (1., 0.)],
            [(-1., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (-1., 0.), (0., 0.), (0., 0.)],
        ]),
        3 => Matrix4C::from_pairs([
            [(0., 0.), (0., 0.), (0., 0.), (1., 0.)],
            [(0., 0.), (0., 0.), (-1., 0.), (0., 0.)],
            [(0., 0.), (1., 0.), (0., 0.), (0., 0.)],
            [(-1., 0.), (0., 0.), (0., 0.), (0., 0.)],
        ]),
        _ => unreachable!(),
    }
}

fn alpha_cyclic<T: Real>(k: usize) -> Matrix4C<T> {
    match k {
        0 => Matrix4C::identity(),
        1 => Matrix4C::from_pairs([
            [(0., 0.), (-R, 0.), (0., 0.), (R, 0.)],
            [(R, 0.), (0., 0.), (0., -R), (0., 0.)],
            [(0., 0.), (0., -R), (0., 0.), (0., -R)],
            [(-R, 0.), (0., 0.), (0., -R), (0., 0.)],
        ]),
        2 => Matrix4C::from_pairs([
            [(0., 0.), (0., -R), (0., 0.), (0., -R)],
            [(0., -R), (0., 0.), (-R, 0.), (0., 0.)],
            [(0., 0.), (R, 0.), (0., 0.), (-R, 0.)],
            [(0., -R), (0., 0.), (R, 0.), (0., 0.)],
        ]),
        3 => Matrix4C::from_pairs([
            [(0., 0.), (0., 0.), (1., 0.), (0., 0.)],
            [(0., 0.), (0., -1.), (0., 0.), (0., 0.)],
            [(-1., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (0., 1.)],
        ]),
        _ => unreachable!(),
    }
}

fn generator_cartesian<T: Real>(i: usize) -> Matrix4C<T> {
    match i {
        1 => Matrix4C::from_pairs([
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (-1., 0.)],
            [(0., 0.), (0., 0.), (1., 0.), (0., 0.)],
        ]),
        2 => Matrix4C::from_pairs([
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (1., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (-1., 0.), (0., 0.), (0., 0.)],
        ]),
        3 => Matrix4C::from_pairs([
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (-1., 0.), (0., 0.)],
            [(0., 0.), (1., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
        ]),
        _ => unreachable!(),
    }
}

fn generator_cyclic<T: Real>(i: usize) -> Matrix4C<T> {
    match i {
        1 => Matrix4C::from_pairs([
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., -R), (0., 0.)],
            [(0., 0.), (0., -R), (0., 0.), (0., -R)],
            [(0., 0.), (0., 0.), (0., -R), (0., 0.)],
        ]),
        2 => Matrix4C::from_pairs([
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (-R, 0.), (0., 0.)],
            [(0., 0.), (R, 0.), (0., 0.), (-R, 0.)],
            [(0., 0.), (0., 0.), (R, 0.), (0., 0.)],
        ]),
        3 => Matrix4C::from_pairs([
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., -1.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (0., 0.)],
            [(0., 0.), (0., 0.), (0., 0.), (0., 1.)],
        ]),
        _ => unreachable!(),
    }
}

/// `alpha^k` for `k = 0..=3` in the requested basis.
///
/// `alpha^0` is the identity in both bases (only the positive root of
/// `a_0^2 = 1` is realized here).
pub fn alpha<T: Real>(k: usize, basis: Basis) -> Result<Matrix4C<T>> {
    if k > 3 {
        return Err(Error::IndexRange { index: k });
    }
    Ok(match basis {
        Basis::Cartesian => alpha_cartesian(k),
        Basis::Cyclic => alpha_cyclic(k),
    })
}

/// Rotation generator `s_i` for `i = 1..=3` in the requested basis.
pub fn generator<T: Real>(i: usize, basis: Basis) -> Result<Matrix4C<T>> {
    if i == 0 || i > 3 {
        return Err(Error::IndexRange { index: i });
    }
    Ok(match basis {
        Basis::Cartesian => generator_cartesian(i),
        Basis::Cyclic => generator_cyclic(i),
    })
}

/// Antisymmetric Lorentz generator `j^{ab}` for frame indices `a, b in 0..=3`.
///
/// Rotations: `j^{23} = s_1`, `j^{31} = s_2`, `j^{12} = s_3`; boosts:
/// `j^{0k} = i s_k`. The diagonal vanishes and `j^{ba} = -j^{ab}`.
pub fn lorentz_generator<T: Real>(a: usize, b: usize, basis: Basis) -> Result<Matrix4C<T>> {
    if a > 3 {
        return Err(Error::IndexRange { index: a });
    }
    if b > 3 {
        return Err(Error::IndexRange { index: b });
    }
    let i = crate::scalar::i_unit::<T>();
    Ok(match (a, b) {
        (x, y) if x == y => Matrix4C::zero(),
        (2, 3) => generator(1, basis)?,
        (3, 2) => -generator(1, basis)?,
        (3, 1) => generator(2, basis)?,
        (1, 3) => -generator(2, basis)?,
        (1, 2) => generator(3, basis)?,
        (2, 1) => -generator(3, basis)?,
        (0, k) => generator(k, basis)?.scale(i),
        (k, 0) => -generator(k, basis)?.scale(i),
        _ => unreachable!(),
    })
}

/// The unitary basis change `(U4, U4^{-1})` with `U4 = diag(1, U)`.
///
/// `U` sends the Cartesian field components to the cyclic combinations
/// `(-(psi^1 - i psi^2)/sqrt(2), psi^3, (psi^1 + i psi^2)/sqrt(2))`, and
/// `U4^{-1} = U4^dagger`.
pub fn cyclic_transform<T: Real>() -> (Matrix4C<T>, Matrix4C<T>) {
    let u4 = Matrix4C::from_pairs([
        [(1., 0.), (0., 0.), (0., 0.), (0., 0.)],
        [(0., 0.), (-R, 0.), (0., R), (0., 0.)],
        [(0., 0.), (0., 0.), (0., 0.), (1., 0.)],
        [(0., 0.), (R, 0.), (0., R), (0., 0.)],
    ]);
    let u4_inv = Matrix4C::from_pairs([
        [(1., 0.), (0., 0.), (0., 0.), (0., 0.)],
        [(0., 0.), (-R, 0.), (0., 0.), (R, 0.)],
        [(0., 0.), (0., -R), (0., 0.), (0., -R)],
        [(0., 0.), (0., 0.), (1., 0.), (0., 0.)],
    ]);
    (u4, u4_inv)
}

/// Named residual of one algebraic identity.
#[derive(Clone, Debug)]
pub struct IdentityResidual<T> {
    pub name: String,
    pub residual: T,
}

/// Residuals of the product rule, squares, unit element and generator
/// commutators in one basis.
///
/// Integer-entry identities come out exactly zero in floating point; the
/// cyclic basis involves `1/sqrt(2)` entries and lands at a few units of
/// machine epsilon.
pub fn verify_algebra<T: Real>(basis: Basis) -> Vec<IdentityResidual<T>> {
    let al = |k: usize| alpha::<T>(k, basis).expect("index in range");
    let s = |i: usize| generator::<T>(i, basis).expect("index in range");
    let id = Matrix4C::<T>::identity();
    let mut out: Vec<IdentityResidual<T>> = Vec::new();
    let tag = match basis {
        Basis::Cartesian => "cartesian",
        Basis::Cyclic => "cyclic",
    };
    let mut push = |name: String, r: T| out.push(IdentityResidual { name, residual: r });

    for &(i, k, l) in &[(1usize, 2usize, 3usize), (2, 3, 1), (3, 1, 2)] {
        push(
            format!("{tag}: alpha{i} alpha{k} - alpha{l}"),
            (al(i) * al(k) - al(l)).max_abs(),
        );
        push(
            format!("{tag}: alpha{k} alpha{i} + alpha{l}"),
            (al(k) * al(i) + al(l)).max_abs(),
        );
        push(
            format!("{tag}: [s{i}, s{k}] - s{l}"),
            (Matrix4C::commutator(&s(i), &s(k)) - s(l)).max_abs(),
        );
    }
    for k in 1..=3usize {
        push(format!("{tag}: alpha{k}^2 + I"), (al(k) * al(k) + id).max_abs());
        push(
            format!("{tag}: alpha0 alpha{k} - alpha{k}"),
            (al(0) * al(k) - al(k)).max_abs(),
        );
        push(
            format!("{tag}: alpha{k} alpha0 - alpha{k}"),
            (al(k) * al(0) - al(k)).max_abs(),
        );
    }
    push(format!("{tag}: alpha0 - I"), (al(0) - id).max_abs());
    out
}

/// Residuals tying the two bases together: unitarity of `U4` and covariance
/// of every `alpha^k` and `s_i` under conjugation.
pub fn verify_cyclic_transform<T: Real>() -> Vec<IdentityResidual<T>> {
    let (u4, u4i) = cyclic_transform::<T>();
    let id = Matrix4C::<T>::identity();
    let mut out: Vec<IdentityResidual<T>> = Vec::new();
    let mut push = |name: &str, r: T| {
        out.push(IdentityResidual {
            name: name.to_string(),
            residual: r,
        })
    };

    push("transform: U4 U4^-1 - I", (u4 * u4i - id).max_abs());
    push("transform: U4^-1 U4 - I", (u4i * u4 - id).max_abs());
    push("transform: U4^dagger - U4^-1", u4.adjoint().max_abs_diff(&u4i));
    for k in 1..=3usize {
        let conj = u4 * alpha::<T>(k, Basis::Cartesian).unwrap() * u4i;
        push(
            &format!("transform: U4 alpha{k} U4^-1 - alpha{k}'"),
            conj.max_abs_diff(&alpha::<T>(k, Basis::Cyclic).unwrap()),
        );
        let conj = u4 * generator::<T>(k, Basis::Cartesian).unwrap() * u4i;
        push(
            &format!("transform: U4 s{k} U4^-1 - s{k}'"),
            conj.max_abs_diff(&generator::<T>(k, Basis::Cyclic).unwrap()),
        );
    }
    out
}
