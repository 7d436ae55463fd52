//! Quadratic forms on 3-space.
//!
//! A [`QuadForm3`] stores the symmetric coefficient matrix once per entry.
//! Beyond evaluation and the polar form this module provides principal axes
//! (cyclic Jacobi), the rank based split of traceless forms into
//! zero form / orthogonal plane pair / equilateral cone, and orthogonal
//! tripods of generators on an equilateral cone.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::geom::{GeomError, Plane3, Tolerance, Vec3};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum QuadFormError {
    #[error("Jacobi iteration did not converge within {MAX_SWEEPS} sweeps")]
    NoConvergence,
    #[error("quadratic form is not traceless")]
    NotTraceless,
    #[error("direction is not a generator of the cone")]
    NotOnCone,
    #[error("quadratic form does not have rank 3")]
    DegenerateForm,
    #[error("generator direction is the zero vector")]
    ZeroGenerator,
    #[error("tripod legs are not mutually orthogonal")]
    NotOrthogonal,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Symmetric quadratic form `x -> x^T S x`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadForm3<T> {
    pub s11: T,
    pub s22: T,
    pub s33: T,
    pub s12: T,
    pub s13: T,
    pub s23: T,
}

impl<T: Real> QuadForm3<T> {
    pub fn new(s11: T, s22: T, s33: T, s12: T, s13: T, s23: T) -> Self {
        Self {
            s11,
            s22,
            s33,
            s12,
            s13,
            s23,
        }
    }

    pub fn zero() -> Self {
        let z = T::zero();
        Self::new(z, z, z, z, z, z)
    }

    pub fn diag(a: T, b: T, c: T) -> Self {
        let z = T::zero();
        Self::new(a, b, c, z, z, z)
    }

    /// Builds a form from a matrix, averaging the two off-diagonal copies.
    pub fn from_matrix(m: [[T; 3]; 3]) -> Self {
        let h = T::half();
        Self::new(
            m[0][0],
            m[1][1],
            m[2][2],
            (m[0][1] + m[1][0]) * h,
            (m[0][2] + m[2][0]) * h,
            (m[1][2] + m[2][1]) * h,
        )
    }

    pub fn matrix(&self) -> [[T; 3]; 3] {
        [
            [self.s11, self.s12, self.s13],
            [self.s12, self.s22, self.s23],
            [self.s13, self.s23, self.s33],
        ]
    }

    /// Coefficients in the order `s11, s22, s33, s12, s13, s23`.
    pub fn coefficients(&self) -> [T; 6] {
        [self.s11, self.s22, self.s33, self.s12, self.s13, self.s23]
    }

    pub fn from_coefficients(c: [T; 6]) -> Self {
        Self::new(c[0], c[1], c[2], c[3], c[4], c[5])
    }

    /// The form `x -> (x . c)(x . d)`.
    pub fn outer_sym(c: Vec3<T>, d: Vec3<T>) -> Self {
        let h = T::half();
        Self::new(
            c.x * d.x,
            c.y * d.y,
            c.z * d.z,
            (c.x * d.y + c.y * d.x) * h,
            (c.x * d.z + c.z * d.x) * h,
            (c.y * d.z + c.z * d.y) * h,
        )
    }

    #[inline]
    pub fn apply(&self, x: Vec3<T>) -> Vec3<T> {
        Vec3::new(
            self.s11 * x.x + self.s12 * x.y + self.s13 * x.z,
            self.s12 * x.x + self.s22 * x.y + self.s23 * x.z,
            self.s13 * x.x + self.s23 * x.y + self.s33 * x.z,
        )
    }

    #[inline]
    pub fn evaluate(&self, x: Vec3<T>) -> T {
        x.dot(self.apply(x))
    }

    /// Polar form via the polarization identity.
    pub fn polar(&self, v: Vec3<T>, w: Vec3<T>) -> T {
        T::half() * (self.evaluate(v + w) - self.evaluate(v) - self.evaluate(w))
    }

    /// `v^T S w` computed from the matrix directly.
    #[inline]
    pub fn bilinear(&self, v: Vec3<T>, w: Vec3<T>) -> T {
        v.dot(self.apply(w))
    }

    #[inline]
    pub fn trace(&self) -> T {
        self.s11 + self.s22 + self.s33
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> T {
        self.coefficients()
            .iter()
            .fold(T::zero(), |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_finite())
    }

    /// Matrix of the form in the orthonormal frame whose vectors are `frame`
    /// (i.e. `Omega^T S Omega` with the frame vectors as columns of `Omega`).
    pub fn in_frame(&self, frame: &[Vec3<T>; 3]) -> Self {
        let f = |r: usize, s: usize| self.bilinear(frame[r], frame[s]);
        Self::new(f(0, 0), f(1, 1), f(2, 2), f(0, 1), f(0, 2), f(1, 2))
    }

    /// Cyclic Jacobi iteration. Returns the final frame and whether the
    /// off-diagonal mass dropped below the convergence threshold.
    #[allow(clippy::needless_range_loop)]
    fn jacobi(&self) -> (EigenFrame<T>, bool) {
        let mut a = self.matrix();
        let mut v = [[T::zero(); 3]; 3];
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = T::one();
        }
        let threshold = T::lit(1e-14).max(T::epsilon());
        let mut converged = false;

        for _ in 0..MAX_SWEEPS {
            let off =
                (T::two() * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2])).sqrt();
            let diag = (a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2]).sqrt();
            if off == T::zero() || off <= threshold * diag {
                converged = true;
                break;
            }
            for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let apq = a[p][q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (T::two() * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(T::one()));
                let c = T::one() / t.hypot(T::one());
                let s = t * c;
                // A <- J^T A J with J the (p, q) rotation
                for k in 0..3 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..3 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }

        let mut pairs: Vec<(T, Vec3<T>)> = (0..3)
            .map(|i| {
                (
                    a[i][i],
                    Vec3::new(v[0][i], v[1][i], v[2][i]).sign_by_largest(),
                )
            })
            .collect();
        pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
        let frame = EigenFrame {
            values: [pairs[0].0, pairs[1].0, pairs[2].0],
            axes: [pairs[0].1, pairs[1].1, pairs[2].1],
        };
        (frame, converged)
    }

    /// Principal axes, eigenvalues sorted in descending order.
    pub fn eigendecompose(&self) -> Result<EigenFrame<T>, QuadFormError> {
        match self.jacobi() {
            (frame, true) => Ok(frame),
            (_, false) => Err(QuadFormError::NoConvergence),
        }
    }

    /// Eigenvalues in descending order (last Jacobi iterate if it did not converge).
    pub fn eigenvalues(&self) -> [T; 3] {
        self.jacobi().0.values
    }

    /// Spectral norm.
    pub fn norm(&self) -> T {
        self.eigenvalues()
            .iter()
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Number of eigenvalues with `|l| > gate(max(1, max |l|))`.
    pub fn rank(&self, tol: &Tolerance<T>) -> usize {
        let values = self.eigenvalues();
        let largest = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        rank_of(&values, largest.max(T::one()), tol)
    }

    /// Rank measured against an externally supplied magnitude, for forms whose
    /// own entries may be pure round-off.
    pub fn rank_relative_to(&self, scale: T, tol: &Tolerance<T>) -> usize {
        rank_of(&self.eigenvalues(), scale, tol)
    }

    pub fn classify_traceless(
        &self,
        tol: &Tolerance<T>,
    ) -> Result<TracelessClass<T>, QuadFormError> {
        let frame = self.eigendecompose()?;
        let largest = frame.values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let reference = largest.max(T::one());
        if !tol.is_zero(self.trace(), reference) {
            return Err(QuadFormError::NotTraceless);
        }
        Ok(match rank_of(&frame.values, reference, tol) {
            0 | 1 => TracelessClass::ZeroForm,
            2 => {
                // values are (s, ~0, -s): zero set is xi_1 = +-xi_3 in this frame
                let pos = frame.axes[0];
                let neg = frame.axes[2];
                let origin = Vec3::zero();
                TracelessClass::OrthogonalPlanePair(
                    Plane3::from_normal_point(pos + neg, origin)?,
                    Plane3::from_normal_point(pos - neg, origin)?,
                )
            }
            _ => TracelessClass::EquilateralCone,
        })
    }

    /// Completes a generator `g` of an equilateral cone to an orthogonal tripod
    /// of generators.
    pub fn tripod_through_generator(
        &self,
        g: Vec3<T>,
        tol: &Tolerance<T>,
    ) -> Result<Tripod<T>, QuadFormError> {
        let frame = self.eigendecompose()?;
        let norm = frame.values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if rank_of(&frame.values, norm.max(T::one()), tol) < 3 {
            return Err(QuadFormError::DegenerateForm);
        }
        let g = g.normalize().ok_or(QuadFormError::ZeroGenerator)?;
        if !tol.is_zero(self.evaluate(g), norm) {
            return Err(QuadFormError::NotOnCone);
        }
        let (u, v) = g.orthonormal_complement();
        let restricted = QuadForm2::new(
            self.bilinear(u, u),
            self.bilinear(v, v),
            self.bilinear(u, v),
        );
        let (c, s) = restricted.principal_rotation();
        let e1 = u * c + v * s;
        let e2 = v * c - u * s;
        let r = T::FRAC_1_SQRT_2();
        Tripod::new([g, (e1 + e2) * r, (e1 - e2) * r], self, tol)
    }

    /// The form restricted to the plane through the origin parallel to `plane`,
    /// expressed in an orthonormal basis of that plane.
    pub fn restrict_to_plane(&self, plane: &Plane3<T>) -> PlaneRestriction<T> {
        let (u, v) = plane.normal.orthonormal_complement();
        PlaneRestriction {
            form: QuadForm2::new(
                self.bilinear(u, u),
                self.bilinear(v, v),
                self.bilinear(u, v),
            ),
            basis: [u, v],
        }
    }
}

fn rank_of<T: Real>(values: &[T; 3], scale: T, tol: &Tolerance<T>) -> usize {
    values.iter().filter(|v| !tol.is_zero(**v, scale)).count()
}

impl<T: Real> Add for QuadForm3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (self.coefficients(), o.coefficients());
        Self::from_coefficients(std::array::from_fn(|i| a[i] + b[i]))
    }
}

impl<T: Real> Sub for QuadForm3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Real> Neg for QuadForm3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self * (-T::one())
    }
}

impl<T: Real> Mul<T> for QuadForm3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::from_coefficients(self.coefficients().map(|c| c * s))
    }
}

/// Principal axes of a [`QuadForm3`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenFrame<T> {
    /// Orthonormal axes; `axes[r]` belongs to `values[r]`.
    pub axes: [Vec3<T>; 3],
    /// Eigenvalues, descending.
    pub values: [T; 3],
}

impl<T: Real> EigenFrame<T> {
    pub fn reconstruct(&self) -> QuadForm3<T> {
        (0..3).fold(QuadForm3::zero(), |acc, r| {
            acc + QuadForm3::outer_sym(self.axes[r], self.axes[r]) * self.values[r]
        })
    }

    /// Coordinates of `x` with respect to the axes.
    pub fn coordinates(&self, x: Vec3<T>) -> Vec3<T> {
        Vec3::new(
            self.axes[0].dot(x),
            self.axes[1].dot(x),
            self.axes[2].dot(x),
        )
    }

    pub fn from_coordinates(&self, xi: Vec3<T>) -> Vec3<T> {
        self.axes[0] * xi.x + self.axes[1] * xi.y + self.axes[2] * xi.z
    }
}

/// Zero set of a traceless form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TracelessClass<T> {
    ZeroForm,
    OrthogonalPlanePair(Plane3<T>, Plane3<T>),
    EquilateralCone,
}

/// Three mutually orthogonal unit generators of a cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tripod<T> {
    pub legs: [Vec3<T>; 3],
}

impl<T: Real> Tripod<T> {
    /// Normalizes the legs and checks orthogonality and incidence with the
    /// cone `form(x) = 0`.
    pub fn new(
        legs: [Vec3<T>; 3],
        form: &QuadForm3<T>,
        tol: &Tolerance<T>,
    ) -> Result<Self, QuadFormError> {
        let mut unit = [Vec3::zero(); 3];
        for (dst, leg) in unit.iter_mut().zip(legs) {
            *dst = leg.normalize().ok_or(QuadFormError::ZeroGenerator)?;
        }
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            if !tol.is_zero(unit[a].dot(unit[b]), T::one()) {
                return Err(QuadFormError::NotOrthogonal);
            }
        }
        let norm = form.norm();
        if unit.iter().any(|l| !tol.is_zero(form.evaluate(*l), norm)) {
            return Err(QuadFormError::NotOnCone);
        }
        Ok(Self { legs: unit })
    }
}

/// Symmetric 2x2 form `s11 u^2 + 2 s12 u v + s22 v^2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadForm2<T> {
    pub s11: T,
    pub s22: T,
    pub s12: T,
}

impl<T: Real> QuadForm2<T> {
    pub fn new(s11: T, s22: T, s12: T) -> Self {
        Self { s11, s22, s12 }
    }

    pub fn evaluate(&self, u: T, v: T) -> T {
        self.s11 * u * u + T::two() * self.s12 * u * v + self.s22 * v * v
    }

    pub fn trace(&self) -> T {
        self.s11 + self.s22
    }

    pub fn det(&self) -> T {
        self.s11 * self.s22 - self.s12 * self.s12
    }

    pub fn max_abs(&self) -> T {
        self.s11.abs().max(self.s22.abs()).max(self.s12.abs())
    }

    /// `(cos, sin)` of the rotation taking the basis onto the principal axes;
    /// the first axis carries the larger eigenvalue.
    pub fn principal_rotation(&self) -> (T, T) {
        let phi = T::half() * (T::two() * self.s12).atan2(self.s11 - self.s22);
        (phi.cos(), phi.sin())
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> [T; 2] {
        let mean = T::half() * self.trace();
        let radius = (T::half() * (self.s11 - self.s22)).hypot(self.s12);
        [mean + radius, mean - radius]
    }
}

/// Result of [`QuadForm3::restrict_to_plane`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneRestriction<T> {
    pub form: QuadForm2<T>,
    /// Orthonormal in-plane basis the 2x2 form refers to.
    pub basis: [Vec3<T>; 2],
}
