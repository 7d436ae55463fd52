//! Trirectangular tetrahedra on an equilateral cone and the family of acute
//! triangles inscribed in one ellipse that share its center as orthocenter.
//!
//! Any orthogonal tripod of generators, cut by a plane, gives a tetrahedron
//! with three right angles at the apex. The apex projects onto the
//! orthocenter of the cut triangle, and the triangle is acute. Cutting one
//! cone with the fixed plane `xi_3 = rho` of its principal frame and letting
//! the tripod turn around the cone produces the whole family.

use thiserror::Error;

use crate::geom::{self, GeomError, Plane3, Tolerance, Vec3};
use crate::quadform::{EigenFrame, QuadForm3, QuadFormError, Tripod};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PorismError {
    #[error("cutting plane is parallel to a leg or passes through the apex")]
    PlaneMissesLeg,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("quadratic form is not a traceless form of rank 3")]
    DegenerateForm,
    #[error("section offset must be nonzero")]
    ZeroOffset,
    #[error("family needs at least one triangle")]
    EmptyCount,
    #[error(transparent)]
    QuadForm(#[from] QuadFormError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Apex with three mutually orthogonal edges; `legs[i]` points from the apex to `L_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrirectangularTetra<T> {
    pub apex: Vec3<T>,
    pub legs: [Vec3<T>; 3],
}

impl<T: Real> TrirectangularTetra<T> {
    pub fn base_points(&self) -> [Vec3<T>; 3] {
        self.legs.map(|l| self.apex + l)
    }
}

/// Ellipse in space: `center + cos(t) semi_axes[0] + sin(t) semi_axes[1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse3<T> {
    pub center: Vec3<T>,
    pub semi_axes: [Vec3<T>; 2],
    pub plane: Plane3<T>,
}

impl<T: Real> Ellipse3<T> {
    pub fn point_at(&self, t: T) -> Vec3<T> {
        self.center + self.semi_axes[0] * t.cos() + self.semi_axes[1] * t.sin()
    }

    /// Largest semi-axis length.
    pub fn scale(&self) -> T {
        self.semi_axes[0].norm().max(self.semi_axes[1].norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InscribedTriangle<T> {
    /// Counterclockwise as seen against the section plane normal.
    pub vertices: [Vec3<T>; 3],
    /// Interior angle at each vertex, radians.
    pub angles: [T; 3],
}

/// Intersects the legs of `tripod` with `cut`. The legs are checked against the
/// cone `form(x) = 0` when the tripod is built, so `form` only guards the
/// rank here.
pub fn trirect_from_tripod<T: Real>(
    form: &QuadForm3<T>,
    tripod: &Tripod<T>,
    cut: &Plane3<T>,
    tol: &Tolerance<T>,
) -> Result<TrirectangularTetra<T>, PorismError> {
    let norm = form.norm();
    for leg in &tripod.legs {
        if !tol.is_zero(form.evaluate(*leg), norm) {
            return Err(QuadFormError::NotOnCone.into());
        }
    }
    if tol.is_zero(cut.offset, T::one()) {
        return Err(PorismError::PlaneMissesLeg);
    }
    let mut legs = [Vec3::zero(); 3];
    for (dst, dir) in legs.iter_mut().zip(tripod.legs) {
        let denom = cut.normal.dot(dir);
        if tol.is_zero(denom, T::one()) {
            return Err(PorismError::PlaneMissesLeg);
        }
        *dst = dir * (cut.offset / denom);
    }
    Ok(TrirectangularTetra {
        apex: Vec3::zero(),
        legs,
    })
}

/// Orthocenter of a triangle in its own plane.
pub fn orthocenter2d<T: Real>(
    tri: [Vec3<T>; 3],
    tol: &Tolerance<T>,
) -> Result<Vec3<T>, PorismError> {
    let [a, b, c] = tri;
    let n = (b - a).cross(c - a);
    if tol.is_zero(n.norm(), (b - a).norm() * (c - a).norm()) {
        return Err(PorismError::CollinearPoints);
    }
    let p1 = Plane3::from_normal_point(b - c, a)?;
    let p2 = Plane3::from_normal_point(c - a, b)?;
    let p3 = Plane3::from_normal_point(n, a)?;
    geom::solve3(&p1, &p2, &p3, tol).map_err(|_| PorismError::CollinearPoints)
}

/// Principal frame of a traceless rank-3 form, oriented so that the first two
/// values are positive and the last negative. Returns the frame of `sign * form`.
fn oriented_frame<T: Real>(
    form: &QuadForm3<T>,
    tol: &Tolerance<T>,
) -> Result<(T, EigenFrame<T>), PorismError> {
    let frame = form.eigendecompose()?;
    let norm = frame.values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let reference = norm.max(T::one());
    if !tol.is_zero(form.trace(), reference) || form.rank(tol) < 3 {
        return Err(PorismError::DegenerateForm);
    }
    if frame.values[1] > T::zero() {
        Ok((T::one(), frame))
    } else {
        // one positive, two negative: flip to two positive, one negative
        let f = (-*form).eigendecompose()?;
        Ok((-T::one(), f))
    }
}

/// Section of the cone `form(x) = 0` by the plane `xi_3 = rho` of its
/// principal frame, where `xi_3` is the axis of the eigenvalue whose sign
/// differs from the other two.
pub fn ellipse_section<T: Real>(
    form: &QuadForm3<T>,
    rho: T,
    tol: &Tolerance<T>,
) -> Result<Ellipse3<T>, PorismError> {
    if rho == T::zero() || !rho.is_finite() {
        return Err(PorismError::ZeroOffset);
    }
    let (_, frame) = oriented_frame(form, tol)?;
    let [s1, s2, s3] = frame.values;
    let [e1, e2, e3] = frame.axes;
    let rhs = -s3 * rho * rho;
    Ok(Ellipse3 {
        center: e3 * rho,
        semi_axes: [e1 * (rhs / s1).sqrt(), e2 * (rhs / s2).sqrt()],
        plane: Plane3::from_equation(e3, rho)?,
    })
}

fn interior_angles<T: Real>(v: [Vec3<T>; 3]) -> [T; 3] {
    std::array::from_fn(|i| {
        let p = v[i];
        let a = v[(i + 1) % 3] - p;
        let b = v[(i + 2) % 3] - p;
        let c = a.dot(b) / (a.norm() * b.norm());
        c.max(-T::one()).min(T::one()).acos()
    })
}

/// `count` acute triangles inscribed in the section ellipse, one per seed
/// generator; seeds are spaced uniformly in azimuth around the cone axis.
pub fn porism_family<T: Real>(
    form: &QuadForm3<T>,
    rho: T,
    count: usize,
    tol: &Tolerance<T>,
) -> Result<Vec<InscribedTriangle<T>>, PorismError> {
    if count == 0 {
        return Err(PorismError::EmptyCount);
    }
    let ellipse = ellipse_section(form, rho, tol)?;
    let (sign, frame) = oriented_frame(form, tol)?;
    let oriented = *form * sign;
    let [s1, s2, s3] = frame.values;
    let [e1, e2, e3] = frame.axes;
    let cut = ellipse.plane;

    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let phi = T::TAU() * T::lit(k as f64) / T::lit(count as f64);
        let (c, s) = (phi.cos(), phi.sin());
        // radial size so that s1 xi1^2 + s2 xi2^2 + s3 xi3^2 = 0 with xi3 = 1
        let r = (-s3 / (s1 * c * c + s2 * s * s)).sqrt();
        let g = e1 * (r * c) + e2 * (r * s) + e3;
        let tripod = oriented.tripod_through_generator(g, tol)?;
        let trirect = trirect_from_tripod(&oriented, &tripod, &cut, tol)?;
        let mut vertices = trirect.base_points();
        let orientation = (vertices[1] - vertices[0])
            .cross(vertices[2] - vertices[0])
            .dot(cut.normal);
        if orientation < T::zero() {
            vertices.swap(1, 2);
        }
        out.push(InscribedTriangle {
            vertices,
            angles: interior_angles(vertices),
        });
    }
    Ok(out)
}
