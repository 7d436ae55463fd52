//! Vectors, lines, planes and small linear systems in Euclidean 3-space.
//!
//! Every zero test goes through [`Tolerance`], which compares a value against
//! `rel_eps * scale + abs_eps` where `scale` is the product of the magnitudes
//! that produced the value.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("the three plane normals are linearly dependent")]
    SingularSystem,
    #[error("the two planes are parallel")]
    ParallelPlanes,
    #[error("direction or normal vector is zero")]
    ZeroVector,
    #[error("tolerances must be positive and finite")]
    InvalidTolerance,
}

/// Scale-aware zero test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub rel_eps: T,
    pub abs_eps: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(rel_eps: T, abs_eps: T) -> Result<Self, GeomError> {
        let ok = |v: T| v.is_finite() && v > T::zero();
        if ok(rel_eps) && ok(abs_eps) {
            Ok(Self { rel_eps, abs_eps })
        } else {
            Err(GeomError::InvalidTolerance)
        }
    }

    /// Same absolute floor, different relative epsilon.
    pub fn with_rel(self, rel_eps: T) -> Result<Self, GeomError> {
        Self::new(rel_eps, self.abs_eps)
    }

    /// Threshold below which a value of the given magnitude counts as zero.
    #[inline]
    pub fn gate(&self, scale: T) -> T {
        self.rel_eps * scale.abs() + self.abs_eps
    }

    #[inline]
    pub fn is_zero(&self, value: T, scale: T) -> bool {
        value.abs() <= self.gate(scale)
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            rel_eps: T::lit(T::DEFAULT_REL_EPS),
            abs_eps: T::lit(T::DEFAULT_ABS_EPS),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    #[inline]
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn unit_x() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn unit_y() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn unit_z() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// Converts every component from `f64`.
    pub fn from_f64(x: f64, y: f64, z: f64) -> Self {
        Self::new(T::lit(x), T::lit(y), T::lit(z))
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn distance(self, other: Self) -> T {
        (self - other).norm()
    }

    /// Unit vector in the same direction, `None` for the zero vector.
    pub fn normalize(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn map(self, f: impl Fn(T) -> T) -> Self {
        Self::new(f(self.x), f(self.y), f(self.z))
    }

    pub fn component(self, i: usize) -> T {
        match i {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("Vec3 component index {i} out of range"),
        }
    }

    /// Flips the vector so that its first component that is not negligible
    /// (relative to the largest one) is positive.
    pub fn sign_canonical(self) -> Self {
        let floor = self.max_abs() * T::epsilon() * T::lit(64.0);
        for c in self.to_array() {
            if c.abs() > floor {
                return if c < T::zero() { -self } else { self };
            }
        }
        self
    }

    /// Flips the vector so that its largest-magnitude component is positive.
    pub fn sign_by_largest(self) -> Self {
        let mut best = self.x;
        for c in [self.y, self.z] {
            if c.abs() > best.abs() {
                best = c;
            }
        }
        if best < T::zero() {
            -self
        } else {
            self
        }
    }

    /// Two unit vectors completing `self` (assumed unit) to a right-handed
    /// orthonormal frame `(u, v, self)`.
    pub fn orthonormal_complement(self) -> (Self, Self) {
        let a = self.map(|c| c.abs());
        let seed = if a.x <= a.y && a.x <= a.z {
            Self::unit_x()
        } else if a.y <= a.z {
            Self::unit_y()
        } else {
            Self::unit_z()
        };
        let u = (seed - self * seed.dot(self))
            .normalize()
            .expect("seed axis is never parallel to the least aligned axis");
        let v = self.cross(u);
        (u, v)
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> AddAssign for Vec3<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> SubAssign for Vec3<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Div<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s)
    }
}

macro_rules! impl_scalar_lhs_mul {
    ($($t:ty),*) => {$(
        impl Mul<Vec3<$t>> for $t {
            type Output = Vec3<$t>;
            #[inline]
            fn mul(self, v: Vec3<$t>) -> Vec3<$t> {
                v * self
            }
        }
    )*};
}
impl_scalar_lhs_mul!(f32, f64);

#[inline]
pub fn dot<T: Real>(u: Vec3<T>, v: Vec3<T>) -> T {
    u.dot(v)
}

/// Determinant of the 3x3 matrix with rows `u`, `v`, `w`.
#[inline]
pub fn triple<T: Real>(u: Vec3<T>, v: Vec3<T>, w: Vec3<T>) -> T {
    u.dot(v.cross(w))
}

/// A line `{ base + t * dir }` with unit, sign-canonical direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line3<T> {
    pub base: Vec3<T>,
    pub dir: Vec3<T>,
}

impl<T: Real> Line3<T> {
    pub fn new(base: Vec3<T>, dir: Vec3<T>) -> Result<Self, GeomError> {
        let dir = dir
            .normalize()
            .ok_or(GeomError::ZeroVector)?
            .sign_canonical();
        Ok(Self { base, dir })
    }

    pub fn through(p: Vec3<T>, q: Vec3<T>) -> Result<Self, GeomError> {
        Self::new(p, q - p)
    }

    #[inline]
    pub fn point_at(&self, t: T) -> Vec3<T> {
        self.base + self.dir * t
    }

    /// Orthogonal projection of `p` onto the line.
    pub fn project(&self, p: Vec3<T>) -> Vec3<T> {
        self.point_at((p - self.base).dot(self.dir))
    }

    pub fn distance_to(&self, p: Vec3<T>) -> T {
        (p - self.base).cross(self.dir).norm()
    }

    /// Same line, with its base moved to the foot of `p`.
    pub fn rebased_at(&self, p: Vec3<T>) -> Self {
        Self {
            base: self.project(p),
            dir: self.dir,
        }
    }
}

/// The plane `{ x : normal . x = offset }` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane3<T> {
    pub normal: Vec3<T>,
    pub offset: T,
}

impl<T: Real> Plane3<T> {
    /// Plane `normal . x = rhs`; the equation is rescaled to a unit normal.
    pub fn from_equation(normal: Vec3<T>, rhs: T) -> Result<Self, GeomError> {
        let n = normal.norm();
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(n > T::zero()) || !n.is_finite() {
            return Err(GeomError::ZeroVector);
        }
        Ok(Self {
            normal: normal / n,
            offset: rhs / n,
        })
    }

    pub fn from_normal_point(normal: Vec3<T>, point: Vec3<T>) -> Result<Self, GeomError> {
        let unit = normal.normalize().ok_or(GeomError::ZeroVector)?;
        Ok(Self {
            normal: unit,
            offset: unit.dot(point),
        })
    }

    pub fn through_points(a: Vec3<T>, b: Vec3<T>, c: Vec3<T>) -> Result<Self, GeomError> {
        Self::from_normal_point((b - a).cross(c - a), a)
    }

    /// Signed distance of `p` from the plane.
    #[inline]
    pub fn residual(&self, p: Vec3<T>) -> T {
        self.normal.dot(p) - self.offset
    }

    pub fn project(&self, p: Vec3<T>) -> Vec3<T> {
        p - self.normal * self.residual(p)
    }

    /// The same plane after translating space by `shift`.
    pub fn translated(&self, shift: Vec3<T>) -> Self {
        Self {
            normal: self.normal,
            offset: self.offset + self.normal.dot(shift),
        }
    }

    /// Intersection with a line, `None` when the line is parallel within tolerance.
    pub fn meet_line(&self, line: &Line3<T>, tol: &Tolerance<T>) -> Option<Vec3<T>> {
        let denom = self.normal.dot(line.dir);
        if tol.is_zero(denom, T::one()) {
            return None;
        }
        Some(line.point_at(-self.residual(line.base) / denom))
    }
}

/// Unique common point of three planes, by partial-pivot elimination.
#[allow(clippy::needless_range_loop)]
pub fn solve3<T: Real>(
    p1: &Plane3<T>,
    p2: &Plane3<T>,
    p3: &Plane3<T>,
    tol: &Tolerance<T>,
) -> Result<Vec3<T>, GeomError> {
    // normals are unit, so the determinant is already scale free
    if tol.is_zero(triple(p1.normal, p2.normal, p3.normal), T::one()) {
        return Err(GeomError::SingularSystem);
    }
    let mut m = [
        [p1.normal.x, p1.normal.y, p1.normal.z, p1.offset],
        [p2.normal.x, p2.normal.y, p2.normal.z, p2.offset],
        [p3.normal.x, p3.normal.y, p3.normal.z, p3.offset],
    ];
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
            .unwrap();
        m.swap(col, pivot);
        if m[col][col] == T::zero() {
            return Err(GeomError::SingularSystem);
        }
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] = m[row][k] - f * m[col][k];
            }
        }
    }
    let mut x = [T::zero(); 3];
    for row in (0..3).rev() {
        let mut acc = m[row][3];
        for k in row + 1..3 {
            acc = acc - m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Ok(Vec3::from_array(x))
}

/// Line of intersection of two planes. The base is the point of the line
/// closest to the origin.
pub fn line_from_two_planes<T: Real>(
    p1: &Plane3<T>,
    p2: &Plane3<T>,
    tol: &Tolerance<T>,
) -> Result<Line3<T>, GeomError> {
    let d = p1.normal.cross(p2.normal);
    let dd = d.norm_squared();
    if tol.is_zero(dd.sqrt(), T::one()) {
        return Err(GeomError::ParallelPlanes);
    }
    let base = (p2.normal.cross(d) * p1.offset + d.cross(p1.normal) * p2.offset) / dd;
    Line3::new(base, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineRelation {
    Identical,
    Parallel,
    Meeting,
    Skew,
}

/// Outcome of [`line_line_meet`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineMeet<T> {
    pub relation: LineRelation,
    /// Common point, present only for `Meeting`.
    pub point: Option<Vec3<T>>,
    /// Distance between the two lines.
    pub gap: T,
}

impl<T> LineMeet<T> {
    /// `Meeting` or `Identical`.
    pub fn intersects(&self) -> bool {
        matches!(
            self.relation,
            LineRelation::Meeting | LineRelation::Identical
        )
    }
}

pub fn line_line_meet<T: Real>(l1: &Line3<T>, l2: &Line3<T>, tol: &Tolerance<T>) -> LineMeet<T> {
    let w = l2.base - l1.base;
    let cross = l1.dir.cross(l2.dir);
    let sin = cross.norm();
    let mut scale = l1.base.norm().max(l2.base.norm()).max(w.norm());

    if tol.is_zero(sin, T::one()) {
        let gap = w.cross(l1.dir).norm().max(w.cross(l2.dir).norm());
        let relation = if tol.is_zero(gap, scale) {
            LineRelation::Identical
        } else {
            LineRelation::Parallel
        };
        return LineMeet {
            relation,
            point: None,
            gap,
        };
    }

    let s2 = sin * sin;
    let t1 = w.cross(l2.dir).dot(cross) / s2;
    let t2 = w.cross(l1.dir).dot(cross) / s2;
    let q1 = l1.point_at(t1);
    let q2 = l2.point_at(t2);
    let gap = w.dot(cross / sin).abs();
    scale = scale.max(q1.norm()).max(q2.norm());
    if tol.is_zero(gap, scale) {
        LineMeet {
            relation: LineRelation::Meeting,
            point: Some((q1 + q2) * T::half()),
            gap,
        }
    } else {
        LineMeet {
            relation: LineRelation::Skew,
            point: None,
            gap,
        }
    }
}
