//! The quadric carrying the four altitudes.
//!
//! With the Monge point `M` as origin put `lambda_ij = a_i . a_j` and
//! `Q_ijkl(x) = (x . b_ij)(x . b_kl)`. The traceless form
//!
//! ```text
//! Q* = l01 Q_0123 + l02 Q_0231 + l03 Q_0312
//! ```
//!
//! satisfies `Q*(p) = (l01 - l02)(l02 - l03)(l03 - l01)` for every point `p`
//! on an altitude. Depending on the class of the tetrahedron the solution
//! set is an equilateral hyperboloid of one sheet, a pair of orthogonal
//! midplanes, or (orthocentric case) all of space.
//!
//! Everything here is stored in Monge-centered coordinates; add `center` to
//! get back to world coordinates.

use thiserror::Error;

use crate::geom::{line_line_meet, GeomError, Line3, Plane3, Tolerance, Vec3};
use crate::quadform::{QuadForm2, QuadForm3, QuadFormError};
use crate::scalar::Real;
use crate::tetra::{OppositeEdges, TetraClass, TetraError, Tetrahedron};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AltQuadricError {
    #[error("index quadruple is not a permutation of 0..4")]
    BadPermutation,
    #[error("the quadric of an orthocentric tetrahedron is trivial")]
    TrivialQuadric,
    #[error("operation needs a hyperboloid")]
    NotHyperboloid,
    #[error(transparent)]
    Tetra(#[from] TetraError),
    #[error(transparent)]
    QuadForm(#[from] QuadFormError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `x -> (x . b_ij)(x . b_kl)` for a permutation `(i, j, k, l)` of `0..4`.
pub fn q_ijkl<T: Real>(
    t: &Tetrahedron<T>,
    perm: [usize; 4],
) -> Result<QuadForm3<T>, AltQuadricError> {
    let mut seen = [false; 4];
    for &p in &perm {
        if p >= 4 || seen[p] {
            return Err(AltQuadricError::BadPermutation);
        }
        seen[p] = true;
    }
    let [i, j, k, l] = perm;
    Ok(QuadForm3::outer_sym(t.b(i, j), t.b(k, l)))
}

fn basic_forms<T: Real>(t: &Tetrahedron<T>) -> [QuadForm3<T>; 3] {
    [
        QuadForm3::outer_sym(t.b(0, 1), t.b(2, 3)),
        QuadForm3::outer_sym(t.b(0, 2), t.b(3, 1)),
        QuadForm3::outer_sym(t.b(0, 3), t.b(1, 2)),
    ]
}

/// `l01 Q_0123 + l02 Q_0231 + l03 Q_0312`.
pub fn q_star<T: Real>(t: &Tetrahedron<T>) -> Result<QuadForm3<T>, AltQuadricError> {
    let l = t.lambdas()?;
    let [q1, q2, q3] = basic_forms(t);
    Ok(q1 * l.l01 + q2 * l.l02 + q3 * l.l03)
}

/// The same form written without `Q_0312`:
/// `-(l03 - l01) Q_0123 + (l02 - l03) Q_0231`.
pub fn q_star_two_term<T: Real>(t: &Tetrahedron<T>) -> Result<QuadForm3<T>, AltQuadricError> {
    let l = t.lambdas()?;
    let [q1, q2, _] = basic_forms(t);
    Ok(q1 * (l.l01 - l.l03) + q2 * (l.l02 - l.l03))
}

/// `(l01 - l02)(l02 - l03)(l03 - l01)`.
pub fn rhs<T: Real>(t: &Tetrahedron<T>) -> Result<T, AltQuadricError> {
    let l = t.lambdas()?;
    Ok((l.l01 - l.l02) * (l.l02 - l.l03) * (l.l03 - l.l01))
}

/// Dimension of the span of all `Q_ijkl` and of its traceless subspace.
pub fn form_space_dimensions<T: Real>(t: &Tetrahedron<T>, tol: &Tolerance<T>) -> (usize, usize) {
    let forms = basic_forms(t);
    let frob = |a: &QuadForm3<T>, b: &QuadForm3<T>| {
        let (x, y) = (a.matrix(), b.matrix());
        (0..3).fold(T::zero(), |acc, r| {
            (0..3).fold(acc, |acc, s| acc + x[r][s] * y[r][s])
        })
    };
    let gram: [[T; 3]; 3] =
        std::array::from_fn(|r| std::array::from_fn(|s| frob(&forms[r], &forms[s])));
    let scale = (0..3).fold(T::zero(), |m, r| m.max(gram[r][r]));
    let span = QuadForm3::from_matrix(gram).rank_relative_to(scale, tol);

    // trace is a linear functional on the span; it either vanishes there or has a 1-d kernel
    let trace_zero = OppositeEdgesTraces::of(t).all_zero(tol);
    let traceless = if trace_zero {
        span
    } else {
        span.saturating_sub(1)
    };
    (span, traceless)
}

struct OppositeEdgesTraces<T> {
    traces: [T; 3],
    gates: [T; 3],
}

impl<T: Real> OppositeEdgesTraces<T> {
    fn of(t: &Tetrahedron<T>) -> Self {
        let pairs = [((0, 1), (2, 3)), ((0, 2), (3, 1)), ((0, 3), (1, 2))];
        let traces =
            pairs.map(|((i, j), (k, l))| QuadForm3::outer_sym(t.b(i, j), t.b(k, l)).trace());
        let gates = pairs.map(|((i, j), (k, l))| t.b(i, j).norm() * t.b(k, l).norm());
        Self { traces, gates }
    }

    fn all_zero(&self, tol: &Tolerance<T>) -> bool {
        (0..3).all(|i| tol.is_zero(self.traces[i], self.gates[i]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadricKind<T> {
    Hyperboloid,
    /// Two orthogonal planes through the Monge point (Monge-centered).
    PlanePair(Plane3<T>, Plane3<T>),
    /// Zero form, the equation reads `0 = 0`.
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegulusTag {
    AltitudeRegulus,
    PerpendicularRegulus,
    NotOnQuadric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    /// Hyperbola with orthogonal asymptotes.
    EquilateralHyperbola,
    LinePair,
    Other,
}

/// A plane section of the quadric, written in an orthonormal frame of the plane:
/// `quadratic(s, t) + 2 (linear[0] s + linear[1] t) + constant = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicSection<T> {
    pub plane: Plane3<T>,
    /// World point of the plane that is the in-plane origin.
    pub origin: Vec3<T>,
    pub basis: [Vec3<T>; 2],
    pub quadratic: QuadForm2<T>,
    pub linear: [T; 2],
    pub constant: T,
    pub kind: ConicKind,
}

impl<T: Real> ConicSection<T> {
    /// In-plane coordinates of the projection of `p`.
    pub fn coords(&self, p: Vec3<T>) -> (T, T) {
        let d = p - self.origin;
        (d.dot(self.basis[0]), d.dot(self.basis[1]))
    }

    pub fn point(&self, s: T, t: T) -> Vec3<T> {
        self.origin + self.basis[0] * s + self.basis[1] * t
    }

    /// Left-hand side of the conic equation at the projection of `p`.
    pub fn value(&self, p: Vec3<T>) -> T {
        let (s, t) = self.coords(p);
        self.quadratic.evaluate(s, t)
            + T::two() * (self.linear[0] * s + self.linear[1] * t)
            + self.constant
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AltitudeQuadric<T> {
    /// Monge point.
    pub center: Vec3<T>,
    /// `Q*` in Monge-centered coordinates.
    pub form: QuadForm3<T>,
    pub rhs: T,
    pub kind: QuadricKind<T>,
    pub class: TetraClass,
    /// Longest edge of the source tetrahedron.
    pub scale: T,
    /// Size of the terms summed into `form`; rounding in `form` is relative to
    /// this, not to `form` itself, which cancels to zero in the orthocentric case.
    pub form_scale: T,
}

impl<T: Real> AltitudeQuadric<T> {
    pub fn build(t: &Tetrahedron<T>, tol: &Tolerance<T>) -> Result<Self, AltQuadricError> {
        let center = t.monge_point()?;
        let lambdas = t.lambdas()?;
        let form = q_star(t)?;
        let rhs = rhs(t)?;
        let scale = t.scale();
        let class = t.classify(tol);
        let kind = match class {
            TetraClass::Generic => QuadricKind::Hyperboloid,
            TetraClass::SemiOrthocentric(pair) => {
                let ((i, j), (k, l)) = pair.edges();
                QuadricKind::PlanePair(
                    Plane3::from_normal_point(t.b(i, j), Vec3::zero())?,
                    Plane3::from_normal_point(t.b(k, l), Vec3::zero())?,
                )
            }
            TetraClass::Orthocentric => QuadricKind::Trivial,
        };
        let lambda_max = lambdas
            .as_array()
            .iter()
            .fold(T::zero(), |m, v| m.max(v.abs()));
        let form_scale = lambda_max
            * OppositeEdges::ALL.iter().fold(T::zero(), |acc, p| {
                let ((i, j), (k, l)) = p.edges();
                acc + t.b(i, j).norm() * t.b(k, l).norm()
            });
        debug_assert!(
            form.rank_relative_to(form_scale, tol) != 1,
            "a traceless form cannot have rank 1"
        );
        Ok(Self {
            center,
            form,
            rhs,
            kind,
            class,
            scale,
            form_scale,
        })
    }

    pub fn is_hyperboloid(&self) -> bool {
        matches!(self.kind, QuadricKind::Hyperboloid)
    }

    /// `Q*(p - M) - rhs` at a world point.
    pub fn value(&self, p: Vec3<T>) -> T {
        self.form.evaluate(p - self.center) - self.rhs
    }

    /// Magnitude of the terms entering [`Self::value`] at `p`, for relative tests.
    pub fn value_scale(&self, p: Vec3<T>) -> T {
        self.form_scale * (p - self.center).norm_squared() + self.rhs.abs()
    }

    /// Whether `p` satisfies the quadric equation within tolerance.
    pub fn contains_point(&self, p: Vec3<T>, tol: &Tolerance<T>) -> bool {
        tol.is_zero(self.value(p), self.value_scale(p))
    }

    /// A line lies on the quadric once three of its points do.
    pub fn contains_line(
        &self,
        line: &Line3<T>,
        tol: &Tolerance<T>,
    ) -> Result<bool, AltQuadricError> {
        if matches!(self.kind, QuadricKind::Trivial) {
            return Err(AltQuadricError::TrivialQuadric);
        }
        let s = self.scale;
        Ok([-s, T::zero(), s]
            .iter()
            .all(|&t| self.contains_point(line.point_at(t), tol)))
    }

    /// The asymptotic cone `Q*(x) = 0`.
    pub fn asymptotic_cone(&self) -> Result<QuadForm3<T>, AltQuadricError> {
        if !self.is_hyperboloid() {
            return Err(AltQuadricError::NotHyperboloid);
        }
        Ok(self.form)
    }

    /// Assigns a line of the hyperboloid to the regulus of the altitudes or to
    /// the opposite one by counting which altitudes it meets.
    pub fn regulus_of(
        &self,
        line: &Line3<T>,
        t: &Tetrahedron<T>,
        tol: &Tolerance<T>,
    ) -> Result<RegulusTag, AltQuadricError> {
        if !self.is_hyperboloid() {
            return Err(AltQuadricError::NotHyperboloid);
        }
        if !self.contains_line(line, tol)? {
            return Ok(RegulusTag::NotOnQuadric);
        }
        let mut meets = 0;
        for l in 0..4 {
            let h = t.altitude(l)?;
            if line_line_meet(line, &h, tol).relation == crate::geom::LineRelation::Meeting {
                meets += 1;
            }
        }
        // same regulus: skew to the others; opposite regulus: meets all but at most one
        Ok(if meets >= 3 {
            RegulusTag::PerpendicularRegulus
        } else {
            RegulusTag::AltitudeRegulus
        })
    }

    /// Intersection with a world-space plane.
    pub fn section(
        &self,
        plane: &Plane3<T>,
        tol: &Tolerance<T>,
    ) -> Result<ConicSection<T>, AltQuadricError> {
        if !self.is_hyperboloid() {
            return Err(AltQuadricError::NotHyperboloid);
        }
        let n = plane.normal;
        let local = plane.residual(self.center);
        // foot of the center, Monge-centered
        let p0 = -(n * local);
        let (u, v) = n.orthonormal_complement();
        let f = &self.form;
        let quadratic = QuadForm2::new(f.bilinear(u, u), f.bilinear(v, v), f.bilinear(u, v));
        let linear = [f.bilinear(p0, u), f.bilinear(p0, v)];
        let constant = f.evaluate(p0) - self.rhs;
        let kind = classify_conic(&quadratic, linear, constant, f.norm(), tol);
        Ok(ConicSection {
            plane: *plane,
            origin: p0 + self.center,
            basis: [u, v],
            quadratic,
            linear,
            constant,
            kind,
        })
    }
}

fn classify_conic<T: Real>(
    a: &QuadForm2<T>,
    lin: [T; 2],
    constant: T,
    form_norm: T,
    tol: &Tolerance<T>,
) -> ConicKind {
    let qa = a.max_abs();
    if tol.is_zero(qa, form_norm) {
        return ConicKind::Other;
    }
    let det = a.det();
    if tol.is_zero(det, qa * qa) {
        return ConicKind::Other;
    }
    // center c solves A c = -lin; the constant after completing the square is constant + lin . c
    let cx = (-lin[0] * a.s22 + lin[1] * a.s12) / det;
    let cy = (-lin[1] * a.s11 + lin[0] * a.s12) / det;
    let shift = lin[0] * cx + lin[1] * cy;
    let k = constant + shift;
    let degenerate = tol.is_zero(k, constant.abs() + shift.abs() + qa * (cx * cx + cy * cy));
    if det < T::zero() {
        if degenerate {
            ConicKind::LinePair
        } else if tol.is_zero(a.trace(), qa) {
            ConicKind::EquilateralHyperbola
        } else {
            ConicKind::Hyperbola
        }
    } else if !degenerate && k * a.trace() < T::zero() {
        ConicKind::Ellipse
    } else {
        ConicKind::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tetra::OppositeEdges;

    type V = Vec3<f64>;

    fn tetra(p: [[f64; 3]; 4]) -> Tetrahedron<f64> {
        Tetrahedron::new(p.map(V::from_array)).unwrap()
    }
    fn t_gen() -> Tetrahedron<f64> {
        tetra([[0., 0., 0.], [4., 0., 0.], [1., 3., 0.], [2., 1., 2.]])
    }
    fn t_semi() -> Tetrahedron<f64> {
        tetra([[0., 0., 0.], [4., 0., 0.], [1., 3., 0.], [1., 2., 2.]])
    }
    fn t_orth() -> Tetrahedron<f64> {
        tetra([[0., 0., 0.], [4., 0., 0.], [1., 3., 0.], [1., 1., 2.]])
    }
    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn basic_forms_identities() {
        let t = t_gen();
        assert_eq!(q_ijkl(&t, [0, 1, 2, 3]).unwrap().trace(), 4.0);
        let sum = q_ijkl(&t, [0, 1, 2, 3]).unwrap()
            + q_ijkl(&t, [0, 2, 3, 1]).unwrap()
            + q_ijkl(&t, [0, 3, 1, 2]).unwrap();
        assert_eq!(sum, QuadForm3::zero());
        let q = q_ijkl(&t, [0, 1, 2, 3]).unwrap();
        assert_eq!(q_ijkl(&t, [2, 3, 0, 1]).unwrap(), q);
        assert_eq!(q_ijkl(&t, [1, 0, 2, 3]).unwrap(), -q);
        for perm in [[0, 1, 2, 3], [1, 3, 0, 2], [3, 2, 1, 0]] {
            assert_eq!(q_ijkl(&t_orth(), perm).unwrap().trace(), 0.0);
        }
        assert_eq!(
            q_ijkl(&t, [0, 1, 1, 3]),
            Err(AltQuadricError::BadPermutation)
        );
        assert_eq!(
            q_ijkl(&t, [0, 1, 2, 4]),
            Err(AltQuadricError::BadPermutation)
        );
    }

    #[test]
    fn q_star_of_generic_fixture() {
        let t = t_gen();
        let q = q_star(&t).unwrap();
        let expected = QuadForm3::from_matrix([[6., 3., 0.], [3., -6., -6.], [0., -6., 0.]]);
        assert!((q - expected).max_abs() < 1e-13);
        assert!((q - q_star_two_term(&t).unwrap()).max_abs() < 1e-13);
        let m = t.monge_point().unwrap();
        assert!((q.evaluate(t.vertex(3) - m) - 1.5).abs() < 1e-13);
        assert!((rhs(&t).unwrap() - 1.5).abs() < 1e-13);
    }

    #[test]
    fn q_star_degenerations() {
        let q = q_star(&t_orth()).unwrap();
        assert!(q.max_abs() < 1e-13);
        assert!(rhs(&t_orth()).unwrap().abs() < 1e-13);

        let t = t_semi();
        let l = t.lambdas().unwrap();
        let q = q_star(&t).unwrap();
        let expected = q_ijkl(&t, [0, 1, 2, 3]).unwrap() * (l.l01 - l.l03);
        assert!((q - expected).max_abs() < 1e-13);
        assert_eq!(q.rank(&tol()), 2);
        assert!(rhs(&t).unwrap().abs() < 1e-13);
    }

    #[test]
    fn build_kinds() {
        let qd = AltitudeQuadric::build(&t_gen(), &tol()).unwrap();
        assert_eq!(qd.kind, QuadricKind::Hyperboloid);
        assert!((qd.center - V::new(1.5, 1., 1.25)).max_abs() < 1e-14);
        assert!((qd.rhs - 1.5).abs() < 1e-13);

        let qd = AltitudeQuadric::build(&t_semi(), &tol()).unwrap();
        assert_eq!(
            qd.class,
            TetraClass::SemiOrthocentric(OppositeEdges::E01E23)
        );
        match qd.kind {
            QuadricKind::PlanePair(p1, p2) => {
                assert!(p1.normal.dot(p2.normal).abs() < 1e-15);
                assert!((p1.normal.sign_canonical() - V::unit_x()).max_abs() < 1e-15);
            }
            other => panic!("expected plane pair, got {other:?}"),
        }

        let qd = AltitudeQuadric::build(&t_orth(), &tol()).unwrap();
        assert_eq!(qd.kind, QuadricKind::Trivial);
        assert_eq!(
            qd.contains_line(&t_orth().altitude(0).unwrap(), &tol()),
            Err(AltQuadricError::TrivialQuadric)
        );
    }

    #[test]
    fn incidence_and_reguli() {
        let t = t_gen();
        let qd = AltitudeQuadric::build(&t, &tol()).unwrap();
        for l in 0..4 {
            let h = t.altitude(l).unwrap();
            let n = t.ortho_perpendicular(l).unwrap();
            assert!(qd.contains_line(&h, &tol()).unwrap());
            assert!(qd.contains_line(&n, &tol()).unwrap());
            assert_eq!(
                qd.regulus_of(&h, &t, &tol()),
                Ok(RegulusTag::AltitudeRegulus)
            );
            assert_eq!(
                qd.regulus_of(&n, &t, &tol()),
                Ok(RegulusTag::PerpendicularRegulus)
            );
        }
        let euler = t.noteworthy(&tol()).unwrap().euler.unwrap();
        assert!(!qd.contains_line(&euler, &tol()).unwrap());
        assert_eq!(
            qd.regulus_of(&euler, &t, &tol()),
            Ok(RegulusTag::NotOnQuadric)
        );

        let semi = AltitudeQuadric::build(&t_semi(), &tol()).unwrap();
        assert_eq!(
            semi.regulus_of(&euler, &t, &tol()),
            Err(AltQuadricError::NotHyperboloid)
        );
    }

    #[test]
    fn asymptotic_cone_is_equilateral() {
        let qd = AltitudeQuadric::build(&t_gen(), &tol()).unwrap();
        let cone = qd.asymptotic_cone().unwrap();
        assert!(cone.trace().abs() < 1e-13);
        assert_eq!(
            cone.classify_traceless(&tol()),
            Ok(crate::quadform::TracelessClass::EquilateralCone)
        );
        let semi = AltitudeQuadric::build(&t_semi(), &tol()).unwrap();
        assert_eq!(semi.asymptotic_cone(), Err(AltQuadricError::NotHyperboloid));
    }

    #[test]
    fn sections() {
        let t = t_gen();
        let qd = AltitudeQuadric::build(&t, &tol()).unwrap();

        let base = Plane3::from_equation(V::unit_z(), 0.).unwrap();
        let s = qd.section(&base, &tol()).unwrap();
        assert_eq!(s.kind, ConicKind::EquilateralHyperbola);
        for p in [t.vertex(0), t.vertex(1), t.vertex(2), V::new(1., 1., 0.)] {
            assert!(s.value(p).abs() < 1e-12, "{p:?} -> {}", s.value(p));
        }

        let across = Plane3::from_normal_point(V::unit_z(), qd.center + V::unit_z()).unwrap();
        assert_eq!(
            qd.section(&across, &tol()).unwrap().kind,
            ConicKind::EquilateralHyperbola
        );

        let oblique = Plane3::from_normal_point(V::new(1., 0.3, 0.2), qd.center).unwrap();
        let s = qd.section(&oblique, &tol()).unwrap();
        assert!(s.quadratic.trace().abs() > 1e-3);
        assert!(matches!(s.kind, ConicKind::Hyperbola | ConicKind::Ellipse));
    }

    #[test]
    fn span_dimensions() {
        assert_eq!(form_space_dimensions(&t_gen(), &tol()), (2, 1));
        assert_eq!(form_space_dimensions(&t_semi(), &tol()), (2, 1));
        assert_eq!(form_space_dimensions(&t_orth(), &tol()), (2, 2));
    }

    #[test]
    fn conic_classifier() {
        let tol = tol();
        // x^2 + y^2 - 1
        assert_eq!(
            classify_conic(&QuadForm2::new(1., 1., 0.), [0., 0.], -1., 1., &tol),
            ConicKind::Ellipse
        );
        // x^2 + y^2 + 1 (empty)
        assert_eq!(
            classify_conic(&QuadForm2::new(1., 1., 0.), [0., 0.], 1., 1., &tol),
            ConicKind::Other
        );
        // x^2 - 2y^2 - 1
        assert_eq!(
            classify_conic(&QuadForm2::new(1., -2., 0.), [0., 0.], -1., 2., &tol),
            ConicKind::Hyperbola
        );
        // 2xy - 1
        assert_eq!(
            classify_conic(&QuadForm2::new(0., 0., 1.), [0., 0.], -1., 1., &tol),
            ConicKind::EquilateralHyperbola
        );
        // (x - 1)^2 - y^2 = x^2 - 2x + 1 - y^2
        assert_eq!(
            classify_conic(&QuadForm2::new(1., -1., 0.), [-1., 0.], 1., 1., &tol),
            ConicKind::LinePair
        );
        // x^2 - y (parabola)
        assert_eq!(
            classify_conic(&QuadForm2::new(1., 0., 0.), [0., -0.5], 0., 1., &tol),
            ConicKind::Other
        );
    }
}
