//! The tetrahedron model.
//!
//! Vertices are `a_0..a_3`; edge vectors are `b_ij = a_i - a_j`. Three pairs of
//! opposite edges exist and their dot products decide everything else: two
//! altitudes `h_i`, `h_j` meet exactly when `b_kl . b_ij = 0`.

use thiserror::Error;

use crate::geom::{self, GeomError, Line3, Plane3, Tolerance, Vec3};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TetraError {
    #[error("vertex index out of range or repeated")]
    BadIndex,
    #[error("the four vertices are coplanar")]
    DegenerateTetrahedron,
    #[error("vertex coordinates must be finite")]
    NonFinite,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// One of the three pairs of opposite edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OppositeEdges {
    /// `A0A1` and `A2A3`
    E01E23,
    /// `A0A2` and `A1A3`
    E02E13,
    /// `A0A3` and `A1A2`
    E03E12,
}

impl OppositeEdges {
    pub const ALL: [OppositeEdges; 3] = [Self::E01E23, Self::E02E13, Self::E03E12];

    /// Oriented edges `((i, j), (k, l))` whose vectors `b_ij`, `b_kl` enter the
    /// cyclic identity `b01.b23 + b02.b31 + b03.b12 = 0`.
    pub fn edges(self) -> ((usize, usize), (usize, usize)) {
        match self {
            Self::E01E23 => ((0, 1), (2, 3)),
            Self::E02E13 => ((0, 2), (3, 1)),
            Self::E03E12 => ((0, 3), (1, 2)),
        }
    }

    /// The pair containing edge `{i, j}`.
    pub fn containing(i: usize, j: usize) -> Result<Self, TetraError> {
        check_pair(i, j)?;
        let (lo, hi) = (i.min(j), i.max(j));
        Ok(match (lo, hi) {
            (0, 1) | (2, 3) => Self::E01E23,
            (0, 2) | (1, 3) => Self::E02E13,
            _ => Self::E03E12,
        })
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::E01E23 => "01-23",
            Self::E02E13 => "02-13",
            Self::E03E12 => "03-12",
        }
    }
}

fn check_index(i: usize) -> Result<(), TetraError> {
    if i < 4 {
        Ok(())
    } else {
        Err(TetraError::BadIndex)
    }
}

fn check_pair(i: usize, j: usize) -> Result<(), TetraError> {
    check_index(i)?;
    check_index(j)?;
    if i == j {
        Err(TetraError::BadIndex)
    } else {
        Ok(())
    }
}

/// The two indices not in `{i, j}`, ascending.
pub fn complement(i: usize, j: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&x| x != i && x != j);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// The three indices other than `l`, ascending.
pub fn others(l: usize) -> [usize; 3] {
    let mut out = [0; 3];
    for (slot, v) in out.iter_mut().zip((0..4).filter(|&x| x != l)) {
        *slot = v;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TetraClass {
    Generic,
    /// Exactly one pair of opposite edges is orthogonal.
    SemiOrthocentric(OppositeEdges),
    Orthocentric,
}

impl TetraClass {
    pub fn kind(self) -> ClassKind {
        match self {
            Self::Generic => ClassKind::Generic,
            Self::SemiOrthocentric(_) => ClassKind::SemiOrthocentric,
            Self::Orthocentric => ClassKind::Orthocentric,
        }
    }
}

/// [`TetraClass`] without the payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Generic,
    SemiOrthocentric,
    Orthocentric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub class: TetraClass,
    /// Set when exactly two opposite-edge products tested zero, which the
    /// cyclic identity forbids; `class` then holds the resolved value.
    pub inconsistent: bool,
}

/// Dot products `lambda_0j = (a_0 - m).(a_j - m)` taken from the Monge point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaTriple<T> {
    pub l01: T,
    pub l02: T,
    pub l03: T,
}

impl<T: Real> LambdaTriple<T> {
    pub fn as_array(&self) -> [T; 3] {
        [self.l01, self.l02, self.l03]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoteworthyPoints<T> {
    pub monge: Vec3<T>,
    pub centroid: Vec3<T>,
    pub circumcenter: Vec3<T>,
    /// Present only for orthocentric tetrahedra, where it equals `monge`.
    pub orthocenter: Option<Vec3<T>>,
    /// Line through the centroid towards the circumcenter; absent when the
    /// circumcenter and the Monge point coincide.
    pub euler: Option<Line3<T>>,
}

/// Classifies from the three opposite-edge products and their zero gates.
fn resolve_class<T: Real>(dots: [T; 3], gates: [T; 3]) -> Classification {
    let zero: Vec<OppositeEdges> = OppositeEdges::ALL
        .into_iter()
        .filter(|p| dots[p.index()].abs() <= gates[p.index()])
        .collect();
    let (class, inconsistent) = match zero.len() {
        0 => (TetraClass::Generic, false),
        1 => (TetraClass::SemiOrthocentric(zero[0]), false),
        2 => {
            // the cyclic identity forces the third product to vanish as well
            let third = OppositeEdges::ALL
                .into_iter()
                .find(|p| !zero.contains(p))
                .unwrap()
                .index();
            if dots[third].abs() <= T::lit(10.0) * gates[third] {
                (TetraClass::Orthocentric, false)
            } else {
                (TetraClass::Generic, true)
            }
        }
        _ => (TetraClass::Orthocentric, false),
    };
    Classification {
        class,
        inconsistent,
    }
}

/// A nondegenerate tetrahedron together with the tolerance used for its
/// constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrahedron<T> {
    vertices: [Vec3<T>; 4],
    tol: Tolerance<T>,
}

impl<T: Real> Tetrahedron<T> {
    /// Validates with the default tolerance.
    pub fn new(vertices: [Vec3<T>; 4]) -> Result<Self, TetraError> {
        Self::with_tolerance(vertices, Tolerance::default())
    }

    pub fn with_tolerance(vertices: [Vec3<T>; 4], tol: Tolerance<T>) -> Result<Self, TetraError> {
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(TetraError::NonFinite);
        }
        let t = Self { vertices, tol };
        let scale = t.scale();
        let vol = geom::triple(t.b(0, 1), t.b(0, 2), t.b(0, 3));
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(scale > T::zero()) || tol.is_zero(vol, scale * scale * scale) {
            return Err(TetraError::DegenerateTetrahedron);
        }
        Ok(t)
    }

    pub fn vertices(&self) -> &[Vec3<T>; 4] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Vec3<T> {
        self.vertices[i]
    }

    pub fn tolerance(&self) -> &Tolerance<T> {
        &self.tol
    }

    /// Same vertices mapped through `f`; fails if the image is degenerate.
    pub fn map_vertices(&self, f: impl Fn(Vec3<T>) -> Vec3<T>) -> Result<Self, TetraError> {
        Self::with_tolerance(self.vertices.map(f), self.tol)
    }

    #[inline]
    pub(crate) fn b(&self, i: usize, j: usize) -> Vec3<T> {
        self.vertices[i] - self.vertices[j]
    }

    pub fn edge_vector(&self, i: usize, j: usize) -> Result<Vec3<T>, TetraError> {
        check_pair(i, j)?;
        Ok(self.b(i, j))
    }

    /// Longest edge length; the length unit for every relative tolerance.
    pub fn scale(&self) -> T {
        let mut s = T::zero();
        for i in 0..4 {
            for j in i + 1..4 {
                s = s.max(self.b(i, j).norm());
            }
        }
        s
    }

    /// Signed volume times six.
    pub fn signed_volume6(&self) -> T {
        geom::triple(self.b(1, 0), self.b(2, 0), self.b(3, 0))
    }

    pub fn opposite_dot(&self, pair: OppositeEdges) -> T {
        let ((i, j), (k, l)) = pair.edges();
        self.b(i, j).dot(self.b(k, l))
    }

    /// `[b01.b23, b02.b31, b03.b12]`.
    pub fn opposite_dots(&self) -> [T; 3] {
        OppositeEdges::ALL.map(|p| self.opposite_dot(p))
    }

    fn opposite_gate(&self, pair: OppositeEdges) -> T {
        let ((i, j), (k, l)) = pair.edges();
        self.tol.gate(self.b(i, j).norm() * self.b(k, l).norm())
    }

    /// `b01.b23 + b02.b31 + b03.b12`, identically zero.
    pub fn pluecker_residual(&self) -> T {
        self.opposite_dots().iter().fold(T::zero(), |a, &d| a + d)
    }

    pub fn face_plane(&self, l: usize) -> Result<Plane3<T>, TetraError> {
        check_index(l)?;
        let [i, j, k] = others(l);
        Ok(Plane3::through_points(
            self.vertices[i],
            self.vertices[j],
            self.vertices[k],
        )?)
    }

    /// Picks the pair of planes with the best conditioned intersection.
    fn best_pair_line(&self, planes: [Plane3<T>; 3]) -> Result<Line3<T>, TetraError> {
        let (a, b) = [(0, 1), (1, 2), (2, 0)]
            .into_iter()
            .max_by(|&(a, b), &(c, d)| {
                let x = planes[a].normal.cross(planes[b].normal).norm();
                let y = planes[c].normal.cross(planes[d].normal).norm();
                x.partial_cmp(&y).unwrap()
            })
            .unwrap();
        Ok(geom::line_from_two_planes(
            &planes[a], &planes[b], &self.tol,
        )?)
    }

    /// Altitude `h_l` through vertex `l`, based at `a_l`.
    pub fn altitude(&self, l: usize) -> Result<Line3<T>, TetraError> {
        check_index(l)?;
        let [i, j, k] = others(l);
        let a_l = self.vertices[l];
        let planes = [
            Plane3::from_normal_point(self.b(i, j), a_l)?,
            Plane3::from_normal_point(self.b(j, k), a_l)?,
            Plane3::from_normal_point(self.b(k, i), a_l)?,
        ];
        Ok(self.best_pair_line(planes)?.rebased_at(a_l))
    }

    /// Orthocentric perpendicular `n_l`: the normal of face `l` through the
    /// orthocenter of that face, which is used as the base point.
    pub fn ortho_perpendicular(&self, l: usize) -> Result<Line3<T>, TetraError> {
        check_index(l)?;
        let [i, j, k] = others(l);
        let a = &self.vertices;
        let planes = [
            Plane3::from_normal_point(self.b(i, j), a[k])?,
            Plane3::from_normal_point(self.b(j, k), a[i])?,
            Plane3::from_normal_point(self.b(k, i), a[j])?,
        ];
        let line = self.best_pair_line(planes)?;
        let face = self.face_plane(l)?;
        Ok(match face.meet_line(&line, &self.tol) {
            Some(foot) => line.rebased_at(foot),
            None => line,
        })
    }

    /// Orthocenter of the face opposite vertex `l`.
    pub fn face_orthocenter(&self, l: usize) -> Result<Vec3<T>, TetraError> {
        Ok(self.ortho_perpendicular(l)?.base)
    }

    /// Plane orthogonal to edge `A_iA_j` through the midpoint of the opposite edge.
    pub fn midplane(&self, i: usize, j: usize) -> Result<Plane3<T>, TetraError> {
        check_pair(i, j)?;
        let (k, l) = complement(i, j);
        let mid = (self.vertices[k] + self.vertices[l]) * T::half();
        Ok(Plane3::from_normal_point(self.b(i, j), mid)?)
    }

    pub fn perp_bisector(&self, i: usize, j: usize) -> Result<Plane3<T>, TetraError> {
        check_pair(i, j)?;
        let mid = (self.vertices[i] + self.vertices[j]) * T::half();
        Ok(Plane3::from_normal_point(self.b(i, j), mid)?)
    }

    /// All six midplanes, indexed like [`Self::edges`].
    pub fn midplanes(&self) -> Result<Vec<Plane3<T>>, TetraError> {
        Self::edges()
            .iter()
            .map(|&(i, j)| self.midplane(i, j))
            .collect()
    }

    /// The six edges `(i, j)` with `i < j`.
    pub fn edges() -> [(usize, usize); 6] {
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    }

    pub fn monge_point(&self) -> Result<Vec3<T>, TetraError> {
        Ok(geom::solve3(
            &self.midplane(0, 1)?,
            &self.midplane(0, 2)?,
            &self.midplane(0, 3)?,
            &self.tol,
        )?)
    }

    /// Largest violation of `(a_i-m).(a_l-m) = (a_j-m).(a_k-m)` over the
    /// three ways of splitting the vertices into two pairs.
    pub fn monge_identity_residual(&self) -> Result<T, TetraError> {
        let m = self.monge_point()?;
        let c = self.vertices.map(|a| a - m);
        let splits = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
        Ok(splits.iter().fold(T::zero(), |acc, &((i, l), (j, k))| {
            acc.max((c[i].dot(c[l]) - c[j].dot(c[k])).abs())
        }))
    }

    pub fn centroid(&self) -> Vec3<T> {
        let sum = self.vertices.iter().fold(Vec3::zero(), |acc, &v| acc + v);
        sum * T::lit(0.25)
    }

    pub fn circumcenter(&self) -> Result<Vec3<T>, TetraError> {
        Ok(geom::solve3(
            &self.perp_bisector(0, 1)?,
            &self.perp_bisector(0, 2)?,
            &self.perp_bisector(0, 3)?,
            &self.tol,
        )?)
    }

    pub fn lambdas(&self) -> Result<LambdaTriple<T>, TetraError> {
        let m = self.monge_point()?;
        let c = self.vertices.map(|a| a - m);
        Ok(LambdaTriple {
            l01: c[0].dot(c[1]),
            l02: c[0].dot(c[2]),
            l03: c[0].dot(c[3]),
        })
    }

    /// Largest `|lambda_il - lambda_jk|` over the three splits; zero in exact arithmetic.
    pub fn lambda_symmetry_residual(&self) -> Result<T, TetraError> {
        self.monge_identity_residual()
    }

    /// Whether altitudes `h_i` and `h_j` meet, i.e. `b_kl . b_ij = 0`.
    pub fn altitudes_meet(
        &self,
        i: usize,
        j: usize,
        tol: &Tolerance<T>,
    ) -> Result<bool, TetraError> {
        check_pair(i, j)?;
        let (k, l) = complement(i, j);
        let ij = self.b(i, j);
        let kl = self.b(k, l);
        Ok(tol.is_zero(ij.dot(kl), ij.norm() * kl.norm()))
    }

    pub fn classify(&self, tol: &Tolerance<T>) -> TetraClass {
        self.classification(tol).class
    }

    pub fn classification(&self, tol: &Tolerance<T>) -> Classification {
        let with_tol = Self {
            vertices: self.vertices,
            tol: *tol,
        };
        resolve_class(
            with_tol.opposite_dots(),
            OppositeEdges::ALL.map(|p| with_tol.opposite_gate(p)),
        )
    }

    pub fn noteworthy(&self, tol: &Tolerance<T>) -> Result<NoteworthyPoints<T>, TetraError> {
        let monge = self.monge_point()?;
        let centroid = self.centroid();
        let circumcenter = self.circumcenter()?;
        let orthocenter = match self.classify(tol) {
            TetraClass::Orthocentric => Some(monge),
            _ => None,
        };
        let offset = circumcenter - monge;
        let euler = if tol.is_zero(offset.norm(), self.scale()) {
            None
        } else {
            Some(Line3::new(centroid, offset)?)
        };
        Ok(NoteworthyPoints {
            monge,
            centroid,
            circumcenter,
            orthocenter,
            euler,
        })
    }
}
