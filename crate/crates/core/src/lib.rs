//! Altitudes of a tetrahedron and the quadric they span.
//!
//! Given four points in space this crate computes the altitudes and the
//! orthocentric perpendiculars, the Monge point, the Euler line, the
//! generic / semi-orthocentric / orthocentric classification, and the
//! traceless form `Q*` whose level set `Q*(x - M) = rho` carries all four
//! altitudes. When the altitudes are mutually skew that level set is an
//! equilateral hyperboloid of one sheet centered at the Monge point.
//!
//! Supporting pieces: principal axes of 3x3 quadratic forms, orthogonal
//! tripods on equilateral cones, and the family of acute triangles inscribed
//! in an ellipse that share the ellipse center as orthocenter.
//!
//! All types are generic over the scalar ([`Real`], implemented for `f32`
//! and `f64`). The aliases at the crate root fix the scalar to `f64`.
//!
//! ```
//! use altitude_core::{AltitudeQuadric, Tetrahedron, Tolerance, Vec3};
//!
//! let t = Tetrahedron::new([
//!     Vec3::new(0.0, 0.0, 0.0),
//!     Vec3::new(4.0, 0.0, 0.0),
//!     Vec3::new(1.0, 3.0, 0.0),
//!     Vec3::new(2.0, 1.0, 2.0),
//! ])
//! .unwrap();
//! let tol = Tolerance::default();
//! let quadric = AltitudeQuadric::build(&t, &tol).unwrap();
//! assert!((quadric.rhs - 1.5).abs() < 1e-12);
//! for l in 0..4 {
//!     assert!(quadric.contains_line(&t.altitude(l).unwrap(), &tol).unwrap());
//! }
//! ```

pub mod altquadric;
pub mod geom;
pub mod porism;
pub mod quadform;
pub mod scalar;
pub mod tetra;

pub use altquadric::{AltQuadricError, ConicKind, QuadricKind, RegulusTag};
pub use geom::{GeomError, LineRelation};
pub use porism::PorismError;
pub use quadform::QuadFormError;
pub use scalar::Real;
pub use tetra::{ClassKind, Classification, OppositeEdges, TetraClass, TetraError};

pub type Vec3 = geom::Vec3<f64>;
pub type Line3 = geom::Line3<f64>;
pub type Plane3 = geom::Plane3<f64>;
pub type Tolerance = geom::Tolerance<f64>;
pub type LineMeet = geom::LineMeet<f64>;
pub type QuadForm3 = quadform::QuadForm3<f64>;
pub type QuadForm2 = quadform::QuadForm2<f64>;
pub type EigenFrame = quadform::EigenFrame<f64>;
pub type TracelessClass = quadform::TracelessClass<f64>;
pub type Tripod = quadform::Tripod<f64>;
pub type Tetrahedron = tetra::Tetrahedron<f64>;
pub type LambdaTriple = tetra::LambdaTriple<f64>;
pub type NoteworthyPoints = tetra::NoteworthyPoints<f64>;
pub type AltitudeQuadric = altquadric::AltitudeQuadric<f64>;
pub type ConicSection = altquadric::ConicSection<f64>;
pub type TrirectangularTetra = porism::TrirectangularTetra<f64>;
pub type Ellipse3 = porism::Ellipse3<f64>;
pub type InscribedTriangle = porism::InscribedTriangle<f64>;

/// Single precision aliases.
pub mod f32 {
    use super::{altquadric, geom, quadform, tetra};

    pub type Vec3 = geom::Vec3<f32>;
    pub type Tolerance = geom::Tolerance<f32>;
    pub type QuadForm3 = quadform::QuadForm3<f32>;
    pub type Tetrahedron = tetra::Tetrahedron<f32>;
    pub type AltitudeQuadric = altquadric::AltitudeQuadric<f32>;
}
