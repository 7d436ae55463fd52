//! Seeded random tetrahedra of a requested class.

use altitude_core::{ClassKind, OppositeEdges, Tetrahedron, Tolerance, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOX: f64 = 5.0;
/// Minimum `|6 V| / L^3`; keeps slivers out so relative tolerances stay meaningful.
const MIN_SHAPE: f64 = 0.02;
/// Nonzero opposite-edge products must clear the zero gate by this factor.
const CLEARANCE: f64 = 10.0;

/// A tetrahedron with `classify(result) == class` under the default tolerance,
/// deterministic in `seed`.
pub fn random_tetra(class: ClassKind, seed: u64) -> Tetrahedron {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = Tolerance::default();
    loop {
        let candidate = match class {
            ClassKind::Generic => Some(box_points(&mut rng)),
            ClassKind::SemiOrthocentric => semi(&mut rng),
            ClassKind::Orthocentric => Some(ortho(&mut rng)),
        };
        let Some(vertices) = candidate else { continue };
        let vertices = if class == ClassKind::Generic {
            vertices
        } else {
            rigid_motion(&mut rng, vertices)
        };
        let Ok(t) = Tetrahedron::new(vertices) else {
            continue;
        };
        if accept(&t, class, &tol) {
            return t;
        }
    }
}

fn accept(t: &Tetrahedron, class: ClassKind, tol: &Tolerance) -> bool {
    let s = t.scale();
    if t.signed_volume6().abs() <= MIN_SHAPE * s * s * s {
        return false;
    }
    let classification = t.classification(tol);
    if classification.inconsistent || classification.class.kind() != class {
        return false;
    }
    // products that should be nonzero must be clearly nonzero
    let dots = t.opposite_dots();
    let nonzero_clear = OppositeEdges::ALL.iter().filter(|p| {
        let ((i, j), (k, l)) = p.edges();
        let gate =
            tol.gate(t.edge_vector(i, j).unwrap().norm() * t.edge_vector(k, l).unwrap().norm());
        dots[p.index()].abs() > CLEARANCE * gate
    });
    let expected = match class {
        ClassKind::Generic => 3,
        ClassKind::SemiOrthocentric => 2,
        ClassKind::Orthocentric => 0,
    };
    nonzero_clear.count() == expected
}

fn point<R: Rng>(rng: &mut R) -> Vec3 {
    Vec3::new(
        rng.gen_range(-BOX..BOX),
        rng.gen_range(-BOX..BOX),
        rng.gen_range(-BOX..BOX),
    )
}

fn box_points<R: Rng>(rng: &mut R) -> [Vec3; 4] {
    [point(rng), point(rng), point(rng), point(rng)]
}

/// Base triangle in `z = 0` with its orthocenter, rejecting near-degenerate ones.
fn base<R: Rng>(rng: &mut R) -> ([Vec3; 3], Vec3) {
    loop {
        let tri: [Vec3; 3] = std::array::from_fn(|_| {
            Vec3::new(rng.gen_range(-BOX..BOX), rng.gen_range(-BOX..BOX), 0.0)
        });
        let [a, b, c] = tri;
        let longest = (b - a).norm().max((c - b).norm()).max((a - c).norm());
        if (b - a).cross(c - a).norm() < 0.2 * longest * longest {
            continue;
        }
        // (H - a).(b - c) = 0, (H - b).(c - a) = 0 in the xy-plane
        let (u, v) = (b - c, c - a);
        let (r1, r2) = (a.dot(u), b.dot(v));
        let det = u.x * v.y - u.y * v.x;
        let h = Vec3::new(
            (r1 * v.y - r2 * u.y) / det,
            (u.x * r2 - v.x * r1) / det,
            0.0,
        );
        return (tri, h);
    }
}

fn height<R: Rng>(rng: &mut R) -> f64 {
    let h = rng.gen_range(1.0..BOX);
    if rng.gen_bool(0.5) {
        h
    } else {
        -h
    }
}

fn ortho<R: Rng>(rng: &mut R) -> [Vec3; 4] {
    let ([a, b, c], h) = base(rng);
    [a, b, c, h + Vec3::new(0.0, 0.0, height(rng))]
}

/// Apex above a point of exactly one base altitude, away from the orthocenter.
fn semi<R: Rng>(rng: &mut R) -> Option<[Vec3; 4]> {
    let (tri, h) = base(rng);
    let which = rng.gen_range(0..3);
    let towards = tri[which] - h;
    if towards.norm() < 0.5 {
        return None;
    }
    let s = rng.gen_range(0.3..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let foot = h + towards * s;
    let [a, b, c] = tri;
    Some([a, b, c, foot + Vec3::new(0.0, 0.0, height(rng))])
}

/// Random rotation (uniform unit quaternion by rejection) plus a shift.
fn rigid_motion<R: Rng>(rng: &mut R, v: [Vec3; 4]) -> [Vec3; 4] {
    let q = loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = q.iter().map(|c| c * c).sum();
        if n2 > 1e-2 && n2 <= 1.0 {
            let n = n2.sqrt();
            break q.map(|c| c / n);
        }
    };
    let [w, x, y, z] = q;
    let cols = [
        Vec3::new(
            1. - 2. * (y * y + z * z),
            2. * (x * y + w * z),
            2. * (x * z - w * y),
        ),
        Vec3::new(
            2. * (x * y - w * z),
            1. - 2. * (x * x + z * z),
            2. * (y * z + w * x),
        ),
        Vec3::new(
            2. * (x * z + w * y),
            2. * (y * z - w * x),
            1. - 2. * (x * x + y * y),
        ),
    ];
    let shift = point(rng) * 0.4;
    v.map(|p| cols[0] * p.x + cols[1] * p.y + cols[2] * p.z + shift)
}
