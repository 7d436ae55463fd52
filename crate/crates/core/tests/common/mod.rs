//! Generators shared by the property tests.
#![allow(dead_code)]

use altitude_core::{QuadForm3, Tetrahedron, Vec3};
use proptest::prelude::*;

pub fn coord() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

pub fn vec3() -> impl Strategy<Value = Vec3> {
    (coord(), coord(), coord()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

pub fn unit_vec3() -> impl Strategy<Value = Vec3> {
    vec3().prop_filter_map("nonzero", |v| {
        if v.norm() > 1e-3 {
            v.normalize()
        } else {
            None
        }
    })
}

/// Rotation matrix (as three column vectors) from a unit quaternion.
pub fn rotation_from_quaternion(q: [f64; 4]) -> [Vec3; 3] {
    let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|c| c / n);
    [
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
    ]
}

pub fn rotation() -> impl Strategy<Value = [Vec3; 3]> {
    prop::array::uniform4(-1.0..1.0f64)
        .prop_filter("nonzero quaternion", |q| {
            q.iter().map(|c| c * c).sum::<f64>() > 1e-2
        })
        .prop_map(rotation_from_quaternion)
}

pub fn rotate(frame: &[Vec3; 3], v: Vec3) -> Vec3 {
    frame[0] * v.x + frame[1] * v.y + frame[2] * v.z
}

/// Rejects slivers so that relative tolerances stay meaningful.
pub fn well_shaped(v: &[Vec3; 4]) -> bool {
    let Ok(t) = Tetrahedron::new(*v) else {
        return false;
    };
    let s = t.scale();
    t.signed_volume6().abs() > 0.02 * s * s * s
}

pub fn any_tetra() -> impl Strategy<Value = Tetrahedron> {
    prop::array::uniform4(vec3())
        .prop_filter("well shaped", well_shaped)
        .prop_map(|v| Tetrahedron::new(v).unwrap())
}

/// Orthocenter of a planar triangle given by 2D points.
pub fn orthocenter_xy(p: [(f64, f64); 3]) -> (f64, f64) {
    // (H - A).(B - C) = 0, (H - B).(C - A) = 0
    let [(ax, ay), (bx, by), (cx, cy)] = p;
    let (a1, b1, c1) = (bx - cx, by - cy, ax * (bx - cx) + ay * (by - cy));
    let (a2, b2, c2) = (cx - ax, cy - ay, bx * (cx - ax) + by * (cy - ay));
    let det = a1 * b2 - a2 * b1;
    ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)
}

fn base_triangle() -> impl Strategy<Value = [(f64, f64); 3]> {
    prop::array::uniform3((coord(), coord())).prop_filter("acute-ish, non-degenerate", |p| {
        let [(ax, ay), (bx, by), (cx, cy)] = *p;
        let area2 = ((bx - ax) * (cy - ay) - (cx - ax) * (by - ay)).abs();
        let e = |x: f64, y: f64| x.hypot(y);
        let longest = e(bx - ax, by - ay)
            .max(e(cx - bx, cy - by))
            .max(e(ax - cx, ay - cy));
        area2 > 0.2 * longest * longest
    })
}

fn placed(frame: [Vec3; 3], shift: Vec3, pts: [Vec3; 4]) -> Option<Tetrahedron> {
    let v = pts.map(|p| rotate(&frame, p) + shift);
    well_shaped(&v).then(|| Tetrahedron::new(v).unwrap())
}

/// Apex above the base orthocenter.
pub fn orthocentric_tetra() -> impl Strategy<Value = Tetrahedron> {
    (
        base_triangle(),
        1.0..5.0f64,
        prop::bool::ANY,
        rotation(),
        vec3(),
    )
        .prop_filter_map("well shaped", |(tri, h, up, frame, shift)| {
            let (hx, hy) = orthocenter_xy(tri);
            let h = if up { h } else { -h };
            let base = tri.map(|(x, y)| Vec3::new(x, y, 0.));
            placed(
                frame,
                shift * 0.4,
                [base[0], base[1], base[2], Vec3::new(hx, hy, h)],
            )
        })
}

/// Apex above a point of the altitude from base vertex `which`, away from the orthocenter.
pub fn semi_tetra() -> impl Strategy<Value = Tetrahedron> {
    (
        base_triangle(),
        0..3usize,
        0.3..1.5f64,
        prop::bool::ANY,
        1.0..5.0f64,
        rotation(),
        vec3(),
    )
        .prop_filter_map("well shaped", |(tri, which, s, flip, h, frame, shift)| {
            let (hx, hy) = orthocenter_xy(tri);
            let (vx, vy) = tri[which];
            let s = if flip { -s } else { s };
            let foot = (hx + s * (vx - hx), hy + s * (vy - hy));
            if (vx - hx).hypot(vy - hy) < 0.5 {
                return None;
            }
            let base = tri.map(|(x, y)| Vec3::new(x, y, 0.));
            placed(
                frame,
                shift * 0.4,
                [base[0], base[1], base[2], Vec3::new(foot.0, foot.1, h)],
            )
        })
}

/// Symmetric form with entries in [-5, 5].
pub fn quad_form() -> impl Strategy<Value = QuadForm3> {
    prop::array::uniform6(coord()).prop_map(QuadForm3::from_coefficients)
}

/// Traceless form whose eigenvalues are well separated from zero.
pub fn traceless_rank3() -> impl Strategy<Value = QuadForm3> {
    (0.2..3.0f64, 0.2..3.0f64, rotation(), prop::bool::ANY).prop_map(|(a, b, frame, flip)| {
        let sign = if flip { -1.0 } else { 1.0 };
        let values = [a * sign, b * sign, -(a + b) * sign];
        let mut q = QuadForm3::zero();
        for r in 0..3 {
            q = q + QuadForm3::outer_sym(frame[r], frame[r]) * values[r];
        }
        q
    })
}

/// A generator of the cone `q(x) = 0`, found by bisection between a direction
/// where `q > 0` and one where `q < 0`.
pub fn cone_generator(q: &QuadForm3, seed: Vec3) -> Option<Vec3> {
    let f = q.eigendecompose().ok()?;
    let pos = f.axes[0];
    let neg = f.axes[2];
    let mix = (seed - neg * seed.dot(neg)).normalize()?;
    let p = if q.evaluate(mix) > 0.0 { mix } else { pos };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let g = |t: f64| (p * (1.0 - t) + neg * t).normalize().unwrap();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if q.evaluate(g(mid)) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(g(0.5 * (lo + hi)))
}
