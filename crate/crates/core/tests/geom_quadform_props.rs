mod common;

use altitude_core::geom::{line_from_two_planes, line_line_meet, solve3, triple};
use altitude_core::{Line3, Plane3, QuadForm3, Tolerance};
use approx::assert_relative_eq;
use common::*;
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

proptest! {
    #[test]
    fn solve3_lands_on_all_planes(n in prop::array::uniform3(unit_vec3()), c in prop::array::uniform3(coord())) {
        prop_assume!(triple(n[0], n[1], n[2]).abs() > 1e-2);
        let planes = [0, 1, 2].map(|i| Plane3::from_equation(n[i], c[i]).unwrap());
        let x = solve3(&planes[0], &planes[1], &planes[2], &tol()).unwrap();
        let scale = x.norm().max(1.0);
        for p in &planes {
            prop_assert!(p.residual(x).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn two_plane_line_lies_in_both(n1 in unit_vec3(), n2 in unit_vec3(), c1 in coord(), c2 in coord()) {
        prop_assume!(n1.cross(n2).norm() > 1e-2);
        let p1 = Plane3::from_equation(n1, c1).unwrap();
        let p2 = Plane3::from_equation(n2, c2).unwrap();
        let l = line_from_two_planes(&p1, &p2, &tol()).unwrap();
        for t in [0.0, 1.0, -3.5] {
            let x = l.point_at(t);
            prop_assert!(p1.residual(x).abs() <= 1e-9 * x.norm().max(1.0));
            prop_assert!(p2.residual(x).abs() <= 1e-9 * x.norm().max(1.0));
        }
    }

    #[test]
    fn meet_is_symmetric(b1 in vec3(), d1 in unit_vec3(), b2 in vec3(), d2 in unit_vec3(), coplanar in prop::bool::ANY) {
        let l1 = Line3::new(b1, d1).unwrap();
        // optionally force a common point
        let b2 = if coplanar { b1 + d1 * 0.7 - d2 * 1.3 } else { b2 };
        let l2 = Line3::new(b2, d2).unwrap();
        let m12 = line_line_meet(&l1, &l2, &tol());
        let m21 = line_line_meet(&l2, &l1, &tol());
        prop_assert_eq!(m12.relation, m21.relation);
        prop_assert_eq!(m12.gap, m21.gap);
        match (m12.point, m21.point) {
            (Some(p), Some(q)) => prop_assert!((p - q).max_abs() <= 1e-12 * p.norm().max(1.0)),
            (None, None) => {}
            _ => prop_assert!(false, "asymmetric point"),
        }
    }

    #[test]
    fn triple_is_alternating(u in vec3(), v in vec3(), w in vec3()) {
        let t = triple(u, v, w);
        let scale = u.norm() * v.norm() * w.norm();
        for other in [triple(v, u, w), triple(u, w, v), triple(w, v, u)] {
            prop_assert!((t + other).abs() <= 1e-12 * scale.max(1e-300));
        }
    }

    #[test]
    fn polarization(q in quad_form(), v in vec3(), w in vec3()) {
        let direct = 0.5 * (q.evaluate(v + w) - q.evaluate(v) - q.evaluate(w));
        prop_assert_eq!(q.polar(v, w), direct);
        let scale = q.max_abs() * v.norm_squared();
        prop_assert!((q.polar(v, v) - q.evaluate(v)).abs() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn trace_is_frame_invariant(q in quad_form(), frame in rotation()) {
        let moved = q.in_frame(&frame);
        prop_assert!((moved.trace() - q.trace()).abs() <= 1e-10 * q.max_abs().max(1e-12) * 3.0);
    }

    #[test]
    fn outer_sym_trace_is_dot(c in vec3(), d in vec3()) {
        let t = QuadForm3::outer_sym(c, d).trace();
        prop_assert!((t - c.dot(d)).abs() <= 1e-12 * (c.norm() * d.norm()).max(1e-300));
    }

    #[test]
    fn eigen_reconstruction(q in quad_form()) {
        let f = q.eigendecompose().unwrap();
        let largest = f.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!((f.reconstruct() - q).max_abs() <= 1e-9 * largest);
        prop_assert!(f.values[0] >= f.values[1] && f.values[1] >= f.values[2]);
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            prop_assert!(f.axes[a].dot(f.axes[b]).abs() <= 1e-12);
        }
        for a in f.axes {
            assert_relative_eq!(a.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn tripods_on_equilateral_cones(q in traceless_rank3(), seed in unit_vec3()) {
        let g = cone_generator(&q, seed).unwrap();
        let t = q.tripod_through_generator(g, &tol()).unwrap();
        let norm = q.norm();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            prop_assert!(t.legs[a].dot(t.legs[b]).abs() <= 1e-9);
        }
        for l in t.legs {
            prop_assert!(q.evaluate(l).abs() <= 1e-9 * norm);
        }
    }

    #[test]
    fn restriction_trace(q in quad_form(), n in unit_vec3(), c in coord()) {
        let plane = Plane3::from_equation(n, c).unwrap();
        let r = q.restrict_to_plane(&plane);
        let lhs = r.form.trace() + q.evaluate(plane.normal);
        prop_assert!((lhs - q.trace()).abs() <= 1e-10 * q.max_abs().max(1e-12) * 3.0);
        let [u, v] = r.basis;
        prop_assert!(u.dot(v).abs() < 1e-12 && u.dot(n).abs() < 1e-12 && v.dot(n).abs() < 1e-12);
    }
}

#[test]
fn generic_q_star_eigen_signs() {
    let q = QuadForm3::from_matrix([[6., 3., 0.], [3., -6., -6.], [0., -6., 0.]]);
    let f = q.eigendecompose().unwrap();
    // characteristic polynomial -l^3 + 117 l - 216 has roots 3 and (-3 +- sqrt(297))/2
    let r = 297f64.sqrt();
    let expected = [(-3. + r) / 2., 3., (-3. - r) / 2.];
    for (got, want) in f.values.iter().zip(expected) {
        assert_relative_eq!(*got, want, epsilon = 1e-12);
    }
}
