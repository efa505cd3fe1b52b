use std::f64::consts::PI;

use polysphere::ball_map::{admissible_epsilons, ball_to_poly, poly_to_ball, BallPoint, VolumeSpec};
use polysphere::polyhedron::{PolyhedronSpec, SpherePoint, Vec3};
use polysphere::sphere_map::{forward, invert, invert_point};
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = PolyhedronSpec> {
    (3usize..=9, 0.0f64..1.0, 0.2f64..5.0)
        .prop_map(|(n, t, r)| PolyhedronSpec::new(n, r, t * 0.999 * PolyhedronSpec::epsilon_max(n)).unwrap())
}

fn admissible_strategy() -> impl Strategy<Value = VolumeSpec> {
    let all: Vec<(usize, f64)> = (3..=5)
        .flat_map(|n| admissible_epsilons(n).into_iter().map(move |e| (n, e)))
        .collect();
    (prop::sample::select(all), 0.5f64..3.0).prop_map(|((n, e), r)| VolumeSpec::new(n, r, e).unwrap())
}

proptest! {
    #[test]
    fn surface_roundtrip(spec in spec_strategy(), u in -1.0f64..1.0, theta in 0.0f64..2.0 * PI) {
        let p = SpherePoint::from_spherical(spec.r(), u.acos(), theta);
        let q = forward(&p, &spec).unwrap();
        let residual = spec.face_residual(&q.vec(), q.region, q.zone.i);
        prop_assert!(residual < 1e-10 * spec.r(), "off face by {residual}");
        let back = invert(&q, &spec).unwrap();
        prop_assert!((back.vec() - p.vec()).norm() < 1e-10 * spec.r());
        // the untagged inverse finds the same face
        let again = invert_point(&q.vec(), &spec).unwrap();
        prop_assert!((again.vec() - p.vec()).norm() < 1e-10 * spec.r());
    }

    #[test]
    fn forward_keeps_the_hemisphere(spec in spec_strategy(), u in -1.0f64..1.0, theta in 0.0f64..2.0 * PI) {
        let p = SpherePoint::from_spherical(spec.r(), u.acos(), theta);
        let q = forward(&p, &spec).unwrap();
        prop_assert!(q.z * p.z >= 0.0);
    }

    #[test]
    fn ball_roundtrip(vspec in admissible_strategy(), dir in prop::array::uniform3(-1.0f64..1.0), t in 0.01f64..1.0) {
        let d = Vec3::from(dir);
        prop_assume!(d.norm() > 1e-3);
        let p = d.normalize() * t * vspec.r;
        let q = ball_to_poly(&BallPoint::from(p), &vspec).unwrap();
        let back = poly_to_ball(&q.vec(), &vspec).unwrap();
        prop_assert!((back.vec() - p).norm() < 1e-9 * vspec.r);
    }
}

#[test]
fn ball_boundary_lands_on_the_outer_surface() {
    let vspec = VolumeSpec::new(4, 1.5, admissible_epsilons(4)[1]).unwrap();
    let outer = vspec.outer();
    for k in 0..200 {
        let phi = PI * (k as f64 + 0.5) / 200.0;
        let theta = 0.7 * k as f64;
        let p = SpherePoint::from_spherical(1.5, phi, theta);
        let q = ball_to_poly(&BallPoint::from(p.vec()), &vspec).unwrap();
        assert!((q.shell_rho - outer.r()).abs() < 1e-9, "{}", q.shell_rho);
        assert!(outer.face_residual(&q.vec(), q.region, q.zone.i) < 1e-9);
    }
}

#[test]
fn origin_is_fixed() {
    let vspec = VolumeSpec::new(3, 1.0, 0.0).unwrap();
    let q = ball_to_poly(&BallPoint::new(0.0, 0.0, 0.0), &vspec).unwrap();
    assert_eq!(q.vec().norm(), 0.0);
}
