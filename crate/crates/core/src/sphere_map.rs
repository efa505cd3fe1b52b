//! The area-preserving bijection between `S²(r)` and the surface of `K_n(r, ε)`.
//!
//! On the caps every parallel `z = const` goes to a horizontal section of the
//! pyramid and every meridian goes to a straight segment through the apex;
//! the position along the section is linear in the zone-local longitude. On
//! the belt the map is a Lambert cylindrical projection onto each prism face.
//! The south cap is the mirror image of the north cap in the plane `z = 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedron::{azimuth, Hemisphere, PolySurfacePoint, PolyhedronSpec, Region, SpherePoint, Vec3, ZoneTag, ON_SURFACE_TOL};

/// Slack (times `r`) on the `|z| = εr` domain boundaries.
pub const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapDirection {
    SphereToPoly,
    PolyToSphere,
}

/// Zone index and zone-local longitude in `[0, 2π/n]`.
fn local_longitude(spec: &PolyhedronSpec, x: f64, y: f64) -> (usize, f64) {
    let zone = spec.classify_zone(x, y, 0.0);
    let width = 2.0 * PI / spec.n() as f64;
    let t = if x == 0.0 && y == 0.0 {
        0.0
    } else {
        (azimuth(x, y) - spec.alpha(zone.i)).clamp(0.0, width)
    };
    (zone.i, t)
}

/// North-cap map applied to `(x, y, |z|)`; returns `(X, Y, |Z|)` and the zone.
fn cap_image(spec: &PolyhedronSpec, x: f64, y: f64, z: f64) -> (Vec3, usize) {
    let r = spec.r();
    let eps = spec.epsilon();
    let (i, t) = local_longitude(spec, x, y);
    // r - z without cancellation near the pole
    let depth = if z > 0.0 { (x * x + y * y) / (r + z) } else { r - z };
    let w = (depth / (r * (1.0 - eps))).max(0.0).sqrt();
    let s = r * w;
    let alpha = spec.alpha(i);
    let lead = spec.big_r() / r;
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = (alpha + PI / spec.n() as f64).sin_cos();
    let big_z = eps * r + spec.b() * (1.0 - w);
    (Vec3::new(s * (lead * ca - sb * t), s * (lead * sa + cb * t), big_z), i)
}

fn tagged(v: Vec3, region: Region, i: usize) -> PolySurfacePoint {
    let hemisphere = if v.z >= 0.0 { Hemisphere::North } else { Hemisphere::South };
    PolySurfacePoint {
        x: v.x,
        y: v.y,
        z: v.z,
        region,
        zone: ZoneTag { i, hemisphere },
    }
}

/// North cap `z ≥ εr` onto the upper pyramid.
pub fn forward_cap(p: &SpherePoint, spec: &PolyhedronSpec) -> Result<PolySurfacePoint> {
    if p.z < spec.belt_top() - DOMAIN_SLACK * spec.r() {
        return Err(Error::Domain("the north cap"));
    }
    let (v, i) = cap_image(spec, p.x, p.y, p.z);
    Ok(tagged(v, Region::PyramidPlus, i))
}

/// South cap `z ≤ −εr` onto the lower pyramid, by reflection in `z = 0`.
pub fn forward_cap_south(p: &SpherePoint, spec: &PolyhedronSpec) -> Result<PolySurfacePoint> {
    if p.z > -spec.belt_top() + DOMAIN_SLACK * spec.r() {
        return Err(Error::Domain("the south cap"));
    }
    let (v, i) = cap_image(spec, p.x, p.y, -p.z);
    let mut q = tagged(Vec3::new(v.x, v.y, -v.z), Region::PyramidMinus, i);
    q.zone.hemisphere = Hemisphere::South;
    Ok(q)
}

/// Belt `|z| ≤ εr` onto the prism faces.
pub fn forward_belt(p: &SpherePoint, spec: &PolyhedronSpec) -> Result<PolySurfacePoint> {
    let r = spec.r();
    if p.z.abs() > spec.belt_top() + DOMAIN_SLACK * r {
        return Err(Error::Domain("the equatorial belt"));
    }
    let (i, t) = local_longitude(spec, p.x, p.y);
    let alpha = spec.alpha(i);
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = (alpha + PI / spec.n() as f64).sin_cos();
    let big_r = spec.big_r();
    let v = Vec3::new(big_r * ca - r * sb * t, big_r * sa + r * cb * t, p.z);
    Ok(tagged(v, Region::Prism, i))
}

/// The full map `S²(r) → K_n(r, ε)`. Points within `1e-9·r` of the sphere
/// are projected onto it first.
pub fn forward(p: &SpherePoint, spec: &PolyhedronSpec) -> Result<PolySurfacePoint> {
    let r = spec.r();
    let norm = p.norm();
    if norm.is_nan() || (norm - r).abs() > ON_SURFACE_TOL * r {
        return Err(Error::NotOnSphere { r, norm });
    }
    let v = p.vec() * (r / norm);
    let p = SpherePoint::from(v);
    let top = spec.belt_top();
    if p.z > top {
        forward_cap(&p, spec)
    } else if p.z < -top {
        forward_cap_south(&p, spec)
    } else {
        forward_belt(&p, spec)
    }
}

/// Inverse of the north-cap map on the face of `q.zone`. `w` is the fraction
/// of the way from the apex down to the base polygon.
fn cap_preimage(spec: &PolyhedronSpec, x: f64, y: f64, w: f64, i: usize) -> SpherePoint {
    let r = spec.r();
    let w = w.clamp(0.0, 1.0);
    let depth = r * (1.0 - spec.epsilon()) * w * w;
    let z = r - depth;
    let alpha = spec.alpha(i);
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = (alpha + PI / spec.n() as f64).sin_cos();
    let den = x * cb + y * sb;
    if w == 0.0 || den.abs() < f64::MIN_POSITIVE {
        return SpherePoint::new(0.0, 0.0, r);
    }
    let lambda = spec.big_r() / r * (-x * sa + y * ca) / den;
    let rho = (depth * (r + z)).sqrt();
    let (sl, cl) = (lambda + alpha).sin_cos();
    SpherePoint::new(rho * cl, rho * sl, z)
}

pub fn invert_cap(q: &PolySurfacePoint, spec: &PolyhedronSpec) -> Result<SpherePoint> {
    let slack = ON_SURFACE_TOL * spec.r();
    let top = spec.belt_top();
    if q.z < top - slack || q.z > top + spec.b() + slack {
        return Err(Error::Domain("the upper pyramid"));
    }
    let w = 1.0 - (q.z - top) / spec.b();
    Ok(cap_preimage(spec, q.x, q.y, w, q.zone.i))
}

pub fn invert_cap_south(q: &PolySurfacePoint, spec: &PolyhedronSpec) -> Result<SpherePoint> {
    let slack = ON_SURFACE_TOL * spec.r();
    let top = spec.belt_top();
    if -q.z < top - slack || -q.z > top + spec.b() + slack {
        return Err(Error::Domain("the lower pyramid"));
    }
    let w = 1.0 + (q.z + top) / spec.b();
    let p = cap_preimage(spec, q.x, q.y, w, q.zone.i);
    Ok(SpherePoint::new(p.x, p.y, -p.z))
}

/// Inverse Lambert cylindrical projection from the prism face of `q.zone`.
pub fn invert_belt(q: &PolySurfacePoint, spec: &PolyhedronSpec) -> Result<SpherePoint> {
    let r = spec.r();
    let top = spec.belt_top();
    if q.z.abs() > top + ON_SURFACE_TOL * r {
        return Err(Error::Domain("the prism"));
    }
    let z = q.z.clamp(-top, top);
    let alpha = spec.alpha(q.zone.i);
    let (sa, ca) = alpha.sin_cos();
    let theta = (q.y * ca - q.x * sa) / (r * spec.cos_pi_n()) + alpha;
    let rho = ((r - z) * (r + z)).sqrt();
    let (st, ct) = theta.sin_cos();
    Ok(SpherePoint::new(rho * ct, rho * st, z))
}

/// Inverse map dispatched on the face tag of `q`.
pub fn invert(q: &PolySurfacePoint, spec: &PolyhedronSpec) -> Result<SpherePoint> {
    match q.region {
        Region::PyramidPlus => invert_cap(q, spec),
        Region::Prism => invert_belt(q, spec),
        Region::PyramidMinus => invert_cap_south(q, spec),
    }
}

/// Classifies an untagged surface point, then inverts it.
pub fn invert_point(p: &Vec3, spec: &PolyhedronSpec) -> Result<SpherePoint> {
    invert(&spec.classify_region(p)?, spec)
}

/// Closed-form first fundamental form `(E′, F′, G′)` of the north-cap image
/// parametrized by colatitude and longitude, on the face of zone `i`.
pub fn fundamental_form(phi: f64, theta: f64, spec: &PolyhedronSpec, i: usize) -> (f64, f64, f64) {
    let r2 = spec.r() * spec.r();
    let one_m = 1.0 - spec.epsilon();
    let d = theta - (2 * i + 1) as f64 * PI / spec.n() as f64;
    let half = phi / 2.0;
    let e = r2 / (2.0 * one_m) * (4.0 * one_m * one_m + d * d) * half.cos().powi(2);
    let f = r2 / (2.0 * one_m) * d * phi.sin();
    let g = 2.0 * r2 / one_m * half.sin().powi(2);
    (e, f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::rotate_z;
    use proptest::prelude::*;

    fn dist(a: &SpherePoint, b: &SpherePoint) -> f64 {
        (a.vec() - b.vec()).norm()
    }

    /// Independent evaluation of the cap map in spherical coordinates.
    fn cap_spherical_form(spec: &PolyhedronSpec, phi: f64, theta: f64, i: usize) -> Vec3 {
        let r = spec.r();
        let eps = spec.epsilon();
        let n = spec.n() as f64;
        let k = r * (2.0 / (1.0 - eps)).sqrt() * (phi / 2.0).sin();
        let ai = 2.0 * PI * i as f64 / n;
        let c = PI * (2 * i + 1) as f64 / n;
        let lead = PI / (n * (PI / n).sin());
        Vec3::new(
            k * (lead * ai.cos() - c.sin() * (theta - ai)),
            k * (lead * ai.sin() + c.cos() * (theta - ai)),
            eps * r + spec.b() * (1.0 - (2.0 / (1.0 - eps)).sqrt() * (phi / 2.0).sin()),
        )
    }

    #[test]
    fn pole_goes_to_apex() {
        let spec = PolyhedronSpec::new(5, 1.3, 0.2).unwrap();
        let q = forward(&SpherePoint::new(0.0, 0.0, 1.3), &spec).unwrap();
        assert!((q.vec() - spec.north_apex()).norm() < 1e-15);
        let q = forward(&SpherePoint::new(0.0, 0.0, -1.3), &spec).unwrap();
        assert!((q.vec() - spec.south_apex()).norm() < 1e-15);
        assert_eq!(q.region, Region::PyramidMinus);
        let p = invert(&spec.classify_region(&spec.north_apex()).unwrap(), &spec).unwrap();
        assert_eq!(p, SpherePoint::new(0.0, 0.0, 1.3));
    }

    #[test]
    fn cap_base_vertex() {
        for n in [3, 4, 7] {
            let spec = PolyhedronSpec::new(n, 1.0, 0.25).unwrap();
            let e = spec.epsilon();
            let p = SpherePoint::new((1.0 - e * e).sqrt(), 0.0, e);
            let q = forward_cap(&p, &spec).unwrap();
            assert!((q.vec() - Vec3::new(spec.big_r(), 0.0, e)).norm() < 1e-14);
            let back = invert_cap(&q, &spec).unwrap();
            assert!(dist(&back, &p) < 1e-14);
            let s = SpherePoint::new((1.0 - e * e).sqrt(), 0.0, -e);
            let q = forward_cap_south(&s, &spec).unwrap();
            assert!((q.vec() - Vec3::new(spec.big_r(), 0.0, -e)).norm() < 1e-14);
        }
    }

    #[test]
    fn cartesian_and_spherical_forms_agree() {
        let spec = PolyhedronSpec::new(4, 1.0, 0.0).unwrap();
        let (phi, theta) = (PI / 3.0, PI / 8.0);
        let q = forward_cap(&SpherePoint::from_spherical(1.0, phi, theta), &spec).unwrap();
        let s = cap_spherical_form(&spec, phi, theta, 0);
        assert!((q.vec() - s).norm() < 1e-12);
        // same check on every zone of another member
        let spec = PolyhedronSpec::new(6, 2.0, 0.3).unwrap();
        for i in 0..6 {
            let theta = spec.alpha(i) + 0.37;
            let q = forward_cap(&SpherePoint::from_spherical(2.0, 0.5, theta), &spec).unwrap();
            assert_eq!(q.zone.i, i);
            assert!((q.vec() - cap_spherical_form(&spec, 0.5, theta, i)).norm() < 1e-12);
        }
    }

    #[test]
    fn belt_examples() {
        let spec = PolyhedronSpec::new(4, 1.0, 0.3).unwrap();
        let q = forward_belt(&SpherePoint::new(1.0, 0.0, 0.0), &spec).unwrap();
        assert!((q.vec() - Vec3::new(spec.big_r(), 0.0, 0.0)).norm() < 1e-15);
        let t = PI / 4.0;
        let q = forward_belt(&SpherePoint::new(t.cos(), t.sin(), 0.0), &spec).unwrap();
        let residual = q.y * t.sin() + q.x * t.cos() - spec.big_r() * t.cos();
        assert!(residual.abs() < 1e-14);
        assert!(q.z.abs() < 1e-15);
        let back = invert_belt(&q, &spec).unwrap();
        assert!(dist(&back, &SpherePoint::new(t.cos(), t.sin(), 0.0)) < 1e-14);
        let p = invert_belt(&spec.classify_region(&Vec3::new(spec.big_r(), 0.0, 0.0)).unwrap(), &spec).unwrap();
        assert!(dist(&p, &SpherePoint::new(1.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn cap_and_belt_agree_on_boundary_circle() {
        let spec = PolyhedronSpec::new(5, 1.0, 0.35).unwrap();
        let e = spec.epsilon();
        for k in 0..50 {
            let theta = k as f64 * 0.1257;
            let rho = (1.0 - e * e).sqrt();
            let p = SpherePoint::new(rho * theta.cos(), rho * theta.sin(), e);
            let a = forward_cap(&p, &spec).unwrap();
            let b = forward_belt(&p, &spec).unwrap();
            assert!((a.vec() - b.vec()).norm() < 1e-9);
            let back_cap = invert_cap(&a, &spec).unwrap();
            let back_belt = invert_belt(&a, &spec).unwrap();
            assert!(dist(&back_cap, &back_belt) < 1e-9);
        }
    }

    #[test]
    fn domain_errors() {
        let spec = PolyhedronSpec::new(4, 1.0, 0.3).unwrap();
        let eq = SpherePoint::new(1.0, 0.0, 0.0);
        assert!(matches!(forward_cap(&eq, &spec), Err(Error::Domain(_))));
        assert!(matches!(forward_cap_south(&eq, &spec), Err(Error::Domain(_))));
        assert!(matches!(
            forward_belt(&SpherePoint::new(0.0, 0.0, 1.0), &spec),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            forward(&SpherePoint::new(2.0, 0.0, 0.0), &spec),
            Err(Error::NotOnSphere { .. })
        ));
        assert!(matches!(
            invert_point(&Vec3::new(0.0, 0.0, 0.0), &spec),
            Err(Error::NotOnSurface(..))
        ));
    }

    #[test]
    fn fundamental_form_examples() {
        let spec = PolyhedronSpec::new(4, 1.0, 0.0).unwrap();
        let (_, _, g) = fundamental_form(PI / 2.0, 0.3, &spec, 0);
        assert!((g - 1.0).abs() < 1e-15);
        let spec = PolyhedronSpec::new(6, 1.0, 0.2).unwrap();
        for i in 0..6 {
            let (_, f, _) = fundamental_form(0.4, (2 * i + 1) as f64 * PI / 6.0, &spec, i);
            assert!(f.abs() < 1e-15);
        }
    }

    #[test]
    fn fundamental_form_matches_finite_differences() {
        let spec = PolyhedronSpec::new(5, 1.4, 0.15).unwrap();
        let image = |phi: f64, theta: f64| forward_cap(&SpherePoint::from_spherical(1.4, phi, theta), &spec).unwrap().vec();
        let h = 1e-5;
        for (phi, theta) in [(0.3, 0.2), (0.8, 1.0), (1.2, 3.1), (0.5, 5.9)] {
            let d_phi = (image(phi + h, theta) - image(phi - h, theta)) / (2.0 * h);
            let d_theta = (image(phi, theta + h) - image(phi, theta - h)) / (2.0 * h);
            let i = spec.classify_zone(theta.cos(), theta.sin(), 1.0).i;
            let (e, f, g) = fundamental_form(phi, theta, &spec, i);
            assert!((d_phi.dot(&d_phi) - e).abs() < 1e-6);
            assert!((d_phi.dot(&d_theta) - f).abs() < 1e-6);
            assert!((d_theta.dot(&d_theta) - g).abs() < 1e-6);
            let det = e * g - f * f;
            assert!((det - 1.4f64.powi(4) * phi.sin().powi(2)).abs() < 1e-12 * det);
        }
    }

    proptest! {
        #[test]
        fn rotation_equivariance(n in 3usize..9, eps in 0.0f64..0.45, phi in 0.01f64..3.13, theta in 0.0f64..2.0 * PI) {
            let spec = PolyhedronSpec::new(n, 1.0, eps).unwrap();
            let p = SpherePoint::from_spherical(1.0, phi, theta);
            let step = 2.0 * PI / n as f64;
            let rotated = SpherePoint::from(rotate_z(&p.vec(), step));
            let a = rotate_z(&forward(&p, &spec).unwrap().vec(), step);
            let b = forward(&rotated, &spec).unwrap().vec();
            prop_assert!((a - b).norm() < 1e-9);
        }

        #[test]
        fn roundtrip(n in 3usize..9, eps in 0.0f64..0.5, phi in 0.0f64..=PI, theta in 0.0f64..2.0 * PI) {
            let spec = PolyhedronSpec::new(n, 2.0, eps.min(PolyhedronSpec::epsilon_max(n) - 1e-3)).unwrap();
            let p = SpherePoint::from_spherical(2.0, phi, theta);
            let q = forward(&p, &spec).unwrap();
            prop_assert!(spec.face_residual(&q.vec(), q.region, q.zone.i).abs() < 1e-9);
            let back = invert(&q, &spec).unwrap();
            prop_assert!(dist(&back, &p) < 1e-10 * 2.0);
            let reclassified = spec.classify_region(&q.vec()).unwrap();
            prop_assert!(dist(&invert(&reclassified, &spec).unwrap(), &p) < 1e-10 * 2.0);
        }
    }
}
