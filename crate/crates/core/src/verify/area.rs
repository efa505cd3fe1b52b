use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::polyhedron::Vec3;

fn wrap_angle(d: f64) -> f64 {
    let d = (d + PI).rem_euclid(TAU) - PI;
    if d <= -PI {
        d + TAU
    } else {
        d
    }
}

/// Area to the left of a closed curve sampled on `S²(r)`, from the boundary
/// integral `r² ∮ (1 − cos φ) dθ` by the composite trapezoid rule.
///
/// The last sample must repeat the first. A sample at a pole contributes the
/// jump in longitude across it weighted by `1 − cos φ` of that pole, and the
/// segments into and out of it are treated as meridional. The result is
/// taken modulo `4πr²`, which resolves curves winding around either pole.
pub fn spherical_polygon_area(boundary: &[Vec3], r: f64) -> Result<f64> {
    let Some((first, last)) = boundary.first().zip(boundary.last()) else {
        return Err(Error::DegenerateCurve(0));
    };
    if (first - last).norm() > 1e-9 * r {
        return Err(Error::OpenCurve);
    }
    let pts = &boundary[..boundary.len() - 1];
    if pts.len() < 3 {
        return Err(Error::DegenerateCurve(pts.len()));
    }
    let pole_tol = 1e-12 * r;
    let at_pole = |p: &Vec3| p.x.hypot(p.y) <= pole_tol;
    let cos_phi = |p: &Vec3| p.z / p.norm();
    let m = pts.len();
    let mut integral = 0.0;
    for j in 0..m {
        let a = &pts[j];
        let b = &pts[(j + 1) % m];
        if at_pole(a) {
            // jump of longitude from the previous to the next non-pole sample
            let prev = (1..m).map(|k| &pts[(j + m - k) % m]).find(|p| !at_pole(p));
            let next = (1..m).map(|k| &pts[(j + k) % m]).find(|p| !at_pole(p));
            if let (Some(p), Some(q)) = (prev, next) {
                let jump = wrap_angle(q.y.atan2(q.x) - p.y.atan2(p.x));
                integral += (1.0 - cos_phi(a)) * jump;
            }
            continue;
        }
        if at_pole(b) {
            continue;
        }
        let d_theta = wrap_angle(b.y.atan2(b.x) - a.y.atan2(a.x));
        integral += (1.0 - 0.5 * (cos_phi(a) + cos_phi(b))) * d_theta;
    }
    let total = 4.0 * PI * r * r;
    let area = (r * r * integral).rem_euclid(total);
    Ok(if area >= total { 0.0 } else { area })
}

/// Area of a planar polygon in 3D by the shoelace formula in an orthonormal
/// frame of its plane.
pub fn planar_polygon_area(vertices: &[Vec3]) -> Result<f64> {
    if vertices.len() < 3 {
        return Ok(0.0);
    }
    let centroid = vertices.iter().sum::<Vec3>() / vertices.len() as f64;
    let mut normal = Vec3::zeros();
    for (j, a) in vertices.iter().enumerate() {
        let b = &vertices[(j + 1) % vertices.len()];
        normal += (a - centroid).cross(&(b - centroid));
    }
    let Some(unit) = normal.try_normalize(0.0) else {
        return Ok(0.0);
    };
    let scale = vertices.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let residual = vertices.iter().map(|v| (v - centroid).dot(&unit).abs()).fold(0.0, f64::max);
    if residual > 1e-9 * scale {
        return Err(Error::NonPlanar(residual));
    }
    let seed = if unit.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    let e1 = (seed - unit * seed.dot(&unit)).normalize();
    let e2 = unit.cross(&e1);
    let flat: Vec<(f64, f64)> = vertices
        .iter()
        .map(|v| {
            let d = v - centroid;
            (d.dot(&e1), d.dot(&e2))
        })
        .collect();
    let twice: f64 = (0..flat.len())
        .map(|j| {
            let (x0, y0) = flat[j];
            let (x1, y1) = flat[(j + 1) % flat.len()];
            x0 * y1 - x1 * y0
        })
        .sum();
    Ok(twice.abs() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::PolyhedronSpec;

    fn parallel(r: f64, z: f64, samples: usize, ccw: bool) -> Vec<Vec3> {
        let rho = (r * r - z * z).sqrt();
        (0..=samples)
            .map(|k| {
                let t = TAU * k as f64 / samples as f64 * if ccw { 1.0 } else { -1.0 };
                Vec3::new(rho * t.cos(), rho * t.sin(), z)
            })
            .collect()
    }

    #[test]
    fn cap_area() {
        for h in [-0.7, 0.0, 0.3, 0.95] {
            let a = spherical_polygon_area(&parallel(2.0, 2.0 * h, 20000, true), 2.0).unwrap();
            assert!((a / (TAU * (1.0 - h) * 4.0) - 1.0).abs() < 1e-11, "{h}");
            // clockwise: the other side
            let b = spherical_polygon_area(&parallel(2.0, 2.0 * h, 20000, false), 2.0).unwrap();
            assert!((b / (TAU * (1.0 + h) * 4.0) - 1.0).abs() < 1e-11, "{h} {b}");
        }
        let eq = spherical_polygon_area(&parallel(1.0, 0.0, 6000, true), 1.0).unwrap();
        assert!((eq - TAU).abs() < 1e-12);
    }

    #[test]
    fn octant_through_pole() {
        // pole -> (1,0,0) -> (0,1,0) -> pole along a meridian, a parallel and a meridian
        let mut pts = vec![Vec3::new(0.0, 0.0, 1.0)];
        let steps = 4000;
        for k in 1..=steps {
            let phi = PI / 2.0 * k as f64 / steps as f64;
            pts.push(Vec3::new(phi.sin(), 0.0, phi.cos()));
        }
        for k in 1..=steps {
            let t = PI / 2.0 * k as f64 / steps as f64;
            pts.push(Vec3::new(t.cos(), t.sin(), 0.0));
        }
        for k in (0..steps).rev() {
            let phi = PI / 2.0 * k as f64 / steps as f64;
            pts.push(Vec3::new(0.0, phi.sin(), phi.cos()));
        }
        let a = spherical_polygon_area(&pts, 1.0).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-12, "{a}");
        // mirrored through the south pole, traversed so the octant stays on the left
        let south: Vec<Vec3> = pts.iter().rev().map(|p| Vec3::new(p.x, p.y, -p.z)).collect();
        let a = spherical_polygon_area(&south, 1.0).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-12, "{a}");
    }

    #[test]
    fn errors() {
        let open = vec![Vec3::x(), Vec3::y(), Vec3::z()];
        assert_eq!(spherical_polygon_area(&open, 1.0), Err(Error::OpenCurve));
        let tiny = vec![Vec3::x(), Vec3::y(), Vec3::x()];
        assert_eq!(spherical_polygon_area(&tiny, 1.0), Err(Error::DegenerateCurve(2)));
        let bent = vec![Vec3::zeros(), Vec3::x(), Vec3::new(1.0, 1.0, 0.5), Vec3::y()];
        assert!(matches!(planar_polygon_area(&bent), Err(Error::NonPlanar(_))));
    }

    #[test]
    fn planar_examples() {
        let sq = [Vec3::zeros(), Vec3::x(), Vec3::new(1.0, 1.0, 0.0), Vec3::y()];
        assert!((planar_polygon_area(&sq).unwrap() - 1.0).abs() < 1e-15);
        let spec = PolyhedronSpec::new(5, 1.3, 0.25).unwrap();
        let top = spec.belt_top();
        let face = [spec.base_vertex(0, top), spec.base_vertex(1, top), spec.north_apex()];
        let a = planar_polygon_area(&face).unwrap();
        assert!((a - spec.derive_params().face_area).abs() < 1e-14);
        // slice A'C'M' of the face: its area is α(1 − ε)r² when tan β relates to α
        let (n, r, eps) = (5.0, 1.3, 0.25);
        for alpha in [0.1, 0.6, 1.2] {
            let tan_beta = alpha * n * (2.0 * PI / n).sin() / (2.0 * (PI - alpha * n * (PI / n).sin().powi(2)));
            let den = 1.0 + tan_beta * (PI / n).tan();
            let m = Vec3::new(spec.big_r() / den, spec.big_r() * tan_beta / den, top);
            let tri = [spec.base_vertex(0, top), m, spec.north_apex()];
            let a = planar_polygon_area(&tri).unwrap();
            assert!((a - alpha * (1.0 - eps) * r * r).abs() < 1e-13, "{alpha}");
        }
    }
}
