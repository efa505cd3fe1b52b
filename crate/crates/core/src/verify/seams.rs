use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ball_map::VolumeSpec;
use crate::error::Result;
use crate::polyhedron::{PolyhedronSpec, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereSeam {
    /// The planes `θ = α_i` between neighbouring zones.
    ZonePlanes,
    /// The circles `z = ±εr` between caps and belt.
    BeltCircles,
}

/// Largest image distance over point pairs straddling a seam.
pub fn seam_probe<F>(map: F, pairs: &[(Vec3, Vec3)]) -> Result<f64>
where
    F: Fn(&Vec3) -> Result<Vec3>,
{
    let mut worst: f64 = 0.0;
    for (a, b) in pairs {
        worst = worst.max((map(a)? - map(b)?).norm());
    }
    Ok(worst)
}

fn on_sphere(r: f64, phi: f64, theta: f64) -> Vec3 {
    Vec3::new(r * theta.cos() * phi.sin(), r * theta.sin() * phi.sin(), r * phi.cos())
}

/// Pairs of sphere points `2δ` apart (arc length) on either side of a seam.
pub fn sphere_seam_pairs(spec: &PolyhedronSpec, seam: SphereSeam, delta: f64, per_seam: usize, seed: u64) -> Vec<(Vec3, Vec3)> {
    let r = spec.r();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    match seam {
        SphereSeam::ZonePlanes => {
            for i in 0..spec.n() {
                let alpha = spec.alpha(i);
                for _ in 0..per_seam {
                    let phi: f64 = rng.random_range(1e-3..PI - 1e-3);
                    let d = delta / (r * phi.sin());
                    out.push((on_sphere(r, phi, alpha - d), on_sphere(r, phi, alpha + d)));
                }
            }
        }
        SphereSeam::BeltCircles => {
            for sign in [1.0, -1.0] {
                let phi0 = (sign * spec.epsilon()).acos();
                for _ in 0..per_seam {
                    let theta: f64 = rng.random_range(0.0..2.0 * PI);
                    let d = delta / r;
                    out.push((on_sphere(r, phi0 - d, theta), on_sphere(r, phi0 + d, theta)));
                }
            }
        }
    }
    out
}

/// Ball pairs straddling the cap/belt cones `z = ±ερ` and the zone planes.
pub fn ball_seam_pairs(vspec: &VolumeSpec, delta: f64, per_seam: usize, seed: u64) -> Vec<(Vec3, Vec3)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let r = vspec.r;
    for sign in [1.0, -1.0] {
        let phi0 = (sign * vspec.epsilon).acos();
        for _ in 0..per_seam {
            let rho: f64 = rng.random_range(0.05 * r..r);
            let theta: f64 = rng.random_range(0.0..2.0 * PI);
            let d = delta / rho;
            out.push((on_sphere(rho, phi0 - d, theta), on_sphere(rho, phi0 + d, theta)));
        }
    }
    for i in 0..vspec.n {
        let alpha = 2.0 * PI * i as f64 / vspec.n as f64;
        for _ in 0..per_seam {
            let rho: f64 = rng.random_range(0.05 * r..r);
            let phi: f64 = rng.random_range(1e-2..PI - 1e-2);
            let d = delta / (rho * phi.sin());
            out.push((on_sphere(rho, phi, alpha - d), on_sphere(rho, phi, alpha + d)));
        }
    }
    out
}

/// Control pairs `2δ` apart well inside a zone and region, away from every seam.
pub fn interior_pairs(spec: &PolyhedronSpec, delta: f64, count: usize, seed: u64) -> Vec<(Vec3, Vec3)> {
    let r = spec.r();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = 2.0 * PI / spec.n() as f64;
    let cap = spec.epsilon().acos();
    (0..count)
        .map(|_| {
            let i = rng.random_range(0..spec.n());
            let theta = spec.alpha(i) + rng.random_range(0.2 * w..0.8 * w);
            let phi = rng.random_range(0.2 * cap..0.8 * cap);
            let d = delta / r;
            (on_sphere(r, phi - d, theta), on_sphere(r, phi + d, theta))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::SpherePoint;
    use crate::sphere_map;

    #[test]
    fn sphere_seams_are_continuous() {
        let spec = PolyhedronSpec::new(6, 1.0, 0.3).unwrap();
        let map = |p: &Vec3| sphere_map::forward(&SpherePoint::from(*p), &spec).map(|q| q.vec());
        for seam in [SphereSeam::ZonePlanes, SphereSeam::BeltCircles] {
            let pairs = sphere_seam_pairs(&spec, seam, 1e-9, 200, 1);
            assert!(seam_probe(map, &pairs).unwrap() < 1e-6);
        }
        let control = interior_pairs(&spec, 1e-9, 200, 2);
        assert!(seam_probe(map, &control).unwrap() < 1e-5);
    }

    #[test]
    fn a_discontinuous_map_is_caught() {
        let spec = PolyhedronSpec::new(4, 1.0, 0.2).unwrap();
        let jump = |p: &Vec3| Ok(if p.z > 0.2 { p * 2.0 } else { *p });
        let pairs = sphere_seam_pairs(&spec, SphereSeam::BeltCircles, 1e-9, 20, 1);
        assert!(seam_probe(jump, &pairs).unwrap() > 0.5);
    }
}
