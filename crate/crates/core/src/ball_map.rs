//! Volume-preserving map from the closed ball of radius `r` onto the solid
//! polyhedron `K̄_n(rξ, ε)`.
//!
//! The ball is scaled by `ξ = (β/γ)^{1/3}` so both solids have the same
//! volume, and then every sphere of radius `ρ̃` is sent onto the surface of
//! `K_n(ρ̃, ε)` by the area-preserving map. The Jacobian of the result is
//! `ξ³` times the distance from the origin to the face plane of
//! `K_n(1, ε)`. It equals one on every face only when the polyhedron has an
//! inscribed sphere touching all faces, i.e. when `ε = 0` or
//! `c(ε) = 2 − 3ε`. Those values of ε are called admissible.

use std::f64::consts::PI;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedron::{classify_zone, unit_inradius, Hemisphere, PolySurfacePoint, PolyhedronSpec, Region, SpherePoint, Vec3, ZoneTag};
use crate::sphere_map;

/// Tolerance on `|c(ε) − (2 − 3ε)|` for the admissibility flag.
pub const ADMISSIBLE_TOL: f64 = 1e-10;

/// A requested ε this close to an admissible root is replaced by the root,
/// so printed values such as `0.20861` select the exact root.
pub const ROOT_SNAP: f64 = 5e-6;

/// Default finite-difference step, times `r`.
pub const FD_STEP: f64 = 1e-5;

/// `c(ε) = b_n / r`, the pyramid altitude of `K_n(1, ε)`.
pub fn c_eps(n: usize, epsilon: f64) -> f64 {
    let q = unit_inradius(n);
    (4.0 * (1.0 - epsilon).powi(2) - q * q).sqrt()
}

/// `0` followed by the roots of `c(ε) = 2 − 3ε` in `(0, ε_max(n))`, ascending.
///
/// Squaring gives `5ε² − 4ε + q² = 0` with `q = (π/n)·cot(π/n)`; roots with
/// `2 − 3ε < 0` solve only the squared equation and are dropped.
pub fn admissible_epsilons(n: usize) -> Vec<f64> {
    let q = unit_inradius(n);
    let disc = 16.0 - 20.0 * q * q;
    let mut out = vec![0.0];
    if disc >= 0.0 {
        let s = disc.sqrt();
        let max = PolyhedronSpec::epsilon_max(n);
        for root in [(4.0 - s) / 10.0, (4.0 + s) / 10.0] {
            if root > 0.0 && root <= 2.0 / 3.0 && root < max {
                out.push(root);
            }
        }
    }
    out.dedup();
    out
}

/// Volume constants of `K̄_n(·, ε)` against the ball, and the admissibility flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeSpec {
    pub n: usize,
    pub r: f64,
    pub epsilon: f64,
    pub c_eps: f64,
    /// `vol(K̄_n(ρ, ε)) = γρ³`.
    pub gamma: f64,
    /// `vol(ball(ρ)) = βρ³`.
    pub beta: f64,
    pub xi: f64,
    pub admissible: bool,
    #[serde(skip)]
    unit: PolyhedronSpec,
}

impl VolumeSpec {
    pub fn new(n: usize, r: f64, epsilon: f64) -> Result<Self> {
        let mut epsilon = epsilon;
        if n >= 3 {
            if let Some(root) = admissible_epsilons(n)
                .into_iter()
                .find(|root| *root > 0.0 && (root - epsilon).abs() <= ROOT_SNAP)
            {
                epsilon = root;
            }
        }
        let unit = PolyhedronSpec::new(n, 1.0, epsilon)?;
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidRadius(r));
        }
        let c = c_eps(n, epsilon);
        let t = PI / n as f64;
        let gamma = 2.0 * (epsilon + c / 3.0) * PI * PI / (n as f64 * t.tan());
        let beta = 4.0 * PI / 3.0;
        let admissible = epsilon == 0.0 || (c - (2.0 - 3.0 * epsilon)).abs() < ADMISSIBLE_TOL;
        Ok(VolumeSpec {
            n,
            r,
            epsilon,
            c_eps: c,
            gamma,
            beta,
            xi: (beta / gamma).cbrt(),
            admissible,
            unit,
        })
    }

    /// The outer polyhedron `K_n(rξ, ε)`.
    pub fn outer(&self) -> PolyhedronSpec {
        self.unit.with_radius(self.r * self.xi).expect("validated at construction")
    }

    pub fn unit(&self) -> &PolyhedronSpec {
        &self.unit
    }

    /// Closed-form Jacobian on the caps.
    pub fn jacobian_cap(&self) -> f64 {
        let (c, e) = (self.c_eps, self.epsilon);
        (c + e) / ((1.0 - e) * (c + 3.0 * e))
    }

    /// Closed-form Jacobian on the belt.
    pub fn jacobian_belt(&self) -> f64 {
        2.0 / (3.0 * self.epsilon + self.c_eps)
    }

    /// Whether `K_n(ρ, ε)` has a sphere tangent to all of its faces, by
    /// comparing the distance from `O` to a pyramid face with the distance
    /// to a prism face.
    pub fn tangent_sphere_check(&self) -> bool {
        let q = unit_inradius(self.n);
        let to_pyramid = (self.c_eps + self.epsilon) * q / (2.0 * (1.0 - self.epsilon));
        (to_pyramid - q).abs() <= ADMISSIBLE_TOL * q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BallPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BallPoint { x, y, z }
    }

    pub fn vec(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }
}

impl From<Vec3> for BallPoint {
    fn from(v: Vec3) -> Self {
        BallPoint { x: v.x, y: v.y, z: v.z }
    }
}

/// A point of the solid polyhedron, with the radius of the shell
/// `K_n(ρ̄, ε)` whose surface contains it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolidPolyPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub shell_rho: f64,
    pub region: Region,
    pub zone: ZoneTag,
}

impl SolidPolyPoint {
    pub fn vec(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }
}

pub fn ball_to_poly(p: &BallPoint, vspec: &VolumeSpec) -> Result<SolidPolyPoint> {
    if !vspec.admissible {
        return Err(Error::NotAdmissible {
            n: vspec.n,
            epsilon: vspec.epsilon,
        });
    }
    ball_to_poly_unchecked(p, vspec)
}

/// [`ball_to_poly`] without the admissibility guard; the result is then
/// not volume preserving.
pub fn ball_to_poly_unchecked(p: &BallPoint, vspec: &VolumeSpec) -> Result<SolidPolyPoint> {
    let v = p.vec();
    let rho = v.norm();
    if rho > vspec.r * (1.0 + 1e-12) {
        return Err(Error::OutsideBall { r: vspec.r, norm: rho });
    }
    if rho == 0.0 {
        return Ok(SolidPolyPoint {
            x: 0.0,
            y: 0.0,
            z: 0.0,
            shell_rho: 0.0,
            region: Region::PyramidPlus,
            zone: ZoneTag {
                i: 0,
                hemisphere: Hemisphere::North,
            },
        });
    }
    let q = sphere_map::forward(&SpherePoint::from(v / rho), &vspec.unit)?;
    let shell = vspec.xi * rho;
    Ok(SolidPolyPoint {
        x: shell * q.x,
        y: shell * q.y,
        z: shell * q.z,
        shell_rho: shell,
        region: q.region,
        zone: q.zone,
    })
}

/// Face and shell radius of a point of the solid polyhedron.
fn locate_shell(q: &Vec3, vspec: &VolumeSpec) -> (Region, ZoneTag, f64) {
    let unit = &vspec.unit;
    let zone = classify_zone(vspec.n, q.x, q.y, q.z);
    let h = unit.face_depth(q, zone.i);
    let inr = unit_inradius(vspec.n);
    let (c, e) = (vspec.c_eps, vspec.epsilon);
    let region = if e == 0.0 {
        if q.z >= 0.0 {
            Region::PyramidPlus
        } else {
            Region::PyramidMinus
        }
    } else if q.z > 0.0 && q.z * inr > e * h {
        Region::PyramidPlus
    } else if q.z < 0.0 && -q.z * inr > e * h {
        Region::PyramidMinus
    } else {
        Region::Prism
    };
    let rho = match region {
        Region::Prism => h / inr,
        _ => (h / inr + q.z.abs() / c) / (1.0 + e / c),
    };
    (region, zone, rho)
}

/// Inverse of [`ball_to_poly`].
pub fn poly_to_ball(q: &Vec3, vspec: &VolumeSpec) -> Result<BallPoint> {
    let max = vspec.r * vspec.xi;
    let (region, zone, rho) = locate_shell(q, vspec);
    if rho > max * (1.0 + 1e-9) {
        return Err(Error::OutsidePolyhedron { rho, max });
    }
    if rho <= 0.0 {
        return Ok(BallPoint::new(0.0, 0.0, 0.0));
    }
    let s = q / rho;
    let surface = PolySurfacePoint {
        x: s.x,
        y: s.y,
        z: s.z,
        region,
        zone,
    };
    let w = sphere_map::invert(&surface, &vspec.unit)?;
    Ok(BallPoint::from(w.vec() * (rho / vspec.xi)))
}

/// Shell radius recovered the same way [`poly_to_ball`] does it.
pub fn shell_radius(q: &Vec3, vspec: &VolumeSpec) -> (Region, f64) {
    let (region, _, rho) = locate_shell(q, vspec);
    (region, rho)
}

/// Central-difference Jacobian determinant of `map` at `p`. Fails with
/// [`Error::StepTooLarge`] when any probe lands on a different face.
pub fn jacobian_fd<F>(map: F, p: &Vec3, step: f64) -> Result<f64>
where
    F: Fn(&Vec3) -> Result<SolidPolyPoint>,
{
    let centre = map(p)?;
    let mut m = Matrix3::zeros();
    for axis in 0..3 {
        let mut d = Vec3::zeros();
        d[axis] = step;
        let plus = map(&(p + d))?;
        let minus = map(&(p - d))?;
        for probe in [&plus, &minus] {
            if probe.region != centre.region || probe.zone.i != centre.zone.i {
                return Err(Error::StepTooLarge(step));
            }
        }
        m.set_column(axis, &((plus.vec() - minus.vec()) / (2.0 * step)));
    }
    Ok(m.determinant())
}
