//! The polyhedron family `K_n(r, ε)`: a regular `n`-gonal prism of height
//! `2εr` capped by two congruent pyramids, sized so that every part has the
//! same area as the matching part of the sphere of radius `r`.
//!
//! The belt of the prism has the area of the spherical belt `|z| ≤ εr` and
//! each pyramid has the area of the spherical cap beyond `|z| = εr`. All
//! lengths of the solid follow from those two constraints, and
//! [`PolyhedronSpec`] is the single place they are computed.
//!
//! Space is split into `2n` azimuthal zones: zone `i` is the wedge
//! `[α_i, α_{i+1})` with `α_i = 2πi/n`, one wedge per face, split again by
//! the sign of `z`.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Relative tolerance (times `r`) for "this point lies on a face plane".
pub const ON_SURFACE_TOL: f64 = 1e-9;

/// The three kinds of face of `K_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    PyramidPlus,
    Prism,
    PyramidMinus,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::PyramidPlus => "pyramid+",
            Region::Prism => "prism",
            Region::PyramidMinus => "pyramid-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hemisphere {
    North,
    South,
}

/// Zone `I_i^±`: the wedge index and the sign of `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZoneTag {
    pub i: usize,
    pub hemisphere: Hemisphere,
}

/// Two-argument azimuth normalized to `[0, 2π)`.
pub fn azimuth(x: f64, y: f64) -> f64 {
    let a = y.atan2(x);
    if a >= 0.0 {
        a
    } else {
        let a = a + TAU;
        // -tiny + 2π rounds to 2π
        if a >= TAU {
            0.0
        } else {
            a
        }
    }
}

/// Zone of a point for `n` wedges. Points on the `z` axis get wedge 0 and
/// boundary planes belong to the wedge that starts there.
pub fn classify_zone(n: usize, x: f64, y: f64, z: f64) -> ZoneTag {
    let i = if x == 0.0 && y == 0.0 {
        0
    } else {
        let w = TAU / n as f64;
        ((azimuth(x, y) / w).floor() as usize).min(n - 1)
    };
    let hemisphere = if z >= 0.0 { Hemisphere::North } else { Hemisphere::South };
    ZoneTag { i, hemisphere }
}

/// Rotation about the `z` axis.
pub fn rotate_z(v: &Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    Vec3::new(c * v.x - s * v.y, s * v.x + c * v.y, v.z)
}

/// A validated member `K_n(r, ε)` of the family together with the
/// trigonometric constants every map needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolyhedronSpec {
    n: usize,
    r: f64,
    epsilon: f64,
    #[serde(skip)]
    sin_pn: f64,
    #[serde(skip)]
    cos_pn: f64,
    #[serde(skip)]
    big_r: f64,
    #[serde(skip)]
    small_r: f64,
    #[serde(skip)]
    b: f64,
}

/// All derived lengths and areas of `K_n(r, ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// Edge of the base polygon.
    pub ell_n: f64,
    /// Circumradius of the base polygon.
    pub big_r_n: f64,
    /// Inradius of the base polygon.
    pub small_r_n: f64,
    /// Slant height of a pyramid face.
    pub a_n: f64,
    /// Pyramid altitude.
    pub b_n: f64,
    /// Area of one pyramid face.
    pub face_area: f64,
    pub cap_area: f64,
    pub belt_area: f64,
}

/// `(π/n)·cot(π/n)`, the inradius of the base polygon of `K_n(1, ε)`.
pub(crate) fn unit_inradius(n: usize) -> f64 {
    let t = PI / n as f64;
    t / t.tan()
}

impl PolyhedronSpec {
    /// Upper bound (exclusive) on ε for which the pyramids have positive
    /// altitude: `1 − (π/(2n))·cot(π/n)`.
    pub fn epsilon_max(n: usize) -> f64 {
        1.0 - 0.5 * unit_inradius(n)
    }

    pub fn new(n: usize, r: f64, epsilon: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidN(n));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidRadius(r));
        }
        let max = Self::epsilon_max(n);
        if !(epsilon >= 0.0 && epsilon < max) {
            return Err(Error::InvalidEpsilon { n, epsilon, max });
        }
        let (sin_pn, cos_pn) = (PI / n as f64).sin_cos();
        let big_r = PI * r / (n as f64 * sin_pn);
        let small_r = big_r * cos_pn;
        let a = 2.0 * (1.0 - epsilon);
        let q = unit_inradius(n);
        let b = r * (a * a - q * q).sqrt();
        Ok(PolyhedronSpec {
            n,
            r,
            epsilon,
            sin_pn,
            cos_pn,
            big_r,
            small_r,
            b,
        })
    }

    /// Same `n` and ε at another radius.
    pub fn with_radius(&self, r: f64) -> Result<Self> {
        Self::new(self.n, r, self.epsilon)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn derive_params(&self) -> DerivedParams {
        let n = self.n as f64;
        let ell_n = TAU * self.r / n;
        let a_n = 2.0 * (1.0 - self.epsilon) * self.r;
        DerivedParams {
            ell_n,
            big_r_n: self.big_r,
            small_r_n: self.small_r,
            a_n,
            b_n: self.b,
            face_area: a_n * ell_n / 2.0,
            cap_area: TAU * (1.0 - self.epsilon) * self.r * self.r,
            belt_area: 4.0 * PI * self.epsilon * self.r * self.r,
        }
    }

    pub fn sin_pi_n(&self) -> f64 {
        self.sin_pn
    }

    pub fn cos_pi_n(&self) -> f64 {
        self.cos_pn
    }

    pub fn big_r(&self) -> f64 {
        self.big_r
    }

    pub fn small_r(&self) -> f64 {
        self.small_r
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Height `εr` of the prism top.
    pub fn belt_top(&self) -> f64 {
        self.epsilon * self.r
    }

    pub fn alpha(&self, i: usize) -> f64 {
        TAU * i as f64 / self.n as f64
    }

    /// Vertex `i` of the base polygon lifted to height `z`.
    pub fn base_vertex(&self, i: usize, z: f64) -> Vec3 {
        let (s, c) = self.alpha(i % self.n).sin_cos();
        Vec3::new(self.big_r * c, self.big_r * s, z)
    }

    pub fn north_apex(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.belt_top() + self.b)
    }

    pub fn south_apex(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, -self.belt_top() - self.b)
    }

    pub fn classify_zone(&self, x: f64, y: f64, z: f64) -> ZoneTag {
        classify_zone(self.n, x, y, z)
    }

    /// Horizontal distance of `p` along the outward normal of face `i`.
    pub(crate) fn face_depth(&self, p: &Vec3, i: usize) -> f64 {
        let local = rotate_z(p, -self.alpha(i));
        local.x * self.cos_pn + local.y * self.sin_pn
    }

    /// Signed distance from `p` to the plane of the face of `region` in wedge `i`.
    pub fn face_residual(&self, p: &Vec3, region: Region, i: usize) -> f64 {
        let h = self.face_depth(p, i);
        let a = 2.0 * (1.0 - self.epsilon) * self.r;
        match region {
            Region::Prism => h - self.small_r,
            Region::PyramidPlus => (h * self.b + (p.z - self.belt_top()) * self.small_r - self.b * self.small_r) / a,
            Region::PyramidMinus => (h * self.b + (-p.z - self.belt_top()) * self.small_r - self.b * self.small_r) / a,
        }
    }

    /// Tags a point of the surface with its face. Points on the polygon
    /// `|Z| = εr` belong to the prism.
    pub fn classify_region(&self, p: &Vec3) -> Result<PolySurfacePoint> {
        let tol = ON_SURFACE_TOL * self.r;
        let zone = self.classify_zone(p.x, p.y, p.z);
        let h = self.face_depth(p, zone.i);
        let top = self.belt_top();
        let region = if p.z.abs() <= top && self.face_residual(p, Region::Prism, zone.i).abs() <= tol {
            Some(Region::Prism)
        } else {
            let region = if p.z >= 0.0 { Region::PyramidPlus } else { Region::PyramidMinus };
            let within = p.z.abs() >= top - tol && p.z.abs() <= top + self.b + tol && h >= -tol && h <= self.small_r + tol;
            (within && self.face_residual(p, region, zone.i).abs() <= tol).then_some(region)
        };
        match region {
            Some(region) => Ok(PolySurfacePoint {
                x: p.x,
                y: p.y,
                z: p.z,
                region,
                zone,
            }),
            None => Err(Error::NotOnSurface(p.x, p.y, p.z)),
        }
    }
}

/// A point of the sphere `S²(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpherePoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        SpherePoint { x, y, z }
    }

    /// From colatitude `φ ∈ [0, π]` and longitude `θ`.
    pub fn from_spherical(r: f64, phi: f64, theta: f64) -> Self {
        let (sp, cp) = phi.sin_cos();
        let (st, ct) = theta.sin_cos();
        SpherePoint {
            x: r * ct * sp,
            y: r * st * sp,
            z: r * cp,
        }
    }

    pub fn vec(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn norm(&self) -> f64 {
        self.vec().norm()
    }

    pub fn colatitude(&self) -> f64 {
        let rho = (self.x * self.x + self.y * self.y).sqrt();
        rho.atan2(self.z)
    }

    pub fn longitude(&self) -> f64 {
        azimuth(self.x, self.y)
    }
}

impl From<Vec3> for SpherePoint {
    fn from(v: Vec3) -> Self {
        SpherePoint { x: v.x, y: v.y, z: v.z }
    }
}

/// A point of the surface of `K_n` tagged with its face.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolySurfacePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub region: Region,
    pub zone: ZoneTag,
}

impl PolySurfacePoint {
    pub fn vec(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn octahedral_case_constants() {
        let p = PolyhedronSpec::new(4, 1.0, 0.0).unwrap().derive_params();
        assert!(rel(p.ell_n, PI / 2.0) < 1e-15);
        assert!(rel(p.big_r_n, PI / (4.0 * (PI / 4.0).sin())) < 1e-15);
        assert!((p.big_r_n - 1.1107207345395915).abs() < 1e-12);
        assert!(rel(p.a_n, 2.0) < 1e-15);
        assert!((p.b_n - (4.0 - PI * PI / 16.0).sqrt()).abs() < 1e-15);
        assert!((p.b_n - 1.8393341).abs() < 1e-7);
        assert!(rel(p.small_r_n.powi(2) + p.b_n.powi(2), 4.0) < 1e-15);
    }

    #[test]
    fn rejects_epsilon_past_bound() {
        let max = PolyhedronSpec::epsilon_max(3);
        assert!((max - (1.0 - PI / 6.0 / (PI / 3.0).tan())).abs() < 1e-15);
        assert!((max - 0.6977).abs() < 1e-4);
        match PolyhedronSpec::new(3, 1.0, 0.9) {
            Err(Error::InvalidEpsilon { max: m, .. }) => assert_eq!(m, max),
            other => panic!("expected InvalidEpsilon, got {other:?}"),
        }
        assert!(PolyhedronSpec::new(3, 1.0, max).is_err());
        assert!(PolyhedronSpec::new(3, 1.0, -0.1).is_err());
        assert!(PolyhedronSpec::new(2, 1.0, 0.1).is_err());
        assert!(PolyhedronSpec::new(5, 0.0, 0.1).is_err());
    }

    #[test]
    fn area_bookkeeping() {
        for n in 3..=8 {
            for eps in [0.0, 0.2, 0.4] {
                let Ok(spec) = PolyhedronSpec::new(n, 1.7, eps) else { continue };
                let p = spec.derive_params();
                let total = 4.0 * PI * 1.7 * 1.7;
                assert!(rel(n as f64 * p.face_area, p.cap_area) < 1e-12);
                assert!(rel(n as f64 * p.ell_n * 2.0 * eps * 1.7, p.belt_area) < 1e-12 || eps == 0.0);
                assert!(rel(2.0 * p.cap_area + p.belt_area, total) < 1e-12);
                assert!(rel(p.a_n.powi(2), p.small_r_n.powi(2) + p.b_n.powi(2)) < 1e-12);
            }
        }
    }

    #[test]
    fn scale_covariance() {
        let a = PolyhedronSpec::new(5, 1.0, 0.3).unwrap().derive_params();
        let b = PolyhedronSpec::new(5, 2.5, 0.3).unwrap().derive_params();
        for (x, y) in [
            (a.ell_n, b.ell_n),
            (a.big_r_n, b.big_r_n),
            (a.small_r_n, b.small_r_n),
            (a.a_n, b.a_n),
            (a.b_n, b.b_n),
        ] {
            assert!(rel(2.5 * x, y) < 1e-14);
        }
        for (x, y) in [(a.face_area, b.face_area), (a.cap_area, b.cap_area), (a.belt_area, b.belt_area)] {
            assert!(rel(6.25 * x, y) < 1e-14);
        }
    }

    #[test]
    fn zone_examples() {
        let z = classify_zone(4, 1.0, 0.0, 1.0);
        assert_eq!(
            z,
            ZoneTag {
                i: 0,
                hemisphere: Hemisphere::North
            }
        );
        let z = classify_zone(4, -1.0, 0.0, -1.0);
        assert_eq!(
            z,
            ZoneTag {
                i: 2,
                hemisphere: Hemisphere::South
            }
        );
        let t = 100f64.to_radians();
        let z = classify_zone(6, t.cos(), t.sin(), 0.3);
        assert_eq!(
            z,
            ZoneTag {
                i: 1,
                hemisphere: Hemisphere::North
            }
        );
        assert_eq!(classify_zone(5, 0.0, 0.0, -2.0).i, 0);
        // just below the positive x axis
        assert_eq!(classify_zone(5, 1.0, -1e-300, 0.0).i, 0);
        assert_eq!(classify_zone(5, 1.0, -1e-9, 0.0).i, 4);
    }

    #[test]
    fn zone_rotation_equivariance() {
        for n in 3..=9 {
            let step = TAU / n as f64;
            for k in 0..200 {
                let theta = 0.0123 + k as f64 * 0.0311;
                let v = Vec3::new(theta.cos(), theta.sin(), if k % 2 == 0 { 0.4 } else { -0.2 });
                let a = classify_zone(n, v.x, v.y, v.z);
                let w = rotate_z(&v, step);
                let b = classify_zone(n, w.x, w.y, w.z);
                assert_eq!(b.i, (a.i + 1) % n, "n={n} theta={theta}");
                assert_eq!(a.hemisphere, b.hemisphere);
            }
        }
    }

    #[test]
    fn region_examples() {
        let spec = PolyhedronSpec::new(4, 1.0, 1.0 / 3.0).unwrap();
        let r4 = spec.big_r();
        let p = spec.classify_region(&Vec3::new(r4, 0.0, 0.0)).unwrap();
        assert_eq!(p.region, Region::Prism);
        let p = spec.classify_region(&spec.north_apex()).unwrap();
        assert_eq!(p.region, Region::PyramidPlus);
        let p = spec.classify_region(&Vec3::new(r4, 0.0, spec.belt_top())).unwrap();
        assert_eq!(p.region, Region::Prism);
        let p = spec.classify_region(&spec.south_apex()).unwrap();
        assert_eq!(p.region, Region::PyramidMinus);
        assert!(matches!(
            spec.classify_region(&Vec3::new(0.1, 0.1, 0.1)),
            Err(Error::NotOnSurface(..))
        ));
        assert!(spec.classify_region(&Vec3::new(0.0, 0.0, 5.0)).is_err());
    }
}
