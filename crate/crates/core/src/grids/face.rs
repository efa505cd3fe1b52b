use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::development::{Development, Piece};
use crate::error::{Error, Result};
use crate::polyhedron::{azimuth, Hemisphere, PolySurfacePoint, PolyhedronSpec, Region, SpherePoint, ZoneTag};

/// A point of a pyramid face as `apex + u·(V_i − apex) + v·(V_{i+1} − apex)`.
/// `u, v ≥ 0` and `u + v ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaceParam {
    pub u: f64,
    pub v: f64,
    pub i: usize,
    pub hemisphere: Hemisphere,
}

/// The face point and its sphere image `z = ±r(1 − (1−ε)(u+v)²)`,
/// `θ = α_i + (2π/n)·v/(u+v)`. The apex goes to the pole.
pub fn pyramid_face_point(fp: &FaceParam, spec: &PolyhedronSpec) -> Result<(PolySurfacePoint, SpherePoint)> {
    const SLACK: f64 = 1e-12;
    if !(fp.u >= -SLACK && fp.v >= -SLACK && fp.u + fp.v <= 1.0 + SLACK) || fp.i >= spec.n() {
        return Err(Error::Domain("the face parameter triangle"));
    }
    let (u, v) = (fp.u.max(0.0), fp.v.max(0.0));
    let sign = match fp.hemisphere {
        Hemisphere::North => 1.0,
        Hemisphere::South => -1.0,
    };
    let r = spec.r();
    let top = sign * spec.belt_top();
    let apex = if sign > 0.0 { spec.north_apex() } else { spec.south_apex() };
    let q = apex + (spec.base_vertex(fp.i, top) - apex) * u + (spec.base_vertex(fp.i + 1, top) - apex) * v;
    let region = if sign > 0.0 { Region::PyramidPlus } else { Region::PyramidMinus };
    let point = PolySurfacePoint {
        x: q.x,
        y: q.y,
        z: q.z,
        region,
        zone: ZoneTag {
            i: fp.i,
            hemisphere: fp.hemisphere,
        },
    };
    let w = u + v;
    if w == 0.0 {
        return Ok((point, SpherePoint::new(0.0, 0.0, sign * r)));
    }
    let depth = r * (1.0 - spec.epsilon()) * w * w;
    let theta = spec.alpha(fp.i) + 2.0 * PI / spec.n() as f64 * v / w;
    let rho = (depth * (2.0 * r - depth)).sqrt();
    Ok((point, SpherePoint::new(rho * theta.cos(), rho * theta.sin(), sign * (r - depth))))
}

/// Largest deviations of the `n = 4`, `p = 2` grid curves from the
/// HEALPix boundary equations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HealpixResiduals {
    /// Curves `u = ℓ/k` and `v = ℓ/k` on the caps.
    pub pyramid: f64,
    /// Their continuations across the belt, straight in `(θ, z)`.
    pub prism: f64,
    pub samples: usize,
}

impl HealpixResiduals {
    pub fn max(&self) -> f64 {
        self.pyramid.max(self.prism)
    }
}

/// Samples per curve per rhombus.
const CURVE_SAMPLES: usize = 257;

/// Samples the sphere images of the grid lines `a = ℓ/k` and `b = ℓ/k` of
/// every base rhombus, where `a` and `b` are the weights of the edges from
/// the top corner to the left and right corners, and compares each sample
/// with its HEALPix equation:
///
/// * north cap, `u = a`, `v = b`: `z = 1 − (u²/3)(π/(2θ_t − π))²` and
///   `z = 1 − (v²/3)(π/(2θ_t))²`;
/// * south cap, with `u = 1 − b`, `v = 1 − a`: the same with `z ↦ −z`;
/// * belt: `z = 2/3 + (4/3)(x − m_b)` along `b = const` and
///   `z = 2/3 − (4/3)(x − m_a)` along `a = const`, where `x = 2θ_t/π` and
///   `m_b`, `m_a` are multiples of `1/k`.
///
/// `θ_t` is the longitude relative to the first vertex of the rhombus face,
/// taken in `[−π/2, 3π/2)`. Curves through a pole are skipped.
pub fn healpix_residuals(k: usize, ell: usize) -> Result<HealpixResiduals> {
    if k == 0 || ell > k {
        return Err(Error::InvalidGrid(format!("need 0 ≤ ℓ ≤ k and k ≥ 1, got k={k} ℓ={ell}")));
    }
    let d = Development::new(4, 1.0, 2);
    let m = ell as f64 / k as f64;
    let mut out = HealpixResiduals {
        pyramid: 0.0,
        prism: 0.0,
        samples: 0,
    };
    for i in 0..4 {
        let alpha = PI / 2.0 * i as f64;
        for j in 0..=2usize {
            let [t, l, r] = d.rhombus(i, j);
            // (a-line?, belt offset of the line)
            for along_a in [true, false] {
                let shift = match (along_a, j) {
                    (true, 0) => 1.0 - m,
                    (true, _) => -m,
                    (false, 2) => m + 1.0,
                    (false, _) => m,
                };
                for step in 0..CURVE_SAMPLES {
                    let free = step as f64 / (CURVE_SAMPLES - 1) as f64;
                    let (a, b) = if along_a { (m, free) } else { (free, m) };
                    let s = t.0 + a * (l.0 - t.0) + b * (r.0 - t.0);
                    let y = t.1 + a * (l.1 - t.1) + b * (r.1 - t.1);
                    let piece = d.locate(s, y);
                    let p = d.to_sphere(piece, s, y);
                    let theta_t = (azimuth(p.x, p.y) - alpha + PI / 2.0).rem_euclid(2.0 * PI) - PI / 2.0;
                    let x = 2.0 * theta_t / PI;
                    let expected = match piece {
                        Piece::North(_) | Piece::South(_) => {
                            let (sign, u, v) = if matches!(piece, Piece::North(_)) {
                                (1.0, a, b)
                            } else {
                                (-1.0, 1.0 - b, 1.0 - a)
                            };
                            let zero = if along_a == (sign > 0.0) { u } else { v };
                            if zero == 0.0 || u + v == 0.0 {
                                continue;
                            }
                            let expected = if along_a == (sign > 0.0) {
                                1.0 - u * u / 3.0 * (PI / (2.0 * theta_t - PI)).powi(2)
                            } else {
                                1.0 - v * v / 3.0 * (PI / (2.0 * theta_t)).powi(2)
                            };
                            sign * expected
                        }
                        Piece::Belt(_) => {
                            if along_a {
                                2.0 / 3.0 - 4.0 / 3.0 * (x - shift)
                            } else {
                                2.0 / 3.0 + 4.0 / 3.0 * (x - shift)
                            }
                        }
                    };
                    let residual = (p.z - expected).abs();
                    match piece {
                        Piece::Belt(_) => out.prism = out.prism.max(residual),
                        _ => out.pyramid = out.pyramid.max(residual),
                    }
                    out.samples += 1;
                }
            }
        }
    }
    Ok(out)
}
