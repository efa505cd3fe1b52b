//! The surface of `K_n(r, p/(p+1))` unfolded into the plane.
//!
//! The prism faces unroll to the strip `0 ≤ s < nℓ`, `|y| ≤ εr`, periodic in
//! `s`. The north faces are triangles standing on the edges `[iℓ, (i+1)ℓ]` of
//! the top line; the south faces hang below the bottom line, on the same edges
//! for even `p` and shifted by `ℓ/2` for odd `p` (the south pyramid turned by
//! `π/n`). Since `a_n = 2εr/p` for this ε, the plane is tiled by congruent
//! rhombi with diagonals `ℓ` and `2a_n`, `p + 1` rows of them per face.

use std::f64::consts::PI;

use crate::error::Result;
use crate::polyhedron::{rotate_z, Hemisphere, PolySurfacePoint, PolyhedronSpec, Region, Vec3, ZoneTag};
use crate::sphere_map;

/// A planar piece of the unfolded surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Piece {
    North(usize),
    Belt(usize),
    South(usize),
}

pub(crate) type P2 = (f64, f64);

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Development {
    pub n: usize,
    pub r: f64,
    pub p: usize,
    pub epsilon: f64,
    /// Edge length `ℓ_n`.
    pub ell: f64,
    /// Slant height `a_n`, also the half vertical diagonal of a rhombus.
    pub a: f64,
    pub rotated_south: bool,
}

impl Development {
    pub fn new(n: usize, r: f64, p: usize) -> Self {
        let epsilon = p as f64 / (p as f64 + 1.0);
        Development {
            n,
            r,
            p,
            epsilon,
            ell: 2.0 * PI * r / n as f64,
            a: 2.0 * (1.0 - epsilon) * r,
            rotated_south: p % 2 == 1,
        }
    }

    pub fn top(&self) -> f64 {
        self.epsilon * self.r
    }

    fn period(&self) -> f64 {
        self.n as f64 * self.ell
    }

    /// Top, left and right corners of base rhombus `j` of face `i`; the
    /// bottom corner is `left + right − top`.
    pub fn rhombus(&self, i: usize, j: usize) -> [P2; 3] {
        let cy = self.top() - j as f64 * self.a;
        let cs = i as f64 * self.ell + if j.is_multiple_of(2) { self.ell / 2.0 } else { 0.0 };
        let half = self.ell / 2.0;
        [(cs, cy + self.a), (cs - half, cy), (cs + half, cy)]
    }

    /// Sub-cell `(row, col)` of rhombus `(i, j)` split `k × k`, counter-clockwise.
    pub fn sub_cell(&self, i: usize, j: usize, k: usize, row: usize, col: usize) -> [P2; 4] {
        let [t, l, r] = self.rhombus(i, j);
        let at = |a: f64, b: f64| (t.0 + a * (l.0 - t.0) + b * (r.0 - t.0), t.1 + a * (l.1 - t.1) + b * (r.1 - t.1));
        let kf = k as f64;
        let (a0, a1) = (row as f64 / kf, (row + 1) as f64 / kf);
        let (b0, b1) = (col as f64 / kf, (col + 1) as f64 / kf);
        [at(a0, b0), at(a1, b0), at(a1, b1), at(a0, b1)]
    }

    /// Piece containing `(s, y)` in its interior; used on midpoints only.
    pub fn locate(&self, s: f64, y: f64) -> Piece {
        let s = s.rem_euclid(self.period());
        let slot = |x: f64| ((x / self.ell).floor() as usize).min(self.n - 1);
        if y > self.top() {
            Piece::North(slot(s))
        } else if y < -self.top() {
            if self.rotated_south {
                Piece::South(((s / self.ell).round() as usize) % self.n)
            } else {
                Piece::South(slot(s))
            }
        } else {
            Piece::Belt(slot(s))
        }
    }

    /// Abscissa of the left end of the piece.
    fn piece_origin(&self, piece: Piece) -> f64 {
        match piece {
            Piece::North(i) | Piece::Belt(i) => i as f64 * self.ell,
            Piece::South(i) => i as f64 * self.ell - if self.rotated_south { self.ell / 2.0 } else { 0.0 },
        }
    }

    /// The piece as a counter-clockwise polygon.
    pub fn piece_polygon(&self, piece: Piece) -> Vec<P2> {
        let s0 = self.piece_origin(piece);
        let s1 = s0 + self.ell;
        let top = self.top();
        match piece {
            Piece::North(_) => vec![(s0, top), (s1, top), (s0 + self.ell / 2.0, top + self.a)],
            Piece::Belt(_) => vec![(s0, -top), (s1, -top), (s1, top), (s0, top)],
            Piece::South(_) => vec![(s0, -top), (s0 + self.ell / 2.0, -top - self.a), (s1, -top)],
        }
    }

    pub fn pieces(&self) -> Vec<Piece> {
        (0..self.n)
            .flat_map(|i| [Piece::North(i), Piece::Belt(i), Piece::South(i)])
            .collect()
    }

    /// `s` shifted by a multiple of the period into the piece's own range.
    fn unwrap(&self, piece: Piece, s: f64) -> f64 {
        let mid = self.piece_origin(piece) + self.ell / 2.0;
        s - self.period() * ((s - mid) / self.period()).round()
    }

    /// Face coordinates `(u, v)` on a triangular piece: weights of the edges
    /// from the apex to the left and right base corners.
    pub fn face_coords(&self, piece: Piece, s: f64, y: f64) -> (f64, f64) {
        let s = self.unwrap(piece, s);
        let mid = self.piece_origin(piece) + self.ell / 2.0;
        let depth = match piece {
            Piece::North(_) => (self.top() + self.a - y) / self.a,
            _ => (y + self.top() + self.a) / self.a,
        };
        let skew = 2.0 * (s - mid) / self.ell;
        ((depth - skew) / 2.0, (depth + skew) / 2.0)
    }

    /// Longitude of the left base corner of a piece.
    fn piece_alpha(&self, piece: Piece) -> f64 {
        self.piece_origin(piece) / self.r
    }

    /// The sphere image, from the closed forms on each piece.
    pub fn to_sphere(self, piece: Piece, s: f64, y: f64) -> Vec3 {
        let r = self.r;
        match piece {
            Piece::Belt(_) => {
                let theta = self.unwrap(piece, s) / r;
                let rho = ((r - y) * (r + y)).max(0.0).sqrt();
                Vec3::new(rho * theta.cos(), rho * theta.sin(), y)
            }
            Piece::North(_) | Piece::South(_) => {
                let (u, v) = self.face_coords(piece, s, y);
                let w = (u + v).max(0.0);
                let depth = r * (1.0 - self.epsilon) * w * w;
                let sign = if matches!(piece, Piece::North(_)) { 1.0 } else { -1.0 };
                if w == 0.0 {
                    return Vec3::new(0.0, 0.0, sign * r);
                }
                let theta = self.piece_alpha(piece) + 2.0 * PI / self.n as f64 * v / w;
                let rho = (depth * (2.0 * r - depth)).max(0.0).sqrt();
                Vec3::new(rho * theta.cos(), rho * theta.sin(), sign * (r - depth))
            }
        }
    }

    /// The point of `K_n`, tagged with its face. `spec` must be `K_n(r, ε)`.
    /// South faces for odd `p` lie on the south pyramid turned by `π/n`.
    pub fn to_poly(self, spec: &PolyhedronSpec, piece: Piece, s: f64, y: f64) -> PolySurfacePoint {
        let s = self.unwrap(piece, s);
        let (v, region, i, hemisphere) = match piece {
            Piece::Belt(i) => {
                let along = s - i as f64 * self.ell;
                let beta = spec.alpha(i) + PI / self.n as f64;
                let v = spec.base_vertex(i, y) + Vec3::new(-beta.sin(), beta.cos(), 0.0) * along;
                let hemisphere = if y >= 0.0 { Hemisphere::North } else { Hemisphere::South };
                (v, Region::Prism, i, hemisphere)
            }
            Piece::North(i) => {
                let (u, w) = self.face_coords(piece, s, y);
                let apex = spec.north_apex();
                let top = spec.belt_top();
                let v = apex + (spec.base_vertex(i, top) - apex) * u + (spec.base_vertex(i + 1, top) - apex) * w;
                (v, Region::PyramidPlus, i, Hemisphere::North)
            }
            Piece::South(i) => {
                let (u, w) = self.face_coords(piece, s, y);
                let apex = spec.south_apex();
                let bottom = -spec.belt_top();
                let turn = if self.rotated_south { -PI / self.n as f64 } else { 0.0 };
                let left = rotate_z(&spec.base_vertex(i, bottom), turn);
                let right = rotate_z(&spec.base_vertex(i + 1, bottom), turn);
                let v = apex + (left - apex) * u + (right - apex) * w;
                (v, Region::PyramidMinus, i, Hemisphere::South)
            }
        };
        PolySurfacePoint {
            x: v.x,
            y: v.y,
            z: v.z,
            region,
            zone: ZoneTag { i, hemisphere },
        }
    }

    /// The sphere image through the polyhedron and the inverse map.
    pub fn to_sphere_via_poly(self, spec: &PolyhedronSpec, piece: Piece, s: f64, y: f64) -> Result<Vec3> {
        let q = self.to_poly(spec, piece, s, y);
        if self.rotated_south && matches!(piece, Piece::South(_)) {
            let turn = PI / self.n as f64;
            let back = rotate_z(&q.vec(), turn);
            let q = PolySurfacePoint {
                x: back.x,
                y: back.y,
                z: back.z,
                ..q
            };
            let w = sphere_map::invert(&q, spec)?;
            return Ok(rotate_z(&w.vec(), -turn));
        }
        Ok(sphere_map::invert(&q, spec)?.vec())
    }

    /// Parameters in `(0, 1)` where segment `p0 → p1` crosses a piece boundary.
    pub fn crossings(&self, p0: P2, p1: P2) -> Vec<f64> {
        let mut ts = Vec::new();
        let (ds, dy) = (p1.0 - p0.0, p1.1 - p0.1);
        for level in [self.top(), -self.top()] {
            if dy != 0.0 {
                ts.push((level - p0.1) / dy);
            }
        }
        if ds != 0.0 {
            let half = self.ell / 2.0;
            let lo = (p0.0.min(p1.0) / half).floor() as i64;
            let hi = (p0.0.max(p1.0) / half).ceil() as i64;
            for m in lo..=hi {
                ts.push((m as f64 * half - p0.0) / ds);
            }
        }
        ts.retain(|t| *t > 1e-14 && *t < 1.0 - 1e-14);
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        ts
    }
}

/// Sutherland–Hodgman clip of a polygon by a convex counter-clockwise one.
pub(crate) fn clip(subject: &[P2], clipper: &[P2]) -> Vec<P2> {
    let mut out = subject.to_vec();
    for e in 0..clipper.len() {
        if out.is_empty() {
            break;
        }
        let a = clipper[e];
        let b = clipper[(e + 1) % clipper.len()];
        let side = |p: P2| (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
        let input = std::mem::take(&mut out);
        for j in 0..input.len() {
            let cur = input[j];
            let prev = input[(j + input.len() - 1) % input.len()];
            let (sc, sp) = (side(cur), side(prev));
            if sc >= 0.0 {
                if sp < 0.0 {
                    out.push(lerp(prev, cur, sp / (sp - sc)));
                }
                out.push(cur);
            } else if sp >= 0.0 {
                out.push(lerp(prev, cur, sp / (sp - sc)));
            }
        }
    }
    out
}

fn lerp(a: P2, b: P2, t: f64) -> P2 {
    (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
}

pub(crate) fn shoelace(poly: &[P2]) -> f64 {
    (0..poly.len())
        .map(|j| {
            let (a, b) = (poly[j], poly[(j + 1) % poly.len()]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum::<f64>()
        / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhombi_tile_by_area() {
        for (n, p) in [(3, 1), (4, 2), (5, 3), (6, 4)] {
            let d = Development::new(n, 1.0, p);
            let cell = shoelace(&d.sub_cell(0, 0, 1, 0, 0));
            assert!((cell * (n * (p + 1)) as f64 - 4.0 * PI).abs() < 1e-12);
            let pieces: f64 = d.pieces().iter().map(|&pc| shoelace(&d.piece_polygon(pc))).sum();
            assert!((pieces - 4.0 * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_forms_agree_with_the_inverse_map() {
        // p = 1 is the only ε = p/(p+1) valid for every n
        for n in [3, 5, 8] {
            let d = Development::new(n, 1.7, 1);
            let spec = PolyhedronSpec::new(n, 1.7, d.epsilon).unwrap();
            for i in 0..n {
                for j in 0..=1 {
                    for (a, b) in [(0.1, 0.2), (0.5, 0.5), (0.9, 0.05), (0.3, 0.95)] {
                        let [t, l, r] = d.rhombus(i, j);
                        let s = t.0 + a * (l.0 - t.0) + b * (r.0 - t.0);
                        let y = t.1 + a * (l.1 - t.1) + b * (r.1 - t.1);
                        let piece = d.locate(s, y);
                        let direct = d.to_sphere(piece, s, y);
                        let via = d.to_sphere_via_poly(&spec, piece, s, y).unwrap();
                        assert!((direct - via).norm() < 1e-12, "{n} {i} {j} {a} {b}");
                        let q = d.to_poly(&spec, piece, s, y);
                        if !matches!(piece, Piece::South(_)) {
                            assert!(spec.face_residual(&q.vec(), q.region, q.zone.i).abs() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn clipping() {
        let square = [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)];
        let tri = [(1.0, -1.0), (3.0, 1.0), (1.0, 3.0)];
        let c = clip(&tri, &square);
        assert!((shoelace(&c) - 2.0).abs() < 1e-15);
        assert!(clip(&[(5.0, 5.0), (6.0, 5.0), (6.0, 6.0)], &square).is_empty());
    }
}
