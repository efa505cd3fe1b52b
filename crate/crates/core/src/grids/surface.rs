use rayon::prelude::*;

use super::development::{clip, shoelace, Development, Piece, P2};
use super::{Carrier, Cell, CellId, Grid};
use crate::error::{Error, Result};
use crate::polyhedron::{PolyhedronSpec, Region, Vec3};
use crate::verify::{planar_polygon_area, spherical_polygon_area};

/// Largest chord between consecutive boundary samples on the sphere, times `r`.
pub const MAX_CHORD: f64 = 1e-3;

/// Gap between consecutive polyhedron samples that opens a new polyline.
const JOIN_TOL: f64 = 1e-12;

fn check(n: usize, p: usize, k: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidN(n));
    }
    if p == 0 || k == 0 {
        return Err(Error::InvalidGrid(format!("p and k must be positive, got p={p} k={k}")));
    }
    Ok(())
}

fn cell_ids(n: usize, p: usize, k: usize) -> Vec<CellId> {
    let mut ids = Vec::with_capacity(n * (p + 1) * k * k);
    for face in 0..n {
        for base in 0..=p {
            let region = match base {
                0 => Region::PyramidPlus,
                j if j == p => Region::PyramidMinus,
                _ => Region::Prism,
            };
            for row in 0..k {
                for col in 0..k {
                    ids.push(CellId {
                        region,
                        face,
                        base,
                        row,
                        col,
                        level: k,
                    });
                }
            }
        }
    }
    ids
}

fn quad(d: &Development, id: &CellId) -> [P2; 4] {
    d.sub_cell(id.face, id.base, id.level, id.row, id.col)
}

/// The boundary split at piece boundaries into `(piece, start, end)` segments.
fn segments(d: &Development, q: &[P2; 4]) -> Vec<(Piece, P2, P2)> {
    let mut out = Vec::new();
    for e in 0..4 {
        let (p0, p1) = (q[e], q[(e + 1) % 4]);
        let at = |t: f64| (p0.0 + t * (p1.0 - p0.0), p0.1 + t * (p1.1 - p0.1));
        let mut ts = vec![0.0];
        ts.extend(d.crossings(p0, p1));
        ts.push(1.0);
        for w in ts.windows(2) {
            let (a, b) = (at(w[0]), at(w[1]));
            let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            out.push((d.locate(mid.0, mid.1), a, b));
        }
    }
    out
}

/// Planar area of the cell summed over the faces it meets.
fn poly_area(d: &Development, spec: &PolyhedronSpec, q: &[P2; 4]) -> Result<f64> {
    let period = d.n as f64 * d.ell;
    let mut area = 0.0;
    for piece in d.pieces() {
        let clipper = d.piece_polygon(piece);
        for shift in [-period, 0.0, period] {
            let moved: Vec<P2> = q.iter().map(|&(s, y)| (s + shift, y)).collect();
            let part = clip(&moved, &clipper);
            if part.len() < 3 || shoelace(&part) <= 1e-15 * d.ell * d.ell {
                continue;
            }
            let pts: Vec<Vec3> = part.iter().map(|&(s, y)| d.to_poly(spec, piece, s, y).vec()).collect();
            area += planar_polygon_area(&pts)?;
        }
    }
    Ok(area)
}

fn poly_cell(d: &Development, spec: &PolyhedronSpec, id: CellId) -> Result<Cell> {
    let q = quad(d, &id);
    let mut lines: Vec<Vec<Vec3>> = Vec::new();
    for (piece, a, b) in segments(d, &q) {
        let pa = d.to_poly(spec, piece, a.0, a.1).vec();
        let pb = d.to_poly(spec, piece, b.0, b.1).vec();
        match lines.last_mut() {
            Some(line) if (line[line.len() - 1] - pa).norm() <= JOIN_TOL * d.r => line.push(pb),
            _ => lines.push(vec![pa, pb]),
        }
    }
    // the walk ends where it started unless the south faces are turned
    if lines.len() > 1 && (lines[lines.len() - 1].last().unwrap() - lines[0][0]).norm() <= JOIN_TOL * d.r {
        let tail = lines.pop().unwrap();
        let head = std::mem::replace(&mut lines[0], tail);
        lines[0].extend(head.into_iter().skip(1));
    }
    Ok(Cell {
        id,
        boundary: lines,
        measure: poly_area(d, spec, &q)?,
    })
}

/// Samples the closed boundary so that consecutive images are at most
/// `MAX_CHORD·r` apart. Also returns every other sample of each segment.
fn sphere_boundary<F>(d: &Development, q: &[P2; 4], map: F) -> Result<(Vec<Vec3>, Vec<Vec3>)>
where
    F: Fn(Piece, f64, f64) -> Result<Vec3>,
{
    let chord = MAX_CHORD * d.r;
    let mut fine: Vec<Vec3> = Vec::new();
    let mut coarse: Vec<Vec3> = Vec::new();
    for (piece, a, b) in segments(d, q) {
        let len = (b.0 - a.0).hypot(b.1 - a.1);
        // even, so the coarse samples keep the segment ends
        let mut m = ((len / chord).ceil() as usize).max(1).next_multiple_of(2);
        let samples = loop {
            let pts = (0..=m)
                .map(|j| {
                    let t = j as f64 / m as f64;
                    map(piece, a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
                })
                .collect::<Result<Vec<Vec3>>>()?;
            if pts.windows(2).all(|w| (w[1] - w[0]).norm() <= chord) {
                break pts;
            }
            m *= 2;
        };
        let skip = usize::from(!fine.is_empty());
        coarse.extend(samples.iter().step_by(2).skip(skip));
        fine.extend(samples.into_iter().skip(skip));
    }
    // close exactly
    for line in [&mut fine, &mut coarse] {
        let first = line[0];
        *line.last_mut().unwrap() = first;
    }
    Ok((fine, coarse))
}

/// Cell area from the boundary integral, with the trapezoid error of order
/// `h²` removed by Richardson extrapolation against the half-density samples.
fn sphere_cells<F>(d: &Development, ids: Vec<CellId>, map: F) -> Result<Vec<Cell>>
where
    F: Fn(Piece, f64, f64) -> Result<Vec3> + Sync,
{
    ids.into_par_iter()
        .map(|id| {
            let (fine, coarse) = sphere_boundary(d, &quad(d, &id), &map)?;
            let a_fine = spherical_polygon_area(&fine, d.r)?;
            let a_coarse = spherical_polygon_area(&coarse, d.r)?;
            let measure = (4.0 * a_fine - a_coarse) / 3.0;
            Ok(Cell {
                id,
                boundary: vec![fine],
                measure,
            })
        })
        .collect()
}

/// The rhombic grid on the surface of `K_n(1, p/(p+1))`, each base rhombus
/// split into `k²` cells of equal area. For odd `p` the south pyramid is the
/// one turned by `π/n`.
pub fn build_surface_grid(n: usize, p: usize, k: usize) -> Result<Grid> {
    check(n, p, k)?;
    let d = Development::new(n, 1.0, p);
    let spec = PolyhedronSpec::new(n, 1.0, d.epsilon)?;
    let cells = cell_ids(n, p, k)
        .into_par_iter()
        .map(|id| poly_cell(&d, &spec, id))
        .collect::<Result<Vec<Cell>>>()?;
    Ok(Grid {
        carrier: Carrier::PolySurface,
        n,
        r: 1.0,
        epsilon: d.epsilon,
        p: Some(p),
        level: k,
        cells,
    })
}

/// The sphere image of [`build_surface_grid`] from the closed forms of the
/// map on each face. Works for every `p`, including those for which the
/// polyhedron does not exist (such as `n = 4`, `p = 2`).
pub fn build_sphere_grid(n: usize, p: usize, k: usize) -> Result<Grid> {
    check(n, p, k)?;
    let d = Development::new(n, 1.0, p);
    let cells = sphere_cells(&d, cell_ids(n, p, k), |piece, s, y| Ok(d.to_sphere(piece, s, y)))?;
    Ok(Grid {
        carrier: Carrier::Sphere,
        n,
        r: 1.0,
        epsilon: d.epsilon,
        p: Some(p),
        level: k,
        cells,
    })
}

/// Carries a polyhedron grid to the sphere through the inverse map.
pub fn grid_to_sphere(g: &Grid, spec: &PolyhedronSpec) -> Result<Grid> {
    let Some(p) = g.p.filter(|_| g.carrier == Carrier::PolySurface) else {
        return Err(Error::InvalidGrid("not a polyhedron surface grid".into()));
    };
    if spec.n() != g.n || (spec.epsilon() - g.epsilon).abs() > 1e-15 || spec.r() <= 0.0 {
        return Err(Error::InvalidGrid("grid and polyhedron disagree".into()));
    }
    // the grid is built on K_n(r, ε) scaled from r = 1
    let d = Development::new(g.n, spec.r(), p);
    let ids = g.cells.iter().map(|c| c.id).collect();
    let cells = sphere_cells(&d, ids, |piece, s, y| d.to_sphere_via_poly(spec, piece, s, y))?;
    Ok(Grid {
        carrier: Carrier::Sphere,
        n: g.n,
        r: spec.r(),
        epsilon: g.epsilon,
        p: g.p,
        level: g.level,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn counts_and_equal_areas() {
        let g = build_surface_grid(6, 1, 2).unwrap();
        assert_eq!(g.cells.len(), 6 * 2 * 4);
        assert!(g.measure_spread() < 1e-12);
        assert!((g.total_measure() / (4.0 * PI) - 1.0).abs() < 1e-12);
        let g = build_surface_grid(3, 2, 3).unwrap();
        assert_eq!(g.cells.len(), 3 * 3 * 9);
        assert!(g.measure_spread() < 1e-12);
    }

    #[test]
    fn invalid_epsilon_is_rejected() {
        assert!(matches!(build_surface_grid(3, 9, 1), Err(Error::InvalidEpsilon { .. })));
        assert!(matches!(build_surface_grid(4, 2, 1), Err(Error::InvalidEpsilon { .. })));
        assert!(matches!(build_surface_grid(4, 0, 1), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn polylines_close_on_the_surface() {
        let spec = PolyhedronSpec::new(5, 1.0, 0.5).unwrap();
        let g = build_surface_grid(5, 1, 3).unwrap();
        for c in &g.cells {
            for line in &c.boundary {
                for v in line {
                    assert!(spec.classify_region(v).is_ok() || v.z < -0.5 + 1e-12, "{}", c.id);
                }
            }
        }
        let even = build_surface_grid(3, 2, 2).unwrap();
        for c in &even.cells {
            assert_eq!(c.boundary.len(), 1);
            let line = &c.boundary[0];
            assert!((line[0] - line[line.len() - 1]).norm() < 1e-12);
        }
    }

    #[test]
    fn healpix_base_pixels() {
        let g = build_sphere_grid(4, 2, 1).unwrap();
        assert_eq!(g.cells.len(), 12);
        for c in &g.cells {
            assert!((c.measure / (PI / 3.0) - 1.0).abs() < 1e-6, "{} {}", c.id, c.measure);
        }
    }

    #[test]
    fn both_routes_to_the_sphere_agree() {
        let g = build_surface_grid(4, 1, 2).unwrap();
        let spec = PolyhedronSpec::new(4, 1.0, 0.5).unwrap();
        let via = grid_to_sphere(&g, &spec).unwrap();
        let direct = build_sphere_grid(4, 1, 2).unwrap();
        for (a, b) in via.cells.iter().zip(&direct.cells) {
            assert_eq!(a.id, b.id);
            assert!((a.measure - b.measure).abs() < 1e-12);
            assert!((a.measure / (4.0 * PI / 32.0) - 1.0).abs() < 1e-6);
        }
    }
}
