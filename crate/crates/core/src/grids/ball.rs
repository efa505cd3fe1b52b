use nalgebra::Matrix3;
use rayon::prelude::*;

use super::{Carrier, Cell, CellId, Grid, MAX_CHORD};
use crate::ball_map::{ball_to_poly, poly_to_ball, BallPoint, VolumeSpec};
use crate::error::{Error, Result};
use crate::polyhedron::{Region, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrahedron {
    pub id: CellId,
    pub vertices: [Vec3; 4],
}

impl Tetrahedron {
    pub fn volume(&self) -> f64 {
        let [a, b, c, d] = self.vertices;
        Matrix3::from_columns(&[b - a, c - a, d - a]).determinant().abs() / 6.0
    }

    /// Barycentric test with slack `tol` on each coordinate.
    pub fn contains(&self, p: &Vec3, tol: f64) -> bool {
        let [a, b, c, d] = self.vertices;
        match Matrix3::from_columns(&[b - a, c - a, d - a]).try_inverse() {
            Some(inv) => {
                let w = inv * (p - a);
                w.iter().all(|x| *x >= -tol) && w.sum() <= 1.0 + tol
            }
            None => false,
        }
    }

    /// The four tetrahedra joining the centroid to the faces, each `V/4`.
    pub fn split(&self) -> [Tetrahedron; 4] {
        let centroid = self.vertices.iter().sum::<Vec3>() / 4.0;
        std::array::from_fn(|c| {
            let mut vertices = self.vertices;
            vertices[c] = centroid;
            let id = CellId {
                col: self.id.col * 4 + c,
                level: self.id.level + 1,
                ..self.id
            };
            Tetrahedron { id, vertices }
        })
    }

    /// Edge paths covering all six edges.
    fn edge_paths(&self) -> [Vec<Vec3>; 2] {
        let [a, b, c, d] = self.vertices;
        [vec![a, b, c, a, d, b], vec![c, d]]
    }
}

/// The tetrahedra of the solid polyhedron `K̄_n(rξ, ε)` and their images in
/// the ball of radius `r`.
#[derive(Debug, Clone)]
pub struct BallGrid {
    pub vspec: VolumeSpec,
    pub levels: usize,
    pub tetrahedra: Vec<Tetrahedron>,
}

/// Apex-`O` tetrahedra over the `2n` pyramid faces and the `2n` halves of
/// the prism faces (cut from the lower vertex `i` to the upper vertex
/// `i + 1`), each refined `levels` times. For `ε = 0` the prism is flat and
/// only the `2n` pyramid tetrahedra remain.
pub fn build_ball_grid(vspec: &VolumeSpec, levels: usize) -> Result<BallGrid> {
    if !vspec.admissible {
        return Err(Error::NotAdmissible {
            n: vspec.n,
            epsilon: vspec.epsilon,
        });
    }
    let outer = vspec.outer();
    let top = outer.belt_top();
    let o = Vec3::zeros();
    let id = |region, face, base| CellId {
        region,
        face,
        base,
        row: 0,
        col: 0,
        level: 0,
    };
    let mut tets = Vec::with_capacity(4 * vspec.n);
    for i in 0..vspec.n {
        let (up0, up1) = (outer.base_vertex(i, top), outer.base_vertex(i + 1, top));
        let (lo0, lo1) = (outer.base_vertex(i, -top), outer.base_vertex(i + 1, -top));
        tets.push(Tetrahedron {
            id: id(Region::PyramidPlus, i, 0),
            vertices: [o, up0, up1, outer.north_apex()],
        });
        if top > 0.0 {
            tets.push(Tetrahedron {
                id: id(Region::Prism, i, 0),
                vertices: [o, lo0, lo1, up1],
            });
            tets.push(Tetrahedron {
                id: id(Region::Prism, i, 1),
                vertices: [o, lo0, up1, up0],
            });
        }
        tets.push(Tetrahedron {
            id: id(Region::PyramidMinus, i, 0),
            vertices: [o, lo1, lo0, outer.south_apex()],
        });
    }
    for _ in 0..levels {
        tets = tets.iter().flat_map(|t| t.split()).collect();
    }
    Ok(BallGrid {
        vspec: *vspec,
        levels,
        tetrahedra: tets,
    })
}

impl BallGrid {
    /// The tetrahedra, measured by volume.
    pub fn solid_grid(&self) -> Grid {
        let cells = self
            .tetrahedra
            .iter()
            .map(|t| Cell {
                id: t.id,
                boundary: t.edge_paths().to_vec(),
                measure: t.volume(),
            })
            .collect();
        self.grid(Carrier::SolidPoly, cells)
    }

    /// Images in the ball, edges sampled to chords of at most `MAX_CHORD·r`.
    /// The map preserves volume, so each measure is its tetrahedron's.
    pub fn ball_grid(&self) -> Result<Grid> {
        let cells = self
            .tetrahedra
            .par_iter()
            .map(|t| {
                let boundary = t
                    .edge_paths()
                    .iter()
                    .map(|path| self.sample_path(path))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Cell {
                    id: t.id,
                    boundary,
                    measure: t.volume(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.grid(Carrier::Ball, cells))
    }

    fn grid(&self, carrier: Carrier, cells: Vec<Cell>) -> Grid {
        Grid {
            carrier,
            n: self.vspec.n,
            r: self.vspec.r,
            epsilon: self.vspec.epsilon,
            p: None,
            level: self.levels,
            cells,
        }
    }

    fn sample_path(&self, path: &[Vec3]) -> Result<Vec<Vec3>> {
        let chord = MAX_CHORD * self.vspec.r;
        let mut out = vec![poly_to_ball(&path[0], &self.vspec)?.vec()];
        for w in path.windows(2) {
            let mut m = (((w[1] - w[0]).norm() / chord).ceil() as usize).max(1);
            let pts = loop {
                let pts = (1..=m)
                    .map(|j| poly_to_ball(&(w[0] + (w[1] - w[0]) * (j as f64 / m as f64)), &self.vspec).map(|b| b.vec()))
                    .collect::<Result<Vec<_>>>()?;
                let prev = *out.last().unwrap();
                if std::iter::once(&prev)
                    .chain(&pts)
                    .collect::<Vec<_>>()
                    .windows(2)
                    .all(|p| (p[1] - p[0]).norm() <= chord)
                {
                    break pts;
                }
                m *= 2;
            };
            out.extend(pts);
        }
        Ok(out)
    }

    /// Whether the ball point `p` lies in the image of tetrahedron `idx`.
    pub fn ball_cell_contains(&self, idx: usize, p: &Vec3) -> bool {
        match ball_to_poly(&BallPoint::from(*p), &self.vspec) {
            Ok(q) => self.tetrahedra[idx].contains(&q.vec(), 0.0),
            Err(_) => false,
        }
    }

    /// A box enclosing the image of tetrahedron `idx`: the hull of the images
    /// of a lattice on its faces, widened by `1e-2·r` and clipped to the ball's box.
    pub fn ball_cell_box(&self, idx: usize) -> Result<(Vec3, Vec3)> {
        const LATTICE: usize = 32;
        let v = self.tetrahedra[idx].vertices;
        let mut lo = Vec3::repeat(f64::INFINITY);
        let mut hi = Vec3::repeat(f64::NEG_INFINITY);
        for skip in 0..4 {
            let f: Vec<Vec3> = (0..4).filter(|&c| c != skip).map(|c| v[c]).collect();
            for a in 0..=LATTICE {
                for b in 0..=LATTICE - a {
                    let (x, y) = (a as f64 / LATTICE as f64, b as f64 / LATTICE as f64);
                    let q = f[0] + (f[1] - f[0]) * x + (f[2] - f[0]) * y;
                    let w = poly_to_ball(&q, &self.vspec)?.vec();
                    lo = lo.inf(&w);
                    hi = hi.sup(&w);
                }
            }
        }
        let r = self.vspec.r;
        let pad = Vec3::repeat(1e-2 * r);
        Ok(((lo - pad).sup(&Vec3::repeat(-r)), (hi + pad).inf(&Vec3::repeat(r))))
    }
}
