//! Uniform grids on `K_n`, the sphere, the solid polyhedron and the ball.
//!
//! Surface grids use `ε = p/(p+1)`, for which the unfolded surface is tiled by
//! `n(p+1)` congruent rhombi; each splits into `k²` equal sub-rhombi by
//! parallels to its edges. Ball grids cut the solid polyhedron into `4n`
//! tetrahedra with apex at the origin and refine each by its centroid.

mod ball;
mod development;
mod face;
mod surface;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::polyhedron::{Region, Vec3};

pub use ball::{build_ball_grid, BallGrid, Tetrahedron};
pub use face::{healpix_residuals, pyramid_face_point, FaceParam, HealpixResiduals};
pub use surface::{build_sphere_grid, build_surface_grid, grid_to_sphere, MAX_CHORD};

/// The ε whose surface grid has `p + 1` rhombus rows per face.
pub fn epsilon_for(p: usize) -> f64 {
    p as f64 / (p as f64 + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    PolySurface,
    Sphere,
    SolidPoly,
    Ball,
}

/// Identifies a cell.
///
/// Surface cells: `base` is the rhombus row `0..=p` of face `face` (row 0
/// holds the north face, row `p` the south one), `row` and `col` index the
/// `k × k` sub-rhombi and `level` is `k`. Tetrahedra: `base` is the
/// triangle of the face (0 on pyramids, 0 or 1 on prism faces), `col`
/// encodes the refinement path in base 4 and `level` is the depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId {
    pub region: Region,
    pub face: usize,
    pub base: usize,
    pub row: usize,
    pub col: usize,
    pub level: usize,
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}:{}:{}",
            self.region.as_str(),
            self.face,
            self.base,
            self.row,
            self.col,
            self.level
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub id: CellId,
    /// Boundary polylines, each closed one repeating its first point at the end.
    pub boundary: Vec<Vec<Vec3>>,
    /// Area for surface carriers, volume for solid ones.
    pub measure: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub carrier: Carrier,
    pub n: usize,
    pub r: f64,
    pub epsilon: f64,
    /// Rows parameter of surface grids.
    pub p: Option<usize>,
    /// `k` for surface grids, refinement depth for ball grids.
    pub level: usize,
    pub cells: Vec<Cell>,
}

impl Grid {
    pub fn total_measure(&self) -> f64 {
        self.cells.iter().map(|c| c.measure).sum()
    }

    /// `max/min − 1` over cell measures.
    pub fn measure_spread(&self) -> f64 {
        let (lo, hi) = self
            .cells
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), c| (lo.min(c.measure), hi.max(c.measure)));
        hi / lo - 1.0
    }
}
