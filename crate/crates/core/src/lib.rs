pub mod ball_map;
pub mod error;
pub mod grids;
pub mod polyhedron;
pub mod sphere_map;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polyhedron.md")]
    mod polyhedron {}
    #[doc = include_str!("../../../book/src/sphere_map.md")]
    mod sphere_map {}
    #[doc = include_str!("../../../book/src/ball_map.md")]
    mod ball_map {}
    #[doc = include_str!("../../../book/src/grids.md")]
    mod grids {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
