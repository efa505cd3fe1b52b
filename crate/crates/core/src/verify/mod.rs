//! Independent numerical oracles: boundary line integrals for spherical
//! area, planar shoelace area, seeded Monte Carlo volume, seam probes, and
//! the report type used by the verification suites.
//!
//! Nothing here calls the closed-form maps except through the closures the
//! caller passes in.

mod area;
mod monte_carlo;
mod report;
mod seams;
pub mod suites;

pub use area::{planar_polygon_area, spherical_polygon_area};
pub use monte_carlo::{monte_carlo_volume, McEstimate, BATCH_SIZE};
pub use report::{ToleranceKind, VerificationReport};
pub use seams::{ball_seam_pairs, interior_pairs, seam_probe, sphere_seam_pairs, SphereSeam};
