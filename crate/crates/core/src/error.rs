use thiserror::Error;

/// Errors raised by constructors, maps and grid builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("n must be at least 3, got {0}")]
    InvalidN(usize),
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("epsilon {epsilon} outside [0, {max}) for n = {n}; the pyramid altitude b_n would not be positive")]
    InvalidEpsilon { n: usize, epsilon: f64, max: f64 },
    #[error("point is not on the sphere of radius {r} (|p| = {norm})")]
    NotOnSphere { r: f64, norm: f64 },
    #[error("point ({0}, {1}, {2}) is not on the polyhedron surface")]
    NotOnSurface(f64, f64, f64),
    #[error("point outside the domain of {0}")]
    Domain(&'static str),
    #[error("point lies outside the ball of radius {r} (|p| = {norm})")]
    OutsideBall { r: f64, norm: f64 },
    #[error("point lies outside the solid polyhedron (shell radius {rho} > {max})")]
    OutsidePolyhedron { rho: f64, max: f64 },
    #[error("epsilon {epsilon} is not admissible for n = {n}: the ball map would not preserve volume")]
    NotAdmissible { n: usize, epsilon: f64 },
    #[error("finite-difference step {0} crosses a region boundary")]
    StepTooLarge(f64),
    #[error("polygon vertices are not coplanar (residual {0})")]
    NonPlanar(f64),
    #[error("curve is not closed")]
    OpenCurve,
    #[error("curve needs at least 3 samples, got {0}")]
    DegenerateCurve(usize),
    #[error("invalid grid parameter: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
