//! Named groups of checks run by the command-line `verify` subcommand.
//!
//! Every check is a plain function of its parameters and a seed, so callers
//! can run it at any sample count.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    ball_seam_pairs, interior_pairs, monte_carlo_volume, planar_polygon_area, seam_probe, sphere_seam_pairs, SphereSeam, ToleranceKind,
    VerificationReport,
};
use crate::ball_map::{
    admissible_epsilons, ball_to_poly, ball_to_poly_unchecked, jacobian_fd, poly_to_ball, shell_radius, BallPoint, VolumeSpec, FD_STEP,
};
use crate::error::{Error, Result};
use crate::grids::{build_ball_grid, build_sphere_grid, healpix_residuals};
use crate::polyhedron::{Hemisphere, PolySurfacePoint, PolyhedronSpec, Region, SpherePoint, Vec3, ZoneTag};
use crate::sphere_map::{self, fundamental_form};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Area,
    Volume,
    Jacobian,
    Seams,
    Healpix,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Restricts the checks to one `n`; otherwise a default set is used.
    pub n: Option<usize>,
    pub seed: u64,
    pub samples: u64,
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn label(check: &str, n: usize, epsilon: f64) -> String {
    format!("{check}[n={n},eps={epsilon:.6}]")
}

/// Colatitude range of a region of `S²` shrunk by `margin`.
fn colatitude_band(epsilon: f64, region: Region, margin: f64) -> (f64, f64) {
    let cap = epsilon.acos();
    match region {
        Region::PyramidPlus => (margin, cap - margin),
        Region::Prism => (cap + margin, PI - cap - margin),
        Region::PyramidMinus => (PI - cap + margin, PI - margin),
    }
}

fn regions(epsilon: f64) -> Vec<Region> {
    if epsilon > 0.0 {
        vec![Region::PyramidPlus, Region::Prism, Region::PyramidMinus]
    } else {
        vec![Region::PyramidPlus, Region::PyramidMinus]
    }
}

/// Random cells bounded by two parallels and two meridians inside one face:
/// the planar area of the four mapped corners against `r²Δθ(cos φ₁ − cos φ₂)`.
pub fn area_cells(spec: &PolyhedronSpec, count: u64, seed: u64) -> Result<VerificationReport> {
    let mut rng = rng(seed, 1);
    let (n, r) = (spec.n(), spec.r());
    let width = 2.0 * PI / n as f64;
    let regions = regions(spec.epsilon());
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let region = regions[rng.random_range(0..regions.len())];
        let (lo, hi) = colatitude_band(spec.epsilon(), region, 0.0);
        let (mut p1, mut p2) = (rng.random_range(lo..hi), rng.random_range(lo..hi));
        if p1 > p2 {
            std::mem::swap(&mut p1, &mut p2);
        }
        let i = rng.random_range(0..n);
        let base = spec.alpha(i);
        let (mut t1, mut t2) = (rng.random_range(0.0..width), rng.random_range(0.0..width));
        if t1 > t2 {
            std::mem::swap(&mut t1, &mut t2);
        }
        let exact = r * r * (t2 - t1) * (p1.cos() - p2.cos());
        if exact <= 1e-9 * r * r {
            continue;
        }
        let corners = [(p1, t1), (p2, t1), (p2, t2), (p1, t2)]
            .iter()
            .map(|&(phi, t)| sphere_map::forward(&SpherePoint::from_spherical(r, phi, base + t), spec).map(|q| q.vec()))
            .collect::<Result<Vec<_>>>()?;
        worst = worst.max((planar_polygon_area(&corners)? / exact - 1.0).abs());
    }
    Ok(VerificationReport::bound(
        label("area.cells", n, spec.epsilon()),
        worst,
        1e-10,
        count,
        seed,
    ))
}

/// `E′G′ − F′² = r⁴ sin²φ` and the closed form against central differences
/// of the forward map, on the north cap.
pub fn fundamental_form_checks(spec: &PolyhedronSpec, count: u64, seed: u64) -> Result<[VerificationReport; 2]> {
    let mut rng = rng(seed, 2);
    let (n, r) = (spec.n(), spec.r());
    let width = 2.0 * PI / n as f64;
    let (lo, hi) = colatitude_band(spec.epsilon(), Region::PyramidPlus, 1e-2);
    let h = 1e-5;
    let (mut identity, mut fd): (f64, f64) = (0.0, 0.0);
    for _ in 0..count {
        let phi = rng.random_range(lo..hi);
        let i = rng.random_range(0..n);
        let theta = spec.alpha(i) + rng.random_range(0.01 * width..0.99 * width);
        let (e, f, g) = fundamental_form(phi, theta, spec, i);
        let target = r.powi(4) * phi.sin().powi(2);
        identity = identity.max(((e * g - f * f) / target - 1.0).abs());
        let at = |dp: f64, dt: f64| sphere_map::forward(&SpherePoint::from_spherical(r, phi + dp, theta + dt), spec).map(|q| q.vec());
        let d_phi = (at(h, 0.0)? - at(-h, 0.0)?) / (2.0 * h);
        let d_theta = (at(0.0, h)? - at(0.0, -h)?) / (2.0 * h);
        let scale = e.max(g);
        let dev = [(d_phi.norm_squared(), e), (d_phi.dot(&d_theta), f), (d_theta.norm_squared(), g)]
            .iter()
            .map(|(num, closed)| (num - closed).abs() / scale)
            .fold(0.0, f64::max);
        fd = fd.max(dev);
    }
    Ok([
        VerificationReport::bound(
            label("fundamental_form.determinant", n, spec.epsilon()),
            identity,
            1e-12,
            count,
            seed,
        ),
        VerificationReport::bound(
            label("fundamental_form.finite_difference", n, spec.epsilon()),
            fd,
            1e-6,
            count,
            seed,
        ),
    ])
}

fn random_sphere_point(rng: &mut ChaCha8Rng, r: f64) -> SpherePoint {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let theta: f64 = rng.random_range(0.0..2.0 * PI);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    SpherePoint::new(r * rho * theta.cos(), r * rho * theta.sin(), r * z)
}

/// A random point of a random face, tagged with that face.
fn random_surface_point(rng: &mut ChaCha8Rng, spec: &PolyhedronSpec) -> PolySurfacePoint {
    let i = rng.random_range(0..spec.n());
    let regions = regions(spec.epsilon());
    let region = regions[rng.random_range(0..regions.len())];
    let top = spec.belt_top();
    let (a, b): (f64, f64) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
    let v = match region {
        Region::Prism => {
            let z = -top + 2.0 * top * b;
            spec.base_vertex(i, z) + (spec.base_vertex(i + 1, z) - spec.base_vertex(i, z)) * a
        }
        _ => {
            let (a, b) = if a + b > 1.0 { (1.0 - a, 1.0 - b) } else { (a, b) };
            let (apex, z) = if region == Region::PyramidPlus {
                (spec.north_apex(), top)
            } else {
                (spec.south_apex(), -top)
            };
            apex + (spec.base_vertex(i, z) - apex) * a + (spec.base_vertex(i + 1, z) - apex) * b
        }
    };
    let hemisphere = if v.z >= 0.0 { Hemisphere::North } else { Hemisphere::South };
    PolySurfacePoint {
        x: v.x,
        y: v.y,
        z: v.z,
        region,
        zone: ZoneTag { i, hemisphere },
    }
}

/// Both roundtrips of the surface map; reports the larger error over `r`.
pub fn sphere_roundtrip(spec: &PolyhedronSpec, count: u64, seed: u64) -> Result<VerificationReport> {
    let mut rng = rng(seed, 3);
    let r = spec.r();
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let p = random_sphere_point(&mut rng, r);
        let back = sphere_map::invert(&sphere_map::forward(&p, spec)?, spec)?;
        worst = worst.max((back.vec() - p.vec()).norm());
        let q = random_surface_point(&mut rng, spec);
        let again = sphere_map::forward(&sphere_map::invert(&q, spec)?, spec)?;
        worst = worst.max((again.vec() - q.vec()).norm());
    }
    Ok(VerificationReport::bound(
        label("roundtrip.sphere", spec.n(), spec.epsilon()),
        worst / r,
        1e-10,
        2 * count,
        seed,
    ))
}

/// Both roundtrips of the ball map; reports the larger error over `r`.
pub fn ball_roundtrip(vspec: &VolumeSpec, count: u64, seed: u64) -> Result<VerificationReport> {
    let mut rng = rng(seed, 4);
    let r = vspec.r;
    let max = r * vspec.xi;
    let reach = max * vspec.outer().north_apex().z.max(vspec.outer().big_r()) / max;
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let dir = random_sphere_point(&mut rng, 1.0).vec();
        let p = dir * r * rng.random_range(0.0f64..=1.0).cbrt();
        let q = ball_to_poly(&BallPoint::from(p), vspec)?;
        worst = worst.max((poly_to_ball(&q.vec(), vspec)?.vec() - p).norm());
        let q = loop {
            let c = Vec3::new(
                rng.random_range(-reach..reach),
                rng.random_range(-reach..reach),
                rng.random_range(-reach..reach),
            );
            if shell_radius(&c, vspec).1 <= max {
                break c;
            }
        };
        let again = ball_to_poly(&poly_to_ball(&q, vspec)?, vspec)?;
        worst = worst.max((again.vec() - q).norm());
    }
    Ok(VerificationReport::bound(
        label("roundtrip.ball", vspec.n, vspec.epsilon),
        worst / r,
        1e-9,
        2 * count,
        seed,
    ))
}

/// Random ball points strictly inside one region and zone.
fn interior_ball_points(rng: &mut ChaCha8Rng, vspec: &VolumeSpec, region: Region, count: u64) -> Vec<Vec3> {
    let width = 2.0 * PI / vspec.n as f64;
    // ρ sin φ ≥ 0.01·r keeps a 1e-5·r step within 1e-3 of longitude
    let (lo, hi) = colatitude_band(vspec.epsilon, region, 5e-2);
    (0..count)
        .map(|_| {
            let phi = rng.random_range(lo..hi);
            let i = rng.random_range(0..vspec.n);
            let theta = width * i as f64 + rng.random_range(1e-2..width - 1e-2);
            let rho = vspec.r * rng.random_range(0.2..0.95);
            SpherePoint::from_spherical(rho, phi, theta).vec()
        })
        .collect()
}

fn fd_jacobians(vspec: &VolumeSpec, region: Region, count: u64, seed: u64) -> Result<Vec<f64>> {
    let mut rng = rng(seed, 5 + region as u64);
    let step = FD_STEP * vspec.r;
    interior_ball_points(&mut rng, vspec, region, count)
        .iter()
        .map(|p| jacobian_fd(|x| ball_to_poly_unchecked(&BallPoint::from(*x), vspec), p, step))
        .collect()
}

/// Finite-difference Jacobian determinant equals one in every region.
pub fn jacobian_unit(vspec: &VolumeSpec, per_region: u64, seed: u64) -> Result<Vec<VerificationReport>> {
    regions(vspec.epsilon)
        .into_iter()
        .map(|region| {
            let worst = fd_jacobians(vspec, region, per_region, seed)?
                .into_iter()
                .map(|j| (j - 1.0).abs())
                .fold(0.0, f64::max);
            let check = label(&format!("jacobian.unit.{}", region.as_str()), vspec.n, vspec.epsilon);
            Ok(VerificationReport::bound(check, worst, 1e-6, per_region, seed))
        })
        .collect()
}

/// Finite-difference Jacobian against the closed forms on the caps and the belt.
pub fn jacobian_closed_form(vspec: &VolumeSpec, per_region: u64, seed: u64) -> Result<Vec<VerificationReport>> {
    regions(vspec.epsilon)
        .into_iter()
        .map(|region| {
            let expected = if region == Region::Prism {
                vspec.jacobian_belt()
            } else {
                vspec.jacobian_cap()
            };
            let worst = fd_jacobians(vspec, region, per_region, seed)?
                .into_iter()
                .map(|j| (j / expected - 1.0).abs())
                .fold(0.0, f64::max);
            let check = label(&format!("jacobian.closed_form.{}", region.as_str()), vspec.n, vspec.epsilon);
            Ok(VerificationReport::bound(check, worst, 1e-6, per_region, seed))
        })
        .collect()
}

const SEAM_DELTA: f64 = 1e-9;

/// Image gaps across the zone planes and the belt circles, plus an interior control.
pub fn sphere_seams(spec: &PolyhedronSpec, per_seam: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let r = spec.r();
    let map = |p: &Vec3| sphere_map::forward(&SpherePoint::from(*p), spec).map(|q| q.vec());
    let mut out = Vec::new();
    let seams: &[(SphereSeam, &str)] = if spec.epsilon() > 0.0 {
        &[(SphereSeam::ZonePlanes, "zone_planes"), (SphereSeam::BeltCircles, "belt_circles")]
    } else {
        &[(SphereSeam::ZonePlanes, "zone_planes")]
    };
    for &(seam, name) in seams {
        let pairs = sphere_seam_pairs(spec, seam, SEAM_DELTA * r, per_seam, seed);
        let gap = seam_probe(map, &pairs)?;
        out.push(VerificationReport::bound(
            label(&format!("seams.sphere.{name}"), spec.n(), spec.epsilon()),
            gap / r,
            1e-6,
            pairs.len() as u64,
            seed,
        ));
    }
    let control = interior_pairs(spec, SEAM_DELTA * r, per_seam, seed);
    let gap = seam_probe(map, &control)?;
    out.push(VerificationReport::bound(
        label("seams.sphere.interior", spec.n(), spec.epsilon()),
        gap / r,
        1e-5,
        control.len() as u64,
        seed,
    ));
    Ok(out)
}

/// Image gaps of the ball map across the cap/belt cones and the zone planes.
pub fn ball_seams(vspec: &VolumeSpec, per_seam: usize, seed: u64) -> Result<VerificationReport> {
    let map = |p: &Vec3| ball_to_poly(&BallPoint::from(*p), vspec).map(|q| q.vec());
    let pairs = ball_seam_pairs(vspec, SEAM_DELTA * vspec.r, per_seam, seed);
    let gap = seam_probe(map, &pairs)?;
    Ok(VerificationReport::bound(
        label("seams.ball", vspec.n, vspec.epsilon),
        gap / vspec.r,
        1e-6,
        pairs.len() as u64,
        seed,
    ))
}

/// Curve residuals for the `n = 4`, `p = 2` grid at subdivision `k`, all `ℓ`.
pub fn healpix_curves(k: usize) -> Result<Vec<VerificationReport>> {
    (0..=k)
        .map(|ell| {
            let res = healpix_residuals(k, ell)?;
            Ok(VerificationReport::bound(
                format!("healpix.curves[k={k},l={ell}]"),
                res.max(),
                1e-12,
                res.samples as u64,
                0,
            ))
        })
        .collect()
}

/// Largest relative deviation of sphere cell areas from `4πr²/cells`, and the
/// relative error of their total.
pub fn sphere_grid_areas(n: usize, p: usize, k: usize) -> Result<[VerificationReport; 2]> {
    let g = build_sphere_grid(n, p, k)?;
    let total = 4.0 * PI * g.r * g.r;
    let target = total / g.cells.len() as f64;
    let worst = g.cells.iter().map(|c| (c.measure / target - 1.0).abs()).fold(0.0, f64::max);
    let count = g.cells.len() as u64;
    Ok([
        VerificationReport::bound(format!("grid.sphere.equal_area[n={n},p={p},k={k}]"), worst, 1e-6, count, 0),
        VerificationReport::new(
            format!("grid.sphere.total[n={n},p={p},k={k}]"),
            g.total_measure(),
            total,
            1e-8,
            ToleranceKind::Relative,
            count,
            0,
        ),
    ])
}

/// Monte Carlo volume of `K̄_n(r, ε)` against `γr³`.
pub fn solid_volume(vspec: &VolumeSpec, samples: u64, seed: u64) -> VerificationReport {
    let unit = vspec.unit();
    let reach = unit.north_apex().z.max(unit.big_r());
    let est = monte_carlo_volume(
        |p| shell_radius(p, vspec).1 <= 1.0,
        Vec3::repeat(-reach),
        Vec3::repeat(reach),
        samples,
        seed,
    );
    VerificationReport::new(
        label("volume.solid_polyhedron", vspec.n, vspec.epsilon),
        est.estimate,
        vspec.gamma,
        3.0 * est.stderr,
        ToleranceKind::Absolute,
        samples,
        seed,
    )
}

/// Monte Carlo volume of the preimage of a box inside the solid polyhedron.
pub fn box_preimage_volume(vspec: &VolumeSpec, samples: u64, seed: u64) -> Result<VerificationReport> {
    let r = vspec.r;
    let (lo, hi) = (Vec3::new(-0.3, -0.2, 0.05) * r, Vec3::new(0.25, 0.35, 0.5) * r);
    let inside = |p: &Vec3| match ball_to_poly(&BallPoint::from(*p), vspec) {
        Ok(q) => (0..3).all(|a| q.vec()[a] >= lo[a] && q.vec()[a] <= hi[a]),
        Err(_) => false,
    };
    let est = monte_carlo_volume(|p| p.norm() <= r && inside(p), Vec3::repeat(-r), Vec3::repeat(r), samples, seed);
    let exact = (hi - lo).iter().product::<f64>();
    Ok(VerificationReport::new(
        label("volume.box_preimage", vspec.n, vspec.epsilon),
        est.estimate,
        exact,
        3.0 * est.stderr,
        ToleranceKind::Absolute,
        samples,
        seed,
    ))
}

/// The tetrahedral grid: count, total, children, the common volume of all
/// cells, and Monte Carlo volumes of `sampled` ball-side cells against both
/// their own tetrahedron and the common value `4πr³/(3·cells)`.
pub fn ball_grid_checks(vspec: &VolumeSpec, levels: usize, sampled: usize, samples: u64, seed: u64) -> Result<Vec<VerificationReport>> {
    let g = build_ball_grid(vspec, levels)?;
    let (n, eps) = (vspec.n, vspec.epsilon);
    let per_level = 4usize.pow(levels as u32);
    let expected_count = if eps > 0.0 { 4 * n * per_level } else { 2 * n * per_level };
    let tag = |check: &str| format!("{}[levels={levels}]", label(check, n, eps));
    let count = g.tetrahedra.len();
    let mut out = vec![VerificationReport::new(
        tag("ball_grid.count"),
        count as f64,
        expected_count as f64,
        0.0,
        ToleranceKind::Absolute,
        1,
        seed,
    )];
    let volumes: Vec<f64> = g.tetrahedra.iter().map(|t| t.volume()).collect();
    let total: f64 = volumes.iter().sum();
    out.push(VerificationReport::new(
        tag("ball_grid.total_volume"),
        total,
        (vspec.r * vspec.xi).powi(3) * vspec.gamma,
        1e-12,
        ToleranceKind::Relative,
        count as u64,
        seed,
    ));
    if levels > 0 {
        let parents = build_ball_grid(vspec, levels - 1)?;
        let worst = volumes
            .chunks(4)
            .zip(&parents.tetrahedra)
            .flat_map(|(kids, parent)| kids.iter().map(move |v| (v / (parent.volume() / 4.0) - 1.0).abs()))
            .fold(0.0, f64::max);
        out.push(VerificationReport::bound(
            tag("ball_grid.child_quarter"),
            worst,
            1e-13,
            count as u64,
            seed,
        ));
    }
    let (lo, hi) = volumes.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    out.push(VerificationReport::bound(
        tag("ball_grid.equal_volume"),
        hi / lo - 1.0,
        1e-13,
        count as u64,
        seed,
    ));
    let common = 4.0 * PI * vspec.r.powi(3) / (3.0 * count as f64);
    for j in 0..sampled.min(count) {
        let idx = j * count / sampled.min(count);
        let (blo, bhi) = g.ball_cell_box(idx)?;
        let est = monte_carlo_volume(|p| g.ball_cell_contains(idx, p), blo, bhi, samples, seed.wrapping_add(idx as u64));
        let id = g.tetrahedra[idx].id;
        out.push(VerificationReport::new(
            format!("{}[cell={id}]", tag("ball_grid.mc_own_volume")),
            est.estimate,
            volumes[idx],
            3.0 * est.stderr,
            ToleranceKind::Absolute,
            samples,
            seed,
        ));
        out.push(VerificationReport::new(
            format!("{}[cell={id}]", tag("ball_grid.mc_common_volume")),
            est.estimate,
            common,
            3.0 * est.stderr,
            ToleranceKind::Absolute,
            samples,
            seed,
        ));
    }
    Ok(out)
}

fn ns(cfg: &SuiteConfig, default: &[usize]) -> Vec<usize> {
    cfg.n.map_or_else(|| default.to_vec(), |n| vec![n])
}

fn specs(cfg: &SuiteConfig, default_n: &[usize], eps: &[f64]) -> Result<Vec<PolyhedronSpec>> {
    let mut out = Vec::new();
    for n in ns(cfg, default_n) {
        if n < 3 {
            return Err(Error::InvalidN(n));
        }
        for &e in eps {
            if e < PolyhedronSpec::epsilon_max(n) {
                out.push(PolyhedronSpec::new(n, 1.0, e)?);
            }
        }
    }
    Ok(out)
}

fn admissible_specs(cfg: &SuiteConfig, default_n: &[usize]) -> Result<Vec<VolumeSpec>> {
    let mut out = Vec::new();
    for n in ns(cfg, default_n) {
        if n < 3 {
            return Err(Error::InvalidN(n));
        }
        for e in admissible_epsilons(n) {
            out.push(VolumeSpec::new(n, 1.0, e)?);
        }
    }
    Ok(out)
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let (seed, samples) = (cfg.seed, cfg.samples);
    let mut out = Vec::new();
    match suite {
        Suite::All => {
            for s in [Suite::Area, Suite::Volume, Suite::Jacobian, Suite::Seams, Suite::Healpix] {
                out.extend(run(s, cfg)?);
            }
        }
        Suite::Area => {
            for spec in specs(cfg, &[3, 4, 6], &[0.0, 1.0 / 3.0, 2.0 / 3.0])? {
                out.push(area_cells(&spec, samples, seed)?);
                out.extend(fundamental_form_checks(&spec, samples.min(1000), seed)?);
                out.push(sphere_roundtrip(&spec, samples, seed)?);
            }
            for n in ns(cfg, &[3, 4, 6]) {
                out.extend(sphere_grid_areas(n, 1, 2)?);
            }
        }
        Suite::Volume => {
            for vspec in admissible_specs(cfg, &[3, 4, 5])? {
                out.push(ball_roundtrip(&vspec, samples, seed)?);
                out.push(solid_volume(&vspec, samples.max(10_000), seed));
                out.push(box_preimage_volume(&vspec, samples.max(10_000), seed)?);
                out.extend(ball_grid_checks(&vspec, 1, 8, samples.max(10_000), seed)?);
            }
        }
        Suite::Jacobian => {
            let per_region = samples.min(1000);
            for vspec in admissible_specs(cfg, &[3, 4, 5])? {
                out.extend(jacobian_unit(&vspec, per_region, seed)?);
            }
            let others: Vec<VolumeSpec> = match cfg.n {
                Some(n) => [0.15, 0.35]
                    .iter()
                    .filter_map(|&e| VolumeSpec::new(n, 1.0, e).ok())
                    .filter(|v| !v.admissible)
                    .collect(),
                None => vec![VolumeSpec::new(4, 1.0, 0.3)?, VolumeSpec::new(6, 1.0, 0.3)?],
            };
            for vspec in others {
                out.extend(jacobian_closed_form(&vspec, per_region, seed)?);
            }
        }
        Suite::Seams => {
            let per_seam = (samples as usize / 10).clamp(10, 1000);
            for spec in specs(cfg, &[3, 4, 5, 6, 8], &[0.0, 0.2, 0.4])? {
                out.extend(sphere_seams(&spec, per_seam, seed)?);
            }
            for vspec in admissible_specs(cfg, &[3, 4, 5])? {
                out.push(ball_seams(&vspec, per_seam, seed)?);
            }
        }
        Suite::Healpix => {
            for k in [1, 2, 4] {
                out.extend(healpix_curves(k)?);
                out.extend(sphere_grid_areas(4, 2, k)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        let spec = PolyhedronSpec::new(4, 1.0, 1.0 / 3.0).unwrap();
        assert!(area_cells(&spec, 500, 1).unwrap().passed);
        assert!(fundamental_form_checks(&spec, 100, 1).unwrap().iter().all(|r| r.passed));
        assert!(sphere_roundtrip(&spec, 500, 1).unwrap().passed);
        let vspec = VolumeSpec::new(4, 1.0, 0.20861).unwrap();
        assert!(ball_roundtrip(&vspec, 500, 1).unwrap().passed);
        assert!(jacobian_unit(&vspec, 50, 1).unwrap().iter().all(|r| r.passed));
        let other = VolumeSpec::new(6, 1.0, 0.3).unwrap();
        assert!(jacobian_closed_form(&other, 50, 1).unwrap().iter().all(|r| r.passed));
        assert!(ball_seams(&vspec, 50, 1).unwrap().passed);
    }

    #[test]
    fn suites_are_deterministic() {
        let cfg = SuiteConfig {
            n: Some(4),
            seed: 7,
            samples: 1000,
        };
        assert_eq!(run(Suite::Area, &cfg).unwrap(), run(Suite::Area, &cfg).unwrap());
        assert!(run(Suite::Healpix, &cfg).unwrap().iter().all(|r| r.passed));
    }
}
