use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use polysphere::ball_map::{ball_to_poly, poly_to_ball, BallPoint, VolumeSpec};
use polysphere::polyhedron::{PolyhedronSpec, SpherePoint, Vec3};
use polysphere::sphere_map;

use crate::format::num;
use crate::{io_error, sink, usage, CliError, Direction, SpecArgs};

/// Rows `x,y,z`; a first line that is not numeric is a header. Columns past
/// the third are ignored so the output of one direction feeds the other.
fn parse(text: &str) -> Vec<(usize, Result<Vec3, String>)> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let values: Result<Vec<f64>, _> = fields.iter().take(3).map(|f| f.parse::<f64>()).collect();
        let row = match values {
            Ok(v) if v.len() == 3 && v.iter().all(|x| x.is_finite()) => Ok(Vec3::new(v[0], v[1], v[2])),
            Ok(v) => Err(format!("expected 3 finite numbers, got {}", v.len())),
            Err(_) if idx == 0 => continue,
            Err(e) => Err(format!("not a number: {e}")),
        };
        rows.push((idx + 1, row));
    }
    rows
}

enum Mapper {
    Surface(PolyhedronSpec),
    Solid(VolumeSpec),
}

pub fn run(direction: Direction, spec: &SpecArgs, input: &Path, output: &Option<PathBuf>) -> Result<(), CliError> {
    let eps = spec.epsilon()?;
    let mapper = match direction {
        Direction::SphereToPoly | Direction::PolyToSphere => Mapper::Surface(PolyhedronSpec::new(spec.n, spec.r, eps).map_err(usage)?),
        Direction::BallToPoly | Direction::PolyToBall => {
            let v = VolumeSpec::new(spec.n, spec.r, eps).map_err(usage)?;
            if !v.admissible {
                return Err(usage(polysphere::Error::NotAdmissible {
                    n: v.n,
                    epsilon: v.epsilon,
                }));
            }
            Mapper::Solid(v)
        }
    };
    let text = fs::read_to_string(input).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?;
    let mut out = sink(output)?;
    let tagged = matches!(direction, Direction::SphereToPoly | Direction::BallToPoly);
    writeln!(out, "{}", if tagged { "X,Y,Z,region,zone" } else { "x,y,z" }).map_err(io_error)?;
    let mut skipped = 0usize;
    for (line, row) in parse(&text) {
        let mapped = row.and_then(|p| {
            match (&mapper, direction) {
                (Mapper::Surface(s), Direction::SphereToPoly) => sphere_map::forward(&SpherePoint::from(p), s)
                    .map(|q| format!("{},{},{},{},{}", num(q.x), num(q.y), num(q.z), q.region.as_str(), q.zone.i)),
                (Mapper::Surface(s), _) => sphere_map::invert_point(&p, s).map(|w| format!("{},{},{}", num(w.x), num(w.y), num(w.z))),
                (Mapper::Solid(v), Direction::BallToPoly) => ball_to_poly(&BallPoint::from(p), v)
                    .map(|q| format!("{},{},{},{},{}", num(q.x), num(q.y), num(q.z), q.region.as_str(), q.zone.i)),
                (Mapper::Solid(v), _) => poly_to_ball(&p, v).map(|w| format!("{},{},{}", num(w.x), num(w.y), num(w.z))),
            }
            .map_err(|e| e.to_string())
        });
        match mapped {
            Ok(s) => writeln!(out, "{s}").map_err(io_error)?,
            Err(e) => {
                eprintln!("line {line}: {e}");
                skipped += 1;
            }
        }
    }
    out.flush().map_err(io_error)?;
    if skipped > 0 {
        return Err(CliError::Data(format!("{skipped} rows skipped")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_bad_rows() {
        let rows = parse("x,y,z\n1,0,0\n\n1,2\na,b,c\n0, 0 ,1\n");
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0], (2, Ok(Vec3::new(1.0, 0.0, 0.0))));
        assert!(rows[1].1.is_err() && rows[2].1.is_err());
        assert_eq!(rows[3], (6, Ok(Vec3::z())));
    }
}
