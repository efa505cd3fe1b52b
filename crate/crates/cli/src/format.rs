use std::io::Write;

use polysphere::grids::{Carrier, Grid};

use crate::{io_error, CliError, Format};

/// 17 significant digits, enough to read back the same double.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn carrier_name(c: Carrier) -> &'static str {
    match c {
        Carrier::PolySurface => "poly_surface",
        Carrier::Sphere => "sphere",
        Carrier::SolidPoly => "solid_poly",
        Carrier::Ball => "ball",
    }
}

fn header(g: &Grid) -> String {
    let p = g.p.map(|p| format!(" p={p}")).unwrap_or_default();
    format!(
        "# polysphere grid carrier={} n={} r={} epsilon={}{p} level={} cells={}",
        carrier_name(g.carrier),
        g.n,
        g.r,
        g.epsilon,
        g.level,
        g.cells.len()
    )
}

pub fn write_grid(out: &mut dyn Write, g: &Grid, format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, g).map_err(|e| CliError::Data(e.to_string()))?;
            writeln!(out).map_err(io_error)
        }
        Format::Csv => {
            writeln!(out, "{}", header(g)).map_err(io_error)?;
            writeln!(out, "cell_id,seq,x,y,z").map_err(io_error)?;
            for cell in &g.cells {
                for (seq, v) in cell.boundary.iter().flatten().enumerate() {
                    writeln!(out, "{},{seq},{},{},{}", cell.id, num(v.x), num(v.y), num(v.z)).map_err(io_error)?;
                }
            }
            Ok(())
        }
        Format::Obj => {
            writeln!(out, "{}", header(g)).map_err(io_error)?;
            let mut next = 1usize;
            for cell in &g.cells {
                writeln!(out, "# cell {} measure {}", cell.id, num(cell.measure)).map_err(io_error)?;
                for line in &cell.boundary {
                    for v in line {
                        writeln!(out, "v {} {} {}", num(v.x), num(v.y), num(v.z)).map_err(io_error)?;
                    }
                    let ids: Vec<String> = (next..next + line.len()).map(|i| i.to_string()).collect();
                    writeln!(out, "l {}", ids.join(" ")).map_err(io_error)?;
                    next += line.len();
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.0), "-2.0000000000000000e0");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
