//! Non-rigorous data for figures, written as CSV.

use std::io::Write;

use crate::certifier::interior_grid;
use crate::error::{Error, Result};
use crate::fem::fem_estimates;
use crate::geometry::Triangle;
use crate::interval::Interval;
use crate::mps::MpsCandidate;

/// FEM approximations of `ξ21` and `ξ41` on an `n × n` lattice of apexes
/// spanning `center ± half`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelSetRow {
    pub cx: f64,
    pub cy: f64,
    pub xi21: f64,
    pub xi41: f64,
}

pub fn level_set_rows(center: (f64, f64), half: (f64, f64), n: usize, mesh: usize) -> Result<Vec<LevelSetRow>> {
    if n < 2 {
        return Err(Error::Config("a lattice needs at least 2 points per axis".into()));
    }
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let s = |k: usize| -1.0 + 2.0 * k as f64 / (n - 1) as f64;
            let (cx, cy) = (center.0 + s(i) * half.0, center.1 + s(j) * half.1);
            let t = Triangle::from_f64(64, cx, cy)?;
            let e = fem_estimates(&t, mesh, 4)?;
            rows.push(LevelSetRow { cx, cy, xi21: e[1] / e[0], xi41: e[3] / e[0] });
        }
    }
    Ok(rows)
}

pub fn write_level_sets<W: Write>(out: W, rows: &[LevelSetRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cx", "cy", "xi21", "xi41"]).map_err(csv_error)?;
    for r in rows {
        w.write_record([r.cx, r.cy, r.xi21, r.xi41].map(|x| format!("{x:.12e}"))).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Cells of the interior validation grid, one row per cell with its three vertices.
pub fn write_grid<W: Write>(out: W, t: &Triangle, grid_n: usize, shrink: f64) -> Result<()> {
    let (pts, cells) = interior_grid(t, grid_n, &Interval::point(t.prec(), shrink));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cell", "x0", "y0", "x1", "y1", "x2", "y2"]).map_err(csv_error)?;
    for (i, c) in cells.iter().enumerate() {
        let mut rec = vec![i.to_string()];
        for &v in c {
            let (x, y) = pts[v].mid_f64();
            rec.push(format!("{x:.12e}"));
            rec.push(format!("{y:.12e}"));
        }
        w.write_record(&rec).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Samples of the approximate eigenfunction on an `n × n` lattice over the
/// bounding box, keeping the points inside the triangle.
pub fn write_eigenfunction<W: Write>(out: W, cand: &MpsCandidate, t: &Triangle, n: usize) -> Result<()> {
    let (cx, cy) = t.apex_f64();
    let (x0, x1) = (cx.min(0.0), cx.max(1.0));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "u"]).map_err(csv_error)?;
    for j in 0..=n {
        for i in 0..=n {
            let x = x0 + (x1 - x0) * i as f64 / n as f64;
            let y = cy * j as f64 / n as f64;
            if t.contains_point_f64(x, y) {
                w.write_record([x, y, cand.eval(x, y)].map(|v| format!("{v:.12e}"))).map_err(csv_error)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Numeric(format!("csv: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_csv_has_one_row_per_cell() {
        let t = Triangle::from_f64(64, 0.5, 0.8).unwrap();
        let mut buf = Vec::new();
        write_grid(&mut buf, &t, 4, 0.8).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 16);
        assert!(text.starts_with("cell,x0,y0"));
    }

    #[test]
    fn level_sets_of_the_equilateral_triangle() {
        let rows = level_set_rows((0.5, 3f64.sqrt() / 2.0), (0.01, 0.01), 2, 8).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.xi21 > 1.0 && r.xi41 > r.xi21));
        let mut buf = Vec::new();
        write_level_sets(&mut buf, &rows).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 5);
    }
}
