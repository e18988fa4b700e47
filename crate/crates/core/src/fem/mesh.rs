//! Crouzeix–Raviart discretization on the uniform similar-triangle mesh.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::Triangle;
use crate::interval::Interval;

/// Edge families of the uniform mesh; the discriminant is the local index of the
/// edge inside any mesh triangle, which equals the index of the opposite vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// From lattice point `(i, j)` to `(i+1, j)`, parallel to the base.
    Base = 2,
    /// From `(i, j)` to `(i, j+1)`, parallel to the left side.
    Left = 1,
    /// From `(i+1, j)` to `(i, j+1)`, parallel to the right side.
    Right = 0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeKey {
    pub kind: EdgeKind,
    pub i: usize,
    pub j: usize,
}

/// Uniform subdivision of a triangle into `N²` copies scaled by `1/N`.
#[derive(Clone, Debug)]
pub struct CrMesh {
    n: usize,
    edges: Vec<EdgeKey>,
    index: HashMap<EdgeKey, usize>,
    h: Interval,
}

impl CrMesh {
    pub fn new(t: &Triangle, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("mesh subdivision N = {n} must be at least 2")));
        }
        let mut edges = Vec::with_capacity(3 * n * (n - 1) / 2);
        for j in 1..n {
            for i in 0..n - j {
                edges.push(EdgeKey { kind: EdgeKind::Base, i, j });
            }
        }
        for i in 1..n {
            for j in 0..n - i {
                edges.push(EdgeKey { kind: EdgeKind::Left, i, j });
            }
        }
        for i in 0..n - 1 {
            for j in 0..n - 1 - i {
                edges.push(EdgeKey { kind: EdgeKind::Right, i, j });
            }
        }
        let index = edges.iter().enumerate().map(|(k, e)| (*e, k)).collect();
        let h = t.diameter().div_u32(n as u32);
        Ok(CrMesh { n, edges, index, h })
    }

    pub fn subdivisions(&self) -> usize {
        self.n
    }

    pub fn interior_edges(&self) -> &[EdgeKey] {
        &self.edges
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    /// Maximum diameter of the mesh triangles.
    pub fn h(&self) -> &Interval {
        &self.h
    }

    pub fn triangle_count(&self) -> usize {
        self.n * self.n
    }

    /// Interior edge indices of each mesh triangle, by local index (boundary edges are `None`).
    pub fn triangles(&self) -> Vec<[Option<usize>; 3]> {
        let n = self.n;
        let look = |kind, i, j| self.index.get(&EdgeKey { kind, i, j }).copied();
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n - j {
                // up triangle with vertices (i,j), (i+1,j), (i,j+1)
                out.push([look(EdgeKind::Right, i, j), look(EdgeKind::Left, i, j), look(EdgeKind::Base, i, j)]);
                if i + j + 2 <= n {
                    // down triangle with vertices (i+1,j+1), (i,j+1), (i+1,j)
                    out.push([
                        look(EdgeKind::Right, i, j),
                        look(EdgeKind::Left, i + 1, j),
                        look(EdgeKind::Base, i, j + 1),
                    ]);
                }
            }
        }
        out
    }

    /// Edge midpoint in physical coordinates (midpoint arithmetic).
    pub fn midpoint_f64(&self, t: &Triangle, e: usize) -> (f64, f64) {
        let (cx, cy) = t.apex_f64();
        let n = self.n as f64;
        let k = self.edges[e];
        let (i, j) = (k.i as f64, k.j as f64);
        let (a, b) = match k.kind {
            EdgeKind::Base => (i + 0.5, j),
            EdgeKind::Left => (i, j + 0.5),
            EdgeKind::Right => (i + 0.5, j + 0.5),
        };
        ((a + b * cx) / n, b * cy / n)
    }
}

/// Sparse symmetric matrix with interval entries stored as `f64` endpoints.
#[derive(Clone, Debug)]
pub struct DiscreteOperator {
    dim: usize,
    rows: Vec<Vec<(usize, f64, f64)>>,
}

impl DiscreteOperator {
    /// Builds an operator from rows of `(column, lo, hi)`.
    pub fn from_rows(rows: Vec<Vec<(usize, f64, f64)>>) -> Self {
        DiscreteOperator { dim: rows.len(), rows }
    }

    /// Dense construction from `lo`/`hi` matrices (row-major, symmetric).
    pub fn from_dense(n: usize, lo: &[f64], hi: &[f64]) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| lo[i * n + j] != 0.0 || hi[i * n + j] != 0.0)
                    .map(|j| (j, lo[i * n + j], hi[i * n + j]))
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<(usize, f64, f64)>] {
        &self.rows
    }

    /// Midpoint matrix as a dense column-major buffer.
    pub fn mid_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, lo, hi) in row {
                m[(i, j)] = 0.5 * lo + 0.5 * hi;
            }
        }
        m
    }

    /// Entry `(mid, rad)` with `[lo, hi] ⊆ [mid − rad, mid + rad]`.
    pub fn mid_rad(lo: f64, hi: f64) -> (f64, f64) {
        let mid = 0.5 * lo + 0.5 * hi;
        let rad = (hi - mid).max(mid - lo).max(0.0).next_up();
        (mid, rad)
    }

    /// Sparse triplet text: one `row col lo hi` line per stored entry.
    pub fn to_triplets(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, lo, hi) in row {
                let _ = writeln!(s, "{i} {j} {lo:e} {hi:e}");
            }
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        let mut map = HashMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, lo, hi) in row {
                map.insert((i, j), (lo, hi));
            }
        }
        map.iter().all(|(&(i, j), v)| map.get(&(j, i)) == Some(v))
    }
}

/// Assembles `M = 3N²A/(2|Ω|)` for the Crouzeix–Raviart stiffness matrix `A`.
pub fn assemble(t: &Triangle, n: usize) -> Result<(CrMesh, DiscreteOperator)> {
    let mesh = CrMesh::new(t, n)?;
    let prec = t.prec();
    let (cx, cy) = (t.cx(), t.cy());
    let one = Interval::one(prec);
    let cot = [
        cx / cy,
        &(&one - cx) / cy,
        &(&(cx * &(cx - &one)) + &cy.sqr()) / cy,
    ];
    // Local stiffness 4·S with the P1 stiffness S of the reference angles.
    let mut local = vec![vec![Interval::zero(prec); 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            local[a][b] = if a == b {
                let (p, q) = ((a + 1) % 3, (a + 2) % 3);
                (&cot[p] + &cot[q]).mul_u32(2)
            } else {
                cot[3 - a - b].mul_u32(2).mul_f64(-1.0)
            };
        }
    }
    let scale = &Interval::from_int(prec, 3 * (n * n) as i64) / cy;
    let local: Vec<Vec<Interval>> = local.iter().map(|r| r.iter().map(|v| v * &scale).collect()).collect();
    let dim = mesh.dim();
    let mut acc: Vec<HashMap<usize, Interval>> = vec![HashMap::new(); dim];
    for tri in mesh.triangles() {
        for a in 0..3 {
            let Some(ea) = tri[a] else { continue };
            for b in 0..3 {
                let Some(eb) = tri[b] else { continue };
                acc[ea]
                    .entry(eb)
                    .and_modify(|v| v.add_assign_ref(&local[a][b]))
                    .or_insert_with(|| local[a][b].clone());
            }
        }
    }
    let rows = acc
        .into_iter()
        .map(|row| {
            let mut r: Vec<(usize, f64, f64)> = row.into_iter().map(|(j, v)| (j, v.lo_f64(), v.hi_f64())).collect();
            r.sort_by_key(|e| e.0);
            r
        })
        .collect();
    Ok((mesh, DiscreteOperator::from_rows(rows)))
}
