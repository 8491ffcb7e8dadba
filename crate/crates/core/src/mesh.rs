//! Triangle meshes of parametric surfaces and their OBJ serialization.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{CamcError, Result};
use crate::fmt_real;
use crate::grid::GridSpec;
use crate::surface::ParametricSurface;

/// Triangles with doubled area below this are dropped.
pub const DEGENERATE_AREA: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshExport {
    pub vertices: Vec<[f64; 3]>,
    /// Zero-based vertex indices, counter-clockwise about `Xs x Xtheta`.
    pub faces: Vec<[usize; 3]>,
    /// Ordered key/value record of how the mesh was produced.
    pub provenance: Vec<(String, String)>,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross_norm(u: [f64; 3], v: [f64; 3]) -> f64 {
    let c = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt()
}

impl MeshExport {
    /// Samples `surface` at the grid nodes. A periodic theta axis is closed
    /// by stitching the last column to the first.
    pub fn tessellate(surface: &ParametricSurface, grid: &GridSpec, provenance: Vec<(String, String)>) -> Result<Self> {
        grid.validate()?;
        let s_nodes = grid.s_nodes();
        let t_nodes = grid.theta_nodes();
        let (ns, nt) = (s_nodes.len(), t_nodes.len());
        let mut vertices = Vec::with_capacity(ns * nt);
        for &s in &s_nodes {
            for &t in &t_nodes {
                let p = surface.point(s, t)?;
                if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                    return Err(CamcError::Domain(format!("non-finite point at (s, theta) = ({s}, {t})")));
                }
                vertices.push([p.x, p.y, p.z]);
            }
        }
        let cols = if grid.periodic_theta { nt } else { nt - 1 };
        let idx = |i: usize, j: usize| i * nt + j % nt;
        let mut faces = Vec::with_capacity(2 * (ns - 1) * cols);
        for i in 0..ns - 1 {
            for j in 0..cols {
                let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
                for tri in [[a, b, c], [a, c, d]] {
                    let (p, q, r) = (vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
                    if cross_norm(sub(q, p), sub(r, p)) > DEGENERATE_AREA {
                        faces.push(tri);
                    }
                }
            }
        }
        Ok(Self { vertices, faces, provenance })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        for f in &self.faces {
            if f.iter().any(|&k| k >= n) {
                return Err(CamcError::InvalidGrid(format!("face {f:?} indexes past {n} vertices")));
            }
            let [p, q, r] = f.map(|k| self.vertices[k]);
            if cross_norm(sub(q, p), sub(r, p)) <= DEGENERATE_AREA {
                return Err(CamcError::InvalidGrid(format!("degenerate face {f:?}")));
            }
        }
        Ok(())
    }

    /// ASCII OBJ: comment header, provenance comments, `v` then `f` records
    /// with one-based indices.
    pub fn to_obj(&self, header: &str) -> String {
        let mut out = String::with_capacity(64 * (self.vertices.len() + self.faces.len()));
        let _ = writeln!(out, "# {header}");
        for (k, v) in &self.provenance {
            let _ = writeln!(out, "# {k}: {v}");
        }
        for v in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", fmt_real(v[0]), fmt_real(v[1]), fmt_real(v[2]));
        }
        for f in &self.faces {
            let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        out
    }
}
