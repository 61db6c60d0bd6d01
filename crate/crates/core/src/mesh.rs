//! Sampled surface meshes and their CSV / OBJ renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bour::{sweep, Grid, Surface};
use crate::error::{Error, Result};
use crate::lorentz::Vec4;

/// Spread below which a coordinate counts as constant.
pub const CONSTANT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct MeshGrid {
    pub nu: usize,
    pub nv: usize,
    pub uv: Vec<(f64, f64)>,
    pub vertices: Vec<Vec4>,
    /// Quads as vertex indices, counter-clockwise in `(u, v)`.
    pub faces: Vec<[usize; 4]>,
    pub k: Vec<f64>,
    pub h1: Vec<f64>,
    pub h2: Vec<f64>,
    /// `|H|_∞` of the mean curvature vector.
    pub hvec: Vec<f64>,
    pub w: Vec<f64>,
}

struct Sample {
    x: Vec4,
    k: f64,
    h1: f64,
    h2: f64,
    hvec: f64,
    w: f64,
}

impl MeshGrid {
    pub fn sample(s: &dyn Surface, grid: &Grid) -> Result<MeshGrid> {
        let rows = sweep(grid, |u, v| {
            let r = s.curvatures(u, v)?;
            Ok(Sample { x: s.position(u, v)?, k: r.k, h1: r.h1, h2: r.h2, hvec: r.hvec.max_abs(), w: r.form.w })
        })?;
        let (nu, nv) = (grid.nu, grid.nv);
        let mut faces = Vec::new();
        for i in 0..nu.saturating_sub(1) {
            for j in 0..nv.saturating_sub(1) {
                let a = i * nv + j;
                faces.push([a, a + nv, a + nv + 1, a + 1]);
            }
        }
        Ok(MeshGrid {
            nu,
            nv,
            uv: grid.points(),
            vertices: rows.iter().map(|r| r.x).collect(),
            faces,
            k: rows.iter().map(|r| r.k).collect(),
            h1: rows.iter().map(|r| r.h1).collect(),
            h2: rows.iter().map(|r| r.h2).collect(),
            hvec: rows.iter().map(|r| r.hvec).collect(),
            w: rows.iter().map(|r| r.w).collect(),
        })
    }

    /// First coordinate whose spread over the vertices is below
    /// [`CONSTANT_TOL`].
    pub fn constant_coordinate(&self) -> Option<usize> {
        (0..4).find(|&k| {
            let (lo, hi) = self
                .vertices
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
            hi - lo < CONSTANT_TOL
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,x1,x2,x3,x4,K,H1,H2,W\n");
        for (i, ((u, v), p)) in self.uv.iter().zip(&self.vertices).enumerate() {
            let _ = writeln!(
                out,
                "{u},{v},{},{},{},{},{},{},{},{}",
                p[0], p[1], p[2], p[3], self.k[i], self.h1[i], self.h2[i], self.w[i]
            );
        }
        out
    }

    pub fn to_obj(&self, projection: Projection) -> Result<String> {
        let drop = match projection {
            Projection::DropConstant => self.constant_coordinate().ok_or(Error::NoConstantCoordinate)?,
            Projection::Drop(k) => k,
        };
        let keep: Vec<usize> = (0..4).filter(|&k| k != drop).collect();
        let mut out = String::new();
        let _ = writeln!(out, "# {}x{} grid, coordinate x{} dropped", self.nu, self.nv, drop + 1);
        let _ = writeln!(out, "# each vertex is followed by: x{} K |H| W", drop + 1);
        for (i, p) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "v {} {} {}", p[keep[0]], p[keep[1]], p[keep[2]]);
            let _ = writeln!(out, "# {} {} {} {}", p[drop], self.k[i], self.hvec[i], self.w[i]);
        }
        for f in &self.faces {
            let _ = writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    DropConstant,
    /// Zero-based index of the dropped coordinate.
    Drop(usize),
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "drop-constant" => Ok(Projection::DropConstant),
            "drop-1" => Ok(Projection::Drop(0)),
            "drop-2" => Ok(Projection::Drop(1)),
            "drop-3" => Ok(Projection::Drop(2)),
            "drop-4" => Ok(Projection::Drop(3)),
            _ => Err(Error::Parameter(format!("unknown projection `{s}`; use drop-constant or drop-1..drop-4"))),
        }
    }
}
