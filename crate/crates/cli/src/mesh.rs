//! Triangle meshes of the altitude hyperboloid and a minimal OBJ writer.

use std::io::{self, Write};

use altitude_core::{AltitudeQuadric, Vec3};

use crate::CliError;

pub const MIN_RESOLUTION: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn triangle_area(&self, t: [usize; 3]) -> f64 {
        let [a, b, c] = t.map(|i| self.vertices[i]);
        0.5 * (b - a).cross(c - a).norm()
    }
}

/// Samples `Q*(x - M) = rho` in the principal frame of `Q*/rho`:
/// with `a1, a2 > 0 > a3` the surface is `a1 u^2 + a2 v^2 + a3 w^2 = 1`, which
/// is parameterized by the axial coordinate `w` in `[-extent, extent]` and an
/// angle. `resolution` is the number of rings and of segments per ring.
pub fn quadric_mesh(
    qd: &AltitudeQuadric,
    extent: f64,
    resolution: usize,
) -> Result<Mesh, CliError> {
    if resolution < MIN_RESOLUTION {
        return Err(CliError::BadResolution {
            min: MIN_RESOLUTION,
            got: resolution,
        });
    }
    if !(extent > 0.0 && extent.is_finite()) {
        return Err(CliError::BadExtent);
    }
    if !qd.is_hyperboloid() {
        return Err(CliError::NotHyperboloid);
    }
    let frame = (qd.form * (1.0 / qd.rhs))
        .eigendecompose()
        .map_err(|e| CliError::Quadric(e.into()))?;
    let [a1, a2, a3] = frame.values;
    if !(a1 > 0.0 && a2 > 0.0 && a3 < 0.0) {
        return Err(CliError::NotHyperboloid);
    }
    let [e1, e2, e3] = frame.axes;
    let (k1, k2) = (a1.sqrt().recip(), a2.sqrt().recip());

    let n = resolution;
    let mut vertices = Vec::with_capacity((n + 1) * n);
    for i in 0..=n {
        let w = extent * (2.0 * i as f64 / n as f64 - 1.0);
        let r = (1.0 - a3 * w * w).sqrt();
        for j in 0..n {
            let phi = std::f64::consts::TAU * j as f64 / n as f64;
            let local = e1 * (k1 * r * phi.cos()) + e2 * (k2 * r * phi.sin()) + e3 * w;
            vertices.push(qd.center + local);
        }
    }
    let at = |i: usize, j: usize| i * n + j % n;
    let mut triangles = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            triangles.push([at(i, j), at(i + 1, j), at(i + 1, j + 1)]);
            triangles.push([at(i, j), at(i + 1, j + 1), at(i, j + 1)]);
        }
    }
    Ok(Mesh {
        vertices,
        triangles,
    })
}

/// `v` and `f` records only, one-based indices.
pub fn write_obj<W: Write>(mesh: &Mesh, mut out: W) -> io::Result<()> {
    for v in &mesh.vertices {
        writeln!(out, "v {} {} {}", v.x, v.y, v.z)?;
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    out.flush()
}
