//! Triangle meshes of crooked planes, clipped to a frame-coordinate box,
//! for OBJ export. Stem triangles and wing strips are gridded separately so
//! hinge edges stay on grid lines (creases).

use crate::crooked::CrookedHalfspace;
use crate::error::{GeomError, Result};
use crate::vec::Point;

/// Clip box in frame coordinates about the vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClipBox {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
}

impl ClipBox {
    pub fn new(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Result<ClipBox> {
        let nonempty = |r: [f64; 2]| r[0] < r[1] && r.iter().all(|x| x.is_finite());
        if nonempty(a) && nonempty(b) && nonempty(c) {
            Ok(ClipBox { a, b, c })
        } else {
            Err(GeomError::InvalidInput("clip box must have positive volume".into()))
        }
    }

    /// Symmetric box [-r, r]³.
    pub fn cube(r: f64) -> ClipBox {
        ClipBox { a: [-r, r], b: [-r, r], c: [-r, r] }
    }
}

#[derive(Clone, Debug, Default)]
pub struct TriMesh {
    pub vertices: Vec<Point>,
    /// 0-based triangle indices.
    pub triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    fn grid<F>(&mut self, nu: usize, nv: usize, range_u: [f64; 2], range_v: [f64; 2], at: F)
    where
        F: Fn(f64, f64) -> Point,
    {
        if range_u[0] >= range_u[1] || range_v[0] >= range_v[1] {
            return;
        }
        let base = self.vertices.len();
        for i in 0..=nu {
            let u = range_u[0] + (range_u[1] - range_u[0]) * i as f64 / nu as f64;
            for j in 0..=nv {
                let v = range_v[0] + (range_v[1] - range_v[0]) * j as f64 / nv as f64;
                self.vertices.push(at(u, v));
            }
        }
        let stride = nv + 1;
        for i in 0..nu {
            for j in 0..nv {
                let p00 = base + i * stride + j;
                let p10 = p00 + stride;
                self.triangles.push([p00, p10, p10 + 1]);
                self.triangles.push([p00, p10 + 1, p00 + 1]);
            }
        }
    }
}

/// Mesh the crooked plane of `h` inside `clip` at grid resolution `res`.
pub fn crooked_plane_mesh(h: &CrookedHalfspace, clip: &ClipBox, res: usize) -> Result<TriMesh> {
    if res == 0 {
        return Err(GeomError::InvalidInput("resolution must be at least 1".into()));
    }
    let mut mesh = TriMesh::default();

    // Future stem triangle {a=0, b,c >= 0} and past {a=0, b,c <= 0}.
    mesh.grid(res, res, [clip.b[0].max(0.0), clip.b[1]], [clip.c[0].max(0.0), clip.c[1]], |b, c| {
        h.point_at(0.0, b, c)
    });
    mesh.grid(res, res, [clip.b[0], clip.b[1].min(0.0)], [clip.c[0], clip.c[1].min(0.0)], |b, c| {
        h.point_at(0.0, b, c)
    });
    // Wing minus {b=0, a >= 0} and wing plus {c=0, a <= 0}.
    mesh.grid(res, res, [clip.a[0].max(0.0), clip.a[1]], [clip.c[0], clip.c[1]], |a, c| {
        h.point_at(a, 0.0, c)
    });
    mesh.grid(res, res, [clip.a[0], clip.a[1].min(0.0)], [clip.b[0], clip.b[1]], |a, b| {
        h.point_at(a, b, 0.0)
    });

    if mesh.vertices.is_empty() {
        return Err(GeomError::InvalidInput("clip box misses the crooked plane".into()));
    }
    Ok(mesh)
}

/// OBJ emission: v and f lines only, triangles, 1-based indices.
pub fn mesh_obj(mesh: &TriMesh) -> String {
    let mut out = String::new();
    for p in &mesh.vertices {
        let [x, y, z] = p.comps();
        out.push_str(&format!("v {x} {y} {z}\n"));
    }
    for t in &mesh.triangles {
        out.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
    }
    out
}
