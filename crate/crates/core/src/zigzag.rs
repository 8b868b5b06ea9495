//! Zigzags: the intersection polyline of a crooked plane with a definite
//! plane — two wing rays, two breakpoints on the hinges, one stem segment.

use crate::crooked::{CrookedHalfspace, Stratum};
use crate::error::{GeomError, Result};
use crate::tol::Tol;
use crate::vec::{Point, Vec3};

/// A definite (positive-definite induced metric) affine plane, spanned.
#[derive(Clone, Copy, Debug)]
pub struct DefinitePlane {
    origin: Point,
    u: Vec3,
    v: Vec3,
}

impl DefinitePlane {
    pub fn new(origin: Point, u: Vec3, v: Vec3, tol: Tol) -> Result<DefinitePlane> {
        if origin.chart() != u.chart() || origin.chart() != v.chart() {
            return Err(GeomError::ChartMismatch);
        }
        // Induced 2×2 Gram must be positive definite.
        let guu = u.dot(&u);
        let guv = u.dot(&v);
        let gvv = v.dot(&v);
        let det = guu * gvv - guv * guv;
        if !(tol.sign(guu) > 0 && tol.sign(det) > 0) {
            return Err(GeomError::InvalidInput(
                "cutting plane is not definite (induced metric must be positive definite)".into(),
            ));
        }
        Ok(DefinitePlane { origin, u, v })
    }

    pub fn point(&self, uc: f64, vc: f64) -> Point {
        self.origin + self.u * uc + self.v * vc
    }
}

/// One vertex of the zigzag polyline: plane coordinates, ambient point and
/// the stratum it lies on.
#[derive(Clone, Copy, Debug)]
pub struct ZigzagVertex {
    pub plane_uv: [f64; 2],
    pub point: Point,
    pub stratum: Stratum,
}

/// The zigzag polyline: [wing ray end, hinge breakpoint, hinge breakpoint,
/// wing ray end] with the two terminal ray directions in plane coordinates
/// and a stratum label per segment.
#[derive(Clone, Debug)]
pub struct Zigzag {
    pub vertices: Vec<ZigzagVertex>,
    pub ray_out_minus: [f64; 2],
    pub ray_out_plus: [f64; 2],
    pub segment_strata: [Stratum; 3],
}

/// Intersect the boundary crooked plane of `h` with a definite plane. The
/// rays are truncated at plane-coordinate length `ray_len` for emission.
pub fn zigzag(h: &CrookedHalfspace, plane: &DefinitePlane, ray_len: f64, tol: Tol) -> Result<Zigzag> {
    if ray_len <= 0.0 || !ray_len.is_finite() {
        return Err(GeomError::InvalidInput("ray length must be positive".into()));
    }
    // Frame coordinates are affine in the plane coordinates (u,v).
    let a0 = h.frame_coords(&plane.origin)?;
    let au = h.frame().to_frame(&plane.u)?.comps();
    let av = h.frame().to_frame(&plane.v)?.comps();

    // Solve the 2×2 system {form_i = 0, form_j = 0} for (u,v), where
    // form_k(u,v) = a0[k] + u·au[k] + v·av[k].
    let solve = |i: usize, j: usize| -> Result<[f64; 2]> {
        let det = au[i] * av[j] - au[j] * av[i];
        // A definite plane contains no null direction, so it is transverse
        // to both hinges and the solve cannot degenerate.
        if det.abs() <= 1e-300 {
            return Err(GeomError::InvalidInput("cutting plane is parallel to a hinge".into()));
        }
        let u = (-a0[i] * av[j] + a0[j] * av[i]) / det;
        let v = (-au[i] * a0[j] + au[j] * a0[i]) / det;
        Ok([u, v])
    };

    // Wing-minus meets the stem along the plus hinge {a = 0, b = 0} and
    // wing-plus along the minus hinge {a = 0, c = 0}.
    let bp_plus = solve(0, 1)?;
    let bp_minus = solve(0, 2)?;

    // Ray directions inside {b = 0} (wing minus, a >= 0) and {c = 0}
    // (wing plus, a <= 0).
    let ray_dir = |k: usize, sign: f64| -> [f64; 2] {
        let d = [-av[k], au[k]];
        let a_rate = d[0] * au[0] + d[1] * av[0];
        let norm = (d[0] * d[0] + d[1] * d[1]).sqrt();
        let s = if a_rate * sign >= 0.0 { 1.0 } else { -1.0 };
        [s * d[0] / norm, s * d[1] / norm]
    };
    let dir_minus = ray_dir(1, 1.0);
    let dir_plus = ray_dir(2, -1.0);

    let out_minus = [bp_plus[0] + ray_len * dir_minus[0], bp_plus[1] + ray_len * dir_minus[1]];
    let out_plus = [bp_minus[0] + ray_len * dir_plus[0], bp_minus[1] + ray_len * dir_plus[1]];

    let mkv = |uv: [f64; 2]| -> Result<ZigzagVertex> {
        let p = plane.point(uv[0], uv[1]);
        Ok(ZigzagVertex { plane_uv: uv, point: p, stratum: h.stratum(&p, tol)? })
    };

    let vertices = vec![mkv(out_minus)?, mkv(bp_plus)?, mkv(bp_minus)?, mkv(out_plus)?];
    Ok(Zigzag {
        vertices,
        ray_out_minus: dir_minus,
        ray_out_plus: dir_plus,
        segment_strata: [Stratum::WingMinus, Stratum::StemFace, Stratum::WingPlus],
    })
}

fn fmt(x: f64) -> String {
    format!("{x}")
}

/// CSV emission: header t,x,y,z,stratum, one row per polyline vertex, with t
/// the cumulative plane-coordinate arclength.
pub fn zigzag_csv(z: &Zigzag) -> String {
    let mut out = String::from("t,x,y,z,stratum\r\n");
    let mut t = 0.0;
    let mut prev: Option<[f64; 2]> = None;
    for v in &z.vertices {
        if let Some(p) = prev {
            let (du, dv) = (v.plane_uv[0] - p[0], v.plane_uv[1] - p[1]);
            t += (du * du + dv * dv).sqrt();
        }
        prev = Some(v.plane_uv);
        let [x, y, zz] = v.point.comps();
        out.push_str(&format!(
            "{},{},{},{},{}\r\n",
            fmt(t),
            fmt(x),
            fmt(y),
            fmt(zz),
            v.stratum.as_str()
        ));
    }
    out
}

/// SVG 1.1 document with the zigzag as a single path in plane coordinates.
pub fn zigzag_svg(z: &Zigzag) -> String {
    let us: Vec<f64> = z.vertices.iter().map(|v| v.plane_uv[0]).collect();
    let vs: Vec<f64> = z.vertices.iter().map(|v| v.plane_uv[1]).collect();
    let min_u = us.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_u = us.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_v = vs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_v = vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let margin = 0.05 * ((max_u - min_u).max(max_v - min_v).max(1.0));
    let mut d = String::new();
    for (i, v) in z.vertices.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        d.push_str(&format!("{}{} {} ", cmd, fmt(v.plane_uv[0]), fmt(v.plane_uv[1])));
    }
    let d = d.trim_end();
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n<path fill=\"none\" stroke=\"black\" stroke-width=\"{}\" d=\"{}\"/>\n</svg>\n",
        fmt(min_u - margin),
        fmt(min_v - margin),
        fmt(max_u - min_u + 2.0 * margin),
        fmt(max_v - min_v + 2.0 * margin),
        fmt(margin * 0.2),
        d
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tol {
        Tol::default()
    }

    fn canonical_plane() -> DefinitePlane {
        // z = 1 in the standard chart is definite.
        DefinitePlane::new(
            Point::std(0.0, 0.0, 1.0),
            Vec3::std(1.0, 0.0, 0.0),
            Vec3::std(0.0, 1.0, 0.0),
            tol(),
        )
        .unwrap()
    }

    #[test]
    fn definiteness_is_checked() {
        // The xz-plane has an indefinite induced metric.
        assert!(DefinitePlane::new(
            Point::std(0.0, 0.0, 0.0),
            Vec3::std(1.0, 0.0, 0.0),
            Vec3::std(0.0, 0.0, 1.0),
            tol(),
        )
        .is_err());
    }

    #[test]
    fn breakpoints_lie_on_hinges() {
        let h = CrookedHalfspace::canonical(tol());
        let z = zigzag(&h, &canonical_plane(), 5.0, tol()).unwrap();
        assert_eq!(z.vertices.len(), 4);
        assert_eq!(z.vertices[1].stratum, Stratum::HingePlus);
        assert_eq!(z.vertices[2].stratum, Stratum::HingeMinus);
        // Known crossings: hinges through the origin along (0,∓1,1)/√2 hit
        // z = 1 at (0,-1,1) and (0,1,1).
        assert!((z.vertices[1].point - Point::std(0.0, -1.0, 1.0)).euclid_norm() < 1e-9);
        assert!((z.vertices[2].point - Point::std(0.0, 1.0, 1.0)).euclid_norm() < 1e-9);
        // Terminal points on the wings; segment midpoints classify to the
        // segment labels.
        assert_eq!(z.vertices[0].stratum, Stratum::WingMinus);
        assert_eq!(z.vertices[3].stratum, Stratum::WingPlus);
        for (i, want) in z.segment_strata.iter().enumerate() {
            let a = z.vertices[i].plane_uv;
            let b = z.vertices[i + 1].plane_uv;
            let mid = canonical_plane().point((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0);
            assert_eq!(h.stratum(&mid, tol()).unwrap(), *want, "segment {i}");
        }
    }

    #[test]
    fn vertex_plane_degenerates() {
        let h = CrookedHalfspace::canonical(tol());
        let plane = DefinitePlane::new(
            Point::std(0.0, 0.0, 0.0),
            Vec3::std(1.0, 0.0, 0.0),
            Vec3::std(0.0, 1.0, 0.0),
            tol(),
        )
        .unwrap();
        let z = zigzag(&h, &plane, 2.0, tol()).unwrap();
        let d = (z.vertices[1].point - z.vertices[2].point).euclid_norm();
        assert!(d < 1e-12, "breakpoints should coincide at the vertex");
        assert_eq!(z.vertices[1].stratum, Stratum::Vertex);
    }

    #[test]
    fn csv_roundtrip_precision() {
        let h = CrookedHalfspace::canonical(tol());
        let z = zigzag(&h, &canonical_plane(), 3.0, tol()).unwrap();
        let csv = zigzag_csv(&z);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,x,y,z,stratum");
        for (line, v) in lines.zip(&z.vertices) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols.len(), 5);
            let x: f64 = cols[1].parse().unwrap();
            assert_eq!(x, v.point.comps()[0], "full-precision roundtrip");
        }
    }

    #[test]
    fn svg_single_path() {
        let h = CrookedHalfspace::canonical(tol());
        let z = zigzag(&h, &canonical_plane(), 3.0, tol()).unwrap();
        let svg = zigzag_svg(&z);
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains("viewBox"));
    }
}
