//! Affine transformations of E and the standard one-parameter families:
//! boosts, homotheties, the involution ρ, spine reflections and the
//! time-reversing reflections in stem particles.

use crate::error::{GeomError, Result};
use crate::frame::NullFrame;
use crate::tol::Tol;
use crate::vec::{Chart, Point, Vec3};

type Mat3 = [[f64; 3]; 3];

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

fn mat_apply(m: &Mat3, v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

fn mat_det(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn mat_inverse(m: &Mat3) -> Option<Mat3> {
    let det = mat_det(m);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let inv_det = 1.0 / det;
    let mut adj = [[0.0; 3]; 3];
    adj[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * inv_det;
    adj[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv_det;
    adj[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv_det;
    adj[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * inv_det;
    adj[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv_det;
    adj[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv_det;
    adj[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * inv_det;
    adj[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv_det;
    adj[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv_det;
    Some(adj)
}

/// Gram matrix of a chart, as a coordinate map (G = G⁻¹ in both charts).
fn gram_apply(chart: Chart, v: [f64; 3]) -> [f64; 3] {
    match chart {
        Chart::Std => [v[0], v[1], -v[2]],
        Chart::Frame(_) => [v[0], -v[2], -v[1]],
    }
}

/// An affine map q ↦ L(q) + u in a fixed chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    linear: Mat3,
    translation: Vec3,
    chart: Chart,
}

impl AffineMap {
    pub fn identity(chart: Chart) -> Self {
        AffineMap {
            linear: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            translation: Vec3::in_chart(0.0, 0.0, 0.0, chart),
            chart,
        }
    }

    pub fn from_linear(linear: Mat3, chart: Chart) -> Self {
        AffineMap { linear, translation: Vec3::in_chart(0.0, 0.0, 0.0, chart), chart }
    }

    pub fn translation(w: Vec3) -> Self {
        let mut m = AffineMap::identity(w.chart());
        m.translation = w;
        m
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn linear(&self) -> &Mat3 {
        &self.linear
    }

    pub fn translation_part(&self) -> Vec3 {
        self.translation
    }

    /// Linear map given by a matrix in the frame coordinates of `frame`,
    /// expressed in the frame's base chart.
    pub fn in_frame_coords(frame: &NullFrame, m_frame: Mat3) -> Self {
        AffineMap::from_linear(Self::in_frame(frame, m_frame), frame.base_chart())
    }

    /// Conjugate a matrix given in frame coordinates into the frame's base
    /// chart: L = B · M · B⁻¹ with B the column basis (s, s⁻, s⁺). B⁻¹ needs
    /// no numeric inversion: its rows are Gs, −Gs⁺, −Gs⁻.
    fn in_frame(frame: &NullFrame, m_frame: Mat3) -> Mat3 {
        let s = frame.s().comps();
        let sm = frame.s_minus().comps();
        let sp = frame.s_plus().comps();
        let b: Mat3 = [
            [s[0], sm[0], sp[0]],
            [s[1], sm[1], sp[1]],
            [s[2], sm[2], sp[2]],
        ];
        let chart = frame.base_chart();
        let gs = gram_apply(chart, s);
        let gsm = gram_apply(chart, sm);
        let gsp = gram_apply(chart, sp);
        let b_inv: Mat3 = [
            gs,
            [-gsp[0], -gsp[1], -gsp[2]],
            [-gsm[0], -gsm[1], -gsm[2]],
        ];
        mat_mul(&b, &mat_mul(&m_frame, &b_inv))
    }

    /// Boost ξ_t of a frame: diag(1, e^t, e^{−t}) in frame coordinates.
    pub fn boost(t: f64, frame: &NullFrame) -> Self {
        let m = [[1.0, 0.0, 0.0], [0.0, t.exp(), 0.0], [0.0, 0.0, (-t).exp()]];
        AffineMap::from_linear(Self::in_frame(frame, m), frame.base_chart())
    }

    /// Positive homothety η_s = e^s · Id.
    pub fn homothety(s: f64, chart: Chart) -> Self {
        let k = s.exp();
        AffineMap::from_linear([[k, 0.0, 0.0], [0.0, k, 0.0], [0.0, 0.0, k]], chart)
    }

    /// The involution ρ of a frame: (a,b,c) ↦ (−a,−c,−b).
    pub fn rho(frame: &NullFrame) -> Self {
        let m = [[-1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, -1.0, 0.0]];
        AffineMap::from_linear(Self::in_frame(frame, m), frame.base_chart())
    }

    /// Reflection in the spine through p: (a,b,c) ↦ (a,−b,−c), fixing p.
    pub fn spine_reflection(frame: &NullFrame, p: Point) -> Result<Self> {
        let m = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]];
        AffineMap::from_linear(Self::in_frame(frame, m), frame.base_chart()).fixing(p)
    }

    /// Reflection in the stem particle of rapidity t through p:
    /// (a,b,c) ↦ (−a, e^{2t} c, e^{−2t} b), fixing p.
    pub fn stem_particle_reflection(frame: &NullFrame, p: Point, t: f64) -> Result<Self> {
        let m = [
            [-1.0, 0.0, 0.0],
            [0.0, 0.0, (2.0 * t).exp()],
            [0.0, (-2.0 * t).exp(), 0.0],
        ];
        AffineMap::from_linear(Self::in_frame(frame, m), frame.base_chart()).fixing(p)
    }

    /// Same linear part, translation adjusted so that p is fixed.
    pub fn fixing(&self, p: Point) -> Result<Self> {
        if p.chart() != self.chart {
            return Err(GeomError::ChartMismatch);
        }
        let lp = Vec3::in_chart(0.0, 0.0, 0.0, self.chart)
            + {
                let r = mat_apply(&self.linear, p.comps());
                Vec3::in_chart(r[0], r[1], r[2], self.chart)
            };
        Ok(AffineMap { linear: self.linear, translation: p.0 - lp, chart: self.chart })
    }

    /// Composition self ∘ other.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.chart != other.chart {
            return Err(GeomError::ChartMismatch);
        }
        let linear = mat_mul(&self.linear, &other.linear);
        let t = mat_apply(&self.linear, other.translation.comps());
        let translation =
            Vec3::in_chart(t[0], t[1], t[2], self.chart) + self.translation;
        Ok(AffineMap { linear, translation, chart: self.chart })
    }

    pub fn apply_vec(&self, v: &Vec3) -> Result<Vec3> {
        if v.chart() != self.chart {
            return Err(GeomError::ChartMismatch);
        }
        let r = mat_apply(&self.linear, v.comps());
        Ok(Vec3::in_chart(r[0], r[1], r[2], self.chart))
    }

    pub fn apply_point(&self, p: &Point) -> Result<Point> {
        Ok(Point(self.apply_vec(&p.0)? + self.translation))
    }

    pub fn linear_det(&self) -> f64 {
        mat_det(&self.linear)
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let inv = mat_inverse(&self.linear)?;
        let t = mat_apply(&inv, self.translation.comps());
        Some(AffineMap {
            linear: inv,
            translation: Vec3::in_chart(-t[0], -t[1], -t[2], self.chart),
            chart: self.chart,
        })
    }

    /// The factor λ > 0 with L^T G L = λ G, if the map is conformal.
    pub fn conformal_scale(&self, tol: Tol) -> Option<f64> {
        // λ from the first basis direction (G₀₀ = 1 in both charts), then
        // verify all pairwise inner products.
        let basis = [
            Vec3::in_chart(1.0, 0.0, 0.0, self.chart),
            Vec3::in_chart(0.0, 1.0, 0.0, self.chart),
            Vec3::in_chart(0.0, 0.0, 1.0, self.chart),
        ];
        let images: Vec<Vec3> = basis.iter().map(|v| self.apply_vec(v).unwrap()).collect();
        let lambda = images[0].dot(&images[0]);
        if !(lambda.is_finite() && lambda > tol.eps) {
            return None;
        }
        for i in 0..3 {
            for j in 0..3 {
                let want = lambda * basis[i].dot(&basis[j]);
                let got = images[i].dot(&images[j]);
                if (got - want).abs() > tol.eps * (1.0 + lambda) {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    pub fn is_isometry(&self, tol: Tol) -> bool {
        matches!(self.conformal_scale(tol), Some(l) if tol.close(l, 1.0))
    }

    pub fn preserves_orientation(&self) -> bool {
        self.linear_det() > 0.0
    }

    /// True when the linear part maps the future cone into itself.
    pub fn preserves_time_orientation(&self) -> bool {
        let t = match self.chart {
            Chart::Std => Vec3::in_chart(0.0, 0.0, 1.0, self.chart),
            Chart::Frame(_) => Vec3::in_chart(0.0, 1.0, 1.0, self.chart),
        };
        self.apply_vec(&t).unwrap().time_component() > 0.0
    }
}
