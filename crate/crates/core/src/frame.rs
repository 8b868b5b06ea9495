//! Null frames: the normalized triple (s, s⁻, s⁺) attached to a spacelike
//! direction.
//!
//! Conventions, all machine-checked in tests:
//! - s is unit spacelike, s⁻ and s⁺ are future null and span s⊥,
//! - s⁻·s⁺ = −1,
//! - labels satisfy s × s⁻ = −s⁻ and s × s⁺ = +s⁺ (equivalently
//!   Det(s, s⁻, s⁺) = 1),
//! - between the residual scalings, the representatives with equal time
//!   components are chosen, which makes the construction deterministic and
//!   continuous in s.

use crate::error::{GeomError, Result};
use crate::tol::Tol;
use crate::vec::{Chart, FrameId, Vec3};

/// Normalized null frame (s, s⁻, s⁺) over a base chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullFrame {
    s: Vec3,
    s_minus: Vec3,
    s_plus: Vec3,
    id: FrameId,
}

fn mix(h: u64, bits: u64) -> u64 {
    // FNV-1a style fold, good enough for chart identity.
    (h ^ bits).wrapping_mul(0x0000_0100_0000_01B3)
}

fn frame_id(chart: Chart, s: &Vec3) -> FrameId {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    h = mix(h, match chart {
        Chart::Std => 0,
        Chart::Frame(FrameId(i)) => i | 0x8000_0000_0000_0000,
    });
    for c in s.comps() {
        h = mix(h, c.to_bits());
    }
    FrameId(h)
}

/// Map frame-chart coordinates into the standard chart along the canonical
/// frame of (1,0,0): s⁻ = (0,1,1)/√2, s⁺ = (0,−1,1)/√2. An orientation- and
/// time-orientation-preserving isometry of coordinates.
fn canon_std_of_frame(a: f64, b: f64, c: f64) -> [f64; 3] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [a, (b - c) * r, (b + c) * r]
}

fn canon_frame_of_std(x: f64, y: f64, z: f64) -> [f64; 3] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [x, (y + z) * r, (z - y) * r]
}

/// The two future null directions orthogonal to a unit spacelike s in the
/// standard chart. Returns (n_minus, n_plus) already labeled per the cross
/// product identities; scaling is arbitrary here.
fn null_dirs_std(s: &Vec3) -> (Vec3, Vec3) {
    let [x, y, z] = s.comps();
    // With p = (xz, yz, x²+y²) future timelike in s⊥ and q = (−y, x, 0)
    // spacelike orthogonal to p, the null directions are exactly p ± q.
    // Label: p + q is the (−1)-eigenvector of s×· .
    let n_minus = Vec3::std(x * z - y, y * z + x, x * x + y * y);
    let n_plus = Vec3::std(x * z + y, y * z - x, x * x + y * y);
    (n_minus, n_plus)
}

impl NullFrame {
    /// Build the frame of a spacelike vector. The input need not be unit;
    /// the frame of `k·s` equals the frame of `s` for k > 0.
    pub fn new(s: &Vec3, tol: Tol) -> Result<NullFrame> {
        let class = s.classify(tol);
        if !class.is_spacelike() {
            return Err(GeomError::NotSpacelike(class));
        }
        let unit = *s * (1.0 / s.norm_sq().sqrt());
        let chart = unit.chart();
        let (nm, np) = match chart {
            Chart::Std => null_dirs_std(&unit),
            Chart::Frame(_) => {
                let [a, b, c] = unit.comps();
                let [x, y, z] = canon_std_of_frame(a, b, c);
                let (m, p) = null_dirs_std(&Vec3::std(x, y, z));
                let [ma, mb, mc] = {
                    let [x, y, z] = m.comps();
                    canon_frame_of_std(x, y, z)
                };
                let [pa, pb, pc] = {
                    let [x, y, z] = p.comps();
                    canon_frame_of_std(x, y, z)
                };
                (
                    Vec3::in_chart(ma, mb, mc, chart),
                    Vec3::in_chart(pa, pb, pc, chart),
                )
            }
        };
        // Equal time components, then the symmetric scaling for s⁻·s⁺ = −1.
        let nm = nm * (1.0 / nm.time_component());
        let np = np * (1.0 / np.time_component());
        let lambda = 1.0 / (-nm.dot(&np)).sqrt();
        let s_minus = nm * lambda;
        let s_plus = np * lambda;

        debug_assert!({
            let c = unit.cross_raw(&s_minus) + s_minus;
            c.euclid_norm() < 1e-9 * (1.0 + s_minus.euclid_norm())
        });
        debug_assert!({
            let c = unit.cross_raw(&s_plus) - s_plus;
            c.euclid_norm() < 1e-9 * (1.0 + s_plus.euclid_norm())
        });

        let id = frame_id(chart, &unit);
        Ok(NullFrame { s: unit, s_minus, s_plus, id })
    }

    pub fn s(&self) -> Vec3 {
        self.s
    }

    pub fn s_minus(&self) -> Vec3 {
        self.s_minus
    }

    pub fn s_plus(&self) -> Vec3 {
        self.s_plus
    }

    pub fn id(&self) -> FrameId {
        self.id
    }

    /// Chart the frame members are expressed in.
    pub fn base_chart(&self) -> Chart {
        self.s.chart()
    }

    /// The chart this frame defines.
    pub fn chart(&self) -> Chart {
        Chart::Frame(self.id)
    }

    /// A vector given by its coordinates in this frame's chart.
    pub fn vec(&self, a: f64, b: f64, c: f64) -> Vec3 {
        Vec3::in_chart(a, b, c, self.chart())
    }

    /// Express a base-chart vector in frame coordinates:
    /// a = v·s, b = −v·s⁺, c = −v·s⁻.
    pub fn to_frame(&self, v: &Vec3) -> Result<Vec3> {
        if v.chart() != self.base_chart() {
            return Err(GeomError::ChartMismatch);
        }
        Ok(self.vec(v.dot(&self.s), -v.dot(&self.s_plus), -v.dot(&self.s_minus)))
    }

    /// Expand frame coordinates back into the base chart.
    pub fn from_frame(&self, v: &Vec3) -> Result<Vec3> {
        if v.chart() != self.chart() {
            return Err(GeomError::ChartMismatch);
        }
        let [a, b, c] = v.comps();
        Ok(self.s * a + self.s_minus * b + self.s_plus * c)
    }

    /// Frame coordinates as a plain array (same formulas as `to_frame`).
    pub(crate) fn coords(&self, v: &Vec3) -> [f64; 3] {
        [v.dot(&self.s), -v.dot(&self.s_plus), -v.dot(&self.s_minus)]
    }

    pub(crate) fn expand(&self, a: f64, b: f64, c: f64) -> Vec3 {
        self.s * a + self.s_minus * b + self.s_plus * c
    }
}
