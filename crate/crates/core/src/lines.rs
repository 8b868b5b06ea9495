//! Lines in a crooked halfspace: the containment criterion, the halfplane of
//! particle directions, and the constructive particle through a point.

use crate::crooked::CrookedHalfspace;
use crate::error::{GeomError, Result};
use crate::hyperbolic::Halfplane;
use crate::tol::Tol;
use crate::vec::{Point, Vec3};

/// An affine line, base point plus nonzero direction.
#[derive(Clone, Copy, Debug)]
pub struct Line {
    base: Point,
    dir: Vec3,
}

impl Line {
    pub fn new(base: Point, dir: Vec3) -> Result<Line> {
        if base.chart() != dir.chart() {
            return Err(GeomError::ChartMismatch);
        }
        if dir.scale() == 0.0 {
            return Err(GeomError::ZeroDirection);
        }
        Ok(Line { base, dir })
    }

    pub fn base(&self) -> Point {
        self.base
    }

    pub fn dir(&self) -> Vec3 {
        self.dir
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.base + self.dir * t
    }

    /// Canonical representative: base projected onto the coordinate plane
    /// transversal to the direction, direction scaled to unit Euclidean norm
    /// with the first nonzero component positive. (base, dir) and
    /// (base + dir, dir) canonicalize identically.
    pub fn canonical(&self) -> (Point, Vec3) {
        let mut d = self.dir * (1.0 / self.dir.euclid_norm());
        for c in d.comps() {
            if c != 0.0 {
                if c < 0.0 {
                    d = -d;
                }
                break;
            }
        }
        let t = self.base.0.euclid_dot(&d);
        (self.base - d * t, d)
    }

    /// Same line, up to tolerance.
    pub fn same_line(&self, other: &Line, tol: Tol) -> Result<bool> {
        if !self.dir.parallel_line(&other.dir, tol)? {
            return Ok(false);
        }
        let (b1, _) = self.canonical();
        let (b2, _) = other.canonical();
        let scale = 1.0 + b1.0.euclid_norm().max(b2.0.euclid_norm());
        Ok(tol.is_zero_scaled((b1 - b2).euclid_norm(), scale))
    }
}

/// Containment of a line in a crooked halfspace.
///
/// In the halfspace frame, with direction (α,β,γ) and base (a₀,b₀,c₀):
/// - α ≠ 0: closed containment means β/α ≥ 0, γ/α ≥ 0 and the stem-plane
///   crossing lies in Quad(H); open containment requires the crossing in the
///   open quadrant.
/// - α = 0 off the stem plane (a₀ ≠ 0): the line must run along a wing,
///   a₀ > 0 ⇒ β = 0 ∧ b₀ ≥ 0 (strict for open), mirror for a₀ < 0.
/// - α = 0 in the stem plane: βγ ≥ 0 and the line must meet Quad(H); no such
///   line avoids the boundary, so open containment is false.
pub fn line_in_halfspace(line: &Line, h: &CrookedHalfspace, closed: bool, tol: Tol) -> Result<bool> {
    let [a0, b0, c0] = h.frame_coords(&line.base())?;
    let d = h.frame().to_frame(&line.dir())?;
    let [al, be, ga] = d.comps();
    let dscale = d.scale();
    let base_scale = a0.abs().max(b0.abs()).max(c0.abs());

    if !tol.is_zero_scaled(al, dscale) {
        // Direction leaves the stem plane. Normalize to α = 1.
        let bn = be / al;
        let gn = ga / al;
        if tol.sign(bn) < 0 || tol.sign(gn) < 0 {
            return Ok(false);
        }
        // Stem-plane crossing at parameter t* = −a₀/α.
        let t = -a0 / al;
        let bq = b0 + t * bn * al;
        let cq = c0 + t * gn * al;
        let qscale = bq.abs().max(cq.abs());
        let sb = tol.sign_scaled(bq, qscale);
        let sc = tol.sign_scaled(cq, qscale);
        Ok(if closed { sb >= 0 && sc <= 0 } else { sb > 0 && sc < 0 })
    } else {
        let sa0 = tol.sign_scaled(a0, base_scale);
        let sbe = tol.sign_scaled(be, dscale);
        let sga = tol.sign_scaled(ga, dscale);
        match sa0 {
            1 => {
                let b_ok = if closed {
                    tol.sign_scaled(b0, base_scale) >= 0
                } else {
                    tol.sign_scaled(b0, base_scale) > 0
                };
                Ok(sbe == 0 && b_ok)
            }
            -1 => {
                let c_ok = if closed {
                    tol.sign_scaled(c0, base_scale) <= 0
                } else {
                    tol.sign_scaled(c0, base_scale) < 0
                };
                Ok(sga == 0 && c_ok)
            }
            _ => {
                if !closed {
                    return Ok(false);
                }
                if sbe * sga < 0 {
                    return Ok(false);
                }
                // Meets Quad(H) iff some parameter has b ≥ 0 and c ≤ 0.
                let meets = match (sbe, sga) {
                    (0, 0) => {
                        tol.sign_scaled(b0, base_scale) >= 0 && tol.sign_scaled(c0, base_scale) <= 0
                    }
                    (0, _) => tol.sign_scaled(b0, base_scale) >= 0,
                    (_, 0) => tol.sign_scaled(c0, base_scale) <= 0,
                    _ => {
                        // b(t) ≥ 0 and c(t) ≤ 0 intervals must overlap.
                        let tb = -b0 / be;
                        let tc = -c0 / ga;
                        let span = tb.abs().max(tc.abs());
                        if sbe > 0 {
                            // both positive: need t ≥ tb and t ≤ tc
                            tol.sign_scaled(tc - tb, span) >= 0
                        } else {
                            // both negative: need t ≤ tb and t ≥ tc
                            tol.sign_scaled(tb - tc, span) >= 0
                        }
                    }
                };
                Ok(meets)
            }
        }
    }
}

/// The halfplane of particle directions: a future unit timelike u is the
/// direction of some particle contained in the closed halfspace exactly when
/// u ∈ h(s). Equals the linearization.
pub fn particle_halfplane(h: &CrookedHalfspace, tol: Tol) -> Halfplane {
    h.linearize(tol)
}

/// A particle (timelike line) through q contained in the closed halfspace.
/// Requires q in the open halfspace.
pub fn particle_through(h: &CrookedHalfspace, q: &Point, tol: Tol) -> Result<Line> {
    if !h.contains(q, false, tol)? {
        return Err(GeomError::OutsideHalfspace);
    }
    let [a, b, c] = h.frame_coords(q)?;
    let scale = a.abs().max(b.abs()).max(c.abs());
    let dir = match tol.sign_scaled(a, scale) {
        1 => {
            // Aim at a stem-quadrant point (0, B, C) below the light cone.
            let bb = b / 2.0;
            let cc = (c - a * a / (b - bb)).min(0.0) - 1.0;
            [a, b - bb, c - cc]
        }
        -1 => {
            // Mirror through the involution (a,b,c) ↦ (−a,−c,−b), negating
            // the mirrored direction so it stays future-pointing.
            let (ra, rb, rc) = (-a, -c, -b);
            let bb = rb / 2.0;
            let cc = (rc - ra * ra / (rb - bb)).min(0.0) - 1.0;
            let d = [ra, rb - bb, rc - cc];
            [d[0], d[2], d[1]]
        }
        _ => [0.5, 1.0, 1.0],
    };
    let dirv = h.frame().expand(dir[0], dir[1], dir[2]);
    debug_assert!(dirv.norm_sq() < 0.0, "constructed direction must be timelike");
    Line::new(*q, dirv)
}
