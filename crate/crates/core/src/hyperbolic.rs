//! The hyperbolic plane in the hyperboloid model and its halfplanes.
//!
//! Points are future unit timelike vectors; a unit spacelike vector s encodes
//! the halfplane h(s) = { v : v·s ≥ 0 }. Disjointness of halfplanes is the
//! consistent-orientation condition on the directors.

use std::fmt;

use crate::error::{GeomError, Result};
use crate::frame::NullFrame;
use crate::tol::Tol;
use crate::vec::{Vec3};

/// A point of H², i.e. a future unit timelike vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint {
    v: Vec3,
}

impl HPoint {
    pub fn new(v: Vec3, tol: Tol) -> Result<HPoint> {
        let class = v.classify(tol);
        if class != crate::vec::CausalClass::TimelikeFuture {
            return Err(GeomError::NotHyperbolicPoint(class));
        }
        if !tol.close(v.norm_sq(), -1.0) {
            return Err(GeomError::InvalidInput(format!(
                "hyperboloid point must satisfy v·v = -1, got {}",
                v.norm_sq()
            )));
        }
        Ok(HPoint { v })
    }

    /// Normalize any future timelike vector onto the hyperboloid.
    pub fn project(v: Vec3, tol: Tol) -> Result<HPoint> {
        let class = v.classify(tol);
        if class != crate::vec::CausalClass::TimelikeFuture {
            return Err(GeomError::NotHyperbolicPoint(class));
        }
        let k = 1.0 / (-v.norm_sq()).sqrt();
        Ok(HPoint { v: v * k })
    }

    /// Point at hyperbolic polar coordinates (r, θ) about (0,0,1), Std chart.
    pub fn polar(r: f64, theta: f64) -> HPoint {
        HPoint {
            v: Vec3::std(r.sinh() * theta.cos(), r.sinh() * theta.sin(), r.cosh()),
        }
    }

    pub fn vec(&self) -> Vec3 {
        self.v
    }
}

/// A halfplane of H², encoded by its unit spacelike vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfplane {
    s: Vec3,
}

/// Mutual position of the boundary geodesics of two halfplanes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeodesicRelation {
    Ultraparallel,
    Asymptotic,
    Crossing,
    Equal,
}

impl fmt::Display for GeodesicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeodesicRelation::Ultraparallel => "ultraparallel",
            GeodesicRelation::Asymptotic => "asymptotic",
            GeodesicRelation::Crossing => "crossing",
            GeodesicRelation::Equal => "equal",
        })
    }
}

impl Halfplane {
    /// Normalizes the director to unit length.
    pub fn new(s: Vec3, tol: Tol) -> Result<Halfplane> {
        Ok(Halfplane { s: s.normalized_spacelike(tol)? })
    }

    pub fn s(&self) -> Vec3 {
        self.s
    }

    pub fn complement(&self) -> Halfplane {
        Halfplane { s: -self.s }
    }

    /// Membership of a point: v·s ≥ 0 closed, > 0 open.
    pub fn contains(&self, p: &HPoint, closed: bool, tol: Tol) -> bool {
        match tol.sign(p.vec().dot(&self.s)) {
            1 => true,
            0 => closed,
            _ => false,
        }
    }

    /// True when `other` is included in `self` (closed halfplanes).
    ///
    /// h(s₂) ⊆ h(s₁) exactly when s₂ = s₁ or (−s₁, s₂) is consistently
    /// oriented: the complement of h(s₁) must avoid h(s₂).
    pub fn includes(&self, other: &Halfplane, tol: Tol) -> Result<bool> {
        if self.s.parallel_ray(&other.s, tol)? {
            return Ok(true);
        }
        consistently_oriented(&-self.s, &other.s, tol)
    }

    /// Abscissa of the boundary in the Klein disk, for halfplanes whose
    /// boundary is a vertical line x = const (director with y = 0).
    pub fn klein_boundary_x(&self, tol: Tol) -> Result<f64> {
        if !tol.is_zero(self.s.y) {
            return Err(GeomError::InvalidInput(
                "klein_boundary_x requires a director with zero y component".into(),
            ));
        }
        // Boundary geodesic {v·s = 0} meets the Klein chart z = 1 at
        // x·s_x = s_z; spacelike with y = 0 forces |s_x| >= 1.
        Ok(self.s.z / self.s.x)
    }
}

/// Consistent orientation of two spacelike vectors:
/// s₁·s₂ < 0, s₁·s₂^± ≤ 0 and s₁^±·s₂ ≤ 0.
pub fn consistently_oriented(s1: &Vec3, s2: &Vec3, tol: Tol) -> Result<bool> {
    let f1 = NullFrame::new(s1, tol)?;
    let f2 = NullFrame::new(s2, tol)?;
    let u1 = f1.s();
    let u2 = f2.s();
    if tol.sign(u1.inner(&u2)?) >= 0 {
        return Ok(false);
    }
    Ok(tol.sign(u1.dot(&f2.s_minus())) <= 0
        && tol.sign(u1.dot(&f2.s_plus())) <= 0
        && tol.sign(f1.s_minus().dot(&u2)) <= 0
        && tol.sign(f1.s_plus().dot(&u2)) <= 0)
}

/// Relation of the boundary geodesics of h(s₁) and h(s₂).
pub fn relation(s1: &Vec3, s2: &Vec3, tol: Tol) -> Result<GeodesicRelation> {
    let u1 = s1.normalized_spacelike(tol)?;
    let u2 = s2.normalized_spacelike(tol)?;
    if u1.parallel_line(&u2, tol)? {
        return Ok(GeodesicRelation::Equal);
    }
    let d = u1.dot(&u2).abs();
    Ok(match tol.sign(d - 1.0) {
        1 => GeodesicRelation::Ultraparallel,
        0 => GeodesicRelation::Asymptotic,
        _ => GeodesicRelation::Crossing,
    })
}

/// Disjointness of the halfplanes h₁ and h₂.
///
/// `closed = false` asks whether the open halfplanes are disjoint, which is
/// exactly consistent orientation of the directors; `closed = true` asks
/// about the closed halfplanes, which additionally excludes the shared
/// boundary geodesic of complementary halfplanes.
pub fn halfplanes_disjoint(h1: &Halfplane, h2: &Halfplane, closed: bool, tol: Tol) -> bool {
    let co = consistently_oriented(&h1.s, &h2.s, tol).expect("halfplane directors are spacelike");
    if !closed {
        return co;
    }
    co && relation(&h1.s, &h2.s, tol).expect("spacelike") != GeodesicRelation::Equal
}
