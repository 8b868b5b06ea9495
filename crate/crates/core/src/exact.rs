//! Exact rational evaluation of the sign predicates.
//!
//! When inputs are rational — and, for frame-dependent predicates, the
//! director is rational with rational Lorentzian norm — inner products,
//! determinants and memberships evaluate with no rounding at all. Null
//! directions of such a director are rational: on s⊥ the map v ↦ s×v has
//! eigenvalues ∓1 with rational eigenvectors, found by an exact kernel
//! computation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GeomError, Result};

pub type Rat = BigRational;

fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse a decimal or fraction literal ("-3.25", "13/4") exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || GeomError::ExactUnavailable(format!("cannot parse '{s}' as a rational"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let body = body.strip_prefix('+').unwrap_or(body);
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let d = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rat::new(n * BigInt::from(sign), d))
}

/// Exact f64 → rational conversion (every finite f64 is rational).
pub fn rat_of_f64(x: f64) -> Result<Rat> {
    Rat::from_float(x)
        .ok_or_else(|| GeomError::ExactUnavailable(format!("{x} is not finite")))
}

/// A rational vector in the standard chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RVec3 {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl RVec3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        RVec3 { x, y, z }
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        RVec3::new(rat(x), rat(y), rat(z))
    }

    pub fn zero() -> Self {
        RVec3::new(Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn inner(&self, o: &RVec3) -> Rat {
        &self.x * &o.x + &self.y * &o.y - &self.z * &o.z
    }

    pub fn det3(u: &RVec3, v: &RVec3, w: &RVec3) -> Rat {
        &u.x * (&v.y * &w.z - &v.z * &w.y) - &u.y * (&v.x * &w.z - &v.z * &w.x)
            + &u.z * (&v.x * &w.y - &v.y * &w.x)
    }

    pub fn cross(&self, o: &RVec3) -> RVec3 {
        RVec3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            -(&self.x * &o.y - &self.y * &o.x),
        )
    }

    pub fn add(&self, o: &RVec3) -> RVec3 {
        RVec3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn sub(&self, o: &RVec3) -> RVec3 {
        RVec3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn scale(&self, k: &Rat) -> RVec3 {
        RVec3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn neg(&self) -> RVec3 {
        RVec3::new(-self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [rat_to_f64(&self.x), rat_to_f64(&self.y), rat_to_f64(&self.z)]
    }

    /// Sign of inner(self, self): causal type without tolerance.
    pub fn causal_sign(&self) -> i8 {
        sign(&self.inner(self))
    }

    pub fn is_future(&self) -> bool {
        self.z.is_positive()
    }
}

pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for display; exact mode never round-trips through this.
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

fn exact_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Exact null frame data: a unit rational director with rational null
/// directions (unnormalized representatives of the s⁻ and s⁺ rays).
#[derive(Clone, Debug)]
pub struct ExactFrame {
    pub s: RVec3,
    pub n_minus: RVec3,
    pub n_plus: RVec3,
}

impl ExactFrame {
    /// Requires s spacelike with s·s a perfect rational square (otherwise the
    /// null directions are irrational and exact mode cannot represent them).
    pub fn new(s: &RVec3) -> Result<ExactFrame> {
        let q = s.inner(s);
        if sign(&q) <= 0 {
            return Err(GeomError::ExactUnavailable("director is not spacelike".into()));
        }
        let norm = exact_sqrt(&q).ok_or_else(|| {
            GeomError::ExactUnavailable(
                "director norm is irrational; exact frame needs s·s to be a perfect square".into(),
            )
        })?;
        let unit = s.scale(&norm.recip());

        // Kernel of (s×· + id) gives n⁻, kernel of (s×· − id) gives n⁺.
        let eigendir = |eps: i64| -> Result<RVec3> {
            // Rows of M = cross-matrix(unit) + eps·I, where cross-matrix has
            // rows r_i with (s×v)_i = r_i · v (Euclidean row action).
            let u = &unit;
            let e = rat(eps);
            // (s×v) rows: (0,−z,y), (z,0,−x), (y,−x,0).
            let rows = [
                RVec3::new(e.clone(), -u.z.clone(), u.y.clone()),
                RVec3::new(u.z.clone(), e.clone(), -u.x.clone()),
                RVec3::new(u.y.clone(), -u.x.clone(), e.clone()),
            ];
            // Kernel direction: Euclidean cross of two independent rows.
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let k = RVec3::new(
                    &rows[i].y * &rows[j].z - &rows[i].z * &rows[j].y,
                    &rows[i].z * &rows[j].x - &rows[i].x * &rows[j].z,
                    &rows[i].x * &rows[j].y - &rows[i].y * &rows[j].x,
                );
                if !k.is_zero() {
                    // Future representative: null vectors have z ≠ 0.
                    return Ok(if k.z.is_positive() { k } else { k.neg() });
                }
            }
            Err(GeomError::ExactUnavailable("degenerate eigenspace".into()))
        };
        // s×n⁻ = −n⁻ means (M + I)n⁻ = 0.
        let n_minus = eigendir(1)?;
        let n_plus = eigendir(-1)?;
        debug_assert_eq!(sign(&n_minus.inner(&n_minus)), 0);
        debug_assert_eq!(sign(&n_plus.inner(&n_plus)), 0);
        debug_assert_eq!(sign(&unit.inner(&n_minus)), 0);
        debug_assert_eq!(sign(&unit.inner(&n_plus)), 0);
        Ok(ExactFrame { s: unit, n_minus, n_plus })
    }

    /// Frame-coordinate signs of v: (sign a, sign b, sign c). The
    /// representatives are unnormalized, which leaves every sign intact.
    pub fn coord_signs(&self, v: &RVec3) -> [i8; 3] {
        [
            sign(&v.inner(&self.s)),
            -sign(&v.inner(&self.n_plus)),
            -sign(&v.inner(&self.n_minus)),
        ]
    }
}

/// A crooked halfspace with exact rational data.
#[derive(Clone, Debug)]
pub struct ExactHalfspace {
    pub vertex: RVec3,
    pub frame: ExactFrame,
}

impl ExactHalfspace {
    pub fn new(vertex: RVec3, director: &RVec3) -> Result<ExactHalfspace> {
        Ok(ExactHalfspace { vertex, frame: ExactFrame::new(director)? })
    }

    /// Octant-form membership from exact coordinate signs.
    pub fn contains_octant(&self, q: &RVec3, closed: bool) -> bool {
        let d = q.sub(&self.vertex);
        let [sa, sb, sc] = self.frame.coord_signs(&d);
        if closed {
            match sa {
                1 => sb >= 0,
                -1 => sc <= 0,
                _ => sb >= 0 || sc <= 0,
            }
        } else {
            (sa > 0 && sb > 0) || (sa == 0 && sb > 0 && sc < 0) || (sa < 0 && sc < 0)
        }
    }

    /// Inner-product-form membership: the defining clauses evaluated on
    /// (q−p)·s⁺, (q−p)·s and (q−p)·s⁻ directly.
    pub fn contains_inner_form(&self, q: &RVec3, closed: bool) -> bool {
        let d = q.sub(&self.vertex);
        let dsp = sign(&d.inner(&self.frame.n_plus));
        let dss = sign(&d.inner(&self.frame.s));
        let dsm = sign(&d.inner(&self.frame.n_minus));
        if closed {
            (dsp <= 0 && dss >= 0) || (dsm >= 0 && dss <= 0)
        } else {
            (dsp < 0 && dss > 0) || (dsp < 0 && dsm > 0 && dss == 0) || (dsm > 0 && dss < 0)
        }
    }

    /// Exact semigroup membership: v·s = 0 with sign conditions on the
    /// coefficients.
    pub fn semigroup_contains(&self, v: &RVec3, relative_interior: bool) -> bool {
        if sign(&v.inner(&self.frame.s)) != 0 {
            return false;
        }
        let alpha = -sign(&v.inner(&self.frame.n_plus));
        let beta = sign(&v.inner(&self.frame.n_minus));
        if relative_interior {
            alpha > 0 && beta > 0
        } else {
            alpha >= 0 && beta >= 0
        }
    }
}

/// Exact closed-cone membership for generators and point given rationally:
/// Carathéodory over triples with exact Cramer solves.
pub fn cone_contains_exact(generators: &[RVec3], v: &RVec3) -> bool {
    if v.is_zero() {
        return true;
    }
    let n = generators.len();
    // Ray checks.
    for g in generators {
        let c = g.cross(v);
        if c.is_zero() {
            // Same line; accept when aligned.
            let d = &g.x * &v.x + &g.y * &v.y + &g.z * &v.z;
            if d.is_positive() {
                return true;
            }
        }
    }
    // Pairs (planar) and triples.
    for i in 0..n {
        for j in (i + 1)..n {
            let nrm = generators[i].cross(&generators[j]);
            if nrm.is_zero() {
                continue;
            }
            if sign(&nrm.inner(v)) == 0 {
                // Solve v = λ₁ gᵢ + λ₂ gⱼ exactly on a nonsingular 2×2 block.
                let a = [&generators[i].x, &generators[i].y, &generators[i].z];
                let b = [&generators[j].x, &generators[j].y, &generators[j].z];
                let c = [&v.x, &v.y, &v.z];
                for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
                    let det = a[p] * b[q] - a[q] * b[p];
                    if det.is_zero() {
                        continue;
                    }
                    let l1 = (c[p] * b[q] - c[q] * b[p]) / det.clone();
                    let l2 = (a[p] * c[q] - a[q] * c[p]) / det;
                    let r1 = generators[i].scale(&l1);
                    let r2 = generators[j].scale(&l2);
                    if r1.add(&r2) == *v && !l1.is_negative() && !l2.is_negative() {
                        return true;
                    }
                    break;
                }
            }
            for k in (j + 1)..n {
                let gi = &generators[i];
                let gj = &generators[j];
                let gk = &generators[k];
                let det = RVec3::det3(gi, gj, gk);
                if det.is_zero() {
                    continue;
                }
                let l1 = RVec3::det3(v, gj, gk) / det.clone();
                let l2 = RVec3::det3(gi, v, gk) / det.clone();
                let l3 = RVec3::det3(gi, gj, v) / det;
                if !l1.is_negative() && !l2.is_negative() && !l3.is_negative() {
                    return true;
                }
            }
        }
    }
    false
}

/// Exact membership with facet enumeration: closed or interior. Returns
/// None when the cone is planar and an interior test was requested (the
/// 3-dimensional interior is empty; callers fall back to the planar rule).
pub fn cone_membership_exact(generators: &[RVec3], v: &RVec3, interior: bool) -> Option<bool> {
    // Dedup parallel rays.
    let mut gens: Vec<RVec3> = Vec::new();
    for g in generators {
        if g.is_zero() {
            continue;
        }
        let dup = gens.iter().any(|h| {
            g.cross(h).is_zero() && (&g.x * &h.x + &g.y * &h.y + &g.z * &h.z).is_positive()
        });
        if !dup {
            gens.push(g.clone());
        }
    }
    // Planar test.
    let mut planar = true;
    'outer: for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let n = gens[i].cross(&gens[j]);
            if n.is_zero() {
                continue;
            }
            planar = gens.iter().all(|g| n.inner(g).is_zero());
            break 'outer;
        }
    }
    if planar {
        if interior {
            return None;
        }
        return Some(cone_contains_exact(&gens, v));
    }
    let mut ok = true;
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let n = gens[i].cross(&gens[j]);
            if n.is_zero() {
                continue;
            }
            let mut pos = true;
            let mut neg = true;
            for (k, g) in gens.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                match sign(&n.inner(g)) {
                    1 => neg = false,
                    -1 => pos = false,
                    _ => {}
                }
            }
            let facet = if pos {
                n
            } else if neg {
                n.neg()
            } else {
                continue;
            };
            let s = sign(&facet.inner(v));
            if interior {
                ok &= s > 0;
            } else {
                ok &= s >= 0;
            }
        }
    }
    Some(ok)
}

/// Exact consistent-orientation test on two exact frames.
pub fn consistently_oriented_exact(f1: &ExactFrame, f2: &ExactFrame) -> bool {
    sign(&f1.s.inner(&f2.s)) < 0
        && sign(&f1.s.inner(&f2.n_minus)) <= 0
        && sign(&f1.s.inner(&f2.n_plus)) <= 0
        && sign(&f1.n_minus.inner(&f2.s)) <= 0
        && sign(&f1.n_plus.inner(&f2.s)) <= 0
}

/// Exact disjointness of two crooked halfspaces by the allowable cone.
pub fn halfspaces_disjoint_exact(
    h1: &ExactHalfspace,
    h2: &ExactHalfspace,
    closed_variant: bool,
) -> bool {
    if !consistently_oriented_exact(&h1.frame, &h2.frame) {
        return false;
    }
    let gens = [
        h1.frame.n_minus.clone(),
        h1.frame.n_plus.neg(),
        h2.frame.n_minus.neg(),
        h2.frame.n_plus.clone(),
    ];
    let v = h1.vertex.sub(&h2.vertex);
    // None means a planar cone with an interior request: closed halfspaces
    // of anti-parallel directors always intersect.
    cone_membership_exact(&gens, &v, closed_variant).unwrap_or(false)
}

/// Unit rational spacelike directors: x = w·(1−u²)/(1+u²), y = w·2u/(1+u²),
/// z with w² − z² = 1 from a second rational parameter. Used by the exact
/// test suites.
pub fn rational_unit_spacelike(u_num: i64, u_den: i64, v_num: i64, v_den: i64) -> Option<RVec3> {
    let u = Rat::new(BigInt::from(u_num), BigInt::from(u_den.max(1)));
    let v = Rat::new(BigInt::from(v_num), BigInt::from(v_den.max(1)));
    let one = Rat::one();
    if (&v * &v) == one {
        return None;
    }
    let w = (&one + &v * &v) / (&one - &v * &v);
    let z = (rat(2) * &v) / (&one - &v * &v);
    let denom = &one + &u * &u;
    let x = &w * (&one - &u * &u) / denom.clone();
    let y = &w * (rat(2) * &u) / denom;
    let s = RVec3::new(x, y, z);
    debug_assert!(s.inner(&s).is_one());
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_decimals_and_fractions() {
        assert_eq!(parse_rat("3.25").unwrap(), Rat::new(BigInt::from(13), BigInt::from(4)));
        assert_eq!(parse_rat("-0.5").unwrap(), Rat::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        assert_eq!(parse_rat("13/4").unwrap(), Rat::new(BigInt::from(13), BigInt::from(4)));
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn exact_frame_of_canonical_director() {
        let f = ExactFrame::new(&RVec3::from_i64(1, 0, 0)).unwrap();
        // Rays of (0,1,1) and (0,-1,1).
        assert!(f.n_minus.cross(&RVec3::from_i64(0, 1, 1)).is_zero());
        assert!(f.n_plus.cross(&RVec3::from_i64(0, -1, 1)).is_zero());
    }

    #[test]
    fn exact_frame_of_pythagorean_director() {
        // (2,1,2) has norm 1: null directions are rational.
        let f = ExactFrame::new(&RVec3::from_i64(2, 1, 2)).unwrap();
        for n in [&f.n_minus, &f.n_plus] {
            assert_eq!(sign(&n.inner(n)), 0);
            assert_eq!(sign(&n.inner(&f.s)), 0);
            assert!(n.is_future());
        }
        // Labels differ.
        assert!(!f.n_minus.cross(&f.n_plus).is_zero());
    }

    #[test]
    fn irrational_norm_is_rejected() {
        // s·s = 2 has no rational square root.
        let err = ExactFrame::new(&RVec3::from_i64(1, 1, 0));
        assert!(matches!(err, Err(GeomError::ExactUnavailable(_))));
    }

    #[test]
    fn octant_and_inner_forms_agree_exactly() {
        let h = ExactHalfspace::new(RVec3::from_i64(0, 0, 0), &RVec3::from_i64(2, 1, 2)).unwrap();
        // A deterministic sweep including many boundary points.
        for x in -3..=3 {
            for y in -3..=3 {
                for z in -3..=3 {
                    let q = RVec3::from_i64(x, y, z);
                    for closed in [false, true] {
                        assert_eq!(
                            h.contains_octant(&q, closed),
                            h.contains_inner_form(&q, closed),
                            "disagreement at ({x},{y},{z}) closed={closed}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rational_directors_are_unit() {
        let mut count = 0;
        for (un, ud, vn, vd) in [(1i64, 2i64, 1i64, 3i64), (0, 1, 2, 5), (-3, 4, -1, 4), (5, 7, 3, 8)] {
            let s = rational_unit_spacelike(un, ud, vn, vd).unwrap();
            assert!(s.inner(&s).is_one());
            // And the exact frame exists.
            ExactFrame::new(&s).unwrap();
            count += 1;
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn exact_cone_membership() {
        let f = ExactFrame::new(&RVec3::from_i64(1, 0, 0)).unwrap();
        let gens = [f.n_minus.clone(), f.n_plus.neg()];
        // On the quadrant and its boundary.
        assert!(cone_contains_exact(&gens, &f.n_minus));
        assert!(cone_contains_exact(&gens, &f.n_minus.add(&f.n_plus.neg())));
        assert!(cone_contains_exact(&gens, &RVec3::zero()));
        assert!(!cone_contains_exact(&gens, &f.n_plus));
        assert!(!cone_contains_exact(&gens, &f.s));
    }

    #[test]
    fn exact_semigroup() {
        let h = ExactHalfspace::new(RVec3::from_i64(0, 0, 0), &RVec3::from_i64(1, 0, 0)).unwrap();
        let v = h.frame.n_minus.clone();
        assert!(h.semigroup_contains(&v, false));
        assert!(!h.semigroup_contains(&v, true));
        let w = h.frame.n_minus.add(&h.frame.n_plus.neg());
        assert!(h.semigroup_contains(&w, true));
        assert!(!h.semigroup_contains(&h.frame.s, false));
    }
}
