//! Disjointness of crooked halfspaces and crooked planes.
//!
//! Three routes are cross-validated: the cone of allowable translations
//! (vertex offset against cone{s₁⁻, −s₁⁺, −s₂⁻, s₂⁺}), the direct strict
//! inequalities for ultraparallel and asymptotic director pairs, and a
//! seeded sampling oracle that either exhibits a common point or gives up.

use crate::cone::TranslationCone;
use crate::crooked::CrookedHalfspace;
use crate::error::{GeomError, Result};
use crate::hyperbolic::{consistently_oriented, relation, GeodesicRelation};
use crate::rng::Rng;
use crate::tol::Tol;
use crate::vec::{Chart, Point, Vec3};

/// Allowable translations A(s₁,s₂) = V(s₁) − V(s₂), as a translation cone.
/// Closed crooked halfspaces H(p₁,s₁), H(p₂,s₂) are disjoint exactly when
/// p₁ − p₂ lies in the interior; open ones when it lies in the closure.
pub fn allowable_cone(s1: &Vec3, s2: &Vec3, tol: Tol) -> Result<TranslationCone> {
    if !consistently_oriented(s1, s2, tol)? {
        return Err(GeomError::NotConsistentlyOriented);
    }
    let f1 = crate::frame::NullFrame::new(s1, tol)?;
    let f2 = crate::frame::NullFrame::new(s2, tol)?;
    TranslationCone::from_generators(
        &[f1.s_minus(), -f1.s_plus(), -f2.s_minus(), f2.s_plus()],
        tol,
    )
}

/// Disjointness of two crooked halfspaces via the allowable cone.
/// `closed_variant` selects the closed halfspaces (interior membership) or
/// the open ones (closure membership).
pub fn halfspaces_disjoint(
    h1: &CrookedHalfspace,
    h2: &CrookedHalfspace,
    closed_variant: bool,
    tol: Tol,
) -> Result<bool> {
    let s1 = h1.director();
    let s2 = h2.director();
    if !consistently_oriented(&s1, &s2, tol)? {
        // Disjoint halfspaces have disjoint linearizations, so halfplane
        // overlap already decides.
        return Ok(false);
    }
    let v = h1.vertex() - h2.vertex();
    if s1.parallel_line(&s2, tol)? {
        // Anti-parallel directors (parallel consistent pairs never reach
        // here): the cone is the planar stem quadrant of H1, with empty
        // interior. Decide by direct frame comparison.
        if closed_variant {
            return Ok(false);
        }
        return h1.semigroup_contains(&v, false, tol);
    }
    let cone = allowable_cone(&s1, &s2, tol)?;
    Ok(cone.contains(&v, closed_variant, tol))
}

/// Direct inequality criterion for disjointness of two crooked planes with
/// consistently oriented, ultraparallel or asymptotic directors. Agrees with
/// the closed-halfspace cone criterion.
///
/// Ultraparallel: (p₂−p₁)·(s₁×s₂) > |(p₂−p₁)·s₁| + |(p₂−p₁)·s₂|.
/// Asymptotic with s₁⁻ ∥ s₂⁺: the three strict inequalities
/// (p₂−p₁)·s₁ < 0, (p₂−p₁)·s₂ < 0, (p₂−p₁)·(s₁⁺ × s₂⁻) > 0;
/// the mirrored pattern s₁⁺ ∥ s₂⁻ evaluates with the roles swapped.
pub fn planes_disjoint_direct(
    p1: &Point,
    s1: &Vec3,
    p2: &Point,
    s2: &Vec3,
    tol: Tol,
) -> Result<bool> {
    if !consistently_oriented(s1, s2, tol)? {
        return Err(GeomError::NotConsistentlyOriented);
    }
    let rel = relation(s1, s2, tol)?;
    let f1 = crate::frame::NullFrame::new(s1, tol)?;
    let f2 = crate::frame::NullFrame::new(s2, tol)?;
    let u1 = f1.s();
    let u2 = f2.s();
    match rel {
        GeodesicRelation::Ultraparallel => {
            let u = *p2 - *p1;
            let lhs = u.dot(&u1.cross_raw(&u2));
            let rhs = u.dot(&u1).abs() + u.dot(&u2).abs();
            Ok(tol.sign_scaled(lhs - rhs, u.euclid_norm().max(1e-300)) > 0)
        }
        GeodesicRelation::Asymptotic => {
            // Two future null vectors are parallel iff their inner product
            // vanishes.
            let s1m_s2p = f1.s_minus().dot(&f2.s_plus());
            let (pa, fa, pb, fb) = if tol.is_zero(s1m_s2p) {
                (p1, &f1, p2, &f2)
            } else {
                (p2, &f2, p1, &f1)
            };
            debug_assert!(tol.is_zero(fa.s_minus().dot(&fb.s_plus())));
            let u = *pb - *pa;
            let scale = u.euclid_norm().max(1e-300);
            let c1 = tol.sign_scaled(u.dot(&fa.s()), scale) < 0;
            let c2 = tol.sign_scaled(u.dot(&fb.s()), scale) < 0;
            let c3 = tol.sign_scaled(u.dot(&fa.s_plus().cross_raw(&fb.s_minus())), scale) > 0;
            Ok(c1 && c2 && c3)
        }
        other => Err(GeomError::UnsupportedRelation(other)),
    }
}

/// Outcome of the sampling oracle.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome {
    /// A point in both (closed) halfspaces.
    Witness(Point),
    /// No common point found within the sample budget.
    NoWitnessFound,
}

/// Seeded sampling oracle: vertex probes, log-spaced 2-d grids on the six
/// boundary sheets (stems and wings of both halfspaces — the seams where a
/// nonempty intersection must leave a 2-d footprint), a march along shared
/// timelike directions, and multiscale rejection sampling in balls around
/// the vertex midpoint up to radius 10³·(1 + |p₁−p₂|).
pub fn sampling_oracle(
    h1: &CrookedHalfspace,
    h2: &CrookedHalfspace,
    samples: usize,
    seed: u64,
    tol: Tol,
) -> OracleOutcome {
    let both = |q: &Point| -> bool {
        h1.contains(q, true, tol).unwrap_or(false) && h2.contains(q, true, tol).unwrap_or(false)
    };

    for q in [h1.vertex(), h2.vertex()] {
        if both(&q) {
            return OracleOutcome::Witness(q);
        }
    }

    // Log-spaced parameter values 0 ∪ ±(1/32)·1.2^k up to 512.
    let mut params = vec![0.0f64];
    let mut t = 1.0 / 32.0;
    while t <= 512.0 {
        params.push(t);
        params.push(-t);
        t *= 1.2;
    }
    let pos: Vec<f64> = params.iter().copied().filter(|&x| x >= 0.0).collect();
    let neg: Vec<f64> = params.iter().copied().filter(|&x| x <= 0.0).collect();

    // Stem sheet (0,b,c), wing sheets (a,0,c) with a ≥ 0 and (a,b,0) with
    // a ≤ 0, gridded on each halfspace.
    for h in [h1, h2] {
        for &b in &params {
            for &c in &params {
                let q = h.point_at(0.0, b, c);
                if both(&q) {
                    return OracleOutcome::Witness(q);
                }
            }
        }
        for &a in &pos {
            for &c in &params {
                let q = h.point_at(a, 0.0, c);
                if both(&q) {
                    return OracleOutcome::Witness(q);
                }
            }
        }
        for &a in &neg {
            for &b in &params {
                let q = h.point_at(a, b, 0.0);
                if both(&q) {
                    return OracleOutcome::Witness(q);
                }
            }
        }
    }

    // Common future timelike direction: when the linearizations overlap,
    // deep points along it land in both halfspaces.
    let s1 = h1.director();
    let s2 = h2.director();
    let mid = h1.vertex() + (h2.vertex() - h1.vertex()) * 0.5;
    let mut rng = Rng::new(seed);
    if mid.chart() == Chart::Std {
        for _ in 0..256 {
            let r = rng.range(0.0, 3.0);
            let th = rng.range(0.0, std::f64::consts::TAU);
            let u = crate::hyperbolic::HPoint::polar(r, th).vec();
            if u.dot(&s1) > tol.eps && u.dot(&s2) > tol.eps {
                for k in 0..40 {
                    let q = mid + u * (2.0f64).powi(k);
                    if both(&q) {
                        return OracleOutcome::Witness(q);
                    }
                }
            }
        }
    }

    // Multiscale rejection sampling, coarsest ball last.
    let top = 1e3 * (1.0 + (h1.vertex() - h2.vertex()).euclid_norm());
    let mut radii = vec![0.5, 2.0, 8.0, 32.0, 128.0];
    radii.retain(|r| *r < top);
    radii.push(top);
    let per_scale = samples / radii.len().max(1);
    for radius in radii {
        for _ in 0..per_scale {
            let q = mid
                + Vec3::in_chart(
                    rng.range(-radius, radius),
                    rng.range(-radius, radius),
                    rng.range(-radius, radius),
                    mid.chart(),
                );
            if both(&q) {
                return OracleOutcome::Witness(q);
            }
        }
    }
    OracleOutcome::NoWitnessFound
}

/// Everything the disjointness machinery can say about a pair, with a
/// disagreement flag used as a regression tripwire.
#[derive(Clone, Debug)]
pub struct DisjointnessReport {
    pub relation: GeodesicRelation,
    pub consistent: bool,
    pub cone_closed: bool,
    pub cone_open: bool,
    pub direct: Option<bool>,
    pub oracle: Option<OracleOutcome>,
    pub agree: bool,
}

/// Evaluate every applicable method. `oracle_samples = 0` skips sampling.
pub fn disjointness_report(
    h1: &CrookedHalfspace,
    h2: &CrookedHalfspace,
    oracle_samples: usize,
    seed: u64,
    tol: Tol,
) -> Result<DisjointnessReport> {
    let s1 = h1.director();
    let s2 = h2.director();
    let rel = relation(&s1, &s2, tol)?;
    let consistent = consistently_oriented(&s1, &s2, tol)?;
    let cone_closed = halfspaces_disjoint(h1, h2, true, tol)?;
    let cone_open = halfspaces_disjoint(h1, h2, false, tol)?;
    let direct = if consistent
        && matches!(rel, GeodesicRelation::Ultraparallel | GeodesicRelation::Asymptotic)
    {
        Some(planes_disjoint_direct(&h1.vertex(), &s1, &h2.vertex(), &s2, tol)?)
    } else {
        None
    };
    let oracle = if oracle_samples > 0 {
        Some(sampling_oracle(h1, h2, oracle_samples, seed, tol))
    } else {
        None
    };

    let mut agree = true;
    if let Some(d) = direct {
        agree &= d == cone_closed;
    }
    if let Some(OracleOutcome::Witness(_)) = oracle {
        agree &= !cone_closed;
    }
    if let Some(OracleOutcome::NoWitnessFound) = oracle {
        // Sampling that finds nothing is only evidence; it must at least not
        // contradict a definite intersection with matching strictness.
        agree &= cone_closed || !consistent || cone_open;
    }
    Ok(DisjointnessReport { relation: rel, consistent, cone_closed, cone_open, direct, oracle, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::NullFrame;

    fn tol() -> Tol {
        Tol::default()
    }

    fn hs(p: [f64; 3], s: [f64; 3]) -> CrookedHalfspace {
        CrookedHalfspace::new(Point::std(p[0], p[1], p[2]), &Vec3::std(s[0], s[1], s[2]), tol())
            .unwrap()
    }

    #[test]
    fn worked_ultraparallel_pair_direct() {
        // s₁×s₂ = (0, sinh 1, 0); offset (0,1,0) separates the planes.
        let s1 = Vec3::std(-1.0, 0.0, 0.0);
        let s2 = Vec3::std(1f64.cosh(), 0.0, 1f64.sinh());
        let cr = s1.cross(&s2).unwrap();
        assert!((cr - Vec3::std(0.0, 1f64.sinh(), 0.0)).euclid_norm() < 1e-12);

        let p1 = Point::std(0.0, 0.0, 0.0);
        let p2 = Point::std(0.0, 1.0, 0.0);
        assert!(planes_disjoint_direct(&p1, &s1, &p2, &s2, tol()).unwrap());
        // Zero offset fails (0 > 0 is false), sign flip fails.
        assert!(!planes_disjoint_direct(&p1, &s1, &p1, &s2, tol()).unwrap());
        let p2n = Point::std(0.0, -1.0, 0.0);
        assert!(!planes_disjoint_direct(&p1, &s1, &p2n, &s2, tol()).unwrap());
    }

    #[test]
    fn allowable_cone_generator_counts() {
        let s1 = Vec3::std(-1.0, 0.0, 0.0);
        let s2 = Vec3::std(1f64.cosh(), 0.0, 1f64.sinh());
        let cone = allowable_cone(&s1, &s2, tol()).unwrap();
        assert_eq!(cone.generators().len(), 4);
        assert!(!cone.is_degenerate());

        // Asymptotic pair merges a duplicated ray.
        let s2 = Vec3::std(1.0, 1.0, 1.0);
        let cone = allowable_cone(&s1, &s2, tol()).unwrap();
        assert_eq!(cone.generators().len(), 3);

        // Anti-parallel pair degenerates to the planar quadrant.
        let s2 = Vec3::std(1.0, 0.0, 0.0);
        let cone = allowable_cone(&s1, &s2, tol()).unwrap();
        assert_eq!(cone.generators().len(), 2);
        assert!(cone.is_degenerate());

        // Crossing pairs are rejected.
        assert!(matches!(
            allowable_cone(&Vec3::std(1.0, 0.0, 0.0), &Vec3::std(0.0, 1.0, 0.0), tol()),
            Err(GeomError::NotConsistentlyOriented)
        ));
    }

    #[test]
    fn negation_relation_between_orientations() {
        let s1 = Vec3::std(-1.0, 0.0, 0.0);
        let s2 = Vec3::std(1f64.cosh(), 0.0, 1f64.sinh());
        let a12 = allowable_cone(&s1, &s2, tol()).unwrap();
        let a21 = allowable_cone(&s2, &s1, tol()).unwrap();
        // A(s₂,s₁) = −A(s₁,s₂): generators match up to sign.
        for g in a12.generators() {
            assert!(a21.contains(&-*g, false, tol()));
        }
        for g in a21.generators() {
            assert!(a12.contains(&-*g, false, tol()));
        }
    }

    #[test]
    fn same_vertex_pair_is_open_disjoint_only() {
        let h1 = hs([0.0; 3], [-1.0, 0.0, 0.0]);
        let h2 = hs([0.0; 3], [1f64.cosh(), 0.0, 1f64.sinh()]);
        assert!(halfspaces_disjoint(&h1, &h2, false, tol()).unwrap());
        assert!(!halfspaces_disjoint(&h1, &h2, true, tol()).unwrap());
        // The shared vertex witnesses the closed intersection.
        match sampling_oracle(&h1, &h2, 100, 1, tol()) {
            OracleOutcome::Witness(w) => {
                assert!(h1.contains(&w, true, tol()).unwrap());
                assert!(h2.contains(&w, true, tol()).unwrap());
            }
            _ => panic!("expected the shared vertex as witness"),
        }
    }

    #[test]
    fn generator_sum_offset_disjoint_and_reversed_not() {
        let s1 = Vec3::std(-1.0, 0.0, 0.0);
        let s2 = Vec3::std(1f64.cosh(), 0.0, 1f64.sinh());
        let cone = allowable_cone(&s1, &s2, tol()).unwrap();
        let mut sum = Vec3::std(0.0, 0.0, 0.0);
        for g in cone.generators() {
            sum = sum + *g;
        }
        let p2 = Point::std(0.1, -0.4, 0.2);
        let p1 = p2 + sum;
        let h1 = CrookedHalfspace::new(p1, &s1, tol()).unwrap();
        let h2 = CrookedHalfspace::new(p2, &s2, tol()).unwrap();
        assert!(halfspaces_disjoint(&h1, &h2, true, tol()).unwrap());
        assert!(halfspaces_disjoint(&h1, &h2, false, tol()).unwrap());
        assert!(planes_disjoint_direct(&p1, &s1, &p2, &s2, tol()).unwrap());
        assert_eq!(sampling_oracle(&h1, &h2, 3000, 7, tol()), OracleOutcome::NoWitnessFound);

        // Pull the vertices together instead: massive overlap.
        let p1 = p2 - sum;
        let h1 = CrookedHalfspace::new(p1, &s1, tol()).unwrap();
        let h2 = CrookedHalfspace::new(p2, &s2, tol()).unwrap();
        assert!(!halfspaces_disjoint(&h1, &h2, true, tol()).unwrap());
        assert!(!planes_disjoint_direct(&p1, &s1, &p2, &s2, tol()).unwrap());
        match sampling_oracle(&h1, &h2, 5000, 11, tol()) {
            OracleOutcome::Witness(w) => {
                assert!(h1.contains(&w, true, tol()).unwrap());
                assert!(h2.contains(&w, true, tol()).unwrap());
            }
            _ => panic!("oracle must find a witness for overlapping halfspaces"),
        }
    }

    #[test]
    fn asymptotic_direct_branch_both_patterns() {
        // Pattern s₁⁺ ∥ s₂⁻ (the worked pair) and its reversal.
        let s1 = Vec3::std(-1.0, 0.0, 0.0);
        let s2 = Vec3::std(1.0, 1.0, 1.0);
        let f1 = NullFrame::new(&s1, tol()).unwrap();
        let f2 = NullFrame::new(&s2, tol()).unwrap();
        assert!(tol().is_zero(f1.s_plus().dot(&f2.s_minus())));

        let cone = allowable_cone(&s1, &s2, tol()).unwrap();
        let mut sum = Vec3::std(0.0, 0.0, 0.0);
        for g in cone.generators() {
            sum = sum + *g;
        }
        let p2 = Point::std(0.0, 0.0, 0.0);
        let p1 = p2 + sum;
        assert!(planes_disjoint_direct(&p1, &s1, &p2, &s2, tol()).unwrap());
        // Swapped order must agree (symmetry).
        assert!(planes_disjoint_direct(&p2, &s2, &p1, &s1, tol()).unwrap());
        // And the cone criterion agrees.
        let h1 = CrookedHalfspace::new(p1, &s1, tol()).unwrap();
        let h2 = CrookedHalfspace::new(p2, &s2, tol()).unwrap();
        assert!(halfspaces_disjoint(&h1, &h2, true, tol()).unwrap());
        assert!(halfspaces_disjoint(&h2, &h1, true, tol()).unwrap());
    }

    #[test]
    fn parallel_directors_never_disjoint() {
        let h1 = hs([0.0; 3], [1.0, 0.0, 0.0]);
        let h2 = hs([3.0, 1.0, 0.5], [1.0, 0.0, 0.0]);
        assert!(!halfspaces_disjoint(&h1, &h2, true, tol()).unwrap());
        assert!(!halfspaces_disjoint(&h1, &h2, false, tol()).unwrap());
    }

    #[test]
    fn antiparallel_directors_complement_shifts() {
        let h = hs([0.0; 3], [1.0, 0.0, 0.0]);
        let hc = h.complement(tol());
        // Complementary opens are disjoint; closed ones share the boundary.
        assert!(halfspaces_disjoint(&h, &hc, false, tol()).unwrap());
        assert!(!halfspaces_disjoint(&h, &hc, true, tol()).unwrap());
        // Shifting the complement deeper into its own semigroup keeps the
        // opens disjoint; shifting it into H overlaps (the complement grows
        // across the old boundary).
        let w = hc.frame().s_minus() * 2.0 - hc.frame().s_plus();
        let hc_in = CrookedHalfspace::new(h.vertex() + w, &hc.director(), tol()).unwrap();
        assert!(hc.semigroup_contains(&w, false, tol()).unwrap());
        assert!(halfspaces_disjoint(&hc_in, &h, false, tol()).unwrap());
        assert!(halfspaces_disjoint(&h, &hc_in, false, tol()).unwrap());
        let v = h.frame().s_minus() * 2.0 - h.frame().s_plus();
        let hc_out = CrookedHalfspace::new(h.vertex() + v, &hc.director(), tol()).unwrap();
        assert!(!halfspaces_disjoint(&hc_out, &h, false, tol()).unwrap());
    }

    #[test]
    fn disjointness_is_monotone_under_the_semigroup() {
        // If H1 and H2 are disjoint and v ∈ V(H1) then H1 + v stays disjoint
        // from H2.
        let mut rng = crate::rng::Rng::new(88);
        let s1 = Vec3::std(-1.0, 0.0, 0.0);
        let s2 = Vec3::std(0.8f64.cosh(), 0.0, 0.8f64.sinh());
        let cone = allowable_cone(&s1, &s2, tol()).unwrap();
        for _ in 0..100 {
            let mut off = Vec3::std(0.0, 0.0, 0.0);
            for g in cone.generators() {
                off = off + *g * rng.range(0.05, 2.0);
            }
            let p2 = Point::std(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
            let h1 = CrookedHalfspace::new(p2 + off, &s1, tol()).unwrap();
            let h2 = CrookedHalfspace::new(p2, &s2, tol()).unwrap();
            assert!(halfspaces_disjoint(&h1, &h2, true, tol()).unwrap());
            let v = h1.frame().s_minus() * rng.range(0.0, 2.0)
                - h1.frame().s_plus() * rng.range(0.0, 2.0);
            let h1v = CrookedHalfspace::new(h1.vertex() + v, &s1, tol()).unwrap();
            assert!(halfspaces_disjoint(&h1v, &h2, true, tol()).unwrap());
        }
    }

    #[test]
    fn report_flags_and_agreement() {
        let h1 = hs([0.0; 3], [-1.0, 0.0, 0.0]);
        let h2 = hs([0.0, 1.0, 0.0], [1f64.cosh(), 0.0, 1f64.sinh()]);
        let r = disjointness_report(&h1, &h2, 2000, 5, tol()).unwrap();
        assert_eq!(r.relation, GeodesicRelation::Ultraparallel);
        assert!(r.consistent);
        assert!(r.agree, "methods disagree: {r:?}");

        let h3 = hs([0.0; 3], [1.0, 0.0, 0.0]);
        let h4 = hs([0.0; 3], [0.0, 1.0, 0.0]);
        let r = disjointness_report(&h3, &h4, 2000, 5, tol()).unwrap();
        assert!(!r.consistent);
        assert!(!r.cone_closed && !r.cone_open);
        assert!(matches!(r.oracle, Some(OracleOutcome::Witness(_))));
        assert!(r.agree);
    }
}
