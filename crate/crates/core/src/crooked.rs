//! Crooked halfspaces: membership, strata, stem quadrant, translational
//! semigroup, complement, linearization and transformation.
//!
//! Everything is computed in the frame coordinates (a,b,c) of the director's
//! null frame, taken relative to the vertex. The open halfspace is the octant
//! union (+,+,±) ∪ (0,+,−) ∪ (−,±,−).

use crate::cone::TranslationCone;
use crate::error::{GeomError, Result};
use crate::frame::NullFrame;
use crate::hyperbolic::Halfplane;
use crate::tol::Tol;
use crate::transform::AffineMap;
use crate::vec::{Point, Vec3};

/// Stratum labels of a crooked halfspace; the seven non-Exterior labels
/// partition the closed halfspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    OpenInterior,
    WingMinus,
    WingPlus,
    StemFace,
    HingeMinus,
    HingePlus,
    Vertex,
    Exterior,
}

impl Stratum {
    pub fn as_str(self) -> &'static str {
        match self {
            Stratum::OpenInterior => "open_interior",
            Stratum::WingMinus => "wing_minus",
            Stratum::WingPlus => "wing_plus",
            Stratum::StemFace => "stem_face",
            Stratum::HingeMinus => "hinge_minus",
            Stratum::HingePlus => "hinge_plus",
            Stratum::Vertex => "vertex",
            Stratum::Exterior => "exterior",
        }
    }
}

/// Decomposition of a semigroup element as v = α s⁻ − β s⁺.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SemigroupCoefficients {
    pub alpha: f64,
    pub beta: f64,
    /// v·s, which must vanish for v to lie in the stem plane.
    pub normal_component: f64,
}

/// The stem quadrant: apex point plus the two-generator translation cone.
#[derive(Clone, Debug)]
pub struct StemQuadrant {
    pub apex: Point,
    pub cone: TranslationCone,
}

impl StemQuadrant {
    pub fn contains_point(&self, q: &Point, tol: Tol) -> Result<bool> {
        if q.chart() != self.apex.chart() {
            return Err(GeomError::ChartMismatch);
        }
        Ok(self.cone.contains(&(*q - self.apex), false, tol))
    }
}

/// An (open) crooked halfspace, determined by vertex and unit director.
#[derive(Clone, Copy, Debug)]
pub struct CrookedHalfspace {
    vertex: Point,
    frame: NullFrame,
}

impl CrookedHalfspace {
    pub fn new(vertex: Point, director: &Vec3, tol: Tol) -> Result<Self> {
        if vertex.chart() != director.chart() {
            return Err(GeomError::ChartMismatch);
        }
        Ok(CrookedHalfspace { vertex, frame: NullFrame::new(director, tol)? })
    }

    /// The canonical halfspace: vertex at the origin, director (1,0,0), Std.
    pub fn canonical(tol: Tol) -> Self {
        CrookedHalfspace::new(Point::std(0.0, 0.0, 0.0), &Vec3::std(1.0, 0.0, 0.0), tol)
            .expect("canonical director is spacelike")
    }

    pub fn vertex(&self) -> Point {
        self.vertex
    }

    pub fn director(&self) -> Vec3 {
        self.frame.s()
    }

    pub fn frame(&self) -> &NullFrame {
        &self.frame
    }

    /// Frame coordinates of a point, relative to the vertex.
    pub fn frame_coords(&self, q: &Point) -> Result<[f64; 3]> {
        if q.chart() != self.vertex.chart() {
            return Err(GeomError::ChartMismatch);
        }
        Ok(self.frame.coords(&(*q - self.vertex)))
    }

    /// The point with the given frame coordinates relative to the vertex.
    pub fn point_at(&self, a: f64, b: f64, c: f64) -> Point {
        self.vertex + self.frame.expand(a, b, c)
    }

    /// Scale-relative sign triple of the frame coordinates of q − vertex.
    fn coord_signs(&self, q: &Point, tol: Tol) -> Result<[i8; 3]> {
        let [a, b, c] = self.frame_coords(q)?;
        let scale = a.abs().max(b.abs()).max(c.abs());
        Ok([
            tol.sign_scaled(a, scale),
            tol.sign_scaled(b, scale),
            tol.sign_scaled(c, scale),
        ])
    }

    /// Stratum of q: the hinges and vertex take precedence over the wings,
    /// so the labels partition E.
    pub fn stratum(&self, q: &Point, tol: Tol) -> Result<Stratum> {
        let [sa, sb, sc] = self.coord_signs(q, tol)?;
        Ok(match sa {
            0 => match (sb, sc) {
                (0, 0) => Stratum::Vertex,
                (0, _) => Stratum::HingePlus,
                (_, 0) => Stratum::HingeMinus,
                (1, -1) => Stratum::OpenInterior,
                (-1, 1) => Stratum::Exterior,
                // both nonzero, same sign: interior of a stem triangle
                _ => Stratum::StemFace,
            },
            1 => match sb {
                0 => Stratum::WingMinus,
                1 => Stratum::OpenInterior,
                _ => Stratum::Exterior,
            },
            _ => match sc {
                0 => Stratum::WingPlus,
                -1 => Stratum::OpenInterior,
                _ => Stratum::Exterior,
            },
        })
    }

    /// Membership via the octant form. Open and closed agree with the
    /// stratum partition: open ⇔ OpenInterior, closed ⇔ not Exterior.
    pub fn contains(&self, q: &Point, closed: bool, tol: Tol) -> Result<bool> {
        let s = self.stratum(q, tol)?;
        Ok(if closed { s != Stratum::Exterior } else { s == Stratum::OpenInterior })
    }

    /// Membership via the direct inner-product inequalities (the defining
    /// clause form). Kept as an independent route; equivalence with the
    /// octant form is enforced by tests and by the exact suite.
    pub fn contains_inner_form(&self, q: &Point, closed: bool, tol: Tol) -> Result<bool> {
        if q.chart() != self.vertex.chart() {
            return Err(GeomError::ChartMismatch);
        }
        let d = *q - self.vertex;
        let ds = d.dot(&self.frame.s());
        let dm = d.dot(&self.frame.s_minus());
        let dp = d.dot(&self.frame.s_plus());
        let scale = ds.abs().max(dm.abs()).max(dp.abs());
        let ss = tol.sign_scaled(ds, scale);
        let sm = tol.sign_scaled(dm, scale);
        let sp = tol.sign_scaled(dp, scale);
        Ok(if closed {
            (sp <= 0 && ss >= 0) || (sm >= 0 && ss <= 0)
        } else {
            (sp < 0 && ss > 0) || (sp < 0 && sm > 0 && ss == 0) || (sm > 0 && ss < 0)
        })
    }

    /// The stem quadrant Quad(H) = vertex + cone{s⁻, −s⁺}.
    pub fn stem_quadrant(&self, tol: Tol) -> StemQuadrant {
        let cone = TranslationCone::from_generators(
            &[self.frame.s_minus(), -self.frame.s_plus()],
            tol,
        )
        .expect("stem quadrant generators are independent");
        StemQuadrant { apex: self.vertex, cone }
    }

    /// Coefficients of v against (s⁻, −s⁺) together with v·s.
    pub fn semigroup_coefficients(&self, v: &Vec3) -> Result<SemigroupCoefficients> {
        if v.chart() != self.vertex.chart() {
            return Err(GeomError::ChartMismatch);
        }
        Ok(SemigroupCoefficients {
            alpha: -v.dot(&self.frame.s_plus()),
            beta: v.dot(&self.frame.s_minus()),
            normal_component: v.dot(&self.frame.s()),
        })
    }

    /// Membership of v in the translational semigroup V(H): v·s = 0 with
    /// α, β ≥ 0 (closed) or α, β > 0 (relative interior). Closed membership
    /// guarantees H + v ⊆ H.
    pub fn semigroup_contains(&self, v: &Vec3, relative_interior: bool, tol: Tol) -> Result<bool> {
        let co = self.semigroup_coefficients(v)?;
        let scale = v.scale();
        if !tol.is_zero_scaled(co.normal_component, scale) {
            return Ok(false);
        }
        let sa = tol.sign_scaled(co.alpha, scale);
        let sb = tol.sign_scaled(co.beta, scale);
        Ok(if relative_interior { sa > 0 && sb > 0 } else { sa >= 0 && sb >= 0 })
    }

    /// The complementary halfspace H(vertex, −s).
    pub fn complement(&self, tol: Tol) -> CrookedHalfspace {
        CrookedHalfspace::new(self.vertex, &-self.frame.s(), tol)
            .expect("negated director stays spacelike")
    }

    /// Linearization: the halfplane h(s), independent of the vertex.
    pub fn linearize(&self, tol: Tol) -> Halfplane {
        Halfplane::new(self.frame.s(), tol).expect("director is unit spacelike")
    }

    /// Hinge line through the vertex parallel to s⁻.
    pub fn hinge_minus(&self) -> (Point, Vec3) {
        (self.vertex, self.frame.s_minus())
    }

    /// Hinge line through the vertex parallel to s⁺.
    pub fn hinge_plus(&self) -> (Point, Vec3) {
        (self.vertex, self.frame.s_plus())
    }

    /// The spine: the tachyon through the vertex parallel to the director.
    pub fn spine(&self) -> (Point, Vec3) {
        (self.vertex, self.frame.s())
    }

    /// Image halfspace under an orientation-preserving conformal map.
    ///
    /// The director transports by L(g), negated when g reverses time
    /// orientation; that is what makes contains(transform(H,g), g(q)) agree
    /// with contains(H, q) for every q.
    pub fn transform(&self, g: &AffineMap, tol: Tol) -> Result<CrookedHalfspace> {
        if g.chart() != self.vertex.chart() {
            return Err(GeomError::ChartMismatch);
        }
        if g.conformal_scale(tol).is_none() || !g.preserves_orientation() {
            return Err(GeomError::NotConformal);
        }
        let vertex = g.apply_point(&self.vertex)?;
        let mut dir = g.apply_vec(&self.frame.s())?;
        if !g.preserves_time_orientation() {
            dir = -dir;
        }
        CrookedHalfspace::new(vertex, &dir, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn tol() -> Tol {
        Tol::default()
    }

    fn canonical() -> CrookedHalfspace {
        CrookedHalfspace::canonical(tol())
    }

    #[test]
    fn octant_membership_examples() {
        let h = canonical();
        let q = h.point_at(1.0, 1.0, 0.0);
        assert!(h.contains(&q, false, tol()).unwrap());
        assert!(h.contains(&q, true, tol()).unwrap());

        let v = h.vertex();
        assert!(!h.contains(&v, false, tol()).unwrap());
        assert!(h.contains(&v, true, tol()).unwrap());

        let q = h.point_at(-1.0, 5.0, 1.0);
        assert!(!h.contains(&q, false, tol()).unwrap());
        assert!(!h.contains(&q, true, tol()).unwrap());
    }

    #[test]
    fn stratum_examples() {
        let h = canonical();
        assert_eq!(h.stratum(&h.point_at(0.0, 3.0, 0.0), tol()).unwrap(), Stratum::HingeMinus);
        assert_eq!(h.stratum(&h.point_at(2.0, 0.0, 7.0), tol()).unwrap(), Stratum::WingMinus);
        assert_eq!(h.stratum(&h.point_at(0.0, 2.0, 2.0), tol()).unwrap(), Stratum::StemFace);
        assert_eq!(h.stratum(&h.point_at(0.0, -2.0, -2.0), tol()).unwrap(), Stratum::StemFace);
        assert_eq!(h.stratum(&h.point_at(0.0, 0.0, -4.0), tol()).unwrap(), Stratum::HingePlus);
        assert_eq!(h.stratum(&h.point_at(-3.0, 1.0, 0.0), tol()).unwrap(), Stratum::WingPlus);
        assert_eq!(h.stratum(&h.vertex(), tol()).unwrap(), Stratum::Vertex);
        assert_eq!(h.stratum(&h.point_at(0.0, -1.0, 1.0), tol()).unwrap(), Stratum::Exterior);
    }

    #[test]
    fn membership_forms_agree_on_random_points() {
        let mut rng = Rng::new(31);
        let h = CrookedHalfspace::new(
            Point::std(0.3, -0.4, 0.9),
            &Vec3::std(1.2, 0.4, -0.3),
            tol(),
        )
        .unwrap();
        for _ in 0..5000 {
            let q = Point::std(rng.range(-4.0, 4.0), rng.range(-4.0, 4.0), rng.range(-4.0, 4.0));
            for closed in [false, true] {
                assert_eq!(
                    h.contains(&q, closed, tol()).unwrap(),
                    h.contains_inner_form(&q, closed, tol()).unwrap(),
                    "forms disagree at {:?} closed={closed}",
                    q.comps()
                );
            }
        }
    }

    #[test]
    fn stem_quadrant_examples() {
        let h = canonical();
        let quad = h.stem_quadrant(tol());
        assert!(quad.contains_point(&h.point_at(0.0, 1.0, -1.0), tol()).unwrap());
        assert!(!quad.contains_point(&h.point_at(0.0, 1.0, 1.0), tol()).unwrap());
        assert!(quad.contains_point(&h.vertex(), tol()).unwrap());
    }

    #[test]
    fn semigroup_examples() {
        let h = canonical();
        let sm = h.frame().s_minus();
        let sp = h.frame().s_plus();
        assert!(h.semigroup_contains(&sm, false, tol()).unwrap());
        assert!(!h.semigroup_contains(&sm, true, tol()).unwrap());
        let v = sm - sp;
        assert!(h.semigroup_contains(&v, false, tol()).unwrap());
        assert!(h.semigroup_contains(&v, true, tol()).unwrap());
        assert!(!h.semigroup_contains(&h.director(), false, tol()).unwrap());

        let co = h.semigroup_coefficients(&v).unwrap();
        assert!((co.alpha - 1.0).abs() < 1e-12);
        assert!((co.beta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn semigroup_translation_stays_inside() {
        let mut rng = Rng::new(77);
        let h = CrookedHalfspace::new(
            Point::std(0.1, 0.2, -0.3),
            &Vec3::std(0.8, -0.5, 0.2),
            tol(),
        )
        .unwrap();
        for _ in 0..50 {
            let v = h.frame().s_minus() * rng.range(0.0, 3.0)
                - h.frame().s_plus() * rng.range(0.0, 3.0);
            assert!(h.semigroup_contains(&v, false, tol()).unwrap());
            // Prop: Quad(H) = p + V(H)
            assert!(h
                .stem_quadrant(tol())
                .contains_point(&(h.vertex() + v), tol())
                .unwrap());
            for _ in 0..40 {
                let q = h.point_at(rng.range(-3.0, 3.0), rng.range(-3.0, 3.0), rng.range(-3.0, 3.0));
                if h.contains(&q, true, tol()).unwrap() {
                    assert!(h.contains(&(q + v), true, tol()).unwrap());
                }
                if h.contains(&q, false, tol()).unwrap() {
                    assert!(h.contains(&(q + v), false, tol()).unwrap());
                }
            }
        }
    }

    #[test]
    fn complement_is_involutive_and_partitions() {
        let h = CrookedHalfspace::new(
            Point::std(0.0, 1.0, 0.0),
            &Vec3::std(0.6, 0.9, 0.1),
            tol(),
        )
        .unwrap();
        let hc = h.complement(tol());
        let hcc = hc.complement(tol());
        assert!((hcc.director() - h.director()).euclid_norm() < 1e-12);

        // Generators: s⁻ of the complement spans the same line as −s⁺ of H.
        assert!(hc
            .frame()
            .s_minus()
            .parallel_line(&-h.frame().s_plus(), tol())
            .unwrap());
        // With the deterministic normalization they are equal on the nose.
        assert!((hc.frame().s_minus() - h.frame().s_plus()).euclid_norm() < 1e-12);

        let q = h.point_at(1.0, 1.0, 0.0);
        assert!(h.contains(&q, false, tol()).unwrap());
        assert!(!hc.contains(&q, false, tol()).unwrap());

        // Open H, open complement and the boundary partition E.
        let mut rng = Rng::new(13);
        for _ in 0..2000 {
            let q = Point::std(rng.range(-4.0, 4.0), rng.range(-4.0, 4.0), rng.range(-4.0, 4.0));
            let in_h = h.contains(&q, false, tol()).unwrap();
            let in_hc = hc.contains(&q, false, tol()).unwrap();
            let s = h.stratum(&q, tol()).unwrap();
            let on_boundary = !matches!(s, Stratum::OpenInterior | Stratum::Exterior);
            let count = usize::from(in_h) + usize::from(in_hc) + usize::from(on_boundary);
            assert_eq!(count, 1, "partition fails at {:?}: {in_h} {in_hc} {on_boundary}", q.comps());
        }
    }

    #[test]
    fn linearize_ignores_vertex_and_respects_involution() {
        let s = Vec3::std(0.7, -0.2, 0.3);
        let h1 = CrookedHalfspace::new(Point::std(0.0, 0.0, 0.0), &s, tol()).unwrap();
        let h2 = CrookedHalfspace::new(Point::std(5.0, -2.0, 1.0), &s, tol()).unwrap();
        assert_eq!(h1.linearize(tol()), h2.linearize(tol()));
        let lc = h1.complement(tol()).linearize(tol());
        assert!((lc.s() - h1.linearize(tol()).complement().s()).euclid_norm() < 1e-12);
    }

    #[test]
    fn transform_by_translation_and_fixed_maps() {
        let h = canonical();
        let w = Vec3::std(0.5, 1.5, -0.5);
        let g = AffineMap::translation(w);
        let ht = h.transform(&g, tol()).unwrap();
        assert!((ht.vertex() - (h.vertex() + w)).euclid_norm() < 1e-12);
        assert!((ht.director() - h.director()).euclid_norm() < 1e-12);

        // All five transform families map H onto a crooked halfspace, with
        // predicate agreement; boosts of H's frame, homotheties about the
        // vertex and ρ additionally fix H setwise.
        let mut rng = Rng::new(3);
        let fixing = [
            AffineMap::boost(0.9, h.frame()),
            AffineMap::homothety(0.4, h.vertex().chart()),
            AffineMap::rho(h.frame()),
        ];
        let moving = [
            AffineMap::spine_reflection(h.frame(), Point::std(0.3, -0.2, 0.5)).unwrap(),
            AffineMap::stem_particle_reflection(h.frame(), Point::std(-0.1, 0.4, 0.2), 0.7)
                .unwrap(),
            AffineMap::translation(Vec3::std(0.2, -0.6, 0.9)),
        ];
        for (i, g) in fixing.iter().chain(moving.iter()).enumerate() {
            let ht = h.transform(g, tol()).unwrap();
            for _ in 0..500 {
                let q =
                    Point::std(rng.range(-3.0, 3.0), rng.range(-3.0, 3.0), rng.range(-3.0, 3.0));
                let gq = g.apply_point(&q).unwrap();
                assert_eq!(
                    h.contains(&q, false, tol()).unwrap(),
                    ht.contains(&gq, false, tol()).unwrap(),
                    "family {i}"
                );
                if i < fixing.len() {
                    assert_eq!(
                        h.contains(&gq, false, tol()).unwrap(),
                        h.contains(&q, false, tol()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn transform_rejects_non_conformal() {
        let h = canonical();
        let squash = AffineMap::from_linear(
            [[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            h.vertex().chart(),
        );
        assert!(matches!(h.transform(&squash, tol()), Err(GeomError::NotConformal)));
    }
}
