//! Finitely generated polyhedral cones in V with closed / interior /
//! relative-interior membership.
//!
//! Two independent membership routes are kept side by side: facet-normal
//! sign tests (normals are Lorentzian cross products of generator pairs,
//! oriented so the cone is { v : n·v ≥ 0 }) and a coefficient solve
//! (existence of nonnegative, resp. positive, generator combinations). The
//! test suites compare them on every configuration they touch.

use crate::error::{GeomError, Result};
use crate::tol::Tol;
use crate::vec::Vec3;

#[derive(Clone, Debug)]
pub struct TranslationCone {
    generators: Vec<Vec3>,
    facet_normals: Vec<Vec3>,
    /// Planar cone: all generators lie in a single plane through 0.
    degenerate: bool,
    /// Normal of that plane (only when degenerate).
    plane_normal: Option<Vec3>,
}

fn solve3(cols: [&Vec3; 3], v: &Vec3) -> Option<[f64; 3]> {
    let det = Vec3::det3_raw(cols[0], cols[1], cols[2]);
    let scale = cols[0].euclid_norm() * cols[1].euclid_norm() * cols[2].euclid_norm();
    if det.abs() <= 1e-13 * scale.max(1e-300) {
        return None;
    }
    let d0 = Vec3::det3_raw(v, cols[1], cols[2]);
    let d1 = Vec3::det3_raw(cols[0], v, cols[2]);
    let d2 = Vec3::det3_raw(cols[0], cols[1], v);
    Some([d0 / det, d1 / det, d2 / det])
}

impl TranslationCone {
    /// Build a cone from generators. Parallel duplicates are merged, so the
    /// allowable cone of an asymptotic pair comes out with 3 generators and
    /// the anti-parallel degenerate case with 2.
    pub fn from_generators(generators: &[Vec3], tol: Tol) -> Result<TranslationCone> {
        if generators.is_empty() {
            return Err(GeomError::InvalidInput("cone needs at least one generator".into()));
        }
        let chart = generators[0].chart();
        let mut gens: Vec<Vec3> = Vec::new();
        for g in generators {
            if g.chart() != chart {
                return Err(GeomError::ChartMismatch);
            }
            if g.scale() == 0.0 {
                return Err(GeomError::ZeroDirection);
            }
            let mut dup = false;
            for h in &gens {
                if g.parallel_ray(h, tol)? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                gens.push(*g);
            }
        }

        // Planar when every generator is orthogonal to some pair cross.
        let mut plane_normal = None;
        'outer: for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                let n = gens[i].cross_raw(&gens[j]);
                if n.scale() <= tol.eps * gens[i].euclid_norm() * gens[j].euclid_norm() {
                    continue;
                }
                let planar = gens.iter().all(|g| {
                    tol.is_zero_scaled(n.dot(g), n.euclid_norm() * g.euclid_norm())
                });
                if planar {
                    plane_normal = Some(n);
                }
                break 'outer;
            }
        }
        let degenerate = gens.len() <= 2 || plane_normal.is_some();

        let mut facet_normals = Vec::new();
        if !degenerate {
            // A facet is spanned by a generator pair with every other
            // generator strictly on one side.
            for i in 0..gens.len() {
                for j in (i + 1)..gens.len() {
                    let n = gens[i].cross_raw(&gens[j]);
                    let nscale = n.euclid_norm();
                    if nscale <= tol.eps {
                        continue;
                    }
                    let mut pos = true;
                    let mut neg = true;
                    for (k, g) in gens.iter().enumerate() {
                        if k == i || k == j {
                            continue;
                        }
                        match tol.sign_scaled(n.dot(g), nscale * g.euclid_norm()) {
                            1 => neg = false,
                            -1 => pos = false,
                            _ => {}
                        }
                    }
                    let n = if pos {
                        n
                    } else if neg {
                        -n
                    } else {
                        continue;
                    };
                    let mut dup = false;
                    for m in &facet_normals {
                        if n.parallel_ray(m, tol)? {
                            dup = true;
                            break;
                        }
                    }
                    if !dup {
                        facet_normals.push(n * (1.0 / n.euclid_norm()));
                    }
                }
            }
        }

        Ok(TranslationCone { generators: gens, facet_normals, degenerate, plane_normal })
    }

    pub fn generators(&self) -> &[Vec3] {
        &self.generators
    }

    pub fn facet_normals(&self) -> &[Vec3] {
        &self.facet_normals
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Closed membership (interior = false) or interior membership.
    ///
    /// For a degenerate (planar) cone the strict test reports the relative
    /// interior; `is_degenerate` is the flag callers consult.
    pub fn contains(&self, v: &Vec3, interior: bool, tol: Tol) -> bool {
        if self.degenerate {
            return self.contains_planar(v, interior, tol);
        }
        let vs = v.euclid_norm();
        if vs == 0.0 {
            return !interior;
        }
        for n in &self.facet_normals {
            let s = tol.sign_scaled(n.dot(v), vs);
            if interior {
                if s <= 0 {
                    return false;
                }
            } else if s < 0 {
                return false;
            }
        }
        true
    }

    fn contains_planar(&self, v: &Vec3, relative_interior: bool, tol: Tol) -> bool {
        let vs = v.euclid_norm();
        if vs == 0.0 {
            return !relative_interior;
        }
        if let Some(n) = &self.plane_normal {
            if !tol.is_zero_scaled(n.dot(v), n.euclid_norm() * vs) {
                return false;
            }
        }
        match self.generators.len() {
            1 => {
                let g = &self.generators[0];
                let ok_line = v.parallel_line(g, tol).unwrap_or(false);
                let along = v.euclid_dot(g);
                if relative_interior {
                    ok_line && tol.sign_scaled(along, vs * g.euclid_norm()) > 0
                } else {
                    ok_line && tol.sign_scaled(along, vs * g.euclid_norm()) >= 0
                }
            }
            _ => {
                // Two-generator quadrant: solve v = λ₁ g₁ + λ₂ g₂ on the
                // best-conditioned coordinate pair and verify the residual.
                let g1 = &self.generators[0];
                let g2 = &self.generators[1];
                let a = g1.comps();
                let b = g2.comps();
                let c = v.comps();
                let mut best: Option<(f64, f64, f64)> = None;
                for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                    let det = a[i] * b[j] - a[j] * b[i];
                    if best.is_none_or(|(d, _, _)| det.abs() > d.abs()) && det != 0.0 {
                        let l1 = (c[i] * b[j] - c[j] * b[i]) / det;
                        let l2 = (a[i] * c[j] - a[j] * c[i]) / det;
                        best = Some((det, l1, l2));
                    }
                }
                let Some((_, l1, l2)) = best else { return false };
                let r = *v - (*g1 * l1 + *g2 * l2);
                if !tol.is_zero_scaled(r.euclid_norm(), vs) {
                    return false;
                }
                let coeff_scale = vs / g1.euclid_norm().max(g2.euclid_norm());
                let s1 = tol.sign_scaled(l1, coeff_scale);
                let s2 = tol.sign_scaled(l2, coeff_scale);
                if relative_interior { s1 > 0 && s2 > 0 } else { s1 >= 0 && s2 >= 0 }
            }
        }
    }

    /// Independent membership route: Carathéodory over generator triples
    /// (plus rays and pairs) with nonnegative coefficients.
    pub fn contains_by_coefficients(&self, v: &Vec3, tol: Tol) -> bool {
        let vs = v.euclid_norm();
        if vs == 0.0 {
            return true;
        }
        let n = self.generators.len();
        for g in &self.generators {
            if v.parallel_ray(g, tol).unwrap_or(false) {
                return true;
            }
        }
        if self.degenerate {
            return self.contains_planar(v, false, tol);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if let Some(l) =
                        solve3([&self.generators[i], &self.generators[j], &self.generators[k]], v)
                    {
                        let cs = vs
                            / self.generators[i]
                                .euclid_norm()
                                .max(self.generators[j].euclid_norm())
                                .max(self.generators[k].euclid_norm());
                        if l.iter().all(|&x| tol.sign_scaled(x, cs) >= 0) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// Independent interior route: a strictly positive combination of all
    /// generators. With four generators the solution set is a line in
    /// coefficient space; scan the feasible parameter interval.
    pub fn interior_by_coefficients(&self, v: &Vec3, tol: Tol) -> bool {
        if self.degenerate {
            return false;
        }
        let n = self.generators.len();
        let vs = v.euclid_norm();
        if vs == 0.0 {
            return false;
        }
        let cs = vs;
        if n == 3 {
            if let Some(l) = solve3([&self.generators[0], &self.generators[1], &self.generators[2]], v) {
                return l.iter().all(|&x| tol.sign_scaled(x, cs) > 0);
            }
            return false;
        }
        // n == 4: λ(t) = base + t · kernel, kernel from Σ kᵢ gᵢ = 0 with k₃ = 1.
        let (g0, g1, g2, g3) =
            (&self.generators[0], &self.generators[1], &self.generators[2], &self.generators[3]);
        let Some(base) = solve3([g0, g1, g2], v) else { return false };
        let Some(kern) = solve3([g0, g1, g2], g3) else { return false };
        // λ = (base₀ − t·kern₀, base₁ − t·kern₁, base₂ − t·kern₂, t), need all > 0.
        let mut lo = 0.0_f64;
        let mut hi = f64::INFINITY;
        for i in 0..3 {
            let b = base[i];
            let k = kern[i];
            // b − t·k > 0
            if k.abs() <= 1e-300 {
                if b <= 0.0 {
                    return false;
                }
            } else if k > 0.0 {
                hi = hi.min(b / k);
            } else {
                lo = lo.max(b / k);
            }
        }
        // Strictness margin at the cone scale.
        let margin = tol.eps * cs;
        lo + margin < hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::NullFrame;
    use crate::rng::Rng;

    fn tol() -> Tol {
        Tol::default()
    }

    fn quad_cone() -> TranslationCone {
        let f = NullFrame::new(&Vec3::std(1.0, 0.0, 0.0), tol()).unwrap();
        TranslationCone::from_generators(&[f.s_minus(), -f.s_plus()], tol()).unwrap()
    }

    #[test]
    fn generator_membership() {
        let gens = [
            Vec3::std(1.0, 0.0, 0.5),
            Vec3::std(-1.0, 0.2, 0.5),
            Vec3::std(0.1, -1.0, 0.5),
            Vec3::std(0.2, 1.0, 0.6),
        ];
        let cone = TranslationCone::from_generators(&gens, tol()).unwrap();
        assert!(!cone.is_degenerate());
        assert_eq!(cone.facet_normals().len(), 4);
        let mut sum = Vec3::std(0.0, 0.0, 0.0);
        for g in &gens {
            assert!(cone.contains(g, false, tol()));
            assert!(!cone.contains(g, true, tol()));
            assert!(cone.contains_by_coefficients(g, tol()));
            sum = sum + *g;
        }
        assert!(cone.contains(&sum, true, tol()));
        assert!(cone.interior_by_coefficients(&sum, tol()));
        assert!(!cone.contains(&-sum, false, tol()));
        assert!(!cone.contains_by_coefficients(&-sum, tol()));

        // Every generator is on the nonnegative side of every facet normal.
        for n in cone.facet_normals() {
            for g in &gens {
                assert!(n.dot(g) >= -1e-9);
            }
        }
    }

    #[test]
    fn routes_agree_on_random_vectors() {
        let gens = [
            Vec3::std(1.0, 0.0, 0.5),
            Vec3::std(-1.0, 0.2, 0.5),
            Vec3::std(0.1, -1.0, 0.5),
            Vec3::std(0.2, 1.0, 0.6),
        ];
        let cone = TranslationCone::from_generators(&gens, tol()).unwrap();
        let mut rng = Rng::new(404);
        for _ in 0..5000 {
            let v = Vec3::std(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let a = cone.contains(&v, false, tol());
            let b = cone.contains_by_coefficients(&v, tol());
            if a != b {
                // Tolerance skin: only allowed very close to a facet.
                let min_facet = cone
                    .facet_normals()
                    .iter()
                    .map(|n| n.dot(&v).abs())
                    .fold(f64::INFINITY, f64::min);
                assert!(min_facet <= 1e-6 * v.euclid_norm(), "routes disagree away from facets");
            }
            let ai = cone.contains(&v, true, tol());
            let bi = cone.interior_by_coefficients(&v, tol());
            if ai != bi {
                let min_facet = cone
                    .facet_normals()
                    .iter()
                    .map(|n| n.dot(&v).abs())
                    .fold(f64::INFINITY, f64::min);
                assert!(min_facet <= 1e-6 * v.euclid_norm());
            }
        }
    }

    #[test]
    fn planar_quadrant_membership() {
        let cone = quad_cone();
        assert!(cone.is_degenerate());
        let f = NullFrame::new(&Vec3::std(1.0, 0.0, 0.0), tol()).unwrap();
        let v = f.s_minus() * 2.0 - f.s_plus() * 3.0;
        assert!(cone.contains(&v, false, tol()));
        assert!(cone.contains(&v, true, tol())); // relative interior
        assert!(cone.contains(&(f.s_minus() * 2.0), false, tol()));
        assert!(!cone.contains(&(f.s_minus() * 2.0), true, tol()));
        // Out of plane.
        assert!(!cone.contains(&f.s(), false, tol()));
        // In plane, wrong quadrant.
        assert!(!cone.contains(&(f.s_plus() - f.s_minus()), false, tol()));
    }

    #[test]
    fn duplicate_generators_merge() {
        let f = NullFrame::new(&Vec3::std(1.0, 0.0, 0.0), tol()).unwrap();
        let gens = [f.s_minus(), f.s_minus() * 3.0, -f.s_plus(), f.s_minus() * 0.5];
        let cone = TranslationCone::from_generators(&gens, tol()).unwrap();
        assert_eq!(cone.generators().len(), 2);
        assert!(cone.is_degenerate());
    }
}
