//! Automorphisms of a crooked halfspace, the orbit invariant Φ = bc/a²,
//! canonicalization onto slices, the global slice, and the fixed ray of the
//! involution ρ.

use crate::crooked::CrookedHalfspace;
use crate::error::{GeomError, Result};
use crate::tol::Tol;
use crate::transform::AffineMap;
use crate::vec::{Point, Vec3};

/// Parameters of an affine automorphism of a crooked halfspace:
/// ρ^eps · e^s · diag(e^u, e^t, e^−t) in frame coordinates about the vertex.
/// Conformal automorphisms have u = 0; isometries additionally s = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AutomorphismParams {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub rho: bool,
}

impl AutomorphismParams {
    pub fn conformal(s: f64, t: f64, rho: bool) -> Self {
        AutomorphismParams { s, t, u: 0.0, rho }
    }

    pub fn isometry(t: f64, rho: bool) -> Self {
        AutomorphismParams { s: 0.0, t, u: 0.0, rho }
    }

    /// Realize the parameters as an affine map fixing the halfspace vertex.
    pub fn to_affine(&self, h: &CrookedHalfspace) -> AffineMap {
        let es = self.s.exp();
        let mut m = [
            [es * self.u.exp(), 0.0, 0.0],
            [0.0, es * self.t.exp(), 0.0],
            [0.0, 0.0, es * (-self.t).exp()],
        ];
        if self.rho {
            // Left-multiply by (a,b,c) ↦ (−a,−c,−b).
            m = [
                [-m[0][0], -m[0][1], -m[0][2]],
                [-m[2][0], -m[2][1], -m[2][2]],
                [-m[1][0], -m[1][1], -m[1][2]],
            ];
        }
        AffineMap::in_frame_coords(h.frame(), m)
            .fixing(h.vertex())
            .expect("frame and vertex share a chart")
    }
}

/// Orbit coordinate of the conformal automorphism group: bc/a², with the
/// stem quadrant collapsed to −∞.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OrbitCoordinate {
    NegInfinity,
    Value(f64),
}

impl OrbitCoordinate {
    pub fn as_f64(&self) -> f64 {
        match self {
            OrbitCoordinate::NegInfinity => f64::NEG_INFINITY,
            OrbitCoordinate::Value(v) => *v,
        }
    }

    /// Serialized form; the sentinel prints as "-inf".
    pub fn to_display(&self) -> String {
        match self {
            OrbitCoordinate::NegInfinity => "-inf".to_string(),
            OrbitCoordinate::Value(v) => format!("{v}"),
        }
    }
}

impl CrookedHalfspace {
    /// Φ(q) = bc/a² in the halfspace frame; −∞ on the stem quadrant.
    /// Requires q in the open halfspace.
    pub fn phi(&self, q: &Point, tol: Tol) -> Result<OrbitCoordinate> {
        if !self.contains(q, false, tol)? {
            return Err(GeomError::OutsideHalfspace);
        }
        let [a, b, c] = self.frame_coords(q)?;
        let scale = a.abs().max(b.abs()).max(c.abs());
        if tol.is_zero_scaled(a, scale) {
            return Ok(OrbitCoordinate::NegInfinity);
        }
        Ok(OrbitCoordinate::Value(b * c / (a * a)))
    }

    /// Conformal group element and slice point with g(x) = q.
    ///
    /// On the stem quadrant the basepoint is q₀ = (0,1,−1) and
    /// s = (log b + log(−c))/2, t = (log b − log(−c))/2. On the solid
    /// quadrant a > 0 the slice is p_β = (1,1,β) with s = log a,
    /// t = log(b/a); the a < 0 quadrant goes through ρ first.
    pub fn canonicalize(&self, q: &Point, tol: Tol) -> Result<(AutomorphismParams, Point)> {
        if !self.contains(q, false, tol)? {
            return Err(GeomError::OutsideHalfspace);
        }
        let [a, b, c] = self.frame_coords(q)?;
        let scale = a.abs().max(b.abs()).max(c.abs());
        match tol.sign_scaled(a, scale) {
            0 => {
                let s = (b.ln() + (-c).ln()) / 2.0;
                let t = (b.ln() - (-c).ln()) / 2.0;
                Ok((AutomorphismParams::conformal(s, t, false), self.point_at(0.0, 1.0, -1.0)))
            }
            1 => {
                let s = a.ln();
                let t = (b / a).ln();
                let beta = b * c / (a * a);
                Ok((AutomorphismParams::conformal(s, t, false), self.point_at(1.0, 1.0, beta)))
            }
            _ => {
                // ρ(q) = (−a, −c, −b) lands in the a > 0 quadrant.
                let (ra, rb) = (-a, -c);
                let rc = -b;
                let s = ra.ln();
                let t = (rb / ra).ln();
                let beta = rb * rc / (ra * ra);
                Ok((AutomorphismParams::conformal(s, t, true), self.point_at(1.0, 1.0, beta)))
            }
        }
    }

    /// The ρ-equivariant global slice σ for the conformal action, in frame
    /// coordinates about the vertex. Printed middle branches; the outer
    /// branches continue monotonically so every Φ value is hit once.
    pub fn slice_point(&self, a: f64) -> Point {
        let [x, y, z] = global_slice_coords(a);
        self.point_at(x, y, z)
    }

    /// The ray fixed by ρ: vertex + R⁺·(s⁻ − s⁺), inside the stem quadrant.
    pub fn fixed_ray(&self) -> (Point, Vec3) {
        (self.vertex(), self.frame().s_minus() - self.frame().s_plus())
    }
}

/// Frame coordinates of the global slice σ(a).
pub fn global_slice_coords(a: f64) -> [f64; 3] {
    if a <= -1.0 {
        [-1.0, a + 1.0, -1.0]
    } else if a <= 0.0 {
        [a, a + 1.0, -1.0]
    } else if a <= 1.0 {
        [a, 1.0, a - 1.0]
    } else {
        [1.0, 1.0, a - 1.0]
    }
}

/// γ(a) = (a−1)/a²: the Φ value along the printed slice branch on (0, 1].
pub fn slice_gamma(a: f64) -> f64 {
    (a - 1.0) / (a * a)
}

/// Inverse of γ on the (0, 1] branch: a(γ) = (1 − √(1−4γ))/(2γ).
/// Only valid there; the outer slice branches do not use it.
pub fn slice_gamma_inv(gamma: f64) -> f64 {
    if gamma == 0.0 {
        1.0
    } else {
        (1.0 - (1.0 - 4.0 * gamma).sqrt()) / (2.0 * gamma)
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
    fn phi_examples() {
        let h = canonical();
        for gamma in [-2.0, -0.5, 0.0, 1.5] {
            let q = h.point_at(1.0, 1.0, gamma);
            let got = h.phi(&q, tol()).unwrap().as_f64();
            assert!((got - gamma).abs() < 1e-12, "Φ(1,1,{gamma}) = {got}");
        }
        let q = h.point_at(0.0, 1.0, -1.0);
        assert_eq!(h.phi(&q, tol()).unwrap(), OrbitCoordinate::NegInfinity);
        assert_eq!(h.phi(&q, tol()).unwrap().to_display(), "-inf");
        let q = h.point_at(2.0, 2.0, 2.0);
        let got = h.phi(&q, tol()).unwrap().as_f64();
        assert!((got - 1.0).abs() < 1e-12);
        assert!(h.phi(&h.vertex(), tol()).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let h = canonical();
        // Stem quadrant: (0, e², −1) gives s = t = 1 with basepoint q₀.
        let q = h.point_at(0.0, std::f64::consts::E.powi(2), -1.0);
        let (p, x) = h.canonicalize(&q, tol()).unwrap();
        assert!((p.s - 1.0).abs() < 1e-12 && (p.t - 1.0).abs() < 1e-12 && !p.rho);
        assert!((x - h.point_at(0.0, 1.0, -1.0)).euclid_norm() < 1e-12);

        // Already on the slice.
        let q = h.point_at(1.0, 1.0, 0.7);
        let (p, x) = h.canonicalize(&q, tol()).unwrap();
        assert!(p.s.abs() < 1e-12 && p.t.abs() < 1e-12 && !p.rho);
        assert!((x - q).euclid_norm() < 1e-12);

        // Negative solid quadrant goes through ρ.
        let q = h.point_at(-1.0, 0.0, -1.0);
        let (p, x) = h.canonicalize(&q, tol()).unwrap();
        assert!(p.rho);
        assert!((x - h.point_at(1.0, 1.0, 0.0)).euclid_norm() < 1e-12);
    }

    #[test]
    fn canonicalize_roundtrip_random() {
        let h = CrookedHalfspace::new(
            Point::std(0.4, 0.1, -0.2),
            &Vec3::std(1.0, 0.5, 0.3),
            tol(),
        )
        .unwrap();
        let mut rng = Rng::new(2024);
        let mut n = 0;
        while n < 500 {
            let q = h.point_at(rng.range(-3.0, 3.0), rng.range(-3.0, 3.0), rng.range(-3.0, 3.0));
            if !h.contains(&q, false, tol()).unwrap() {
                continue;
            }
            n += 1;
            let (p, x) = h.canonicalize(&q, tol()).unwrap();
            let g = p.to_affine(&h);
            let gq = g.apply_point(&x).unwrap();
            let err = (gq - q).euclid_norm() / (1.0 + (q - h.vertex()).euclid_norm());
            assert!(err <= 1e-9, "roundtrip error {err}");
        }
    }

    #[test]
    fn phi_is_conformal_invariant_but_not_affine() {
        let h = canonical();
        let mut rng = Rng::new(6);
        let mut checked = 0;
        while checked < 1000 {
            let q = h.point_at(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            if !h.contains(&q, false, tol()).unwrap() {
                continue;
            }
            let params = AutomorphismParams::conformal(
                rng.range(-1.0, 1.0),
                rng.range(-1.0, 1.0),
                rng.bool(),
            );
            let g = params.to_affine(&h);
            let gq = g.apply_point(&q).unwrap();
            assert!(h.contains(&gq, false, tol()).unwrap(), "automorphism must preserve H");
            let a = h.phi(&q, tol()).unwrap();
            let b = h.phi(&gq, tol()).unwrap();
            match (a, b) {
                (OrbitCoordinate::NegInfinity, OrbitCoordinate::NegInfinity) => {}
                (OrbitCoordinate::Value(x), OrbitCoordinate::Value(y)) => {
                    assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()), "Φ not invariant: {x} vs {y}");
                }
                _ => panic!("stem quadrant must map to stem quadrant"),
            }
            checked += 1;
        }

        // A generic u ≠ 0 affine automorphism changes Φ.
        let q = h.point_at(1.0, 1.0, 3.0);
        let params = AutomorphismParams { s: 0.0, t: 0.0, u: 0.7, rho: false };
        let g = params.to_affine(&h);
        let gq = g.apply_point(&q).unwrap();
        assert!(h.contains(&gq, false, tol()).unwrap());
        let a = h.phi(&q, tol()).unwrap().as_f64();
        let b = h.phi(&gq, tol()).unwrap().as_f64();
        assert!((a - b).abs() > 1e-3, "u-parameter should move Φ: {a} vs {b}");
    }

    #[test]
    fn slice_breakpoints_and_equivariance() {
        assert_eq!(global_slice_coords(-1.0), [-1.0, 0.0, -1.0]);
        assert_eq!(global_slice_coords(0.0), [0.0, 1.0, -1.0]);
        assert_eq!(global_slice_coords(1.0), [1.0, 1.0, 0.0]);
        assert_eq!(global_slice_coords(0.5), [0.5, 1.0, -0.5]);

        // ρ ∘ σ(a) = σ(−a): ρ acts as (a,b,c) ↦ (−a,−c,−b).
        for a in [-2.5, -1.0, -0.4, 0.0, 0.4, 1.0, 2.5] {
            let [x, y, z] = global_slice_coords(a);
            let m = [-x, -z, -y];
            assert_eq!(m, global_slice_coords(-a), "a = {a}");
        }

        // Monotone continuity: Φ along the slice is increasing in a > 0.
        let h = canonical();
        let mut last = f64::NEG_INFINITY;
        let mut a = 0.05;
        while a < 4.0 {
            let q = h.slice_point(a);
            let phi = h.phi(&q, tol()).unwrap().as_f64();
            assert!(phi > last, "Φ must increase along the slice");
            last = phi;
            a += 0.05;
        }
    }

    #[test]
    fn gamma_helpers_invert_on_unit_branch() {
        for a in [0.1, 0.3, 0.5, 0.9, 1.0] {
            let g = slice_gamma(a);
            assert!((slice_gamma_inv(g) - a).abs() < 1e-9);
        }
    }

    #[test]
    fn fixed_ray_under_rho() {
        let h = canonical();
        let (base, dir) = h.fixed_ray();
        let rho = AffineMap::rho(h.frame()).fixing(h.vertex()).unwrap();
        for t in [0.5, 1.0, 7.0] {
            let p = base + dir * t;
            let rp = rho.apply_point(&p).unwrap();
            assert!((rp - p).euclid_norm() < 1e-12);
            assert!(h.stem_quadrant(tol()).contains_point(&p, tol()).unwrap());
        }
    }
}
