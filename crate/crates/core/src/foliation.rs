//! Crooked foliations: director paths, vertex-path integration, disjointness
//! certification and leaf location.
//!
//! The built-in director family is s_t = (0, cosh t, sinh t), the normals of
//! the geodesics orthogonal to a fixed geodesic; its leaves are ordered by
//! inclusion, H(s_t) ⊂ H(s_a) for t ≥ a.

use std::sync::Arc;

use crate::crooked::CrookedHalfspace;
use crate::disjoint::{halfspaces_disjoint, sampling_oracle, OracleOutcome};
use crate::error::{GeomError, Result};
use crate::frame::NullFrame;
use crate::tol::Tol;
use crate::vec::{Point, Vec3};

/// A path of unit spacelike directors t ↦ s_t.
#[derive(Clone)]
pub struct DirectorPath {
    f: Arc<dyn Fn(f64) -> Vec3 + Send + Sync>,
}

impl DirectorPath {
    /// The orthogonal family s_t = (0, cosh t, sinh t) in the Std chart.
    pub fn orthogonal() -> Self {
        DirectorPath { f: Arc::new(|t: f64| Vec3::std(0.0, t.cosh(), t.sinh())) }
    }

    pub fn custom(f: impl Fn(f64) -> Vec3 + Send + Sync + 'static) -> Self {
        DirectorPath { f: Arc::new(f) }
    }

    pub fn director(&self, t: f64) -> Vec3 {
        (self.f)(t)
    }
}

/// Strictly positive coefficient paths t ↦ (a_t, b_t) weighting s⁻ and −s⁺.
#[derive(Clone)]
pub struct CoefficientPath {
    a: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    b: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl CoefficientPath {
    pub fn constant(a: f64, b: f64) -> Self {
        CoefficientPath { a: Arc::new(move |_| a), b: Arc::new(move |_| b) }
    }

    pub fn custom(
        a: impl Fn(f64) -> f64 + Send + Sync + 'static,
        b: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        CoefficientPath { a: Arc::new(a), b: Arc::new(b) }
    }

    pub fn eval(&self, t: f64) -> (f64, f64) {
        ((self.a)(t), (self.b)(t))
    }
}

/// Frame of s_t with labels aligned to the previous sample. The deterministic
/// frame construction is continuous along continuous director paths; the
/// alignment additionally absorbs a director path that flips sign.
fn aligned_frame(s: &Vec3, prev: Option<&NullFrame>, tol: Tol) -> Result<NullFrame> {
    let f = NullFrame::new(s, tol)?;
    if let Some(p) = prev {
        let overlap = f.s().euclid_dot(&p.s());
        if overlap < 0.0 {
            // The director flipped; the frame of −s keeps the null labels
            // moving continuously.
            return NullFrame::new(&-*s, tol);
        }
    }
    Ok(f)
}

/// Velocity a_t s⁻ − b_t s⁺ of the vertex path at time t.
fn velocity(dp: &DirectorPath, cp: &CoefficientPath, prev: Option<&NullFrame>, t: f64, tol: Tol) -> Result<(NullFrame, Vec3)> {
    let (a, b) = cp.eval(t);
    if !(a > 0.0 && b > 0.0) {
        return Err(GeomError::NonPositiveCoefficient(t));
    }
    let f = aligned_frame(&dp.director(t), prev, tol)?;
    Ok((f, f.s_minus() * a - f.s_plus() * b))
}

/// Fixed-step fourth-order integration of p' = a_t s_t⁻ − b_t s_t⁺.
/// Returns steps+1 samples (t_i, p_i).
pub fn vertex_path(
    dp: &DirectorPath,
    cp: &CoefficientPath,
    p0: Point,
    t0: f64,
    t1: f64,
    steps: usize,
    tol: Tol,
) -> Result<Vec<(f64, Point)>> {
    if steps < 2 {
        return Err(GeomError::InvalidInput("vertex_path needs steps >= 2".into()));
    }
    let h = (t1 - t0) / steps as f64;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut p = p0;
    let mut frame: Option<NullFrame> = None;
    samples.push((t0, p));
    for i in 0..steps {
        let t = t0 + h * i as f64;
        let (f1, k1) = velocity(dp, cp, frame.as_ref(), t, tol)?;
        let (f2, k2) = velocity(dp, cp, Some(&f1), t + 0.5 * h, tol)?;
        let (_, k3) = velocity(dp, cp, Some(&f2), t + 0.5 * h, tol)?;
        let (f4, k4) = velocity(dp, cp, Some(&f2), t + h, tol)?;
        p = p + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        frame = Some(f4);
        samples.push((t0 + h * (i + 1) as f64, p));
    }
    Ok(samples)
}

/// A sampled leaf: parameter, vertex and the halfspace it bounds.
#[derive(Clone)]
pub struct Leaf {
    pub t: f64,
    pub halfspace: CrookedHalfspace,
}

/// A sampled crooked foliation of the slab between its first and last leaf.
#[derive(Clone)]
pub struct CrookedFoliation {
    dp: DirectorPath,
    cp: CoefficientPath,
    leaves: Vec<Leaf>,
}

/// Report of the two certification checks.
#[derive(Clone, Debug)]
pub struct CertificationReport {
    /// First sample where p' leaves the relative interior of V(H(s_t)).
    pub velocity_failure: Option<usize>,
    /// First sampled leaf pair whose crooked planes are not disjoint.
    pub disjoint_failure: Option<(usize, usize)>,
    pub certified: bool,
}

impl CrookedFoliation {
    /// Integrate the vertex path and assemble the sampled leaves.
    pub fn build(
        dp: DirectorPath,
        cp: CoefficientPath,
        p0: Point,
        t0: f64,
        t1: f64,
        steps: usize,
        tol: Tol,
    ) -> Result<CrookedFoliation> {
        let path = vertex_path(&dp, &cp, p0, t0, t1, steps, tol)?;
        let mut leaves = Vec::with_capacity(path.len());
        for (t, p) in path {
            leaves.push(Leaf { t, halfspace: CrookedHalfspace::new(p, &dp.director(t), tol)? });
        }
        Ok(CrookedFoliation { dp, cp, leaves })
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn vertex_samples(&self) -> Vec<(f64, Point)> {
        self.leaves.iter().map(|l| (l.t, l.halfspace.vertex())).collect()
    }

    /// Replace a vertex sample; used to inject adversarial perturbations.
    pub fn perturb_vertex(&mut self, index: usize, delta: Vec3, tol: Tol) -> Result<()> {
        let leaf = self
            .leaves
            .get(index)
            .ok_or_else(|| GeomError::InvalidInput("leaf index out of range".into()))?;
        let moved = leaf.halfspace.vertex() + delta;
        let t = leaf.t;
        self.leaves[index] =
            Leaf { t, halfspace: CrookedHalfspace::new(moved, &self.dp.director(t), tol)? };
        Ok(())
    }

    /// Certify the sampled foliation: velocities in the relative interior of
    /// the translational semigroup at every sample, and pairwise disjointness
    /// of the sampled crooked planes.
    pub fn certify(&self, tol: Tol) -> CertificationReport {
        let mut velocity_failure = None;
        for (i, leaf) in self.leaves.iter().enumerate() {
            let (a, b) = self.cp.eval(leaf.t);
            let v = if a > 0.0 && b > 0.0 {
                leaf.halfspace.frame().s_minus() * a - leaf.halfspace.frame().s_plus() * b
            } else {
                velocity_failure = Some(i);
                break;
            };
            if !leaf.halfspace.semigroup_contains(&v, true, tol).unwrap_or(false) {
                velocity_failure = Some(i);
                break;
            }
        }

        // Pairwise plane disjointness: the planes of leaves i < j are
        // disjoint when the closed halfspaces H(p_j, s_j) and H(p_i, −s_i)
        // are, since each contains the corresponding boundary plane.
        let mut disjoint_failure = None;
        'pairs: for i in 0..self.leaves.len() {
            let flipped = self.leaves[i].halfspace.complement(tol);
            for j in (i + 1)..self.leaves.len() {
                let ok = halfspaces_disjoint(&self.leaves[j].halfspace, &flipped, true, tol)
                    .unwrap_or(false);
                if !ok {
                    disjoint_failure = Some((i, j));
                    break 'pairs;
                }
            }
        }

        CertificationReport {
            velocity_failure,
            disjoint_failure,
            certified: velocity_failure.is_none() && disjoint_failure.is_none(),
        }
    }

    /// Confirm a certification failure with the sampling oracle: a witness
    /// point on both closed halfspace boundaries' sides.
    pub fn confirm_failure(&self, pair: (usize, usize), samples: usize, seed: u64, tol: Tol) -> Option<Point> {
        let flipped = self.leaves[pair.0].halfspace.complement(tol);
        match sampling_oracle(&self.leaves[pair.1].halfspace, &flipped, samples, seed, tol) {
            OracleOutcome::Witness(w) => Some(w),
            OracleOutcome::NoWitnessFound => None,
        }
    }

    /// Locate q between adjacent leaves: the interval (i, i+1) with q inside
    /// the open halfspace of leaf i but not leaf i+1. Leaves shrink as t
    /// grows, so membership is monotone and bisection applies. Points on a
    /// bounding crooked plane fall to the earlier interval (open halfspaces).
    pub fn locate(&self, q: &Point, tol: Tol) -> Result<(usize, usize)> {
        let n = self.leaves.len();
        if n < 2 {
            return Err(GeomError::OutsideFoliation("fewer than two leaves".into()));
        }
        let inside = |i: usize| -> Result<bool> { self.leaves[i].halfspace.contains(q, false, tol) };
        if !inside(0)? {
            return Err(GeomError::OutsideFoliation("before the first leaf".into()));
        }
        if inside(n - 1)? {
            return Err(GeomError::OutsideFoliation("beyond the last leaf".into()));
        }
        let mut lo = 0usize; // inside
        let mut hi = n - 1; // outside
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if inside(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo, hi))
    }
}
