//! Vectors, points and the signature (2,1) inner product.
//!
//! A [`Vec3`] carries a chart tag. In [`Chart::Std`] the quadratic form is
//! `x² + y² − z²`; in the null-frame chart of a frame `f` the coordinates
//! `(a, b, c)` are taken against `(s, s⁻, s⁺)` and the Gram matrix is
//! `[[1,0,0],[0,0,−1],[0,−1,0]]`. The future cone is fixed as `z > 0`
//! (respectively `b + c > 0`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{GeomError, Result};
use crate::tol::Tol;

/// Identifier of a null-frame chart, derived from the normalized director.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FrameId(pub(crate) u64);

/// Coordinate chart tag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Chart {
    /// Orthonormal chart with form x² + y² − z².
    Std,
    /// Null-frame chart of a particular frame.
    Frame(FrameId),
}

/// A vector of the translation space, tagged with its chart.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    chart: Chart,
}

/// Causal type of a vector, future/past split included.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CausalClass {
    Zero,
    TimelikeFuture,
    TimelikePast,
    NullFuture,
    NullPast,
    Spacelike,
}

impl CausalClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalClass::Zero => "zero",
            CausalClass::TimelikeFuture => "timelike_future",
            CausalClass::TimelikePast => "timelike_past",
            CausalClass::NullFuture => "null_future",
            CausalClass::NullPast => "null_past",
            CausalClass::Spacelike => "spacelike",
        }
    }

    pub fn is_spacelike(self) -> bool {
        self == CausalClass::Spacelike
    }

    pub fn is_timelike(self) -> bool {
        matches!(self, CausalClass::TimelikeFuture | CausalClass::TimelikePast)
    }

    pub fn is_null(self) -> bool {
        matches!(self, CausalClass::NullFuture | CausalClass::NullPast)
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Vec3 {
    /// Vector in the standard chart.
    pub fn std(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z, chart: Chart::Std }
    }

    pub(crate) fn in_chart(x: f64, y: f64, z: f64, chart: Chart) -> Self {
        Vec3 { x, y, z, chart }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn comps(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    fn check_chart(&self, other: &Vec3) -> Result<()> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(GeomError::ChartMismatch)
        }
    }

    /// Lorentzian inner product. Errors on chart mismatch.
    pub fn inner(&self, other: &Vec3) -> Result<f64> {
        self.check_chart(other)?;
        Ok(self.dot(other))
    }

    /// Same-chart inner product; panics on mismatch. Internal fast path.
    pub(crate) fn dot(&self, other: &Vec3) -> f64 {
        assert!(self.chart == other.chart, "chart mismatch in dot");
        match self.chart {
            Chart::Std => self.x * other.x + self.y * other.y - self.z * other.z,
            // Gram [[1,0,0],[0,0,-1],[0,-1,0]] on (a,b,c).
            Chart::Frame(_) => self.x * other.x - self.y * other.z - self.z * other.y,
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    /// Determinant form: the coordinate determinant in any positively
    /// oriented basis whose Gram has |det| = 1, so a plain 3×3 determinant
    /// in both charts.
    pub fn det3(u: &Vec3, v: &Vec3, w: &Vec3) -> Result<f64> {
        u.check_chart(v)?;
        u.check_chart(w)?;
        Ok(Self::det3_raw(u, v, w))
    }

    pub(crate) fn det3_raw(u: &Vec3, v: &Vec3, w: &Vec3) -> f64 {
        u.x * (v.y * w.z - v.z * w.y) - u.y * (v.x * w.z - v.z * w.x)
            + u.z * (v.x * w.y - v.y * w.x)
    }

    /// Lorentzian cross product, defined by inner(cross(u,v), w) = det3(u,v,w).
    pub fn cross(&self, other: &Vec3) -> Result<Vec3> {
        self.check_chart(other)?;
        Ok(self.cross_raw(other))
    }

    pub(crate) fn cross_raw(&self, other: &Vec3) -> Vec3 {
        // Euclidean cofactor vector, then the inverse Gram (G = G⁻¹ in both
        // charts) converts it to the metric dual.
        let cx = self.y * other.z - self.z * other.y;
        let cy = self.z * other.x - self.x * other.z;
        let cz = self.x * other.y - self.y * other.x;
        match self.chart {
            Chart::Std => Vec3::in_chart(cx, cy, -cz, self.chart),
            Chart::Frame(_) => Vec3::in_chart(cx, -cz, -cy, self.chart),
        }
    }

    /// Coordinate of the fixed future direction: z in Std, b + c in a frame.
    pub fn time_component(&self) -> f64 {
        match self.chart {
            Chart::Std => self.z,
            Chart::Frame(_) => self.y + self.z,
        }
    }

    /// Largest absolute coordinate; the scale used by relative zero tests.
    pub fn scale(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Causal classification. Invariant under positive scaling.
    pub fn classify(&self, tol: Tol) -> CausalClass {
        let scale = self.scale();
        if scale == 0.0 {
            return CausalClass::Zero;
        }
        let q = self.norm_sq();
        let future = self.time_component() > 0.0;
        match tol.sign_scaled(q, scale * scale) {
            1 => CausalClass::Spacelike,
            -1 if future => CausalClass::TimelikeFuture,
            -1 => CausalClass::TimelikePast,
            _ if future => CausalClass::NullFuture,
            _ => CausalClass::NullPast,
        }
    }

    /// Normalize a spacelike vector to unit Lorentzian length.
    pub fn normalized_spacelike(&self, tol: Tol) -> Result<Vec3> {
        let class = self.classify(tol);
        if !class.is_spacelike() {
            return Err(GeomError::NotSpacelike(class));
        }
        Ok(*self * (1.0 / self.norm_sq().sqrt()))
    }

    /// Euclidean norm of the coordinates (chart-level, not metric).
    pub fn euclid_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub(crate) fn euclid_dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// True when the two vectors span the same line, at tolerance.
    pub fn parallel_line(&self, other: &Vec3, tol: Tol) -> Result<bool> {
        self.check_chart(other)?;
        let cx = self.y * other.z - self.z * other.y;
        let cy = self.z * other.x - self.x * other.z;
        let cz = self.x * other.y - self.y * other.x;
        let scale = self.euclid_norm() * other.euclid_norm();
        Ok(tol.is_zero_scaled(cx.abs().max(cy.abs()).max(cz.abs()), scale))
    }

    /// Parallel as rays: same line and nonnegative alignment.
    pub fn parallel_ray(&self, other: &Vec3, tol: Tol) -> Result<bool> {
        Ok(self.parallel_line(other, tol)? && self.euclid_dot(other) > 0.0)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        assert!(self.chart == o.chart, "chart mismatch in +");
        Vec3::in_chart(self.x + o.x, self.y + o.y, self.z + o.z, self.chart)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        assert!(self.chart == o.chart, "chart mismatch in -");
        Vec3::in_chart(self.x - o.x, self.y - o.y, self.z - o.z, self.chart)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::in_chart(-self.x, -self.y, -self.z, self.chart)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::in_chart(self.x * k, self.y * k, self.z * k, self.chart)
    }
}

/// A point of the affine space E. Points subtract to vectors.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Point(pub Vec3);

impl Point {
    pub fn std(x: f64, y: f64, z: f64) -> Self {
        Point(Vec3::std(x, y, z))
    }

    pub fn origin(chart: Chart) -> Self {
        Point(Vec3::in_chart(0.0, 0.0, 0.0, chart))
    }

    pub fn chart(&self) -> Chart {
        self.0.chart()
    }

    pub fn comps(&self) -> [f64; 3] {
        self.0.comps()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

impl Sub for Point {
    type Output = Vec3;
    fn sub(self, o: Point) -> Vec3 {
        self.0 - o.0
    }
}

impl Add<Vec3> for Point {
    type Output = Point;
    fn add(self, v: Vec3) -> Point {
        Point(self.0 + v)
    }
}

impl Sub<Vec3> for Point {
    type Output = Point;
    fn sub(self, v: Vec3) -> Point {
        Point(self.0 - v)
    }
}
