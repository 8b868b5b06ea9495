//! Sign predicates at a configurable tolerance.
//!
//! All geometric decisions reduce to signs of inner products or frame
//! coordinates. A value within `eps` of zero (absolutely, or relative to a
//! scale when the data is not normalized) is treated as zero, so boundary
//! strata are detected deterministically. The exact rational mode in
//! [`crate::exact`] is the crisp alternative when inputs are rational.

/// Default absolute tolerance on normalized data.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Tolerance used by all sign predicates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol {
    pub eps: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { eps: DEFAULT_EPS }
    }
}

impl Tol {
    pub fn new(eps: f64) -> Self {
        assert!(eps >= 0.0 && eps.is_finite(), "tolerance must be finite and nonnegative");
        Tol { eps }
    }

    /// Sign of `x` with a dead zone of width `eps`: -1, 0 or +1.
    pub fn sign(self, x: f64) -> i8 {
        if x > self.eps {
            1
        } else if x < -self.eps {
            -1
        } else {
            0
        }
    }

    /// Sign of `x` where zero means `|x| <= eps * scale`.
    ///
    /// Scale-relative zero tests keep classifications invariant under
    /// homotheties; `scale` is typically the largest frame coordinate in play.
    pub fn sign_scaled(self, x: f64, scale: f64) -> i8 {
        let cut = self.eps * scale.abs();
        if x > cut {
            1
        } else if x < -cut {
            -1
        } else {
            0
        }
    }

    pub fn is_zero(self, x: f64) -> bool {
        self.sign(x) == 0
    }

    pub fn is_zero_scaled(self, x: f64, scale: f64) -> bool {
        self.sign_scaled(x, scale) == 0
    }

    /// `a` and `b` agree within `eps * max(1, |a|, |b|)`.
    pub fn close(self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.eps * 1.0_f64.max(a.abs()).max(b.abs())
    }
}
