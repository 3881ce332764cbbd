//! Complex points, tolerances and unit-circle predicates.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{CatoptricError, Result};

/// A point of the plane. All geometry in this crate is measured in units of
/// the mirror radius, so the mirror is the unit circle.
///
/// The checked constructors refuse NaN and infinities. Arithmetic between
/// points is unchecked, like ordinary `f64` arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexPoint(Complex64);

impl ComplexPoint {
    pub const ZERO: Self = Self(Complex64::new(0.0, 0.0));
    pub const ONE: Self = Self(Complex64::new(1.0, 0.0));
    pub const I: Self = Self(Complex64::new(0.0, 1.0));

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(Self(Complex64::new(re, im)))
        } else {
            Err(CatoptricError::NonFinite("ComplexPoint"))
        }
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn from_complex(c: Complex64) -> Result<Self> {
        Self::new(c.re, c.im)
    }

    pub(crate) const fn raw(c: Complex64) -> Self {
        Self(c)
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn norm(self) -> f64 {
        self.0.norm()
    }

    pub fn norm_sqr(self) -> f64 {
        self.0.norm_sqr()
    }

    /// Principal argument in (−π, π].
    pub fn arg(self) -> f64 {
        // + 0.0 folds −0 into +0 so sorting treats them alike
        principal_angle(self.0.im.atan2(self.0.re)) + 0.0
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    pub fn is_finite(self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    pub fn as_complex(self) -> Complex64 {
        self.0
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.0.re, self.0.im]
    }

    pub fn dist(self, other: Self) -> f64 {
        (self.0 - other.0).norm()
    }

    /// Radial projection onto the unit circle. Returns `self` unchanged for 0.
    pub fn project_to_circle(self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            Self(self.0 / n)
        }
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        p.0
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0.re, self.0.im)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexPoint {
            type Output = ComplexPoint;
            fn $m(self, rhs: ComplexPoint) -> ComplexPoint {
                ComplexPoint(self.0.$m(rhs.0))
            }
        }
        impl $tr<f64> for ComplexPoint {
            type Output = ComplexPoint;
            fn $m(self, rhs: f64) -> ComplexPoint {
                ComplexPoint(self.0.$m(rhs))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for ComplexPoint {
    type Output = ComplexPoint;
    fn neg(self) -> ComplexPoint {
        ComplexPoint(-self.0)
    }
}

/// Numerical tolerances used by the solvers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    unit_circle_tol: f64,
    residual_tol: f64,
    oracle_agreement_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit_circle_tol: 1e-9,
            residual_tol: 1e-10,
            oracle_agreement_tol: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn new(unit_circle_tol: f64, residual_tol: f64, oracle_agreement_tol: f64) -> Result<Self> {
        for (name, value) in [
            ("unit_circle_tol", unit_circle_tol),
            ("residual_tol", residual_tol),
            ("oracle_agreement_tol", oracle_agreement_tol),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(CatoptricError::InvalidTolerance { name, value });
            }
        }
        Ok(Self {
            unit_circle_tol,
            residual_tol,
            oracle_agreement_tol,
        })
    }

    pub fn unit_circle_tol(&self) -> f64 {
        self.unit_circle_tol
    }

    pub fn residual_tol(&self) -> f64 {
        self.residual_tol
    }

    pub fn oracle_agreement_tol(&self) -> f64 {
        self.oracle_agreement_tol
    }

    pub fn with_unit_circle_tol(self, tol: f64) -> Result<Self> {
        Self::new(tol, self.residual_tol, self.oracle_agreement_tol)
    }
}

/// `| |w| − 1 | ≤ unit_circle_tol`.
pub fn on_unit_circle(w: ComplexPoint, tol: &Tolerances) -> bool {
    (w.norm() - 1.0).abs() <= tol.unit_circle_tol
}

/// The point e^{iφ}.
pub fn unit_from_angle(phi: f64) -> ComplexPoint {
    let (s, c) = phi.sin_cos();
    ComplexPoint::raw(Complex64::new(c, s))
}

/// Maps any finite angle into (−π, π].
pub fn principal_angle(phi: f64) -> f64 {
    if phi > -PI && phi <= PI {
        return phi;
    }
    let mut t = phi.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    if t <= -PI {
        t += 2.0 * PI;
    }
    t
}

/// Euclidean distance from the origin to the closed segment `[p, q]`.
pub fn origin_segment_distance(p: ComplexPoint, q: ComplexPoint) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return p.norm();
    }
    // parameter of the foot of the perpendicular from the origin
    let t = (-(p.re() * d.re() + p.im() * d.im()) / len2).clamp(0.0, 1.0);
    (p + d * t).norm()
}

/// True when the segment `[p, q]` does not enter the open unit disk.
/// Grazing contact within `tol` counts as avoiding it.
pub fn segment_avoids_open_disk(p: ComplexPoint, q: ComplexPoint, tol: f64) -> bool {
    origin_segment_distance(p, q) >= 1.0 - tol
}
