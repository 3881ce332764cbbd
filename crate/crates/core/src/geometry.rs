//! Tangent lines, parabola directrices and their envelope.
//!
//! Lines are kept in the complex form `α·z + β·conj(z) + γ = 0`. A parabola
//! with focus `a > 1` on the real axis tangent to the unit circle at `w` has
//! a directrix; as `w` runs over the circle these directrices envelope the
//! limaçon `|z|⁴ − 2(a² + 2)|z|² + 4a(z + conj z) + a⁴ − 4a² = 0`, traced by
//! `z = 2e^{iθ} − a·e^{2iθ}`.

use num_complex::Complex64;

use crate::error::{CatoptricError, Result};
use crate::numeric::{on_unit_circle, unit_from_angle, ComplexPoint, Tolerances};

/// The line `alpha·z + beta·conj(z) + gamma = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineCoeffs {
    pub alpha: ComplexPoint,
    pub beta: ComplexPoint,
    pub gamma: ComplexPoint,
}

/// `a·x + b·y + c = 0` with `a² + b² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealLine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LineCoeffs {
    pub fn new(alpha: ComplexPoint, beta: ComplexPoint, gamma: ComplexPoint) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn eval(&self, z: ComplexPoint) -> ComplexPoint {
        self.alpha * z + self.beta * z.conj() + self.gamma
    }

    /// `|eval(z)| / |alpha|`, scale-free.
    pub fn residual(&self, z: ComplexPoint) -> f64 {
        self.eval(z).norm() / self.alpha.norm()
    }

    /// Rescales by a complex factor `k` so that `beta = conj(alpha)`,
    /// `gamma` is real and `|alpha| = 1/2`; the real form then has a unit
    /// normal. The sign is fixed so the normal points into `x > 0` (or
    /// `y > 0` for horizontal lines).
    pub fn normalized(&self) -> Result<LineCoeffs> {
        let (alpha, beta) = (self.alpha.as_complex(), self.beta.as_complex());
        if alpha.norm() == 0.0 || beta.norm() == 0.0 {
            return Err(CatoptricError::NotARealLine);
        }
        let ratio = alpha.conj() / beta;
        if (ratio.norm() - 1.0).abs() > 1e-9 {
            return Err(CatoptricError::NotARealLine);
        }
        // k/conj(k) = conj(α)/β makes kβ = conj(kα)
        let mut k = ratio.sqrt();
        k /= 2.0 * (k * alpha).norm();
        let mut a = k * alpha;
        let mut g = k * self.gamma.as_complex();
        if g.im.abs() > 1e-9 * (g.norm().max(1.0)) {
            return Err(CatoptricError::NotARealLine);
        }
        // 2Re(αz) = 2(Re α)x − 2(Im α)y
        let (nx, ny) = (2.0 * a.re, -2.0 * a.im);
        if nx < -1e-12 || (nx.abs() <= 1e-12 && ny < 0.0) {
            a = -a;
            g = -g;
        }
        Ok(LineCoeffs::new(
            ComplexPoint::raw(a),
            ComplexPoint::raw(a.conj()),
            ComplexPoint::raw(Complex64::new(g.re, 0.0)),
        ))
    }

    pub fn to_real_form(&self) -> Result<RealLine> {
        let n = self.normalized()?;
        Ok(RealLine {
            a: 2.0 * n.alpha.re(),
            b: -2.0 * n.alpha.im(),
            c: n.gamma.re(),
        })
    }

    /// Euclidean distance from `p`, `|α·p + conj(α·p) + γ| / (2|α|)` on the
    /// normalized form.
    pub fn distance(&self, p: ComplexPoint) -> Result<f64> {
        let n = self.normalized()?;
        let ap = n.alpha * p;
        Ok((ap + ap.conj() + n.gamma).norm() / (2.0 * n.alpha.norm()))
    }
}

fn check_on_circle(w: ComplexPoint) -> Result<()> {
    if on_unit_circle(w, &Tolerances::default()) {
        Ok(())
    } else {
        Err(CatoptricError::NotOnCircle { modulus: w.norm() })
    }
}

fn check_focus(a: f64) -> Result<()> {
    if a.is_finite() && a > 1.0 {
        Ok(())
    } else {
        Err(CatoptricError::InvalidFocus { a })
    }
}

/// Tangent to the unit circle at `w`: `z + w²·conj(z) − 2w = 0`.
pub fn tangent_line(w: ComplexPoint) -> Result<LineCoeffs> {
    check_on_circle(w)?;
    Ok(LineCoeffs::new(ComplexPoint::ONE, w * w, -(w * 2.0)))
}

/// Reflection of the real point `a` across the tangent at `w`: `w(2 − a·w)`.
pub fn mirror_point(a: f64, w: ComplexPoint) -> Result<ComplexPoint> {
    check_on_circle(w)?;
    if !a.is_finite() {
        return Err(CatoptricError::NonFinite("a"));
    }
    Ok(w * (ComplexPoint::ONE * 2.0 - w * a))
}

/// Directrix of the parabola with focus `a` tangent to the circle at `w`:
/// `(a − w)z + w³(wa − 1)conj(z) + 2w²a² − 3w(w² + 1)a + 4w² = 0`.
pub fn directrix(a: f64, w: ComplexPoint) -> Result<LineCoeffs> {
    check_focus(a)?;
    check_on_circle(w)?;
    let one = ComplexPoint::ONE;
    let w2 = w * w;
    Ok(LineCoeffs::new(
        one * a - w,
        w2 * w * (w * a - one),
        w2 * (2.0 * a * a) - w * (w2 + one) * (3.0 * a) + w2 * 4.0,
    ))
}

/// Point where `directrix(a, w)` touches the envelope: `2w − a·w²`.
pub fn tangency_point(a: f64, w: ComplexPoint) -> Result<ComplexPoint> {
    check_focus(a)?;
    check_on_circle(w)?;
    Ok(w * 2.0 - w * w * a)
}

/// Residual of the envelope equation at `z` (real).
pub fn envelope_implicit(a: f64, z: ComplexPoint) -> Result<f64> {
    check_focus(a)?;
    let m = z.norm_sqr();
    Ok(m * m - 2.0 * (a * a + 2.0) * m + 8.0 * a * z.re() + a.powi(4) - 4.0 * a * a)
}

/// `2e^{iθ} − a·e^{2iθ}`.
pub fn envelope_param(a: f64, theta: f64) -> Result<ComplexPoint> {
    check_focus(a)?;
    Ok(unit_from_angle(theta) * 2.0 - unit_from_angle(2.0 * theta) * a)
}

/// The envelope in limaçon form about the focus:
/// `((x−a)² + y² + 2a(x−a))² − 4((x−a)² + y²)`.
pub fn limacon_residual(a: f64, x: f64, y: f64) -> Result<f64> {
    check_focus(a)?;
    let u = x - a;
    let rho2 = u * u + y * y;
    let t = rho2 + 2.0 * a * u;
    Ok(t * t - 4.0 * rho2)
}

/// The spurious factor produced by eliminating `w`,
/// `(a² − 1)((8a² + 1)x − 9a)² + (4a² − 1)³y²`.
pub fn e1_residual(a: f64, x: f64, y: f64) -> Result<f64> {
    check_focus(a)?;
    let lin = (8.0 * a * a + 1.0) * x - 9.0 * a;
    Ok((a * a - 1.0) * lin * lin + (4.0 * a * a - 1.0).powi(3) * y * y)
}

/// The only real zero of [`e1_residual`]; a single point, not a curve.
pub fn e1_isolated_point(a: f64) -> Result<ComplexPoint> {
    check_focus(a)?;
    ComplexPoint::real(9.0 * a / (8.0 * a * a + 1.0))
}

/// Largest `|arg w|` reachable by light that does not cross the mirror:
/// `asin(√(a² − 1)/a)`.
pub fn valid_arc(a: f64) -> Result<f64> {
    check_focus(a)?;
    Ok(((a * a - 1.0).sqrt() / a).asin())
}

/// Focus, tangency point and directrix of one member of the family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParabolaSpec {
    pub focus: ComplexPoint,
    pub tangency: ComplexPoint,
    pub directrix: LineCoeffs,
}

impl ParabolaSpec {
    pub fn new(a: f64, w: ComplexPoint) -> Result<Self> {
        Ok(Self {
            focus: ComplexPoint::real(a)?,
            tangency: w,
            directrix: directrix(a, w)?,
        })
    }

    /// `dist(w, directrix) − |w − focus|`; zero for a true parabola.
    pub fn focus_directrix_gap(&self) -> Result<f64> {
        Ok(self.directrix.distance(self.tangency)? - self.tangency.dist(self.focus))
    }
}

/// The limaçon envelope for a fixed focus `a > 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeCurve {
    a: f64,
    phi_max: f64,
}

impl EnvelopeCurve {
    pub fn new(a: f64) -> Result<Self> {
        Ok(Self {
            a,
            phi_max: valid_arc(a)?,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn phi_max(&self) -> f64 {
        self.phi_max
    }

    pub fn implicit(&self, z: ComplexPoint) -> f64 {
        envelope_implicit(self.a, z).expect("focus validated at construction")
    }

    pub fn point(&self, theta: f64) -> ComplexPoint {
        envelope_param(self.a, theta).expect("focus validated at construction")
    }

    /// `n` samples at `θ_k = −π + 2π(k + 1)/n`, ascending in (−π, π].
    pub fn sample(&self, n: usize) -> Vec<(f64, ComplexPoint)> {
        use std::f64::consts::PI;
        (0..n)
            .map(|k| {
                let theta = -PI + 2.0 * PI * (k as f64 + 1.0) / n as f64;
                (theta, self.point(theta))
            })
            .collect()
    }

    /// Whether the parameter lies on the teardrop (inner loop) arc.
    pub fn on_teardrop(&self, theta: f64) -> bool {
        theta.abs() <= self.phi_max
    }
}
