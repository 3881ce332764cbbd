//! Finite source and observer: the reflection quartic, its minimizing root,
//! the triangular ratio metric of the unit disk and the maximal ellipse.
//!
//! For `z1, z2` in the disk the reflection point `w` on the unit circle is a
//! root of
//!
//! ```text
//! conj(z1)conj(z2)·w⁴ − (conj z1 + conj z2)·w³ + (z1 + z2)·w − z1·z2 = 0
//! ```
//!
//! Not every root lies on the circle, and of those that do only the one(s)
//! minimizing the focal sum `|z1 − w| + |z2 − w|` realize the supremum in
//! `s(z1, z2) = sup_{|w|=1} |z1 − z2| / (|z1 − w| + |z2 − w|)`. Points outside
//! the closed disk use the same quartic with a visibility filter.

use crate::error::{CatoptricError, Result};
use crate::numeric::{on_unit_circle, segment_avoids_open_disk, ComplexPoint, Tolerances};
use crate::quartic::{solve_up_to_quartic, QuarticCoeffs, RootSet};

/// Separation below which two points count as the same point.
pub const COINCIDENCE_EPS: f64 = 1e-14;

/// Relative slack when comparing focal sums and coordinates for ties.
const TIE_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionResult {
    /// Chosen reflection point, projected onto the unit circle.
    pub w: ComplexPoint,
    /// `|z1 − z2| / focal_sum`.
    pub s_value: f64,
    /// `|z1 − w| + |z2 − w|`.
    pub focal_sum: f64,
    pub candidates: RootSet,
    /// Which candidates passed the unit-circle test.
    pub on_circle_mask: Vec<bool>,
    /// Which candidates were eligible for selection (on the circle and, for
    /// the exterior problem, visible from both points).
    pub admissible_mask: Vec<bool>,
    /// Every admissible point attaining the minimal focal sum, including `w`.
    pub ties: Vec<ComplexPoint>,
    /// `|Im((z1 − w)(z2 − w)/w²)|`, zero when the reflection law holds exactly.
    pub reflection_residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseParams {
    pub focal_sum: f64,
    pub major: f64,
    pub minor: f64,
    pub eccentricity: f64,
}

/// Coefficients of the reflection quartic for the pair `(z1, z2)`. Defined
/// for any finite points; `c2` is always zero.
pub fn interior_quartic_coeffs(z1: ComplexPoint, z2: ComplexPoint) -> QuarticCoeffs {
    let (a, b) = (z1.conj(), z2.conj());
    QuarticCoeffs::new(a * b, -(a + b), ComplexPoint::ZERO, z1 + z2, -(z1 * z2))
}

/// `|Im((z1 − w)(z2 − w)/w²)|`.
pub fn reflection_residual(z1: ComplexPoint, z2: ComplexPoint, w: ComplexPoint) -> f64 {
    ((z1 - w) * (z2 - w) / (w * w)).im().abs()
}

pub fn focal_sum(z1: ComplexPoint, z2: ComplexPoint, w: ComplexPoint) -> f64 {
    z1.dist(w) + z2.dist(w)
}

fn check_inside(z: ComplexPoint, which: &'static str) -> Result<()> {
    let modulus = z.norm();
    if modulus < 1.0 {
        Ok(())
    } else {
        Err(CatoptricError::PointOutsideDomain { which, modulus })
    }
}

fn check_outside(z: ComplexPoint, which: &'static str) -> Result<()> {
    let modulus = z.norm();
    if modulus > 1.0 {
        Ok(())
    } else {
        Err(CatoptricError::PointInsideDomain { which, modulus })
    }
}

/// Reflection point for `z1, z2` strictly inside the unit disk.
pub fn minimizing_root(z1: ComplexPoint, z2: ComplexPoint, tol: &Tolerances) -> Result<ReflectionResult> {
    check_inside(z1, "z1")?;
    check_inside(z2, "z2")?;
    if z1.dist(z2) < COINCIDENCE_EPS {
        return Err(CatoptricError::CoincidentPoints);
    }
    let roots = solve_up_to_quartic(&interior_quartic_coeffs(z1, z2), tol)?;
    select(z1, z2, roots, tol, |_| true)?.ok_or(CatoptricError::NoRootOnCircle)
}

/// Triangular ratio metric of the unit disk.
pub fn s_metric(z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    check_inside(z1, "z1")?;
    check_inside(z2, "z2")?;
    if z1.dist(z2) < COINCIDENCE_EPS {
        return Ok(0.0);
    }
    Ok(minimizing_root(z1, z2, &Tolerances::default())?.s_value)
}

/// Semiaxes and eccentricity of the largest ellipse with foci `z1, z2`
/// inside the disk; its eccentricity equals `s_metric(z1, z2)`.
pub fn ellipse_params(z1: ComplexPoint, z2: ComplexPoint) -> Result<EllipseParams> {
    let s = minimizing_root(z1, z2, &Tolerances::default())?.s_value;
    let d = z1.dist(z2);
    let c = d / s;
    let major = c / 2.0;
    let minor = 0.5 * (c * c - d * d).max(0.0).sqrt();
    let ratio = minor / major;
    Ok(EllipseParams {
        focal_sum: c,
        major,
        minor,
        eccentricity: (1.0 - ratio * ratio).max(0.0).sqrt(),
    })
}

/// Reflection point for `z1, z2` outside the closed unit disk, if one exists.
///
/// Candidates must be seen from both points: the segments `[z1, w]` and
/// `[z2, w]` may not enter the open disk. `Ok(None)` means no root of the
/// quartic is visible from both.
pub fn exterior_reflection(z1: ComplexPoint, z2: ComplexPoint, tol: &Tolerances) -> Result<Option<ReflectionResult>> {
    check_outside(z1, "z1")?;
    check_outside(z2, "z2")?;
    let roots = solve_up_to_quartic(&interior_quartic_coeffs(z1, z2), tol)?;
    let slack = tol.unit_circle_tol();
    select(z1, z2, roots, tol, |w| {
        segment_avoids_open_disk(w, z1, slack) && segment_avoids_open_disk(w, z2, slack)
    })
}

fn select(
    z1: ComplexPoint,
    z2: ComplexPoint,
    candidates: RootSet,
    tol: &Tolerances,
    visible: impl Fn(ComplexPoint) -> bool,
) -> Result<Option<ReflectionResult>> {
    let on_circle_mask: Vec<bool> = candidates.roots.iter().map(|w| on_unit_circle(*w, tol)).collect();
    let projected: Vec<ComplexPoint> = candidates.roots.iter().map(|w| w.project_to_circle()).collect();
    let admissible_mask: Vec<bool> = projected
        .iter()
        .zip(&on_circle_mask)
        .map(|(w, on)| *on && visible(*w))
        .collect();

    let scored: Vec<(ComplexPoint, f64)> = projected
        .iter()
        .zip(&admissible_mask)
        .filter(|(_, ok)| **ok)
        .map(|(w, _)| (*w, focal_sum(z1, z2, *w)))
        .collect();
    if scored.is_empty() {
        if on_circle_mask.iter().any(|b| *b) {
            return Ok(None);
        }
        return Err(CatoptricError::NoRootOnCircle);
    }

    let best = scored.iter().map(|(_, f)| *f).fold(f64::INFINITY, f64::min);
    let slack = TIE_EPS * best.max(1.0);
    let mut ties: Vec<ComplexPoint> = Vec::new();
    for (w, f) in &scored {
        // a near-double root shows up twice; keep one copy
        if *f <= best + slack && !ties.iter().any(|t| t.dist(*w) <= TIE_EPS) {
            ties.push(*w);
        }
    }
    let w = prefer_upper_right(&ties);
    let focal = focal_sum(z1, z2, w);

    Ok(Some(ReflectionResult {
        w,
        s_value: z1.dist(z2) / focal,
        focal_sum: focal,
        candidates,
        on_circle_mask,
        admissible_mask,
        ties,
        reflection_residual: reflection_residual(z1, z2, w),
    }))
}

/// Largest imaginary part, then largest real part, with rounding slack.
fn prefer_upper_right(points: &[ComplexPoint]) -> ComplexPoint {
    let mut best = points[0];
    for p in &points[1..] {
        let higher = p.im() > best.im() + TIE_EPS;
        let level = (p.im() - best.im()).abs() <= TIE_EPS;
        if higher || (level && p.re() > best.re()) {
            best = *p;
        }
    }
    best
}
