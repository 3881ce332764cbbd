//! Source at infinity: light arrives as a plane wave travelling in the −x
//! direction and is seen by an observer at `f = r·e^{iθ}`, `r > 1`.
//!
//! The reflection point solves `r·e^{−iθ}·w⁴ − w³ + w − r·e^{iθ} = 0`, whose
//! four roots always lie on the unit circle. The Möbius map
//! `z = i(1 + w)/(1 − w)` sends those roots to the four real roots of
//! `r sinθ·z⁴ + 2(2r cosθ − 1)·z³ − 6r sinθ·z² − 2(2r cosθ − 1)·z + r sinθ`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{CatoptricError, Result};
use crate::numeric::{
    on_unit_circle, principal_angle, segment_avoids_open_disk, unit_from_angle, ComplexPoint, Tolerances,
};
use crate::quartic::{
    infinity_real_coeffs, real_quartic_invariants, solve_quartic, QuarticCoeffs, RealQuarticNature, RootNature, RootSet,
};

/// Observer position in polar form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObserverPolar {
    r: f64,
    theta: f64,
}

impl ObserverPolar {
    /// `theta` in radians, normalized into (−π, π].
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() || r <= 1.0 {
            return Err(CatoptricError::InvalidObserver { r });
        }
        if !theta.is_finite() {
            return Err(CatoptricError::NonFinite("theta"));
        }
        Ok(Self {
            r,
            theta: principal_angle(theta),
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The observation point `r·e^{iθ}`.
    pub fn point(&self) -> ComplexPoint {
        unit_from_angle(self.theta) * self.r
    }

    fn mirrored(&self) -> Self {
        Self {
            r: self.r,
            theta: self.theta.abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfinityResult {
    /// Reflection point, projected onto the unit circle.
    pub w: ComplexPoint,
    /// `arg w`.
    pub phi: f64,
    pub all_roots: RootSet,
    /// `|w_k|` before projection.
    pub raw_moduli: Vec<f64>,
    /// Roots that passed the physical filters.
    pub admissible_mask: Vec<bool>,
    /// Real parts of `i(1 + w_k)/(1 − w_k)`; absent when a root sits at 1.
    pub mobius_images: Option<[f64; 4]>,
    /// `|f − w| − Re w`: optical path up to an additive constant.
    pub path_defect: f64,
    /// `|Im((f − w)/w²)|`.
    pub reality_residual: f64,
    /// Observer on the positive real axis; the parabola collapses to a ray.
    pub degenerate_axis: bool,
}

/// Coefficients of `r·e^{−iθ}·w⁴ − w³ + w − r·e^{iθ}`.
pub fn infinity_quartic_coeffs(obs: &ObserverPolar) -> QuarticCoeffs {
    let f = obs.point();
    QuarticCoeffs::new(f.conj(), -ComplexPoint::ONE, ComplexPoint::ZERO, ComplexPoint::ONE, -f)
}

/// `|f − w| − Re w`.
pub fn path_defect(f: ComplexPoint, w: ComplexPoint) -> f64 {
    f.dist(w) - w.re()
}

/// `|Im((f − w)/w²)|`; zero exactly when `w` obeys the reflection law.
pub fn reality_residual(f: ComplexPoint, w: ComplexPoint) -> f64 {
    ((f - w) / (w * w)).im().abs()
}

/// Unsigned angle at `vertex` between the rays towards `a` and `b`.
pub fn vertex_angle(a: ComplexPoint, vertex: ComplexPoint, b: ComplexPoint) -> f64 {
    let (u, v) = (a - vertex, b - vertex);
    let cross = u.re() * v.im() - u.im() * v.re();
    let dot = u.re() * v.re() + u.im() * v.im();
    cross.abs().atan2(dot)
}

/// Angles of incidence and reflection at `w`: `∠(0, w, w + 1)` and `∠(f, w, 0)`.
pub fn incidence_angles(f: ComplexPoint, w: ComplexPoint) -> (f64, f64) {
    (
        vertex_angle(ComplexPoint::ZERO, w, w + ComplexPoint::ONE),
        vertex_angle(f, w, ComplexPoint::ZERO),
    )
}

/// Physical reflection point for a plane wave arriving along −x.
///
/// Among the four circle roots a candidate must be lit (`Re w ≥ 0`), the
/// segment `[w, f]` must stay outside the open disk, and for observers with
/// `|θ| ≤ π/2` the root must lie in the observer's quarter `arg w ∈ [0, π/2]`
/// (after reducing to `θ ≥ 0` by conjugation). The smallest path defect wins.
pub fn infinity_reflection(obs: &ObserverPolar, tol: &Tolerances) -> Result<InfinityResult> {
    let flip = obs.theta < 0.0;
    let canon = obs.mirrored();
    let canon_q = infinity_quartic_coeffs(&canon);
    let canon_roots = solve_quartic(&canon_q, tol)?;
    let f = canon.point();
    let slack = tol.unit_circle_tol();

    let projected: Vec<ComplexPoint> = canon_roots.roots.iter().map(|w| w.project_to_circle()).collect();
    let admissible: Vec<bool> = canon_roots
        .roots
        .iter()
        .zip(&projected)
        .map(|(raw, w)| {
            let quarter = canon.theta > FRAC_PI_2 || (w.arg() >= -slack && w.arg() <= FRAC_PI_2 + slack);
            on_unit_circle(*raw, tol) && w.re() >= -slack && segment_avoids_open_disk(*w, f, slack) && quarter
        })
        .collect();

    let degenerate_axis = canon.theta == 0.0;
    let chosen = if degenerate_axis {
        ComplexPoint::ONE
    } else {
        let best = projected
            .iter()
            .zip(&admissible)
            .filter(|(_, ok)| **ok)
            .map(|(w, _)| *w)
            .min_by(|a, b| path_defect(f, *a).total_cmp(&path_defect(f, *b)));
        match best {
            Some(w) => w,
            None if canon.theta > FRAC_PI_2 => return Err(CatoptricError::ShadowRegion { theta: obs.theta }),
            None => return Err(CatoptricError::NoRootOnCircle),
        }
    };

    let (w, all_roots, admissible_mask) = if flip {
        let q = infinity_quartic_coeffs(obs);
        let roots = canon_roots.conjugated(&q);
        // conjugation re-sorts the roots; carry the mask along
        let mask = roots
            .roots
            .iter()
            .map(|r| {
                canon_roots
                    .roots
                    .iter()
                    .position(|c| c.conj() == *r)
                    .map(|k| admissible[k])
                    .unwrap_or(false)
            })
            .collect();
        (chosen.conj(), roots, mask)
    } else {
        (chosen, canon_roots, admissible)
    };

    let f = obs.point();
    Ok(InfinityResult {
        w,
        phi: w.arg(),
        raw_moduli: all_roots.roots.iter().map(|r| r.norm()).collect(),
        mobius_images: mobius_real_image(&all_roots).ok(),
        all_roots,
        admissible_mask,
        path_defect: path_defect(f, w),
        reality_residual: reality_residual(f, w),
        degenerate_axis,
    })
}

/// `i(1 + w)/(1 − w)`, which maps the unit circle onto the real line.
pub fn mobius_image(w: ComplexPoint) -> Result<ComplexPoint> {
    if w.dist(ComplexPoint::ONE) < 1e-12 {
        return Err(CatoptricError::RootAtOne);
    }
    Ok(ComplexPoint::I * (ComplexPoint::ONE + w) / (ComplexPoint::ONE - w))
}

/// Real parts of the Möbius images of four roots.
pub fn mobius_real_image(roots: &RootSet) -> Result<[f64; 4]> {
    if roots.len() != 4 {
        return Err(CatoptricError::DegenerateLeadingCoefficient);
    }
    let mut out = [0.0; 4];
    for (slot, w) in out.iter_mut().zip(&roots.roots) {
        *slot = mobius_image(*w)?.re();
    }
    Ok(out)
}

/// Both routes to "all four roots lie on the unit circle": the sign test on
/// the real quartic in the Möbius variable, and a direct solve.
pub fn verify_circle_theorem(obs: &ObserverPolar, tol: &Tolerances) -> Result<bool> {
    Ok(circle_theorem_report(obs, tol)?.holds())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleTheoremReport {
    pub nature: RealQuarticNature,
    pub roots: RootSet,
    pub all_on_circle: bool,
}

impl CircleTheoremReport {
    pub fn holds(&self) -> bool {
        self.nature.classification == RootNature::FourRealDistinct && self.all_on_circle
    }
}

pub fn circle_theorem_report(obs: &ObserverPolar, tol: &Tolerances) -> Result<CircleTheoremReport> {
    if obs.theta == 0.0 || obs.theta == PI || obs.theta.sin().abs() <= f64::EPSILON {
        return Err(CatoptricError::DegenerateLeadingCoefficient);
    }
    let nature = real_quartic_invariants(&infinity_real_coeffs(obs.r, obs.theta)?)?;
    let roots = solve_quartic(&infinity_quartic_coeffs(obs), tol)?;
    let all_on_circle = roots.roots.iter().all(|w| on_unit_circle(*w, tol));
    Ok(CircleTheoremReport {
        nature,
        roots,
        all_on_circle,
    })
}
