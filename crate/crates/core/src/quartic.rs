//! Complex quartic roots by Ferrari's reduction, polished with Newton's
//! method, and sign classification of real quartics.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{CatoptricError, Result};
use crate::numeric::{ComplexPoint, Tolerances};

const MAX_POLISH_ITERATIONS: usize = 50;
const NEAR_DOUBLE_SEPARATION: f64 = 1e-7;

type C = Complex64;

/// Coefficients of `c4·w⁴ + c3·w³ + c2·w² + c1·w + c0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuarticCoeffs {
    pub c4: ComplexPoint,
    pub c3: ComplexPoint,
    pub c2: ComplexPoint,
    pub c1: ComplexPoint,
    pub c0: ComplexPoint,
}

impl QuarticCoeffs {
    pub fn new(c4: ComplexPoint, c3: ComplexPoint, c2: ComplexPoint, c1: ComplexPoint, c0: ComplexPoint) -> Self {
        Self { c4, c3, c2, c1, c0 }
    }

    /// Real coefficients, highest degree first.
    pub fn from_real(c: [f64; 5]) -> Result<Self> {
        Ok(Self::new(
            ComplexPoint::real(c[0])?,
            ComplexPoint::real(c[1])?,
            ComplexPoint::real(c[2])?,
            ComplexPoint::real(c[3])?,
            ComplexPoint::real(c[4])?,
        ))
    }

    /// Monic quartic with the given roots.
    pub fn from_roots(roots: [ComplexPoint; 4]) -> Self {
        let [e1, e2, e3, e4] = elementary_symmetric(&roots.map(ComplexPoint::as_complex));
        Self::new(
            ComplexPoint::ONE,
            ComplexPoint::raw(-e1),
            ComplexPoint::raw(e2),
            ComplexPoint::raw(-e3),
            ComplexPoint::raw(e4),
        )
    }

    /// Highest degree first.
    pub fn to_array(&self) -> [ComplexPoint; 5] {
        [self.c4, self.c3, self.c2, self.c1, self.c0]
    }

    fn complex(&self) -> [C; 5] {
        self.to_array().map(ComplexPoint::as_complex)
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.to_array().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, w: ComplexPoint) -> ComplexPoint {
        ComplexPoint::raw(horner(&self.complex(), w.as_complex()).0)
    }

    pub fn scaled(&self, lambda: ComplexPoint) -> Self {
        let a = self.to_array().map(|c| c * lambda);
        Self::new(a[0], a[1], a[2], a[3], a[4])
    }

    pub fn conj(&self) -> Self {
        let a = self.to_array().map(ComplexPoint::conj);
        Self::new(a[0], a[1], a[2], a[3], a[4])
    }
}

/// Roots of a polynomial of degree at most four, after polishing.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// Sorted by ascending principal argument, then ascending modulus.
    pub roots: Vec<ComplexPoint>,
    /// `|p(root)|` evaluated from the stored coefficients.
    pub residuals: Vec<f64>,
    pub polish_iterations: Vec<usize>,
    /// Smallest pairwise distance between roots (infinite for fewer than two).
    pub min_separation: f64,
    /// Two roots closer than 1e-7; both are kept.
    pub near_double: bool,
    /// Roots lost to a vanishing leading coefficient ("at infinity").
    pub missing_at_infinity: usize,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// The conjugate root set, re-sorted, with residuals taken against `q`
    /// (normally the conjugate of the polynomial these roots solve).
    pub fn conjugated(&self, q: &QuarticCoeffs) -> RootSet {
        let mut pairs: Vec<(ComplexPoint, usize)> = self
            .roots
            .iter()
            .zip(&self.polish_iterations)
            .map(|(w, it)| (w.conj(), *it))
            .collect();
        pairs.sort_by(|a, b| root_order(a.0.as_complex(), b.0.as_complex()));
        RootSet {
            residuals: pairs.iter().map(|(w, _)| q.eval(*w).norm()).collect(),
            roots: pairs.iter().map(|(w, _)| *w).collect(),
            polish_iterations: pairs.iter().map(|(_, it)| *it).collect(),
            min_separation: self.min_separation,
            near_double: self.near_double,
            missing_at_infinity: self.missing_at_infinity,
        }
    }
}

/// Solves a genuine quartic. The leading coefficient must be nonzero.
pub fn solve_quartic(q: &QuarticCoeffs, tol: &Tolerances) -> Result<RootSet> {
    if q.c4.norm() == 0.0 {
        return Err(CatoptricError::DegenerateLeadingCoefficient);
    }
    solve_up_to_quartic(q, tol)
}

/// Like [`solve_quartic`] but drops exactly-zero leading coefficients and
/// solves the lower-degree polynomial. The dropped roots are counted in
/// `missing_at_infinity`.
pub fn solve_up_to_quartic(q: &QuarticCoeffs, tol: &Tolerances) -> Result<RootSet> {
    let all = q.complex();
    let lead = all.iter().position(|c| *c != C::new(0.0, 0.0));
    let Some(lead) = lead else {
        return Err(CatoptricError::DegenerateLeadingCoefficient);
    };
    let poly = &all[lead..];
    let degree = poly.len() - 1;
    if degree == 0 {
        return Err(CatoptricError::DegenerateLeadingCoefficient);
    }

    // exact roots at the origin
    let zeros = poly.iter().rev().take_while(|c| **c == C::new(0.0, 0.0)).count();
    let core = &poly[..poly.len() - zeros];
    let mut estimates = vec![C::new(0.0, 0.0); zeros];
    estimates.extend(closed_form_roots(core));

    let bound = tol.residual_tol() * q.max_coeff_magnitude().max(1.0);
    let (roots, iterations) = match polish_all(poly, &estimates, bound) {
        Ok(done) if !collapsed(&estimates, &done.0) => done,
        // badly scaled coefficients can wreck the closed form; restart
        // from a simultaneous iteration seeded with the same estimates
        first => {
            let seeds = aberth(poly, &estimates);
            match polish_all(poly, &seeds, bound) {
                Ok(done) => done,
                Err(e) => return first.and(Err(e)),
            }
        }
    };

    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| root_order(roots[i], roots[j]));
    let roots: Vec<ComplexPoint> = order
        .iter()
        .map(|&i| ComplexPoint::from_complex(roots[i]))
        .collect::<Result<_>>()?;
    let polish_iterations = order.iter().map(|&i| iterations[i]).collect();
    let residuals = roots.iter().map(|w| q.eval(*w).norm()).collect();

    let mut min_separation = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            min_separation = min_separation.min(roots[i].dist(roots[j]));
        }
    }

    Ok(RootSet {
        roots,
        residuals,
        polish_iterations,
        min_separation,
        near_double: min_separation < NEAR_DOUBLE_SEPARATION,
        missing_at_infinity: lead,
    })
}

fn root_order(a: C, b: C) -> Ordering {
    let (pa, pb) = (ComplexPoint::raw(a).arg(), ComplexPoint::raw(b).arg());
    pa.total_cmp(&pb).then(a.norm().total_cmp(&b.norm()))
}

/// Value and derivative by Horner's scheme, highest degree first.
fn horner(p: &[C], w: C) -> (C, C) {
    let mut v = C::new(0.0, 0.0);
    let mut dv = C::new(0.0, 0.0);
    for c in p {
        dv = dv * w + v;
        v = v * w + c;
    }
    (v, dv)
}

/// Rounding floor of Horner evaluation at `w`: no polishing can do better.
fn evaluation_floor(p: &[C], w: C) -> f64 {
    let r = w.norm();
    let mut s = 0.0;
    for c in p {
        s = s * r + c.norm();
    }
    16.0 * f64::EPSILON * s
}

fn polish_all(p: &[C], estimates: &[C], bound: f64) -> Result<(Vec<C>, Vec<usize>)> {
    let mut roots = Vec::with_capacity(estimates.len());
    let mut iterations = Vec::with_capacity(estimates.len());
    for w0 in estimates {
        let (w, it) = polish(p, *w0, bound)?;
        roots.push(w);
        iterations.push(it);
    }
    Ok((roots, iterations))
}

/// Newton sent two separated estimates onto the same root.
fn collapsed(before: &[C], after: &[C]) -> bool {
    for i in 0..after.len() {
        for j in i + 1..after.len() {
            let gap_before = (before[i] - before[j]).norm();
            let gap_after = (after[i] - after[j]).norm();
            let scale = before[i].norm().max(before[j].norm()).max(1.0);
            if gap_after < NEAR_DOUBLE_SEPARATION * scale && gap_before > 1e3 * gap_after.max(f64::EPSILON * scale) {
                return true;
            }
        }
    }
    false
}

/// Aberth–Ehrlich simultaneous iteration, seeded with `seeds`.
fn aberth(p: &[C], seeds: &[C]) -> Vec<C> {
    let n = seeds.len();
    let mut w: Vec<C> = seeds.to_vec();
    // separate coincident seeds so the repulsion term is defined
    for i in 0..n {
        for j in 0..i {
            if (w[i] - w[j]).norm() < 1e-12 * w[i].norm().max(1.0) {
                let kick = C::from_polar(1e-6 * w[i].norm().max(1.0), 0.7 + 2.1 * i as f64);
                w[i] += kick;
            }
        }
    }
    for _ in 0..500 {
        let mut largest = 0.0f64;
        for k in 0..n {
            let (v, dv) = horner(p, w[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: C = (0..n)
                .filter(|&j| j != k)
                .map(|j| C::new(1.0, 0.0) / (w[k] - w[j]))
                .sum();
            let step = ratio / (C::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                w[k] -= step;
                largest = largest.max(step.norm() / w[k].norm().max(1.0));
            }
        }
        if largest < 1e-15 {
            break;
        }
    }
    w
}

/// Newton iteration on `p`, continued while the residual keeps shrinking.
fn polish(p: &[C], w0: C, bound: f64) -> Result<(C, usize)> {
    let mut w = w0;
    let (mut v, mut dv) = horner(p, w);
    let mut res = v.norm();
    let mut steps = 0;
    for _ in 0..MAX_POLISH_ITERATIONS {
        if res == 0.0 || dv.norm() == 0.0 {
            break;
        }
        let cand = w - v / dv;
        let (cv, cdv) = horner(p, cand);
        let cres = cv.norm();
        // also stops on NaN
        if cres.partial_cmp(&res) != Some(std::cmp::Ordering::Less) {
            break;
        }
        w = cand;
        v = cv;
        dv = cdv;
        res = cres;
        steps += 1;
    }
    if res <= bound.max(evaluation_floor(p, w)) {
        Ok((w, steps))
    } else {
        Err(CatoptricError::NoConvergence {
            iterations: steps,
            residual: res,
        })
    }
}

/// Closed-form roots of a polynomial of degree 1..=4 (highest first,
/// nonzero leading coefficient).
fn closed_form_roots(p: &[C]) -> Vec<C> {
    match p.len() {
        0 | 1 => Vec::new(),
        2 => vec![-p[1] / p[0]],
        3 => quadratic_roots(p[1] / p[0], p[2] / p[0]).to_vec(),
        4 => cubic_roots(p[1] / p[0], p[2] / p[0], p[3] / p[0]).to_vec(),
        5 => ferrari(p[1] / p[0], p[2] / p[0], p[3] / p[0], p[4] / p[0]).to_vec(),
        _ => unreachable!("degree above four"),
    }
}

/// Roots of `x² + b·x + c`, avoiding cancellation in the smaller root.
fn quadratic_roots(b: C, c: C) -> [C; 2] {
    let disc = (b * b - c * 4.0).sqrt();
    let plus = b + disc;
    let minus = b - disc;
    let big = if plus.norm() >= minus.norm() { plus } else { minus };
    if big.norm() == 0.0 {
        return [C::new(0.0, 0.0); 2];
    }
    let x1 = -big / 2.0;
    [x1, c / x1]
}

/// Roots of the monic cubic `x³ + a·x² + b·x + c` by Cardano's formula,
/// each refined by a few Newton steps on the cubic itself.
fn cubic_roots(a: C, b: C, c: C) -> [C; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + c;

    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u1 = -q / 2.0 + disc;
    let u2 = -q / 2.0 - disc;
    let u3 = if u1.norm() >= u2.norm() { u1 } else { u2 };

    let omega = C::new(-0.5, 3f64.sqrt() / 2.0);
    let omega2 = omega.conj();
    let mut t = if u3.norm() == 0.0 {
        [C::new(0.0, 0.0); 3]
    } else {
        let u = u3.cbrt();
        let v = -p / (u * 3.0);
        [u + v, omega * u + omega2 * v, omega2 * u + omega * v]
    };

    let cubic = [C::new(1.0, 0.0), a, b, c];
    for root in t.iter_mut() {
        let mut x = *root - shift;
        for _ in 0..4 {
            let (v, dv) = horner(&cubic, x);
            if v.norm() == 0.0 || dv.norm() == 0.0 {
                break;
            }
            let next = x - v / dv;
            if horner(&cubic, next).0.norm() >= v.norm() {
                break;
            }
            x = next;
        }
        *root = x;
    }
    t
}

/// Ferrari's method for the monic quartic `x⁴ + a·x³ + b·x² + c·x + d`.
fn ferrari(a: C, b: C, c: C, d: C) -> [C; 4] {
    let shift = a / 4.0;
    let a2 = a * a;
    // depressed quartic y⁴ + p·y² + q·y + r, x = y − a/4
    let p = b - a2 * (3.0 / 8.0);
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - a2 * a2 * (3.0 / 256.0);

    let ys: [C; 4] = if q == C::new(0.0, 0.0) {
        // biquadratic in y²
        let [u1, u2] = quadratic_roots(p, r);
        let (s1, s2) = (u1.sqrt(), u2.sqrt());
        [s1, -s1, s2, -s2]
    } else {
        // resolvent cubic m³ + p·m² + (p²/4 − r)·m − q²/8 = 0; pick the
        // root with the largest square-root argument 2m
        let ms = cubic_roots(p, p * p / 4.0 - r, -q * q / 8.0);
        let m = ms.iter().copied().max_by(|x, y| x.norm().total_cmp(&y.norm())).unwrap();
        let s = (m * 2.0).sqrt();
        let t = q / (s * 2.0);
        let base = p / 2.0 + m;
        let [y1, y2] = quadratic_roots(-s, base + t);
        let [y3, y4] = quadratic_roots(s, base - t);
        [y1, y2, y3, y4]
    };
    ys.map(|y| y - shift)
}

fn elementary_symmetric(r: &[C; 4]) -> [C; 4] {
    let e1 = r[0] + r[1] + r[2] + r[3];
    let e2 = r[0] * (r[1] + r[2] + r[3]) + r[1] * (r[2] + r[3]) + r[2] * r[3];
    let e3 = r[0] * r[1] * r[2] + r[0] * r[1] * r[3] + r[0] * r[2] * r[3] + r[1] * r[2] * r[3];
    let e4 = r[0] * r[1] * r[2] * r[3];
    [e1, e2, e3, e4]
}

/// Elementary symmetric functions `[Σw, Σw_iw_j, Σw_iw_jw_k, Πw]` of four roots.
pub fn vieta_sums(roots: &[ComplexPoint]) -> Result<[ComplexPoint; 4]> {
    let r: [C; 4] = roots
        .iter()
        .map(|w| w.as_complex())
        .collect::<Vec<_>>()
        .try_into()
        .map_err(|_| CatoptricError::DegenerateLeadingCoefficient)?;
    Ok(elementary_symmetric(&r).map(ComplexPoint::raw))
}

/// Real quartic `a·x⁴ + b·x³ + c·x² + d·x + e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealQuartic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl RealQuartic {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Self {
        Self { a, b, c, d, e }
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    pub fn to_complex(&self) -> Result<QuarticCoeffs> {
        QuarticCoeffs::from_real(self.to_array())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootNature {
    FourRealDistinct,
    NotFourRealDistinct,
    /// Δ = 0: a repeated root.
    Degenerate,
}

/// Discriminant Δ and the auxiliary invariants P, D of a real quartic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealQuarticNature {
    pub delta: f64,
    pub p: f64,
    pub d: f64,
    pub classification: RootNature,
}

/// Δ, P and D of a real quartic; four distinct real roots iff Δ > 0, P < 0, D < 0.
pub fn real_quartic_invariants(q: &RealQuartic) -> Result<RealQuarticNature> {
    let RealQuartic { a, b, c, d, e } = *q;
    if a == 0.0 {
        return Err(CatoptricError::DegenerateLeadingCoefficient);
    }
    if !q.to_array().iter().all(|x| x.is_finite()) {
        return Err(CatoptricError::NonFinite("RealQuartic"));
    }
    let delta = 256.0 * e.powi(3) * a.powi(3)
        + (-192.0 * e * e * d * b - 128.0 * e * e * c * c + 144.0 * e * d * d * c - 27.0 * d.powi(4)) * a * a
        + ((144.0 * e * e * c - 6.0 * e * d * d) * b * b
            + (-80.0 * e * d * c * c + 18.0 * d.powi(3) * c) * b
            + 16.0 * e * c.powi(4)
            - 4.0 * d * d * c.powi(3))
            * a
        - 27.0 * e * e * b.powi(4)
        + (18.0 * e * d * c - 4.0 * d.powi(3)) * b.powi(3)
        + (-4.0 * e * c.powi(3) + d * d * c * c) * b * b;
    let p = 8.0 * a * c - 3.0 * b * b;
    let dd =
        64.0 * a.powi(3) * e - 16.0 * a * a * c * c + 16.0 * a * b * b * c - 16.0 * a * a * d * b - 3.0 * b.powi(4);
    let classification = if delta > 0.0 && p < 0.0 && dd < 0.0 {
        RootNature::FourRealDistinct
    } else if delta == 0.0 {
        RootNature::Degenerate
    } else {
        RootNature::NotFourRealDistinct
    };
    Ok(RealQuarticNature {
        delta,
        p,
        d: dd,
        classification,
    })
}

/// Real quartic in `z = i(1+w)/(1−w)` equivalent to the source-at-infinity
/// quartic for an observer at `r·e^{iθ}`:
/// `r sinθ·z⁴ + 2(2r cosθ − 1)z³ − 6r sinθ·z² − 2(2r cosθ + 1)z + r sinθ`.
///
/// Note the linear coefficient is not the negated cubic one; the two differ
/// by `4` in the constant part.
pub fn infinity_real_coeffs(r: f64, theta: f64) -> Result<RealQuartic> {
    if !r.is_finite() || r <= 1.0 {
        return Err(CatoptricError::InvalidObserver { r });
    }
    if !theta.is_finite() {
        return Err(CatoptricError::NonFinite("theta"));
    }
    let (s, c) = theta.sin_cos();
    let lead = r * s;
    Ok(RealQuartic::new(
        lead,
        2.0 * (2.0 * r * c - 1.0),
        -6.0 * r * s,
        -2.0 * (2.0 * r * c + 1.0),
        lead,
    ))
}
