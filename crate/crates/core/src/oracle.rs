//! Brute-force reference solvers.
//!
//! Nothing here touches the quartics. The interior and exterior oracles scan
//! the circle on a uniform grid and refine each promising cell by
//! golden-section search; the discriminant comes from a Sylvester resultant.
//! They are slow on purpose.

use std::f64::consts::PI;

use crate::error::{CatoptricError, Result};
use crate::infinity::ObserverPolar;
use crate::interior::COINCIDENCE_EPS;
use crate::numeric::{unit_from_angle, ComplexPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    grid: usize,
    refine_iters: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid: 100_000,
            refine_iters: 80,
        }
    }
}

impl OracleConfig {
    pub fn new(grid: usize, refine_iters: usize) -> Result<Self> {
        if grid < 1000 {
            return Err(CatoptricError::InvalidConfig(format!(
                "grid must be at least 1000, got {grid}"
            )));
        }
        if refine_iters < 20 {
            return Err(CatoptricError::InvalidConfig(format!(
                "refine_iters must be at least 20, got {refine_iters}"
            )));
        }
        Ok(Self { grid, refine_iters })
    }

    pub fn with_grid(self, grid: usize) -> Result<Self> {
        Self::new(grid, self.refine_iters)
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn refine_iters(&self) -> usize {
        self.refine_iters
    }
}

/// Result of a boundary search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleOptimum {
    pub w: ComplexPoint,
    pub phi: f64,
    /// Objective at `phi` after refinement.
    pub value: f64,
    /// Best objective seen on the raw grid.
    pub grid_value: f64,
    /// Final golden-section bracket width, radians.
    pub bracket: f64,
}

/// Golden-section minimization of `f` on `[lo, hi]`.
fn golden_min(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let (x, fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    (x, fx, hi - lo)
}

/// Minimizes `f` over the samples `phis`, then refines every local minimum
/// cell. `periodic` treats the samples as a closed loop.
fn grid_minimize(f: impl Fn(f64) -> f64, phis: &[f64], periodic: bool, iters: usize) -> Option<(f64, f64, f64, f64)> {
    let n = phis.len();
    let vals: Vec<f64> = phis.iter().map(|p| f(*p)).collect();
    let grid_value = vals.iter().copied().fold(f64::INFINITY, f64::min);
    if !grid_value.is_finite() {
        return None;
    }
    let step = if n > 1 { phis[1] - phis[0] } else { 0.0 };
    let mut best: Option<(f64, f64, f64)> = None;
    for k in 0..n {
        let left = if k > 0 {
            Some(vals[k - 1])
        } else if periodic {
            Some(vals[n - 1])
        } else {
            None
        };
        let right = if k + 1 < n {
            Some(vals[k + 1])
        } else if periodic {
            Some(vals[0])
        } else {
            None
        };
        if !vals[k].is_finite() || left.is_some_and(|v| v < vals[k]) || right.is_some_and(|v| v < vals[k]) {
            continue;
        }
        let lo = if left.is_some() { phis[k] - step } else { phis[k] };
        let hi = if right.is_some() { phis[k] + step } else { phis[k] };
        let (x, fx, width) = if hi > lo {
            golden_min(&f, lo, hi, iters)
        } else {
            (phis[k], vals[k], 0.0)
        };
        // refinement never reports worse than the sample it started from
        let cand = if fx <= vals[k] {
            (x, fx, width)
        } else {
            (phis[k], vals[k], width)
        };
        if best.is_none_or(|b| cand.1 < b.1) {
            best = Some(cand);
        }
    }
    best.map(|(x, fx, w)| (x, fx, grid_value, w))
}

fn circle_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| -PI + 2.0 * PI * k as f64 / n as f64).collect()
}

fn optimum(phi: f64, value: f64, grid_value: f64, bracket: f64) -> OracleOptimum {
    OracleOptimum {
        w: unit_from_angle(phi),
        phi,
        value,
        grid_value,
        bracket,
    }
}

/// Direct maximization of `|z1 − z2| / (|z1 − e^{iφ}| + |e^{iφ} − z2|)`.
/// `value` and `grid_value` are ratios (larger is better).
pub fn oracle_smetric(z1: ComplexPoint, z2: ComplexPoint, cfg: &OracleConfig) -> Result<OracleOptimum> {
    for (z, which) in [(z1, "z1"), (z2, "z2")] {
        if z.norm() >= 1.0 {
            return Err(CatoptricError::PointOutsideDomain {
                which,
                modulus: z.norm(),
            });
        }
    }
    let d = z1.dist(z2);
    if d < COINCIDENCE_EPS {
        return Err(CatoptricError::CoincidentPoints);
    }
    let neg_ratio = |phi: f64| {
        let w = unit_from_angle(phi);
        -d / (z1.dist(w) + w.dist(z2))
    };
    let (phi, v, g, width) = grid_minimize(neg_ratio, &circle_grid(cfg.grid), true, cfg.refine_iters)
        .expect("ratio is finite on the circle");
    Ok(optimum(phi, -v, -g, width))
}

/// Minimizes the plane-wave functional `|f − e^{iφ}| − cos φ` over the arc
/// that is both lit (`|φ| ≤ π/2`) and visible from the observer
/// (`|φ − θ| ≤ acos(1/r)`).
pub fn oracle_infinity_path(obs: &ObserverPolar, cfg: &OracleConfig) -> Result<OracleOptimum> {
    let (r, theta) = (obs.r(), obs.theta());
    if theta.abs() > PI / 2.0 {
        return Err(CatoptricError::InvalidConfig(format!(
            "infinity oracle needs |theta| <= pi/2, got {theta}"
        )));
    }
    let half = (1.0 / r).acos();
    let lo = (theta - half).max(-PI / 2.0);
    let hi = (theta + half).min(PI / 2.0);
    let n = cfg.grid;
    let phis: Vec<f64> = (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect();
    let f = obs.point();
    let defect = |phi: f64| {
        let w = unit_from_angle(phi);
        f.dist(w) - phi.cos()
    };
    let (phi, v, g, width) =
        grid_minimize(defect, &phis, false, cfg.refine_iters).expect("defect is finite on the arc");
    Ok(optimum(phi, v, g, width))
}

/// Exterior oracle: minimum focal sum over circle points seen by both
/// endpoints. `w` is seen from `z` (with `|z| > 1`) iff `Re(conj(w)·z) ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExteriorOptimum {
    pub optimum: OracleOptimum,
    /// The minimizer sits at the edge of the visible arc rather than at an
    /// interior stationary point.
    pub at_edge: bool,
}

pub fn oracle_exterior(z1: ComplexPoint, z2: ComplexPoint, cfg: &OracleConfig) -> Result<Option<ExteriorOptimum>> {
    for (z, which) in [(z1, "z1"), (z2, "z2")] {
        if z.norm() <= 1.0 {
            return Err(CatoptricError::PointInsideDomain {
                which,
                modulus: z.norm(),
            });
        }
    }
    let seen = |w: ComplexPoint| {
        let ok = |z: ComplexPoint| (w.conj() * z).re() >= 1.0;
        ok(z1) && ok(z2)
    };
    let focal = |phi: f64| {
        let w = unit_from_angle(phi);
        if seen(w) {
            z1.dist(w) + z2.dist(w)
        } else {
            f64::INFINITY
        }
    };
    let phis = circle_grid(cfg.grid);
    let Some((phi, v, g, width)) = grid_minimize(focal, &phis, true, cfg.refine_iters) else {
        return Ok(None);
    };
    let step = 2.0 * PI / cfg.grid as f64;
    let at_edge = [-2.0, 2.0].iter().any(|k| !seen(unit_from_angle(phi + k * step)));
    Ok(Some(ExteriorOptimum {
        optimum: optimum(phi, v, g, width),
        at_edge,
    }))
}

/// Determinant by Gaussian elimination with partial pivoting.
fn determinant<const N: usize>(mut m: [[f64; N]; N]) -> f64 {
    let mut det = 1.0;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .expect("non-empty range");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let pivot_row = m[col];
        for row in m.iter_mut().skip(col + 1) {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= factor * p;
            }
        }
    }
    det
}

/// Discriminant of `a·x⁴ + b·x³ + c·x² + d·x + e` as `Res(p, p′)/a`.
///
/// For degree 4 the usual sign factor `(−1)^{n(n−1)/2}` is +1, and on
/// `x⁴ − 1` this gives −256, the same as the expanded invariant; the
/// calibration constant is therefore 1.
pub fn oracle_quartic_discriminant(a: f64, b: f64, c: f64, d: f64, e: f64) -> Result<f64> {
    if a == 0.0 {
        return Err(CatoptricError::DegenerateLeadingCoefficient);
    }
    let p = [a, b, c, d, e];
    let dp = [4.0 * a, 3.0 * b, 2.0 * c, d];
    let mut m = [[0.0; 7]; 7];
    for row in 0..3 {
        m[row][row..row + 5].copy_from_slice(&p);
    }
    for row in 0..4 {
        m[3 + row][row..row + 4].copy_from_slice(&dp);
    }
    Ok(determinant(m) / a)
}
