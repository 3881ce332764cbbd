use std::f64::consts::PI;
use std::path::Path;

use catoptrix_core::geometry::{
    directrix as directrix_line, envelope_implicit, mirror_point, tangency_point, EnvelopeCurve,
};
use catoptrix_core::infinity::{
    circle_theorem_report, incidence_angles, infinity_reflection, mobius_real_image, ObserverPolar,
};
use catoptrix_core::interior::{ellipse_params, exterior_reflection, minimizing_root, ReflectionResult};
use catoptrix_core::numeric::principal_angle;
use catoptrix_core::oracle::{oracle_infinity_path, oracle_quartic_discriminant, oracle_smetric, OracleConfig};
use catoptrix_core::quartic::{infinity_real_coeffs, real_quartic_invariants, RealQuartic, RootSet};
use catoptrix_core::{unit_from_angle, CatoptricError, ComplexPoint, Tolerances};
use serde_json::{json, Value};

use crate::output::{csv_real, num, nums, point, points, CliError, Record};
use crate::svg::Figure;
use crate::{DirectrixArgs, EnvelopeArgs, InfinityArgs, InteriorArgs, OracleCommand};

type Outcome = Result<(Value, Value), CliError>;

fn angle(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

fn path_value(p: &Option<impl AsRef<Path>>) -> Value {
    match p {
        Some(p) => json!(p.as_ref().display().to_string()),
        None => Value::Null,
    }
}

fn root_diagnostics(roots: &RootSet) -> Value {
    json!({
        "root_residuals": nums(&roots.residuals),
        "polish_iterations": roots.polish_iterations,
        "min_separation": num(roots.min_separation),
        "near_double": roots.near_double,
        "missing_at_infinity": roots.missing_at_infinity,
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

pub fn interior(args: &InteriorArgs) -> Record {
    let inputs = json!({
        "z1": point(args.z1),
        "z2": point(args.z2),
        "exterior": args.exterior,
        "svg": path_value(&args.svg),
    });
    let outcome = if args.exterior {
        exterior_outcome(args)
    } else {
        interior_outcome(args)
    };
    Record::new("interior", inputs, outcome)
}

fn reflection_diagnostics(res: &ReflectionResult) -> Value {
    merge(
        json!({
            "reflection_residual": num(res.reflection_residual),
            "on_circle_mask": res.on_circle_mask,
            "admissible_mask": res.admissible_mask,
            "tie_count": res.ties.len(),
        }),
        root_diagnostics(&res.candidates),
    )
}

fn interior_outcome(args: &InteriorArgs) -> Outcome {
    let (z1, z2) = (args.z1, args.z2);
    let res = minimizing_root(z1, z2, &Tolerances::default())?;
    let ell = ellipse_params(z1, z2)?;
    if let Some(path) = &args.svg {
        let mut fig = Figure::new(1.25);
        fig.circle(ComplexPoint::ZERO, 1.0, "black");
        let centre = (z1 + z2) / 2.0;
        let tilt = unit_from_angle((z2 - z1).arg());
        let outline: Vec<ComplexPoint> = (0..=360)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 360.0;
                let local = ComplexPoint::new(ell.major * t.cos(), ell.minor * t.sin()).expect("finite");
                centre + tilt * local
            })
            .collect();
        fig.polyline(&outline, "#1f77b4")
            .segment(z1, res.w, "#d62728", false)
            .segment(res.w, z2, "#d62728", false)
            .dot(z1, "black", "z1")
            .dot(z2, "black", "z2")
            .dot(res.w, "#d62728", "w");
        fig.save(path)?;
    }
    let results = json!({
        "w": point(res.w),
        "s": num(res.s_value),
        "focal_sum": num(res.focal_sum),
        "ellipse": {
            "focal_sum": num(ell.focal_sum),
            "major": num(ell.major),
            "minor": num(ell.minor),
            "eccentricity": num(ell.eccentricity),
        },
        "ties": points(&res.ties),
        "candidates": points(&res.candidates.roots),
    });
    Ok((results, reflection_diagnostics(&res)))
}

fn exterior_outcome(args: &InteriorArgs) -> Outcome {
    let (z1, z2) = (args.z1, args.z2);
    let res = exterior_reflection(z1, z2, &Tolerances::default())?;
    if let Some(path) = &args.svg {
        let half = 1.1 * z1.norm().max(z2.norm());
        let mut fig = Figure::new(half);
        fig.circle(ComplexPoint::ZERO, 1.0, "black");
        if let Some(r) = &res {
            fig.segment(z1, r.w, "#d62728", false)
                .segment(r.w, z2, "#d62728", false)
                .dot(r.w, "#d62728", "w");
        }
        fig.dot(z1, "black", "z1").dot(z2, "black", "z2");
        fig.save(path)?;
    }
    Ok(match res {
        Some(r) => (
            json!({
                "w": point(r.w),
                "focal_sum": num(r.focal_sum),
                "ties": points(&r.ties),
                "candidates": points(&r.candidates.roots),
            }),
            merge(json!({ "no_solution": false }), reflection_diagnostics(&r)),
        ),
        None => (
            json!({ "w": Value::Null, "focal_sum": Value::Null }),
            json!({ "no_solution": true }),
        ),
    })
}

pub fn infinity(args: &InfinityArgs) -> Record {
    let theta = angle(args.theta, args.degrees);
    let inputs = json!({
        "r": num(args.r),
        "theta": num(theta),
        "verify": args.verify,
        "svg": path_value(&args.svg),
    });
    Record::new("infinity", inputs, infinity_outcome(args, theta))
}

fn infinity_outcome(args: &InfinityArgs, theta: f64) -> Outcome {
    let tol = Tolerances::default();
    let obs = ObserverPolar::new(args.r, theta)?;
    let res = infinity_reflection(&obs, &tol)?;
    let f = obs.point();
    let (incidence, reflection) = incidence_angles(f, res.w);
    let mut results = json!({
        "w": point(res.w),
        "phi": num(res.phi),
        "path_defect": num(res.path_defect),
        "degenerate_axis": res.degenerate_axis,
        "all_roots": points(&res.all_roots.roots),
        "mobius_images": res.mobius_images.map_or(Value::Null, |m| nums(&m)),
        "incidence_angles": nums(&[incidence, reflection]),
    });
    if args.verify {
        let report = circle_theorem_report(&obs, &tol)?;
        let images = mobius_real_image(&report.roots)?;
        results["verify"] = json!({
            "delta": num(report.nature.delta),
            "p": num(report.nature.p),
            "d": num(report.nature.d),
            "classification": format!("{:?}", report.nature.classification),
            "all_on_circle": report.all_on_circle,
            "holds": report.holds(),
            "real_images": nums(&images),
        });
    }
    if let Some(path) = &args.svg {
        infinity_figure(f, &res.all_roots.roots, res.w, res.path_defect).save(path)?;
    }
    let diagnostics = merge(
        json!({
            "raw_moduli": nums(&res.raw_moduli),
            "admissible_mask": res.admissible_mask,
            "reality_residual": num(res.reality_residual),
        }),
        root_diagnostics(&res.all_roots),
    );
    Ok((results, diagnostics))
}

/// Circle, the four roots, the incoming and reflected rays, and the
/// parabola with focus `f` through `w` whose axis is the ray direction.
fn infinity_figure(f: ComplexPoint, roots: &[ComplexPoint], w: ComplexPoint, defect: f64) -> Figure {
    let half = 1.15 * f.norm().max(1.0) + 0.5;
    let mut fig = Figure::new(half);
    fig.circle(ComplexPoint::ZERO, 1.0, "black");
    // points with |z − f| = x + defect
    let denom = 2.0 * (f.re() + defect);
    if denom > 1e-12 {
        let curve: Vec<ComplexPoint> = (0..=400)
            .filter_map(|k| {
                let y = -half + 2.0 * half * k as f64 / 400.0;
                let x = (f.re().powi(2) + (y - f.im()).powi(2) - defect * defect) / denom;
                ComplexPoint::new(x, y).ok().filter(|p| p.re() < half)
            })
            .collect();
        fig.polyline(&curve, "#2ca02c");
    }
    let far = ComplexPoint::new(half, w.im()).expect("finite");
    fig.segment(far, w, "#ff7f0e", false).segment(w, f, "#d62728", false);
    for (k, r) in roots.iter().enumerate() {
        fig.dot(*r, "#7f7f7f", &format!("w{}", k + 1));
    }
    fig.dot(w, "#d62728", "").dot(f, "black", "f");
    fig
}

pub fn envelope(args: &EnvelopeArgs) -> Record {
    let inputs = json!({
        "a": num(args.a),
        "samples": args.samples,
        "csv": path_value(&args.csv),
        "svg": path_value(&args.svg),
        "directrices": args.directrices,
    });
    let mut stdout = None;
    let outcome = envelope_outcome(args, &mut stdout);
    Record::new("envelope", inputs, outcome).with_raw_stdout(stdout)
}

fn envelope_outcome(args: &EnvelopeArgs, stdout: &mut Option<String>) -> Outcome {
    let curve = EnvelopeCurve::new(args.a)?;
    if args.samples == 0 {
        return Err(CatoptricError::InvalidConfig("samples must be positive".into()).into());
    }
    let samples = curve.sample(args.samples);
    let rows: Vec<(f64, ComplexPoint, f64)> = samples.iter().map(|(t, z)| (*t, *z, curve.implicit(*z))).collect();

    if let Some(path) = &args.csv {
        let mut text = String::from("theta,x,y,implicit_residual\n");
        for (t, z, res) in &rows {
            text.push_str(&format!(
                "{},{},{},{}\n",
                csv_real(*t),
                csv_real(z.re()),
                csv_real(z.im()),
                csv_real(*res)
            ));
        }
        if path.as_os_str() == "-" {
            *stdout = Some(text);
        } else {
            std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
        }
    }

    if let Some(path) = &args.svg {
        let a = curve.a();
        let mut fig = Figure::new(a + 2.5);
        fig.circle(ComplexPoint::ZERO, 1.0, "black");
        for k in 0..args.directrices {
            let w = unit_from_angle(-PI + 2.0 * PI * (k as f64 + 0.5) / args.directrices as f64);
            let line = directrix_line(a, w)?.to_real_form()?;
            fig.line(line.a, line.b, line.c, "#c7c7c7");
        }
        let fine = curve.sample(args.samples.max(720));
        let outer: Vec<ComplexPoint> = fine.iter().map(|(_, z)| *z).collect();
        let loop_pts: Vec<ComplexPoint> = fine
            .iter()
            .filter(|(t, _)| curve.on_teardrop(*t))
            .map(|(_, z)| *z)
            .collect();
        fig.polyline(&outer, "#1f77b4").polyline(&loop_pts, "#d62728");
        fig.dot(ComplexPoint::real(a)?, "black", "a");
        fig.save(path)?;
    }

    let max_res = rows.iter().map(|r| r.2.abs()).fold(0.0, f64::max);
    let results = json!({
        "phi_max": num(curve.phi_max()),
        "double_point": point(ComplexPoint::real(curve.a())?),
        "points": rows.iter().map(|(t, z, res)| nums(&[*t, z.re(), z.im(), *res])).collect::<Vec<_>>(),
    });
    let diagnostics = json!({
        "max_implicit_residual": num(max_res),
        "double_point_residual": num(envelope_implicit(curve.a(), ComplexPoint::real(curve.a())?)?),
    });
    Ok((results, diagnostics))
}

pub fn directrix(args: &DirectrixArgs) -> Record {
    let phi = angle(args.phi, args.degrees);
    let inputs = json!({ "a": num(args.a), "phi": num(phi) });
    Record::new("directrix", inputs, directrix_outcome(args.a, phi))
}

fn directrix_outcome(a: f64, phi: f64) -> Outcome {
    let w = unit_from_angle(phi);
    let line = directrix_line(a, w)?;
    let n = line.normalized()?;
    let real = n.to_real_form()?;
    let star = mirror_point(a, w)?;
    let t = tangency_point(a, w)?;
    let to_line = line.distance(w)?;
    let to_focus = w.dist(ComplexPoint::real(a)?);
    let results = json!({
        "w": point(w),
        "line": {
            "alpha": point(line.alpha),
            "beta": point(line.beta),
            "gamma": point(line.gamma),
            "normalized": {
                "alpha": point(n.alpha),
                "beta": point(n.beta),
                "gamma": point(n.gamma),
            },
            "real": { "a": num(real.a), "b": num(real.b), "c": num(real.c) },
        },
        "mirror_point": point(star),
        "tangency": point(t),
        "focus_directrix": {
            "distance_to_directrix": num(to_line),
            "distance_to_focus": num(to_focus),
        },
    });
    let diagnostics = json!({
        "focus_directrix_gap": num(to_line - to_focus),
        "tangency_line_residual": num(line.residual(t)),
        "tangency_envelope_residual": num(envelope_implicit(a, t)?),
    });
    Ok((results, diagnostics))
}

pub fn oracle(cmd: &OracleCommand) -> Record {
    match cmd {
        OracleCommand::Smetric {
            z1,
            z2,
            grid,
            refine_iters,
        } => {
            let inputs = json!({
                "z1": point(*z1),
                "z2": point(*z2),
                "grid": grid,
                "refine_iters": refine_iters,
            });
            Record::new(
                "oracle smetric",
                inputs,
                oracle_smetric_outcome(*z1, *z2, *grid, *refine_iters),
            )
        }
        OracleCommand::Infinity {
            r,
            theta,
            degrees,
            grid,
            refine_iters,
        } => {
            let theta = angle(*theta, *degrees);
            let inputs = json!({
                "r": num(*r),
                "theta": num(theta),
                "grid": grid,
                "refine_iters": refine_iters,
            });
            Record::new(
                "oracle infinity",
                inputs,
                oracle_infinity_outcome(*r, theta, *grid, *refine_iters),
            )
        }
        OracleCommand::Discriminant {
            coeffs,
            r,
            theta,
            degrees,
        } => {
            let theta = theta.map(|t| angle(t, *degrees));
            let inputs = json!({
                "coeffs": coeffs.map_or(Value::Null, |c| nums(&c)),
                "r": r.map_or(Value::Null, num),
                "theta": theta.map_or(Value::Null, num),
            });
            Record::new(
                "oracle discriminant",
                inputs,
                oracle_discriminant_outcome(*coeffs, *r, theta),
            )
        }
    }
}

fn nearest_angle(phi: f64, candidates: &[ComplexPoint]) -> f64 {
    candidates
        .iter()
        .map(|w| principal_angle(w.arg() - phi).abs())
        .fold(f64::INFINITY, f64::min)
}

fn oracle_smetric_outcome(z1: ComplexPoint, z2: ComplexPoint, grid: usize, iters: usize) -> Outcome {
    let cfg = OracleConfig::new(grid, iters)?;
    let o = oracle_smetric(z1, z2, &cfg)?;
    let closed = minimizing_root(z1, z2, &Tolerances::default())?;
    let results = json!({
        "w": point(o.w),
        "phi": num(o.phi),
        "s": num(o.value),
        "closed_form": { "w": point(closed.w), "s": num(closed.s_value) },
        "deviation": {
            "angle": num(nearest_angle(o.phi, &closed.ties)),
            "s": num((o.value - closed.s_value).abs()),
        },
    });
    let diagnostics = json!({ "grid_s": num(o.grid_value), "bracket": num(o.bracket) });
    Ok((results, diagnostics))
}

fn oracle_infinity_outcome(r: f64, theta: f64, grid: usize, iters: usize) -> Outcome {
    let cfg = OracleConfig::new(grid, iters)?;
    let obs = ObserverPolar::new(r, theta)?;
    let o = oracle_infinity_path(&obs, &cfg)?;
    let closed = infinity_reflection(&obs, &Tolerances::default())?;
    let results = json!({
        "w": point(o.w),
        "phi": num(o.phi),
        "path_defect": num(o.value),
        "closed_form": { "w": point(closed.w), "phi": num(closed.phi), "path_defect": num(closed.path_defect) },
        "deviation": {
            "angle": num(principal_angle(o.phi - closed.phi).abs()),
            "path_defect": num((o.value - closed.path_defect).abs()),
        },
    });
    let f = obs.point();
    let diagnostics = json!({
        "grid_path_defect": num(o.grid_value),
        "bracket": num(o.bracket),
        "reality_residual": num(((f - o.w) / (o.w * o.w)).im().abs()),
    });
    Ok((results, diagnostics))
}

fn oracle_discriminant_outcome(coeffs: Option<[f64; 5]>, r: Option<f64>, theta: Option<f64>) -> Outcome {
    let q = match (coeffs, r, theta) {
        (Some(c), _, _) => RealQuartic::new(c[0], c[1], c[2], c[3], c[4]),
        (None, Some(r), Some(t)) => infinity_real_coeffs(r, t)?,
        _ => {
            return Err(CatoptricError::InvalidConfig("give --coeffs or both --r and --theta".into()).into());
        }
    };
    let [a, b, c, d, e] = q.to_array();
    let resultant = oracle_quartic_discriminant(a, b, c, d, e)?;
    let rees = real_quartic_invariants(&q)?;
    let results = json!({
        "coefficients": nums(&q.to_array()),
        "resultant_delta": num(resultant),
        "delta": num(rees.delta),
        "p": num(rees.p),
        "d": num(rees.d),
        "classification": format!("{:?}", rees.classification),
        "sign_agreement": resultant.signum() == rees.delta.signum(),
    });
    let diagnostics = json!({
        "relative_gap": num((resultant - rees.delta).abs() / rees.delta.abs().max(f64::MIN_POSITIVE)),
    });
    Ok((results, diagnostics))
}
