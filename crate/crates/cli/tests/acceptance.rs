//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Run with `cargo test -p catoptrix --test acceptance`.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use catoptrix_core::geometry::{directrix, envelope_implicit, envelope_param, limacon_residual, tangency_point};
use catoptrix_core::infinity::{
    circle_theorem_report, infinity_quartic_coeffs, infinity_reflection, mobius_real_image, ObserverPolar,
};
use catoptrix_core::interior::{ellipse_params, interior_quartic_coeffs, minimizing_root, s_metric};
use catoptrix_core::numeric::principal_angle;
use catoptrix_core::oracle::{oracle_infinity_path, oracle_smetric, OracleConfig};
use catoptrix_core::quartic::{infinity_real_coeffs, solve_quartic, vieta_sums, QuarticCoeffs, RootNature};
use catoptrix_core::{unit_from_angle, ComplexPoint, Tolerances};
use common::{json, matches_golden, pair, run, EXAMPLES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const UNIT_MODULUS_TOL: f64 = 1e-7;
const MOBIUS_TOL: f64 = 1e-7;
const REALITY_TOL: f64 = 1e-9;
const CLOSED_FORM_TOL: f64 = 1e-12;
const ECCENTRICITY_TOL: f64 = 1e-12;
const ORACLE_ANGLE_TOL: f64 = 1e-6;
const IDENTITY_TOL: f64 = 1e-9;
const HAND_VALUE_TOL: f64 = 1e-12;
const VIETA_TOL: f64 = 1e-8;

const FOCI: [f64; 4] = [1.5, 2.0, 3.0, 10.0];

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    failures: usize,
    total: usize,
    detail: String,
}

impl Verdict {
    fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pt(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im).unwrap()
}

/// r ∈ (1, 100], θ ∈ (0, π/2].
fn first_quadrant_observer(r: &mut impl Rng) -> ObserverPolar {
    ObserverPolar::new(100.0 - r.gen_range(0.0..99.0), FRAC_PI_2 - r.gen_range(0.0..FRAC_PI_2)).unwrap()
}

/// r ∈ (1, 100], θ ∈ [−π/2, π/2].
fn lit_observer(r: &mut impl Rng) -> ObserverPolar {
    ObserverPolar::new(100.0 - r.gen_range(0.0..99.0), r.gen_range(-FRAC_PI_2..=FRAC_PI_2)).unwrap()
}

fn interior_point(r: &mut impl Rng) -> ComplexPoint {
    let rho = 0.99 * r.gen_range(0.0f64..1.0).sqrt();
    let phi = r.gen_range(-PI..PI);
    pt(rho * phi.cos(), rho * phi.sin())
}

fn unit_circle_theorem() -> Verdict {
    let tol = Tolerances::default();
    let mut r = rng(101);
    let (mut failures, mut worst) = (0, 0.0f64);
    for _ in 0..10_000 {
        let obs = first_quadrant_observer(&mut r);
        let ok = match circle_theorem_report(&obs, &tol) {
            Ok(rep) => {
                let drift = rep
                    .roots
                    .roots
                    .iter()
                    .map(|w| (w.norm() - 1.0).abs())
                    .fold(0.0, f64::max);
                worst = worst.max(drift);
                drift <= UNIT_MODULUS_TOL && rep.nature.classification == RootNature::FourRealDistinct
            }
            Err(_) => false,
        };
        failures += usize::from(!ok);
    }
    Verdict {
        failures,
        total: 10_000,
        detail: format!("max ||w|-1| = {worst:.2e}"),
    }
}

fn mobius_consistency() -> Verdict {
    let tol = Tolerances::default();
    let mut r = rng(102);
    let (mut failures, mut worst) = (0, 0.0f64);
    for _ in 0..1000 {
        let obs = first_quadrant_observer(&mut r);
        let roots = solve_quartic(&infinity_quartic_coeffs(&obs), &tol).unwrap();
        let mut images = mobius_real_image(&roots).unwrap();
        let real = infinity_real_coeffs(obs.r(), obs.theta())
            .unwrap()
            .to_complex()
            .unwrap();
        let mut zs: Vec<f64> = solve_quartic(&real, &tol)
            .unwrap()
            .roots
            .iter()
            .map(|z| z.re())
            .collect();
        images.sort_by(f64::total_cmp);
        zs.sort_by(f64::total_cmp);
        let gap = images.iter().zip(&zs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        worst = worst.max(gap);
        failures += usize::from(gap > MOBIUS_TOL);
    }
    Verdict {
        failures,
        total: 1000,
        detail: format!("max |image - root| = {worst:.2e}"),
    }
}

fn reflection_reality() -> Verdict {
    let tol = Tolerances::default();
    let mut r = rng(103);
    let (mut failures, mut worst_inf, mut worst_int) = (0, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let obs = lit_observer(&mut r);
        let res = infinity_reflection(&obs, &tol).unwrap();
        worst_inf = worst_inf.max(res.reality_residual);
        failures += usize::from(res.reality_residual > REALITY_TOL);

        let (z1, z2) = (interior_point(&mut r), interior_point(&mut r));
        let res = minimizing_root(z1, z2, &tol).unwrap();
        worst_int = worst_int.max(res.reflection_residual);
        failures += usize::from(res.reflection_residual > REALITY_TOL);
    }
    Verdict {
        failures,
        total: 2000,
        detail: format!("max residual: plane wave {worst_inf:.2e}, interior {worst_int:.2e}"),
    }
}

fn closed_symmetric_forms() -> Verdict {
    let (mut sym_fail, mut col_fail, mut sym_worst, mut col_worst) = (0, 0, 0.0f64, 0.0f64);
    for k in 1..=100 {
        let t = k as f64 / 101.0;
        let s = s_metric(pt(t, 0.0), pt(-t, 0.0)).unwrap();
        let err = (s - t / (1.0 + t * t).sqrt()).abs();
        sym_worst = sym_worst.max(err);
        sym_fail += usize::from(err > CLOSED_FORM_TOL);

        let s = s_metric(pt(0.0, 0.0), pt(t, 0.0)).unwrap();
        let err = (s - t / (2.0 - t)).abs();
        col_worst = col_worst.max(err);
        col_fail += usize::from(err > CLOSED_FORM_TOL);
    }
    Verdict {
        failures: sym_fail + col_fail,
        total: 200,
        detail: format!(
            "s(t,-t) = t/sqrt(1+t^2): {sym_fail}/100 off (max err {sym_worst:.2e}); \
             s(0,x) = x/(2-x): {col_fail}/100 off (max err {col_worst:.2e})"
        ),
    }
}

fn eccentricity_identity() -> Verdict {
    let mut r = rng(105);
    let (mut failures, mut worst) = (0, 0.0f64);
    for _ in 0..1000 {
        let (z1, z2) = (interior_point(&mut r), interior_point(&mut r));
        let e = ellipse_params(z1, z2).unwrap().eccentricity;
        let gap = (e - s_metric(z1, z2).unwrap()).abs();
        worst = worst.max(gap);
        failures += usize::from(gap > ECCENTRICITY_TOL);
    }
    Verdict {
        failures,
        total: 1000,
        detail: format!("max |e - s| = {worst:.2e}"),
    }
}

fn oracle_agreement() -> Verdict {
    let tol = Tolerances::default();
    let cfg = OracleConfig::default();
    let mut r = rng(106);
    let (mut failures, mut worst_int, mut worst_inf) = (0, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let (z1, z2) = (interior_point(&mut r), interior_point(&mut r));
        let lib = minimizing_root(z1, z2, &tol).unwrap();
        let o = oracle_smetric(z1, z2, &cfg).unwrap();
        let gap = lib
            .ties
            .iter()
            .map(|w| principal_angle(w.arg() - o.phi).abs())
            .fold(f64::INFINITY, f64::min);
        worst_int = worst_int.max(gap);
        failures += usize::from(gap > ORACLE_ANGLE_TOL);

        let obs = lit_observer(&mut r);
        let lib = infinity_reflection(&obs, &tol).unwrap();
        let o = oracle_infinity_path(&obs, &cfg).unwrap();
        let gap = principal_angle(lib.phi - o.phi).abs();
        worst_inf = worst_inf.max(gap);
        failures += usize::from(gap > ORACLE_ANGLE_TOL);
    }
    Verdict {
        failures,
        total: 2000,
        detail: format!("max angle gap: interior {worst_int:.2e}, plane wave {worst_inf:.2e}"),
    }
}

fn envelope_identities() -> Verdict {
    let mut failures = 0;
    let mut total = 0;
    let mut worst = [0.0f64; 4];
    let mut check = |slot: usize, value: f64, failures: &mut usize| {
        worst[slot] = worst[slot].max(value);
        *failures += usize::from(value > IDENTITY_TOL);
    };
    for &a in &FOCI {
        let focus = pt(a, 0.0);
        for k in 0..1000 {
            let phi = -PI + 2.0 * PI * (k as f64 + 0.5) / 1000.0;
            let w = unit_from_angle(phi);
            let line = directrix(a, w).unwrap();
            check(0, (line.distance(w).unwrap() - w.dist(focus)).abs(), &mut failures);
            check(
                1,
                envelope_implicit(a, envelope_param(a, phi).unwrap()).unwrap().abs(),
                &mut failures,
            );
            check(2, line.residual(tangency_point(a, w).unwrap()), &mut failures);
            total += 3;
        }
        let lim = a + 3.0;
        for i in 0..100 {
            for j in 0..100 {
                let x = -lim + 2.0 * lim * i as f64 / 99.0;
                let y = -lim + 2.0 * lim * j as f64 / 99.0;
                let e = envelope_implicit(a, pt(x, y)).unwrap();
                let l = limacon_residual(a, x, y).unwrap();
                check(3, (e - l).abs(), &mut failures);
                total += 1;
            }
        }
    }

    // hand values: (a=2, w=1) gives Re z = 0, (a=2, w=i) gives 2x + y = 6
    let s5 = 5f64.sqrt();
    let hand = [(0.0, [1.0, 0.0, 0.0]), (FRAC_PI_2, [2.0 / s5, 1.0 / s5, -6.0 / s5])];
    let mut hand_worst = 0.0f64;
    for (phi, expect) in hand {
        let real = directrix(2.0, unit_from_angle(phi)).unwrap().to_real_form().unwrap();
        for (got, want) in [real.a, real.b, real.c].iter().zip(expect) {
            hand_worst = hand_worst.max((got - want).abs());
        }
        total += 1;
        failures += usize::from(hand_worst > HAND_VALUE_TOL);
    }
    Verdict {
        failures,
        total,
        detail: format!(
            "max: focus-directrix {:.2e}, param-on-implicit {:.2e}, tangency {:.2e}, limacon {:.2e}, hand {:.2e}",
            worst[0], worst[1], worst[2], worst[3], hand_worst
        ),
    }
}

fn vieta_closures() -> Verdict {
    let tol = Tolerances::default();
    let mut r = rng(108);
    let (mut failures, mut worst, mut worst_prod) = (0, 0.0f64, 0.0f64);
    let closure = |q: &QuarticCoeffs, roots: &[ComplexPoint]| {
        let [e1, e2, e3, e4] = vieta_sums(roots).unwrap();
        [(-e1, q.c3), (e2, q.c2), (-e3, q.c1), (e4, q.c0)]
            .iter()
            .map(|(got, c)| {
                let want = *c / q.c4;
                got.dist(want) / want.norm().max(1.0)
            })
            .fold(0.0, f64::max)
    };
    for _ in 0..1000 {
        let (z1, z2) = (interior_point(&mut r), interior_point(&mut r));
        let q = interior_quartic_coeffs(z1, z2);
        let gap = closure(&q, &solve_quartic(&q, &tol).unwrap().roots);
        worst = worst.max(gap);
        failures += usize::from(gap > VIETA_TOL);

        let obs = ObserverPolar::new(100.0 - r.gen_range(0.0..99.0), r.gen_range(-PI..PI)).unwrap();
        let q = infinity_quartic_coeffs(&obs);
        let roots = solve_quartic(&q, &tol).unwrap().roots;
        let gap = closure(&q, &roots);
        worst = worst.max(gap);
        failures += usize::from(gap > VIETA_TOL);

        let e = unit_from_angle(obs.theta());
        let prod = vieta_sums(&roots).unwrap()[3].dist(-(e * e));
        worst_prod = worst_prod.max(prod);
        failures += usize::from(prod > VIETA_TOL);
    }
    Verdict {
        failures,
        total: 3000,
        detail: format!("max relative closure {worst:.2e}, max |w1w2w3w4 + e^(2i theta)| {worst_prod:.2e}"),
    }
}

/// Values stated for the six hand-checkable command lines.
fn stated_values(name: &str, v: &serde_json::Value) -> Result<(), String> {
    let res = &v["results"];
    let near = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs() <= 1e-12 && (a.1 - b.1).abs() <= 1e-12;
    let want = |cond: bool, what: &str| if cond { Ok(()) } else { Err(format!("{name}: {what}")) };
    match name {
        "interior_symmetric" => {
            want(
                pair(&res["w"]) == (0.0, 1.0),
                &format!("w = {:?}, stated [0, 1]", pair(&res["w"])),
            )?;
            want(
                res["s"].as_f64() == Some(0.4472135954999579),
                &format!("s = {}, stated 0.4472135954999579", res["s"]),
            )
        }
        "interior_origin" => {
            want(pair(&res["w"]) == (1.0, 0.0), "w != [1, 0]")?;
            want(res["s"].as_f64() == Some(0.3333333333333333), "s != 0.3333333333333333")
        }
        "infinity_axis" => {
            want(pair(&res["w"]) == (1.0, 0.0), "w != [1, 0]")?;
            want(res["degenerate_axis"] == true, "degenerate_axis != true")
        }
        "envelope_a2_n4" => {
            let rows = res["points"].as_array().ok_or("no points")?;
            let thetas: Vec<f64> = rows.iter().map(|r| r[0].as_f64().unwrap()).collect();
            want(thetas == [-FRAC_PI_2, 0.0, FRAC_PI_2, PI], "theta rows")?;
            for row in rows {
                let t = row[0].as_f64().unwrap();
                let z = envelope_param(2.0, t).unwrap();
                let got = (row[1].as_f64().unwrap(), row[2].as_f64().unwrap());
                want(near(got, (z.re(), z.im())), "point off the parametrization")?;
                want(row[3].as_f64().unwrap().abs() < IDENTITY_TOL, "implicit residual")?;
            }
            want(rows[1] == serde_json::json!([0.0, 0.0, 0.0, 0.0]), "theta = 0 row")?;
            want(
                (res["phi_max"].as_f64().unwrap() - PI / 3.0).abs() <= 1e-15,
                "phi_max != pi/3",
            )
        }
        "directrix_phi0" => {
            let l = &res["line"]["real"];
            want(
                near((l["a"].as_f64().unwrap(), l["b"].as_f64().unwrap()), (1.0, 0.0)) && l["c"].as_f64() == Some(0.0),
                "line is not Re z = 0",
            )?;
            want(pair(&res["mirror_point"]) == (0.0, 0.0), "a* != [0, 0]")?;
            want(pair(&res["tangency"]) == (0.0, 0.0), "tangency != [0, 0]")
        }
        "directrix_phi_half_pi" => {
            let s5 = 5f64.sqrt();
            let l = &res["line"]["real"];
            let (a, b, c) = (
                l["a"].as_f64().unwrap(),
                l["b"].as_f64().unwrap(),
                l["c"].as_f64().unwrap(),
            );
            want(
                near((a, b), (2.0 / s5, 1.0 / s5)) && (c + 6.0 / s5).abs() <= 1e-12,
                "line is not 2x + y = 6",
            )?;
            want(near(pair(&res["mirror_point"]), (2.0, 2.0)), "a* != [2, 2]")?;
            want(near(pair(&res["tangency"]), (2.0, 2.0)), "tangency != [2, 2]")?;
            let fd = &res["focus_directrix"];
            want(
                (fd["distance_to_directrix"].as_f64().unwrap() - s5).abs() <= 1e-12
                    && (fd["distance_to_focus"].as_f64().unwrap() - s5).abs() <= 1e-12,
                "distances != sqrt(5)",
            )
        }
        _ => Err(format!("unknown example {name}")),
    }
}

fn cli_determinism() -> Verdict {
    let mut problems = Vec::new();
    for (name, args) in EXAMPLES {
        let (a, b) = (run(args), run(args));
        if a.code != 0 || a.stdout != b.stdout {
            problems.push(format!("{name}: exit {} or nondeterministic", a.code));
            continue;
        }
        if let Err(e) = matches_golden(name, "json", &a.stdout) {
            problems.push(e);
        }
        if let Err(e) = stated_values(name, &json(&a.stdout)) {
            problems.push(e);
        }
    }
    Verdict {
        failures: problems.len(),
        total: EXAMPLES.len(),
        detail: if problems.is_empty() {
            "all goldens byte-identical with stated values".into()
        } else {
            problems.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("unit-circle theorem", unit_circle_theorem),
        ("Mobius consistency", mobius_consistency),
        ("reflection-law reality", reflection_reality),
        ("closed symmetric forms", closed_symmetric_forms),
        ("eccentricity identity", eccentricity_identity),
        ("oracle agreement", oracle_agreement),
        ("envelope identities", envelope_identities),
        ("Vieta closures", vieta_closures),
        ("CLI determinism", cli_determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = check();
        let tag = if v.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {tag} {name} [{} of {} checks failed] {} ({:.1}s)",
            k + 1,
            v.failures,
            v.total,
            v.detail,
            t.elapsed().as_secs_f64()
        );
        failed += usize::from(!v.passed());
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
