//! Acceptance criteria 1 to 10. Each test prints one line
//! `criterion N: PASS|FAIL ...` with the measured quantity and runtime, then
//! asserts. Tolerances and runtime budgets are pinned below.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use morera_core::analysis::{
    validate_families, verdict, Classification, FamilyConfig, TheoremConfig,
};
use morera_core::expr::{eval, parse, Expr};
use morera_core::extension::{analyze_circle, CircleAnalysis};
use morera_core::fiber::{fiber_curve, fiber_integral, region_contains, FiberField, FiberOptions};
use morera_core::geometry::{pencil_circle, pencil_param, tangent_circle, Circle, Complex};
use morera_core::semiquadric::{family_intersection_point, quadrics_intersect, Semiquadric};
use morera_core::zoo::{builtin, counterexample_pole, holomorphic_members};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GEOMETRY_TOL: f64 = 1e-10;
const PENCIL_PARAM_TOL: f64 = 1e-12;
const DFT_TOL: f64 = 1e-12;
const QUADRIC_TOL: f64 = 1e-10;
const THETA_TOL: f64 = 1e-6;
const THETA_CURVE_GAP: f64 = 0.05;
const THETA_NODES: usize = 512;
const LEMMA_DBAR_TOL: f64 = 1e-4;
const CROSS_TOL: f64 = 1e-6;
const COUNTEREXAMPLE_ENERGY_MIN: f64 = 1e-2;
const SHARPNESS_TAIL_TOL: f64 = 1e-8;
const SHARPNESS_DBAR: (f64, f64) = (0.9, 1.1);
const EVAL_TOL: f64 = 1e-14;
const TAU: f64 = 0.25;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn report(n: u32, ok: bool, budget: Duration, start: Instant, detail: &str) {
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let status = if ok && in_time { "PASS" } else { "FAIL" };
    println!(
        "criterion {n}: {status} {detail}; runtime {:.3} s (budget {} s)",
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(in_time, "criterion {n} exceeded its runtime budget");
}

#[test]
fn criterion_01_geometry() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst_circle, mut worst_param, mut center_exact) = (0.0f64, 0.0f64, true);
    let mut count = 0;
    while count < 1000 {
        let z = Complex::from_polar(rng.gen_range(0.05..0.99), rng.gen_range(-PI..PI));
        if z.im.abs() <= 1e-3 {
            continue;
        }
        count += 1;
        let k = tangent_circle(z).unwrap();
        for p in [z.conj(), z.inv(), c(-1.0, 0.0)] {
            worst_circle = worst_circle.max(((p - k.center).norm() - k.radius).abs());
        }
        center_exact &= k.center.re == -1.0;
        let t = pencil_param(z).unwrap();
        worst_param = worst_param.max(((z - t).norm() - (t + 1.0)).abs());
    }
    let ok = worst_circle < GEOMETRY_TOL && worst_param < PENCIL_PARAM_TOL && center_exact;
    report(
        1,
        ok,
        Duration::from_secs(1),
        start,
        &format!(
            "1000 points: circle residual {worst_circle:.2e}, pencil residual {worst_param:.2e}, Re(center) = -1 exactly: {center_exact}"
        ),
    );
}

/// Direct `O(N^2)` Fourier sums `c_k = (1/N) sum_j f(ζ_j) e^{-2 pi i k j / N}`.
fn direct_dft(values: &[Complex], k: i64) -> Complex {
    let n = values.len();
    let sum: Complex = values
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let phase = -2.0 * PI * ((k * j as i64).rem_euclid(n as i64)) as f64 / n as f64;
            v * Complex::from_polar(1.0, phase)
        })
        .sum();
    sum / n as f64
}

#[test]
fn criterion_02_dft_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for case in 0..100 {
        let n = [8usize, 16, 32][case % 3];
        let center = Complex::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(-PI..PI));
        let circle = Circle::new(center, rng.gen_range(0.05..0.5)).unwrap();
        let coeffs: Vec<(Complex, Complex)> = (0..5)
            .map(|_| {
                (
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let f = move |z: Complex| -> Complex {
            let mut acc = (z * 0.5).exp();
            for (j, (a, b)) in coeffs.iter().enumerate() {
                acc += a * z.powi(j as i32) + b * z.conj().powi(j as i32);
            }
            acc
        };
        let data = analyze_circle(&f, &circle, n).unwrap();
        let values: Vec<Complex> = (0..n)
            .map(|j| f(circle.point_at(2.0 * PI * j as f64 / n as f64)))
            .collect();
        let half = (n / 2) as i64;
        for k in -half..half {
            let d = (data.coefficient(k).unwrap() - direct_dft(&values, k)).norm();
            worst = worst.max(d);
        }
    }
    report(
        2,
        worst < DFT_TOL,
        Duration::from_secs(5),
        start,
        &format!("100 circles, N in {{8, 16, 32}}: max coefficient difference {worst:.2e}"),
    );
}

#[test]
fn criterion_03_intersection() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut worst_residual = 0.0f64;
    let mut bad_points = Vec::new();
    for m in 1..=19 {
        let r = m as f64 / 20.0;
        for k in 0..10 {
            let t = -((9 - k) as f64) / 20.0;
            let q1 = Semiquadric::new(c(0.0, 0.0), r).unwrap();
            let q2 = Semiquadric::pencil(t).unwrap();
            let predicate = r < 2.0 * t + 1.0;
            let got = quadrics_intersect(&q1, &q2).unwrap();
            if got != predicate {
                mismatches.push((r, t));
            }
            if got {
                match family_intersection_point(r, t) {
                    Ok(p) => {
                        let res = q1.residual(&p).unwrap().max(q2.residual(&p).unwrap());
                        worst_residual = worst_residual.max(res);
                        let w = p.w.finite().unwrap();
                        let real_positive = |x: Complex| x.re > 0.0 && x.im.abs() <= QUADRIC_TOL;
                        if !(real_positive(p.z) && real_positive(w)) {
                            bad_points.push((r, t));
                        }
                    }
                    Err(_) => bad_points.push((r, t)),
                }
            }
        }
    }
    let ok = mismatches.is_empty() && bad_points.is_empty() && worst_residual < QUADRIC_TOL;
    let rows: Vec<String> = {
        let mut ts: Vec<f64> = mismatches.iter().map(|m| m.1).collect();
        ts.dedup();
        ts.iter().map(|t| format!("t = {}", t + 0.0)).collect()
    };
    report(
        3,
        ok,
        Duration::from_secs(1),
        start,
        &format!(
            "19x10 grid: {} predicate mismatches ({}), {} bad intersection points, max quadric residual {worst_residual:.2e}",
            mismatches.len(),
            if rows.is_empty() { "none".to_string() } else { rows.join(", ") },
            bad_points.len()
        ),
    );
}

fn theta_base_points() -> Vec<Complex> {
    let mut out = Vec::new();
    for r in [0.3, 0.45, 0.6, 0.75] {
        for phi in [0.5, 1.2, 2.0, -0.8, -1.7] {
            out.push(Complex::from_polar(r, phi));
        }
    }
    out
}

/// Up to `count` points, inside or outside `D_z`, at least the curve gap
/// away from `M_z`, taken evenly from a grid over a box around `C_z`.
fn theta_probe_points(field: &FiberField, inside: bool, count: usize) -> Vec<Complex> {
    let curve = &field.curve;
    let k = curve.arc.circle;
    let mut lo = k.center - c(k.radius, k.radius);
    let mut hi = k.center + c(k.radius, k.radius);
    for p in [curve.segment.0, curve.segment.1] {
        lo = c(lo.re.min(p.re), lo.im.min(p.im));
        hi = c(hi.re.max(p.re), hi.im.max(p.im));
    }
    let pad = 0.2 * (hi - lo).norm();
    let n = 60;
    let mut candidates = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = c(
                lo.re - pad + (hi.re - lo.re + 2.0 * pad) * (i as f64 + 0.5) / n as f64,
                lo.im - pad + (hi.im - lo.im + 2.0 * pad) * (j as f64 + 0.5) / n as f64,
            );
            if curve.distance_to(w) > THETA_CURVE_GAP && region_contains(curve, w).unwrap() == inside {
                candidates.push(w);
            }
        }
    }
    if candidates.len() <= count {
        return candidates;
    }
    (0..count)
        .map(|i| candidates[i * candidates.len() / count])
        .collect()
}

#[test]
fn criterion_04_theta_dichotomy() {
    let start = Instant::now();
    let mut opts = FiberOptions::new(TAU);
    opts.nodes_per_piece = THETA_NODES;
    let (mut worst_out, mut worst_in) = (0.0f64, 0.0f64);
    let (mut n_out, mut n_in) = (0, 0);
    for entry in holomorphic_members() {
        for z in theta_base_points() {
            let field = FiberField::new(&entry, z, &opts).unwrap();
            let fz = entry.value(z);
            for w in theta_probe_points(&field, false, 50) {
                worst_out = worst_out.max(field.theta(w).unwrap().norm());
                n_out += 1;
            }
            for w in theta_probe_points(&field, true, 50) {
                worst_in = worst_in.max((field.theta(w).unwrap() - fz).norm());
                n_in += 1;
            }
        }
    }
    let ok = worst_out < THETA_TOL && worst_in < THETA_TOL && n_in > 0 && n_out > 0;
    report(
        4,
        ok,
        Duration::from_secs(30),
        start,
        &format!(
            "3 functions x 20 base points: max |Θ| outside {worst_out:.2e} ({n_out} points), max |Θ - f(z)| inside {worst_in:.2e} ({n_in} points)"
        ),
    );
}

#[test]
fn criterion_05_lemma_proxy() {
    let start = Instant::now();
    let opts = FiberOptions::new(TAU);
    let (center, radius, h) = (c(0.1, 0.5), 0.1, 1e-3);
    let mut points = Vec::new();
    for i in 0..9 {
        for j in 0..9 {
            let p = center + c(radius * (i as f64 - 4.0) / 4.0, radius * (j as f64 - 4.0) / 4.0);
            // Keep the stencil inside U.
            if (p - center).norm() <= radius - h {
                points.push(p);
            }
        }
    }
    let g = |f: &dyn morera_core::Oracle, z: Complex| fiber_integral(f, z, &opts).unwrap();
    let mut worst = 0.0f64;
    let mut functions = 0;
    for entry in holomorphic_members() {
        functions += 1;
        for &z in &points {
            let dx = (g(&entry, z + h) - g(&entry, z - h)) / (2.0 * h);
            let dy = (g(&entry, z + c(0.0, h)) - g(&entry, z - c(0.0, h))) / (2.0 * h);
            worst = worst.max(((dx + Complex::i() * dy) * 0.5).norm());
        }
    }
    report(
        5,
        worst < LEMMA_DBAR_TOL,
        Duration::from_secs(30),
        start,
        &format!(
            "{functions} functions, {} points of a 9x9 grid in |z - {center}| < {radius}: max |∂̄ fiber integral| {worst:.2e}",
            points.len()
        ),
    );
}

#[test]
fn criterion_06_pipeline_positive() {
    let start = Instant::now();
    let cfg = TheoremConfig::main_theorem(c(-1.0, 0.0), TAU).unwrap();
    let mut lines = Vec::new();
    let mut ok = true;
    for entry in holomorphic_members() {
        let v = verdict(&entry, &cfg).unwrap();
        let cross = v.cross_consistency.as_ref().unwrap();
        let t_ok = cross.checks.len() == 8 && cross.checks.iter().all(|ch| ch.t > -0.5 && ch.t < 0.0);
        let circles: usize = v.families.iter().map(|f| f.circles.len()).sum();
        ok &= v.verdict == Classification::HolomorphicConsistent
            && cross.residual < CROSS_TOL
            && t_ok
            && circles == 64;
        lines.push(format!("{} {} cross {:.2e}", entry.name, v.verdict.as_str(), cross.residual));
    }
    report(6, ok, Duration::from_secs(60), start, &lines.join("; "));
}

#[test]
fn criterion_07_counterexample() {
    let start = Instant::now();
    let f = builtin("counterexample").unwrap();
    let cfg = TheoremConfig::main_theorem(c(-1.0, 0.0), TAU).unwrap();
    let v = verdict(&f, &cfg).unwrap();
    let worst = v.worst_failure().unwrap();
    let circle = pencil_circle(-0.7).unwrap();
    let energy = CircleAnalysis::run(&f, &circle, &cfg.morera_options())
        .unwrap()
        .result
        .negative_energy;
    let direct = analyze_circle(&f, &circle, 256).unwrap().tail_energy_negative;
    let pole = counterexample_pole(circle.center, circle.radius).unwrap();
    let pole_inside = (pole - circle.center).norm() < circle.radius;
    let ok = v.verdict == Classification::MoreraFailure
        && worst.parameter < -0.5
        && direct > COUNTEREXAMPLE_ENERGY_MIN
        && (energy - direct).abs() <= 1e-12 * direct
        && pole_inside;
    report(
        7,
        ok,
        Duration::from_secs(10),
        start,
        &format!(
            "verdict {}, worst failing circle t = {:.4}, negative energy on t = -0.7: {direct:.4e}, pole {pole:.6} inside: {pole_inside}",
            v.verdict.as_str(),
            worst.parameter
        ),
    );
}

#[test]
fn criterion_08_sharpness() {
    let start = Instant::now();
    let f = builtin("counterexample").unwrap();
    let cfg = TheoremConfig::centered_and_pencil(c(-1.0, 0.0), 0.6, 0.6).unwrap();
    let v = verdict(&f, &cfg).unwrap();
    let all_pass = v.families.iter().all(|fam| fam.passes);
    let worst_tail = v
        .families
        .iter()
        .flat_map(|fam| &fam.circles)
        .map(|c| c.relative_negative_energy())
        .fold(0.0, f64::max);
    let d = v.dbar.residual;
    let ok = all_pass
        && worst_tail < SHARPNESS_TAIL_TOL
        && d >= SHARPNESS_DBAR.0
        && d <= SHARPNESS_DBAR.1
        && !v.hypotheses_hold;
    report(
        8,
        ok,
        Duration::from_secs(20),
        start,
        &format!(
            "floors 0.6/0.6: all circles pass {all_pass}, max relative negative tail {worst_tail:.2e}, dbar residual {d:.6}, verdict {}",
            v.verdict.as_str()
        ),
    );
}

#[test]
fn criterion_09_family_validation() {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut checked = 0;
    let minus_one = c(-1.0, 0.0);
    for i in 0..20 {
        let r = i as f64 / 20.0;
        for j in 1..=20 {
            let rho = j as f64 / 20.0;
            let a = FamilyConfig::centered(r).unwrap();
            let b = FamilyConfig::pencil(minus_one, rho).unwrap();
            checked += 1;
            if validate_families(&a, &b) != (r < 1.0 - 2.0 * rho) {
                mismatches += 1;
            }
        }
    }
    for g in 1..=12 {
        let p2 = Complex::from_polar(1.0, PI * g as f64 / 12.0);
        for i in 1..=10 {
            let rho1 = i as f64 / 10.0;
            for j in 1..=10 {
                let rho2 = j as f64 / 10.0;
                let a = FamilyConfig::pencil(minus_one, rho1).unwrap();
                let b = FamilyConfig::pencil(p2, rho2).unwrap();
                // Centers of the smallest members sit at (1 - rho) p.
                let c1 = c(-(1.0 - rho1), 0.0);
                let c2 = c(p2.re * (1.0 - rho2), p2.im * (1.0 - rho2));
                let expected = (c1 - c2).norm() > rho1 + rho2;
                checked += 1;
                if validate_families(&a, &b) != expected {
                    mismatches += 1;
                }
            }
        }
    }
    report(
        9,
        mismatches == 0,
        Duration::from_secs(1),
        start,
        &format!("{checked} configurations: {mismatches} mismatches"),
    );
}

const VALID: [&str; 50] = [
    "z", "zbar", "i", "2", "3.5i", "1e-3", "2.5e+2i", "-z", "--z", "z + 1",
    "z - 1", "z * z", "z / 2", "z ^ 2", "z^2^3", "-z^2", "(-z)^2", "z^-1", "2^-z^2", "z^2 / conj(z)",
    "exp(z) + 3.5i", "sin(z) * cos(z)", "log(z + 2)", "sqrt(z)", "abs(z)", "re(z) + im(z)*i", "conj(z) * z", "1/(z - 2)", "z^3 - 2", "exp(-1/(1 - abs(z)^2))",
    "((z))", "z*z*z*z", "1 - 2 - 3", "8 / 4 / 2", "z^(1/2)", "2i*z + 1.5", "  z   +\t1 ", "re(z)^2 - im(z)^2", "exp(i*z)", "cos(z)^2 + sin(z)^2",
    "z * (1 + i)", "-(z - 1) * -(z + 1)", "log(exp(z))", "sqrt(z*z + 1)", "abs(z - i)", "zbar^2 - z^2", "0.5*z - .25", "z/(1 + z*zbar)", "3 + 4i", "im(conj(z))",
];

const MALFORMED: [(&str, Option<usize>); 20] = [
    ("z +* 2", Some(3)),
    ("", Some(0)),
    ("(", Some(1)),
    (")", Some(0)),
    ("z +", Some(3)),
    ("(z", Some(2)),
    ("z)", Some(1)),
    ("2 3", Some(2)),
    ("exp z", None),
    ("exp()", None),
    ("foo(z)", Some(0)),
    ("z ^", Some(3)),
    ("z $ 1", Some(2)),
    ("1.2.3", None),
    ("conj(z,", None),
    ("* z", Some(0)),
    ("z //", None),
    ("sqrt", None),
    ("1e", None),
    ("zz", None),
];

fn same_value(a: Complex, b: Complex) -> bool {
    (a - b).norm() <= EVAL_TOL * b.norm().max(1.0)
}

#[test]
fn criterion_10_parser() {
    let start = Instant::now();
    let mut round_trip_failures = Vec::new();
    for src in VALID {
        let ast = match parse(src) {
            Ok(a) => a,
            Err(e) => {
                round_trip_failures.push(format!("{src:?}: {e}"));
                continue;
            }
        };
        let printed = ast.to_string();
        match parse(&printed) {
            Ok(again) if again == ast => {}
            _ => round_trip_failures.push(format!("{src:?} -> {printed:?}")),
        }
    }

    let mut error_failures = Vec::new();
    for (src, offset) in MALFORMED {
        match parse(src) {
            Ok(_) => error_failures.push(format!("{src:?} parsed")),
            Err(e) => {
                let positioned = e.offset <= src.len();
                let exact = offset.is_none_or(|o| o == e.offset);
                if !(positioned && exact) {
                    error_failures.push(format!("{src:?}: offset {} expected {offset:?}", e.offset));
                }
            }
        }
    }

    type Hand = fn(Complex) -> Complex;
    let oracles: [(&str, Hand); 8] = [
        ("z^3 - 2", |z| z * z * z - 2.0),
        ("exp(z)", |z| z.exp()),
        ("1/(z - 2)", |z| 1.0 / (z - 2.0)),
        ("z^2/conj(z)", |z| z * z / z.conj()),
        ("conj(z)", |z| z.conj()),
        ("abs(z)^2", |z| Complex::new(z.norm() * z.norm(), 0.0)),
        ("sin(z) * cos(z) + log(z + 2)", |z| z.sin() * z.cos() + (z + 2.0).ln()),
        ("sqrt(z) + re(z) - im(z)*i", |z| z.sqrt() + z.re - Complex::new(0.0, z.im)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut eval_failures = Vec::new();
    for (src, hand) in oracles {
        let ast: Expr = parse(src).unwrap();
        for _ in 0..100 {
            let z = Complex::from_polar(rng.gen_range(0.05..1.0), rng.gen_range(-PI..PI));
            let got = eval(&ast, z).unwrap();
            if !same_value(got, hand(z)) {
                eval_failures.push(format!("{src} at {z}: {got} vs {}", hand(z)));
            }
        }
    }
    let ok = round_trip_failures.is_empty() && error_failures.is_empty() && eval_failures.is_empty();
    let mut detail = format!(
        "{} round trips, {} malformed inputs, 800 evaluations: {} round-trip, {} error-position, {} evaluation failures",
        VALID.len(),
        MALFORMED.len(),
        round_trip_failures.len(),
        error_failures.len(),
        eval_failures.len()
    );
    for f in round_trip_failures.iter().chain(&error_failures).chain(&eval_failures).take(5) {
        detail.push_str(&format!("; {f}"));
    }
    report(10, ok, Duration::from_secs(1), start, &detail);
}

#[test]
fn fiber_curve_sanity_for_acceptance_points() {
    for z in theta_base_points() {
        assert!(fiber_curve(z, TAU, 8).is_ok(), "base point {z} must be admissible");
    }
}
