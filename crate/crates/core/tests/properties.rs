use std::f64::consts::PI;

use morera_core::analysis::chebyshev_lobatto;
use morera_core::expr::{eval, parse, BinOp, Expr, Func};
use morera_core::extension::{analyze_circle, extension_test, CircleAnalysis, MoreraOptions};
use morera_core::fiber::{fiber_curve, in_admissible_region, region_contains};
use morera_core::geometry::{pencil_circle, pencil_param, tangent_circle, Circle, Complex};
use morera_core::semiquadric::{fiber_w, invert_pencil_fiber, Semiquadric};
use proptest::prelude::*;

fn complex_in_disc(r_lo: f64, r_hi: f64) -> impl Strategy<Value = Complex> {
    (r_lo..r_hi, -PI..PI).prop_map(|(r, t)| Complex::from_polar(r, t))
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Z),
        (0u32..100).prop_map(|n| Expr::Const(Complex::new(n as f64 / 4.0, 0.0))),
        (1u32..10).prop_map(|n| Expr::Const(Complex::new(0.0, n as f64))),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        let op = prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div)];
        let func = prop_oneof![
            Just(Func::Conj),
            Just(Func::Abs),
            Just(Func::Exp),
            Just(Func::Sin),
            Just(Func::Log),
            Just(Func::Sqrt),
        ];
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone())
                .prop_map(|(o, a, b)| Expr::Binary(o, Box::new(a), Box::new(b))),
            (inner.clone(), 0u32..4)
                .prop_map(|(a, n)| Expr::Pow(Box::new(a), Box::new(Expr::Const(Complex::new(n as f64, 0.0))))),
            (func, inner).prop_map(|(f, a)| Expr::Call(f, Box::new(a))),
        ]
    })
}

proptest! {
    #[test]
    fn tangent_circle_passes_through_its_three_points(z in complex_in_disc(0.05, 0.99)) {
        prop_assume!(z.im.abs() > 1e-3);
        let k = tangent_circle(z).unwrap();
        prop_assert_eq!(k.center.re, -1.0);
        for p in [z.conj(), z.inv(), Complex::new(-1.0, 0.0)] {
            prop_assert!(((p - k.center).norm() - k.radius).abs() < 1e-10 * k.radius.max(1.0));
        }
    }

    #[test]
    fn pencil_param_puts_z_on_its_circle(z in complex_in_disc(0.0, 0.999)) {
        prop_assume!(z.re > -0.99);
        let t = pencil_param(z).unwrap();
        prop_assert!(t > -1.0 && t <= 0.0);
        let circle = pencil_circle(t).unwrap();
        prop_assert!(circle.signed_distance(z).abs() < 1e-12);
    }

    #[test]
    fn pencil_fiber_inversion_round_trips(t in -0.95f64..-0.01, angle in 0.1f64..(2.0 * PI - 0.1), s in 0.05f64..0.95) {
        let q = Semiquadric::pencil(t).unwrap();
        let z = Complex::new(t, 0.0) + Complex::from_polar(s * (t + 1.0), angle);
        let w = fiber_w(&q, z).unwrap().finite().unwrap();
        let back = invert_pencil_fiber(z, w).unwrap();
        prop_assert!((back - t).abs() < 1e-9, "t = {}, recovered {}", t, back);
    }

    #[test]
    fn fiber_points_satisfy_the_quadric(a in complex_in_disc(0.0, 0.5), r in 0.05f64..0.5, angle in -PI..PI, s in 0.01f64..0.99) {
        let q = Semiquadric::new(a, r).unwrap();
        let z = a + Complex::from_polar(s * r, angle);
        let w = fiber_w(&q, z).unwrap().finite().unwrap();
        prop_assert!(((z - a) * (w - a.conj()) - r * r).norm() < 1e-12);
        // The fiber over the boundary is the conjugate diagonal.
        let zeta = a + Complex::from_polar(r, angle);
        let on_sigma = fiber_w(&q, zeta).unwrap().finite().unwrap();
        prop_assert!((on_sigma - zeta.conj()).norm() < 1e-12);
    }

    #[test]
    fn polynomials_have_no_negative_tail(
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..8),
        a in complex_in_disc(0.0, 0.4),
        r in 0.05f64..0.5,
    ) {
        let cs: Vec<Complex> = coeffs.iter().map(|&(x, y)| Complex::new(x, y)).collect();
        let f = move |z: Complex| cs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, c| acc * z + c);
        let circle = Circle::new(a, r).unwrap();
        let data = analyze_circle(&f, &circle, 64).unwrap();
        prop_assert!(extension_test(&data, 1e-8).passes);
        let ext = CircleAnalysis::run(&f, &circle, &MoreraOptions::default()).unwrap();
        let inside = a + Complex::from_polar(0.5 * r, 0.3);
        prop_assert!((ext.evaluate(inside).unwrap() - f(inside)).norm() < 1e-12);
    }

    #[test]
    fn conjugate_powers_are_detected(k in 1i32..6, a in complex_in_disc(0.0, 0.4), r in 0.05f64..0.5) {
        let f = move |z: Complex| (z - a).conj().powi(k);
        let data = analyze_circle(&f, &Circle::new(a, r).unwrap(), 64).unwrap();
        prop_assert!(!extension_test(&data, 1e-8).passes);
    }

    #[test]
    fn dft_is_linear(x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let circle = Circle::new(Complex::new(-0.2, 0.1), 0.6).unwrap();
        let f = |z: Complex| z.exp();
        let g = |z: Complex| z.conj() * z;
        let s = Complex::new(x, y);
        let h = move |z: Complex| f(z) + s * g(z);
        let (df, dg, dh) = (
            analyze_circle(&f, &circle, 32).unwrap(),
            analyze_circle(&g, &circle, 32).unwrap(),
            analyze_circle(&h, &circle, 32).unwrap(),
        );
        for k in -16..16 {
            let lin = df.coefficient(k).unwrap() + s * dg.coefficient(k).unwrap();
            prop_assert!((dh.coefficient(k).unwrap() - lin).norm() < 1e-13);
        }
    }

    #[test]
    fn parse_print_parse_is_idempotent(e in expr_strategy()) {
        let printed = e.to_string();
        let again = parse(&printed).unwrap();
        prop_assert_eq!(&again, &e);
        prop_assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn truncated_input_errors_stay_in_bounds(e in expr_strategy(), cut in 0usize..200) {
        let printed = e.to_string();
        let end = cut.min(printed.len());
        if let Err(err) = parse(&printed[..end]) {
            prop_assert!(err.offset <= end);
        }
    }

    #[test]
    fn eval_matches_closure(z in complex_in_disc(0.05, 0.99)) {
        let ast = parse("z^2/conj(z) - 3*exp(z)").unwrap();
        let direct = z * z / z.conj() - 3.0 * z.exp();
        prop_assert!((eval(&ast, z).unwrap() - direct).norm() <= 1e-14 * direct.norm().max(1.0));
    }

    #[test]
    fn chebyshev_grids_are_sorted_and_nested(lo in -0.9f64..-0.5, width in 0.1f64..0.5, n in 2usize..40) {
        let hi = lo + width;
        let a = chebyshev_lobatto(lo, hi, n);
        let b = chebyshev_lobatto(lo, hi, 2 * n - 1);
        prop_assert!(a.windows(2).all(|p| p[0] < p[1]));
        prop_assert_eq!(a[0], lo);
        prop_assert_eq!(*a.last().unwrap(), hi);
        for x in &a {
            prop_assert!(b.iter().any(|y| (x - y).abs() < 1e-14));
        }
    }

    #[test]
    fn fiber_endpoints_bound_the_region(z in complex_in_disc(0.1, 0.9)) {
        prop_assume!(z.im.abs() > 0.05 && in_admissible_region(z, 0.25));
        let curve = fiber_curve(z, 0.25, 16).unwrap();
        // A point just inside the chord midpoint, toward the arc, is in D_z.
        let mid = (curve.segment.0 + curve.segment.1) * 0.5;
        let toward = curve.arc.point(0.5) - mid;
        let w = mid + toward * 0.01;
        prop_assert!(region_contains(&curve, w).unwrap());
        let far = mid - toward * 1.0;
        prop_assert!(!region_contains(&curve, far).unwrap());
    }
}
