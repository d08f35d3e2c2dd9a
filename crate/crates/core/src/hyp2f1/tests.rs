use super::{hyp2f1, hyp2f1_jet, hyp2f1_side, hyp2f1_with, CutSide, Hyp2F1Args, Strategy as Route};
use crate::error::Error;
use crate::scalar::Cx;
use proptest::prelude::*;

type C = Cx<f64>;

fn c(re: f64, im: f64) -> C {
    Cx::new(re, im)
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Plain partial sum of the Gauss series, independent of the crate's stopping rule.
fn brute_series(a: C, b: C, cc: C, z: C, terms: usize) -> C {
    let mut t = c(1.0, 0.0);
    let mut s = t;
    for n in 0..terms {
        let n = n as f64;
        t = t * (a + n) * (b + n) / ((cc + n) * (n + 1.0)) * z;
        s += t;
    }
    s
}

#[test]
fn value_at_origin_is_one() {
    let v = hyp2f1(Hyp2F1Args::new(c(0.3, 2.0), c(-1.7, 0.1), c(4.5, -3.0), c(0.0, 0.0))).unwrap();
    assert_eq!(v, c(1.0, 0.0));
}

#[test]
fn logarithm_case() {
    let v = hyp2f1(Hyp2F1Args::real(1.0, 1.0, 2.0, c(0.5, 0.0))).unwrap();
    let expected = -(0.5f64.ln()) / 0.5;
    assert!((v.re - expected).abs() < 1e-15);
    assert!((v.re - 1.386_294_361_1).abs() < 1e-10);
}

#[test]
fn matches_brute_series_near_series_boundary() {
    let (a, b, cc, z) = (c(0.3, 0.0), c(0.7, 0.0), c(1.2, 0.0), c(-0.8, 0.1));
    // |z| ~ 0.806 routes through the Pfaff transformation
    let oracle = brute_series(a, b, cc, z, 200);
    let v = hyp2f1(Hyp2F1Args::new(a, b, cc, z)).unwrap();
    assert!(rel(v, oracle) < 1e-10, "{v} vs {oracle}");
}

#[test]
fn reference_values_off_the_unit_disk() {
    // (a, b, c, z, expected) from a 30-digit reference implementation
    let cases = [
        (
            c(0.3, 0.2),
            c(-0.7, 0.0),
            c(1.5, 0.0),
            c(0.5, 0.866_025_403_784_438_6),
            c(1.024_699_977_368_495, -0.168_054_802_824_370_1),
        ),
        (
            c(0.3, 0.2),
            c(-0.7, 0.0),
            c(1.5, 0.0),
            c(0.5, -0.866_025_403_784_438_6),
            c(0.850_270_341_702_946_1, 0.089_163_988_893_348_85),
        ),
        (c(0.5, 0.0), c(0.25, 0.0), c(1.75, 0.0), c(-1.0, 0.0), c(0.945_178_448_260_628_5, 0.0)),
        (c(1.2, -0.3), c(0.4, 0.5), c(2.1, 0.2), c(2.0, 0.5), c(0.339_713_231_806_389_2, 0.718_312_513_216_824_8)),
        (c(0.3, 0.0), c(0.6, 0.0), c(1.9, 0.0), c(-10.0, 0.0), c(0.716_574_350_232_404_5, 0.0)),
        (c(0.3, 0.1), c(0.6, 0.0), c(1.9, 0.0), c(0.9, 0.9), c(0.993_783_734_292_293_5, 0.143_954_849_245_172_54)),
        (
            c(-0.5, 1.0),
            c(-0.5, -1.0),
            c(-0.732_050_807_568_877_2, 0.0),
            c(0.856_888_753_368_947_3, -0.515_501_371_821_464_2),
            c(2.839_300_135_700_516_3, 7.901_255_130_437_581_5),
        ),
        (c(1.0, 0.5), c(0.5, -0.5), c(2.0, 1.0), c(0.999, 0.02), c(0.978_074_923_859_889_9, -0.971_074_115_191_516_3)),
    ];
    for (a, b, cc, z, expected) in cases {
        let v = hyp2f1(Hyp2F1Args::new(a, b, cc, z)).unwrap();
        assert!(rel(v, expected) < 1e-11, "z = {z}: {v} vs {expected}");
    }
}

#[test]
fn gauss_value_at_one() {
    let v = hyp2f1(Hyp2F1Args::real(0.4, 0.3, 2.0, c(1.0, 0.0))).unwrap();
    assert!((v.re - 1.105_419_226_587_200_7).abs() < 1e-13);
    let e = hyp2f1(Hyp2F1Args::real(0.4, 0.9, 1.0, c(1.0, 0.0)));
    assert!(matches!(e, Err(Error::NoConvergence { .. })));
}

#[test]
fn cut_requires_side() {
    let args = Hyp2F1Args::real(0.25, 0.5, 1.5, c(5.0, 0.0));
    assert!(matches!(hyp2f1(args), Err(Error::CutAmbiguity { .. })));
    let above = hyp2f1_side(args, CutSide::Above).unwrap();
    let below = hyp2f1_side(args, CutSide::Below).unwrap();
    let expected = c(0.929_043_119_361_262_9, 0.393_218_517_071_995_2);
    assert!(rel(above, expected) < 1e-11, "{above}");
    assert!(rel(below, expected.conj()) < 1e-11, "{below}");
}

#[test]
fn pole_parameter_rejected_unless_terminating() {
    let e = hyp2f1(Hyp2F1Args::real(0.5, 0.5, -2.0, c(0.3, 0.0)));
    assert!(matches!(e, Err(Error::PoleParameter { .. })));
    // a = -2, c = -3: terminates before the pole
    let v = hyp2f1(Hyp2F1Args::real(-2.0, 1.5, -3.0, c(0.4, 0.0))).unwrap();
    let expected = 1.0 + (-2.0 * 1.5 / -3.0) * 0.4 + (-2.0 * -1.0 * 1.5 * 2.5) / (-3.0 * -2.0 * 2.0) * 0.16;
    assert!((v.re - expected).abs() < 1e-14);
    // a = 0, c = 0 is the constant 1
    assert_eq!(hyp2f1(Hyp2F1Args::real(0.0, 3.0, 0.0, c(7.0, 0.0))).unwrap(), c(1.0, 0.0));
}

#[test]
fn polynomial_on_the_cut_needs_no_side() {
    // 2F1(-1, b; c; z) = 1 - b z / c
    let v = hyp2f1(Hyp2F1Args::real(-1.0, 2.0, 4.0, c(3.0, 0.0))).unwrap();
    assert!((v.re - (1.0 - 1.5)).abs() < 1e-15);
}

#[test]
fn jet_derivatives_match_finite_differences() {
    let args = Hyp2F1Args::new(c(0.7, 0.2), c(-0.4, 0.0), c(1.6, -0.3), c(-1.3, 0.6));
    let [_, d1, d2] = hyp2f1_jet(args, None).unwrap();
    let h = 1e-4;
    let f = |dz: f64| hyp2f1(Hyp2F1Args { z: args.z + dz, ..args }).unwrap();
    let fd1 = (f(h) - f(-h)) / (2.0 * h);
    let fd2 = (f(h) - f(0.0) * 2.0 + f(-h)) / (h * h);
    assert!(rel(d1, fd1) < 1e-7, "{d1} {fd1}");
    assert!(rel(d2, fd2) < 1e-5, "{d2} {fd2}");
}

#[test]
fn jet_satisfies_hypergeometric_equation_on_unit_circle() {
    for k in 1..12 {
        let th = 0.5 * k as f64;
        let z = c(th.cos(), th.sin());
        let (a, b, cc) = (c(-0.8, 0.5), c(-0.8, -0.5), c(-0.6, 0.0));
        let [f, d1, d2] = hyp2f1_jet(Hyp2F1Args::new(a, b, cc, z), None).unwrap();
        let r = z * (1.0 - z) * d2 + (cc - (a + b + 1.0) * z) * d1 - a * b * f;
        assert!(r.norm() < 1e-10 * (f.norm() + d1.norm() + d2.norm()), "theta {th}: {r}");
    }
}

#[test]
fn single_precision_smoke() {
    let v = hyp2f1(Hyp2F1Args::<f32>::real(1.0, 1.0, 2.0, Cx::new(0.5, 0.0))).unwrap();
    assert!((v.re - 1.386_294_4).abs() < 1e-5);
    let w = hyp2f1(Hyp2F1Args::<f32>::real(0.5, 0.25, 1.75, Cx::new(-1.0, 0.0))).unwrap();
    assert!((w.re - 0.945_178_45).abs() < 1e-5);
}

fn param() -> impl Strategy<Value = C> {
    (-1.5f64..1.5, -1.0f64..1.0).prop_map(|(r, i)| c(r, i))
}

fn lower() -> impl Strategy<Value = C> {
    (0.6f64..3.0, -1.0f64..1.0).prop_map(|(r, i)| c(r, i))
}

fn arg(max: f64) -> impl Strategy<Value = C> {
    (0.0f64..max, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| c(r * t.cos(), r * t.sin()))
}

proptest! {
    #[test]
    fn series_and_continuation_agree(a in param(), b in param(), cc in lower(), z in arg(0.5)) {
        prop_assume!(z.norm() > 1e-3);
        let args = Hyp2F1Args::new(a, b, cc, z);
        let s = hyp2f1_with(args, Route::Series).unwrap();
        let t = hyp2f1_with(args, Route::Continuation).unwrap();
        prop_assert!(rel(t, s) < 1e-11, "{} vs {}", t, s);
    }

    #[test]
    fn pfaff_identity(a in param(), b in param(), cc in lower(), z in arg(0.7)) {
        let lhs = hyp2f1(Hyp2F1Args::new(a, b, cc, z)).unwrap();
        let w = z / (z - 1.0);
        let rhs = (-a * (1.0 - z).ln()).exp() * hyp2f1(Hyp2F1Args::new(a, cc - b, cc, w)).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-10, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn euler_identity(a in param(), b in param(), cc in lower(), z in arg(0.7)) {
        let lhs = hyp2f1(Hyp2F1Args::new(a, b, cc, z)).unwrap();
        let rhs = ((cc - a - b) * (1.0 - z).ln()).exp() * hyp2f1(Hyp2F1Args::new(cc - a, cc - b, cc, z)).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-10);
    }

    #[test]
    fn contiguous_relation(a in param(), b in param(), cc in lower(), z in arg(0.95)) {
        let f = |aa: C| hyp2f1(Hyp2F1Args::new(aa, b, cc, z)).unwrap();
        let (fm, f0, fp) = (f(a - 1.0), f(a), f(a + 1.0));
        let r = (cc - a) * fm + (a * 2.0 - cc + (b - a) * z) * f0 + a * (z - 1.0) * fp;
        let scale = ((cc - a) * fm).norm() + f0.norm() + (a * fp).norm();
        prop_assert!(r.norm() < 1e-9 * scale.max(1.0));
    }

    #[test]
    fn degenerate_lower_equals_upper(a in param(), b in lower(), z in arg(0.9)) {
        let v = hyp2f1(Hyp2F1Args::new(a, b, b, z)).unwrap();
        let expected = (-a * (1.0 - z).ln()).exp();
        prop_assert!(rel(v, expected) < 1e-11);
    }

    #[test]
    fn outside_disk_routes_agree_with_pfaff_series(a in param(), b in param(), cc in lower(), r in 0.85f64..3.0, t in 0.6f64..5.6) {
        // pick z with |z/(z-1)| small enough for a direct series on the transformed side
        let z = c(r * t.cos(), r * t.sin());
        let w = z / (z - 1.0);
        prop_assume!(w.norm() < 0.75);
        let cont = hyp2f1_with(Hyp2F1Args::new(a, b, cc, z), Route::Continuation).unwrap();
        let pf = hyp2f1_with(Hyp2F1Args::new(a, b, cc, z), Route::Pfaff).unwrap();
        prop_assert!(rel(cont, pf) < 1e-10, "{} vs {}", cont, pf);
    }
}
