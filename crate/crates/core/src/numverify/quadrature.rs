//! Adaptive Gauss-Kronrod (7/15) quadrature for complex-valued integrands.

use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_64, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_DEPTH: usize = 48;

/// Integral value together with the accumulated error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureEstimate<T: Real> {
    pub value: Cx<T>,
    pub error: T,
}

fn gk15<T: Real, F: Fn(T) -> Cx<T>>(f: &F, a: T, b: T) -> (Cx<T>, Cx<T>) {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let fc = f(mid);
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = half * T::lit(XGK[i]);
        let pair = f(mid - dx) + f(mid + dx);
        kron = kron + pair * T::lit(WGK[i]);
        if i % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[i / 2]);
        }
    }
    (kron * half, gauss * half)
}

fn adapt<T: Real, F: Fn(T) -> Cx<T>>(f: &F, a: T, b: T, tol: T, depth: usize) -> Result<QuadratureEstimate<T>> {
    let (k, g) = gk15(f, a, b);
    let err = (k - g).norm();
    // Below ~100 ulp of the segment value further bisection cannot help.
    let floor = T::lit(100.0) * T::epsilon() * k.norm();
    if err <= tol || err <= floor {
        return Ok(QuadratureEstimate { value: k, error: err });
    }
    if depth >= MAX_DEPTH {
        return Err(Error::MaxDepth { a: a.as_f64(), b: b.as_f64() });
    }
    let mid = (a + b) * T::lit(0.5);
    let half_tol = tol * T::lit(0.5);
    let left = adapt(f, a, mid, half_tol, depth + 1)?;
    let right = adapt(f, mid, b, half_tol, depth + 1)?;
    Ok(QuadratureEstimate { value: left.value + right.value, error: left.error + right.error })
}

/// `int_a^b f` with absolute error estimate at most `tol`.
pub fn quadrature<T: Real, F>(f: F, a: T, b: T, tol: T) -> Result<Cx<T>>
where
    F: Fn(T) -> Cx<T>,
{
    quadrature_with_estimate(f, a, b, tol).map(|q| q.value)
}

/// Like [`quadrature`] but also returns the error estimate. Reversed limits
/// flip the sign; an empty interval integrates to zero.
pub fn quadrature_with_estimate<T: Real, F>(f: F, a: T, b: T, tol: T) -> Result<QuadratureEstimate<T>>
where
    F: Fn(T) -> Cx<T>,
{
    if a == b {
        return Ok(QuadratureEstimate { value: Cx::new(T::zero(), T::zero()), error: T::zero() });
    }
    if b < a {
        let q = adapt(&f, b, a, tol, 0)?;
        return Ok(QuadratureEstimate { value: -q.value, error: q.error });
    }
    adapt(&f, a, b, tol, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::re;
    use std::f64::consts::PI;

    #[test]
    fn cosine_squared_over_period() {
        let v = quadrature(|x: f64| re(x.cos().powi(2)), 0.0, PI, 1e-11).unwrap();
        assert!((v.re - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn empty_interval() {
        let v = quadrature(|x: f64| re(1.0 / x), 0.5, 0.5, 1e-11).unwrap();
        assert_eq!(v, re(0.0));
    }

    #[test]
    fn sinh_squared() {
        let v = quadrature(|x: f64| re(x.sinh().powi(2)), 0.0, 1.0, 1e-11).unwrap();
        assert!((v.re - (2.0f64.sinh() / 4.0 - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = quadrature(|x: f64| re(x * x), 1.0, 0.0, 1e-12).unwrap();
        assert!((v.re + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn complex_integrand() {
        // int_0^pi e^{ix} dx = 2i
        let v = quadrature(|x: f64| Cx::new(x.cos(), x.sin()), 0.0, PI, 1e-12).unwrap();
        assert!((v - Cx::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn estimate_bounds_error_for_polynomials() {
        for deg in 0..=22 {
            let q = quadrature_with_estimate(|x: f64| re(x.powi(deg)), 0.0, 1.0, 1.0).unwrap();
            let exact = 1.0 / (deg as f64 + 1.0);
            let true_err = (q.value.re - exact).abs();
            assert!(true_err <= q.error + 4.0 * f64::EPSILON, "deg {deg}: {true_err} > {}", q.error);
        }
    }

    #[test]
    fn unresolvable_integrand_hits_max_depth() {
        let r = quadrature(|x: f64| re(1.0 / x), 0.0, 1.0, 1e-14);
        assert!(matches!(r, Err(Error::MaxDepth { .. })));
    }
}
