//! Gauss hypergeometric function `2F1(a, b; c; z)` for complex parameters
//! and argument, principal branch (cut along `[1, inf)`).
//!
//! Evaluation routes, in order of preference:
//!
//! * terminating polynomial when `a` or `b` is a nonpositive integer;
//! * Maclaurin series for `|z| <= 0.8`;
//! * Pfaff transformation `(1-z)^{-a} 2F1(a, c-b; c; z/(z-1))` when that
//!   argument has modulus `<= 0.8`;
//! * Gauss's closed form at `z = 1`;
//! * otherwise, analytic continuation: the hypergeometric equation is
//!   integrated by Taylor steps along a path that stays off the cut,
//!   starting from a series-evaluated anchor with `|z| = 0.5`. Each step
//!   spans at most half the distance to the nearest singular point.
//!
//! Points on the cut itself are rejected unless a side is requested, in
//! which case the boundary value from that half-plane is returned.

mod gamma;

pub use gamma::{gamma, rgamma};

use crate::error::{Error, Result};
use crate::scalar::{cx, re, Cx, Real};

const SERIES_RADIUS: f64 = 0.8;
const ANCHOR_RADIUS: f64 = 0.5;
const MAX_SERIES_TERMS: usize = 20_000;
const MAX_TAYLOR_TERMS: usize = 2_000;
const MAX_STEPS: usize = 10_000;
const STEP_FRACTION: f64 = 0.5;

/// Parameters and argument of `2F1(a, b; c; z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyp2F1Args<T: Real> {
    pub a: Cx<T>,
    pub b: Cx<T>,
    pub c: Cx<T>,
    pub z: Cx<T>,
}

impl<T: Real> Hyp2F1Args<T> {
    pub fn new(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Self {
        Self { a, b, c, z }
    }

    /// Real parameters, complex argument.
    pub fn real(a: T, b: T, c: T, z: Cx<T>) -> Self {
        Self::new(re(a), re(b), re(c), z)
    }

    fn shifted(&self, k: T) -> Self {
        Self { a: self.a + k, b: self.b + k, c: self.c + k, z: self.z }
    }
}

/// Half-plane from which a point on the cut `(1, inf)` is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CutSide {
    #[default]
    Above,
    Below,
}

impl CutSide {
    fn sign<T: Real>(self) -> T {
        match self {
            CutSide::Above => T::one(),
            CutSide::Below => -T::one(),
        }
    }
}

/// Forces a particular evaluation route (used for cross-route checks).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Series,
    Pfaff,
    Continuation,
}

/// `2F1(a, b; c; z)` on the principal branch.
pub fn hyp2f1<T: Real>(args: Hyp2F1Args<T>) -> Result<Cx<T>> {
    evaluate(args, None, Strategy::Auto)
}

/// Like [`hyp2f1`], but a point on the cut evaluates to the boundary value
/// from `side`.
pub fn hyp2f1_side<T: Real>(args: Hyp2F1Args<T>, side: CutSide) -> Result<Cx<T>> {
    evaluate(args, Some(side), Strategy::Auto)
}

/// Evaluation through a specific route.
pub fn hyp2f1_with<T: Real>(args: Hyp2F1Args<T>, strategy: Strategy) -> Result<Cx<T>> {
    evaluate(args, None, strategy)
}

/// `[F, F', F'']` in `z`. Derivatives come from independent evaluations at
/// shifted parameters, `F' = (ab/c) F(a+1, b+1; c+1; z)` and likewise for `F''`.
pub fn hyp2f1_jet<T: Real>(args: Hyp2F1Args<T>, side: Option<CutSide>) -> Result<[Cx<T>; 3]> {
    if let Some(m) = terminating_degree(&args)? {
        return Ok(polynomial(&args, m));
    }
    let f0 = evaluate(args, side, Strategy::Auto)?;
    let (a, b, c) = (args.a, args.b, args.c);
    let f1 = evaluate(args.shifted(T::one()), side, Strategy::Auto)? * (a * b / c);
    let k2 = a * (a + T::one()) * b * (b + T::one()) / (c * (c + T::one()));
    let f2 = evaluate(args.shifted(T::lit(2.0)), side, Strategy::Auto)? * k2;
    Ok([f0, f1, f2])
}

fn near_nonpositive_integer<T: Real>(x: Cx<T>) -> Option<usize> {
    let tol = T::lit(1e3) * T::epsilon() * (T::one() + x.re.abs());
    let r = x.re.round();
    if x.im.abs() <= tol && r <= T::zero() && (x.re - r).abs() <= tol {
        (-r).to_usize()
    } else {
        None
    }
}

/// Degree of the polynomial when the series terminates; `PoleParameter`
/// when `c` is a nonpositive integer and the series does not terminate first.
fn terminating_degree<T: Real>(args: &Hyp2F1Args<T>) -> Result<Option<usize>> {
    let m = match (near_nonpositive_integer(args.a), near_nonpositive_integer(args.b)) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    if let Some(n) = near_nonpositive_integer(args.c) {
        match m {
            Some(m) if m <= n => {}
            _ => return Err(Error::PoleParameter { c: format!("{}", args.c) }),
        }
    }
    Ok(m)
}

fn polynomial<T: Real>(args: &Hyp2F1Args<T>, m: usize) -> [Cx<T>; 3] {
    let z = args.z;
    let zero = cx(T::zero(), T::zero());
    let (mut f, mut d1, mut d2) = (zero, zero, zero);
    let mut coef = re::<T>(T::one());
    // Horner-free direct sum; m is small in practice.
    let mut zk = re::<T>(T::one());
    let mut zk1 = zero; // z^{k-1}
    let mut zk2 = zero; // z^{k-2}
    for k in 0..=m {
        let kf = T::from_usize(k).unwrap();
        f = f + coef * zk;
        d1 = d1 + coef * zk1 * kf;
        d2 = d2 + coef * zk2 * (kf * (kf - T::one()));
        let ratio = (args.a + kf) * (args.b + kf) / ((args.c + kf) * (kf + T::one()));
        coef = coef * ratio;
        zk2 = zk1;
        zk1 = zk;
        zk = zk * z;
    }
    [f, d1, d2]
}

fn evaluate<T: Real>(args: Hyp2F1Args<T>, side: Option<CutSide>, strategy: Strategy) -> Result<Cx<T>> {
    let Hyp2F1Args { a, b, c, z } = args;
    let finite = |w: Cx<T>| w.re.is_finite() && w.im.is_finite();
    if !(finite(a) && finite(b) && finite(c) && finite(z)) {
        return Err(Error::NoConvergence { z: format!("{z}") });
    }
    if let Some(m) = terminating_degree(&args)? {
        return Ok(polynomial(&args, m)[0]);
    }
    if z == cx(T::zero(), T::zero()) {
        return Ok(re(T::one()));
    }
    let one = re::<T>(T::one());
    let on_cut = z.im == T::zero() && z.re > T::one();
    match strategy {
        Strategy::Series => return series(a, b, c, z).map(|(f, _)| f),
        Strategy::Pfaff => return pfaff(a, b, c, z),
        Strategy::Continuation => {
            if on_cut && side.is_none() {
                return Err(Error::CutAmbiguity { z: format!("{z}") });
            }
            return continuation(a, b, c, z, side.unwrap_or_default());
        }
        Strategy::Auto => {}
    }
    let small = T::lit(SERIES_RADIUS);
    if z.norm() <= small {
        return series(a, b, c, z).map(|(f, _)| f);
    }
    if z == one {
        return gauss_at_one(a, b, c);
    }
    if on_cut {
        return match side {
            Some(s) => continuation(a, b, c, z, s),
            None => Err(Error::CutAmbiguity { z: format!("{z}") }),
        };
    }
    if (z / (z - one)).norm() <= small {
        return pfaff(a, b, c, z);
    }
    continuation(a, b, c, z, side.unwrap_or_default())
}

/// Maclaurin series; returns `(F, F')`.
fn series<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
    let eps = T::epsilon();
    let mut term = re::<T>(T::one());
    let mut sum = term;
    let mut dsum = cx(T::zero(), T::zero()); // sum of n t_n z^{n-1}, accumulated as n t_n
    let mut small_run = 0;
    for n in 0..MAX_SERIES_TERMS {
        let nf = T::from_usize(n).unwrap();
        term = term * (a + nf) * (b + nf) / ((c + nf) * (nf + T::one())) * z;
        sum = sum + term;
        dsum = dsum + term * (nf + T::one());
        let tn = term.norm();
        if tn <= eps * sum.norm() && tn * (nf + T::one()) <= eps * dsum.norm().max(sum.norm()) {
            small_run += 1;
            if small_run >= 3 {
                let d = if z.norm() > T::zero() { dsum / z } else { a * b / c };
                return Ok((sum, d));
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence { z: format!("{z}") })
}

fn pfaff<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<Cx<T>> {
    let one = re::<T>(T::one());
    let w = z / (z - one);
    let (f, _) = series(a, c - b, c, w)?;
    Ok((-a * (one - z).ln()).exp() * f)
}

fn gauss_at_one<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>) -> Result<Cx<T>> {
    if (c - a - b).re <= T::zero() {
        return Err(Error::NoConvergence { z: "1".into() });
    }
    Ok(gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b))
}

/// Path from the anchor to `z` that avoids `[1, inf)` except possibly at `z`.
fn path<T: Real>(z: Cx<T>, side: CutSide) -> Vec<Cx<T>> {
    let r = T::lit(ANCHOR_RADIUS);
    if z.re <= T::one() {
        let dir = z / z.norm();
        vec![dir * r, z]
    } else {
        let s = if z.im > T::zero() {
            T::one()
        } else if z.im < T::zero() {
            -T::one()
        } else {
            side.sign()
        };
        vec![cx(T::zero(), s * r), cx(T::one(), s), z]
    }
}

fn continuation<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>, side: CutSide) -> Result<Cx<T>> {
    let waypoints = path(z, side);
    let mut zc = waypoints[0];
    let (mut f, mut df) = series(a, b, c, zc)?;
    let frac = T::lit(STEP_FRACTION);
    let tiny = T::lit(1e3) * T::epsilon();
    let mut steps = 0;
    for &target in &waypoints[1..] {
        loop {
            let d = target - zc;
            let dist = d.norm();
            if dist == T::zero() {
                break;
            }
            let radius = zc.norm().min((re::<T>(T::one()) - zc).norm());
            if radius <= tiny {
                return Err(Error::NoConvergence { z: format!("{z}") });
            }
            let hmax = radius * frac;
            let (t, last) = if dist <= hmax { (d, true) } else { (d * (hmax / dist), false) };
            let (nf, ndf) =
                taylor_step(a, b, c, zc, f, df, t).ok_or_else(|| Error::NoConvergence { z: format!("{z}") })?;
            f = nf;
            df = ndf;
            zc = if last { target } else { zc + t };
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::NoConvergence { z: format!("{z}") });
            }
            if last {
                break;
            }
        }
    }
    Ok(f)
}

/// Advances `(F, F')` from `z0` to `z0 + t` with the Taylor series generated
/// by the hypergeometric equation. Works with scaled coefficients `f_n t^n`.
fn taylor_step<T: Real>(
    a: Cx<T>,
    b: Cx<T>,
    c: Cx<T>,
    z0: Cx<T>,
    f: Cx<T>,
    df: Cx<T>,
    t: Cx<T>,
) -> Option<(Cx<T>, Cx<T>)> {
    let one = re::<T>(T::one());
    let two = T::lit(2.0);
    let eps = T::epsilon();
    let denom = z0 * (one - z0);
    let lin = one - z0 * two;
    let shift = c - (a + b + one) * z0;
    let t2 = t * t;

    let mut g_prev = f; // f_n t^n at n
    let mut g_cur = df * t; // at n + 1
    let mut sum = g_prev + g_cur;
    let mut dsum_t = g_cur; // sum n f_n t^n, divided by t at the end
    let mut small_run = 0;
    for n in 0..MAX_TAYLOR_TERMS {
        let nf = T::from_usize(n).unwrap();
        let n1 = nf + T::one();
        let n2 = nf + two;
        let g_next = ((a + nf) * (b + nf) * g_prev * t2 - (lin * nf + shift) * g_cur * t * n1) / (denom * n1 * n2);
        sum = sum + g_next;
        dsum_t = dsum_t + g_next * n2;
        let scale = sum.norm().max(dsum_t.norm());
        if (g_next.norm() * n2) <= eps * scale {
            small_run += 1;
            if small_run >= 3 {
                let out = (sum, dsum_t / t);
                let ok = out.0.re.is_finite() && out.0.im.is_finite() && out.1.re.is_finite() && out.1.im.is_finite();
                return ok.then_some(out);
            }
        } else {
            small_run = 0;
        }
        g_prev = g_cur;
        g_cur = g_next;
    }
    None
}

#[cfg(test)]
mod tests;
