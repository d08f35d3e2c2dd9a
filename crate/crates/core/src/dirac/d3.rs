//! Two-mass system on the family solution:
//!
//! ```text
//! (-i D + i c u_g + K2) w2 = K1 w1
//! ( i D + i c u_p + K1) w1 = K2 w2
//! ```
//!
//! Eliminating a component gives `w_i'' + P w_i' + Q_i w_i = 0` with
//! `P = c (u_p - u_g) - i (K1 - K2)`. The gauge `w_i = f z_i`,
//! `f = e^{i eta dK / 2} / (I + lambda)^{1/2}`, removes `P` and leaves
//! `z_i'' + (Q_i - P'/2 - P^2/4) z_i = 0`. The domain is `eta >= 0`.

use crate::closed_form::w_seed_jet;
use crate::closed_form::{u_particular_raw, w_fermionic_jet};
use crate::darboux::{integral_raw, u_general_raw, w_general_jet};
use crate::error::{Error, Result};
use crate::grid::{FunctionTrace, Grid};
use crate::numverify::{integrate_ode, integrate_system, IntegratorOptions, ResidualReport};
use crate::ode::LinearODE;
use crate::params::ModelParams;
use crate::scalar::{cx, imag_unit, re, Cx, Jet, Real};

use super::SpinorTrace;

/// Placement of the imaginary unit on the mass terms of `Q_i`.
///
/// `AsPrinted`: `c (+-u_i' + i K1 u_g + K2 u_p) - c^2 u_p u_g`.
/// `IOnBoth`: `c (+-u_i' + i (K1 u_g + K2 u_p)) - c^2 u_p u_g`, which is what
/// elimination from the first-order system produces. The two agree when `K2 = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BracketVariant {
    #[default]
    AsPrinted,
    IOnBoth,
}

fn check_domain<T: Real>(p: &ModelParams<T>, eta: T) -> Result<()> {
    if eta < T::zero() {
        return Err(Error::DomainError { eta: eta.as_f64() });
    }
    p.check_riccati_pole(eta)
}

fn component(i: usize) -> Result<()> {
    if i == 1 || i == 2 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("component index must be 1 or 2, got {i}")))
    }
}

struct Coefficients<T: Real> {
    p: Cx<T>,
    dp: Cx<T>,
    q: [Cx<T>; 2],
}

fn coefficients<T: Real>(p: &ModelParams<T>, eta: T, variant: BracketVariant) -> Coefficients<T> {
    let c = p.c;
    let up = u_particular_raw(p, eta);
    let ug = u_general_raw(p, eta);
    let mass = match variant {
        BracketVariant::AsPrinted => cx(p.k2 * up.value, p.k1 * ug.value) * c,
        BracketVariant::IOnBoth => cx(T::zero(), p.k1 * ug.value + p.k2 * up.value) * c,
    };
    let prod = re(c * c * up.value * ug.value);
    Coefficients {
        p: cx(c * (up.value - ug.value), -(p.k1 - p.k2)),
        dp: re(c * (up.d1 - ug.d1)),
        q: [re(c * up.d1) + mass - prod, re(-c * ug.d1) + mass - prod],
    }
}

/// Second-order equations `(for w1, for w2)` obtained by elimination.
pub fn d3_system<T: Real>(p: &ModelParams<T>, variant: BracketVariant) -> (LinearODE<T>, LinearODE<T>) {
    let make = |i: usize| {
        let p = *p;
        LinearODE::new(
            format!("w{i}'' + [c (u_p - u_g) - i (K1 - K2)] w{i}' + Q{i} w{i} = 0"),
            move |eta| coefficients(&p, eta, variant).p,
            move |eta| coefficients(&p, eta, variant).q[i - 1],
        )
    };
    (make(1), make(2))
}

/// `Q_i - P'/2 - P^2/4` at `eta`.
pub fn q_free_term<T: Real>(p: &ModelParams<T>, i: usize, eta: T, variant: BracketVariant) -> Result<Cx<T>> {
    component(i)?;
    check_domain(p, eta)?;
    Ok(gauged_q(p, i, eta, variant))
}

fn gauged_q<T: Real>(p: &ModelParams<T>, i: usize, eta: T, variant: BracketVariant) -> Cx<T> {
    let k = coefficients(p, eta, variant);
    k.q[i - 1] - k.dp * T::lit(0.5) - k.p * k.p * T::lit(0.25)
}

/// Standard-form equation `z_i'' + (Q_i - P'/2 - P^2/4) z_i = 0`.
pub fn gauged_ode<T: Real>(p: &ModelParams<T>, i: usize, variant: BracketVariant) -> Result<LinearODE<T>> {
    component(i)?;
    let p = *p;
    Ok(LinearODE::standard(format!("z{i}'' + (Q{i} - P'/2 - P^2/4) z{i} = 0"), move |eta| {
        gauged_q(&p, i, eta, variant)
    }))
}

/// `f = e^{i eta dK / 2} (I + lambda)^{-1/2}` with derivatives.
pub fn gauge_factor<T: Real>(p: &ModelParams<T>, eta: T) -> Result<Jet<Cx<T>>> {
    if eta < T::zero() {
        return Err(Error::DomainError { eta: eta.as_f64() });
    }
    let half = T::lit(0.5);
    let dk = p.k1 - p.k2;
    let w = w_seed_jet(p, eta);
    let s = integral_raw(p, eta) + p.lambda;
    let w2 = w.value * w.value;
    let f = cx(T::zero(), eta * dk * half).exp() / s.sqrt();
    // g = f'/f
    let g = cx(-w2 / s * half, dk * half);
    let dg = re(-w.value * w.d1 / s + w2 * w2 / (s * s) * half);
    Ok(Jet::new(f, f * g, f * (g * g + dg)))
}

fn map_trace<T: Real, F>(p: &ModelParams<T>, t: &FunctionTrace<T>, op: F) -> Result<FunctionTrace<T>>
where
    F: Fn(Jet<Cx<T>>, [Option<Cx<T>>; 3]) -> [Option<Cx<T>>; 3],
{
    let n = t.len();
    let (mut v, mut d1, mut d2) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for (k, &eta) in t.grid.points().iter().enumerate() {
        let f = gauge_factor(p, eta)?;
        let [a, b, c] = op(f, [Some(t.values[k]), t.d1.as_ref().map(|d| d[k]), t.d2.as_ref().map(|d| d[k])]);
        v.push(a.unwrap());
        d1.extend(b);
        d2.extend(c);
    }
    let d1 = t.d1.as_ref().map(|_| d1);
    let d2 = t.d2.as_ref().map(|_| d2);
    FunctionTrace::new(t.grid.clone(), v, d1, d2)
}

/// `w = f z`, carrying whichever derivatives `z` has (`w''` needs `z'`).
pub fn gauge_transform<T: Real>(p: &ModelParams<T>, z: &FunctionTrace<T>) -> Result<FunctionTrace<T>> {
    if z.d2.is_some() && z.d1.is_none() {
        return Err(Error::MissingDerivative { order: "first" });
    }
    map_trace(p, z, |f, [z0, z1, z2]| {
        let z0 = z0.unwrap();
        let w1 = z1.map(|z1| f.d1 * z0 + f.value * z1);
        let w2 = z2.map(|z2| f.d2 * z0 + f.d1 * z1.unwrap() * T::lit(2.0) + f.value * z2);
        [Some(f.value * z0), w1, w2]
    })
}

/// `z = w / f`, inverse of [`gauge_transform`].
pub fn inverse_gauge_transform<T: Real>(p: &ModelParams<T>, w: &FunctionTrace<T>) -> Result<FunctionTrace<T>> {
    if w.d2.is_some() && w.d1.is_none() {
        return Err(Error::MissingDerivative { order: "first" });
    }
    map_trace(p, w, |f, [w0, w1, w2]| {
        let z0 = w0.unwrap() / f.value;
        let z1 = w1.map(|w1| (w1 - f.d1 * z0) / f.value);
        let z2 = w2.map(|w2| (w2 - f.d2 * z0 - f.d1 * z1.unwrap() * T::lit(2.0)) / f.value);
        [Some(z0), z1, z2]
    })
}

/// Values and first derivatives of both components at the left grid edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorInit<T: Real> {
    pub w1: Cx<T>,
    pub dw1: Cx<T>,
    pub w2: Cx<T>,
    pub dw2: Cx<T>,
}

impl<T: Real> SpinorInit<T> {
    /// Derivatives fixed by the first-order system for given values.
    pub fn consistent(p: &ModelParams<T>, eta0: T, w1: Cx<T>, w2: Cx<T>) -> Result<Self> {
        check_domain(p, eta0)?;
        let [dw1, dw2] = d3_rhs(p, eta0, &[w1, w2]);
        Ok(Self { w1, dw1, w2, dw2 })
    }

    /// Values `(w_f, w_g)` at `eta0` with consistent derivatives; for
    /// `K1 = K2 = 0` and `d = 0` this reproduces the closed-form spinor.
    pub fn from_closed_forms(p: &ModelParams<T>, eta0: T) -> Result<Self> {
        let wf = w_fermionic_jet(p, eta0)?.value;
        let wg = w_general_jet(p, eta0)?.value;
        Self::consistent(p, eta0, re(wf), re(wg))
    }
}

fn d3_rhs<T: Real>(p: &ModelParams<T>, eta: T, w: &[Cx<T>; 2]) -> [Cx<T>; 2] {
    let i = imag_unit::<T>();
    let ap = cx(p.k1, p.c * u_particular_raw(p, eta).value);
    let ag = cx(p.k2, p.c * u_general_raw(p, eta).value);
    [-i * (w[1] * p.k2 - ap * w[0]), i * (w[0] * p.k1 - ag * w[1])]
}

fn check_grid<T: Real>(p: &ModelParams<T>, grid: &Grid<T>) -> Result<()> {
    grid.points().iter().try_for_each(|&eta| check_domain(p, eta))
}

/// Solves both gauged equations from `init` at the first grid point and
/// returns the spinor in the original gauge.
pub fn solve_d3_numeric<T: Real>(
    p: &ModelParams<T>,
    grid: &Grid<T>,
    init: SpinorInit<T>,
    variant: BracketVariant,
) -> Result<SpinorTrace<T>> {
    check_grid(p, grid)?;
    let f = gauge_factor(p, grid.start().max(grid.points()[0]))?;
    let mut parts = Vec::with_capacity(2);
    for (i, (w, dw)) in [(1, (init.w1, init.dw1)), (2, (init.w2, init.dw2))] {
        let z0 = w / f.value;
        let dz0 = (dw - f.d1 * z0) / f.value;
        let z = integrate_ode(&gauged_ode(p, i, variant)?, z0, dz0, grid)?;
        parts.push(gauge_transform(p, &z)?);
    }
    let w2 = parts.pop().unwrap();
    let w1 = parts.pop().unwrap();
    SpinorTrace::from_components(w1, w2)
}

/// Integrates the first-order system directly from `(w1, w2)` at the first grid point.
pub fn integrate_d3_coupled<T: Real>(
    p: &ModelParams<T>,
    grid: &Grid<T>,
    w1: Cx<T>,
    w2: Cx<T>,
) -> Result<SpinorTrace<T>> {
    check_grid(p, grid)?;
    let p = *p;
    let states = integrate_system(|t, y| d3_rhs(&p, t, y), [w1, w2], grid, IntegratorOptions::default())?;
    let derivs: Vec<[Cx<T>; 2]> = grid.points().iter().zip(&states).map(|(&t, s)| d3_rhs(&p, t, s)).collect();
    Ok(SpinorTrace {
        grid: grid.clone(),
        w1: states.iter().map(|s| s[0]).collect(),
        w2: states.iter().map(|s| s[1]).collect(),
        dw1: Some(derivs.iter().map(|s| s[0]).collect()),
        dw2: Some(derivs.iter().map(|s| s[1]).collect()),
    })
}

/// Row residuals `|(-i D + i c u_g + K2) w2 - K1 w1|` and
/// `|(i D + i c u_p + K1) w1 - K2 w2|`.
pub fn d3_coupled_residual<T: Real>(
    p: &ModelParams<T>,
    s: &SpinorTrace<T>,
    tol: T,
) -> Result<(ResidualReport, ResidualReport)> {
    let (dw1, dw2) = s.derivatives()?;
    let i = imag_unit::<T>();
    let (mut ra, mut rb) = (Vec::with_capacity(s.len()), Vec::with_capacity(s.len()));
    for (n, &eta) in s.grid.points().iter().enumerate() {
        check_domain(p, eta)?;
        let ap = cx(p.k1, p.c * u_particular_raw(p, eta).value);
        let ag = cx(p.k2, p.c * u_general_raw(p, eta).value);
        ra.push((-i * dw2[n] + ag * s.w2[n] - s.w1[n] * p.k1).norm());
        rb.push((i * dw1[n] + ap * s.w1[n] - s.w2[n] * p.k2).norm());
    }
    Ok((ResidualReport::from_pointwise(&s.grid, &ra, tol), ResidualReport::from_pointwise(&s.grid, &rb, tol)))
}
