//! Single-mass system: `L1 w1 = K w2`, `L2 w2 = K w1` with
//! `L1 = i D + i c u_p + K` and `L2 = -i D + i c u_p + K`.
//!
//! Eliminating one component gives
//!
//! ```text
//! w1'' - [c c_f - 2 i c K u_p] w1 = 0
//! w2'' + [kappa c^2 + 2 i c K u_p] w2 = 0
//! ```
//!
//! The bosonic equation is solved by Gauss hypergeometric functions in
//! `y = e^{i c eta}` (`kappa = +1`) or `y = e^{c eta}` (`kappa = -1`).

use std::cell::RefCell;

use crate::closed_form::{fermionic_free_term_raw, u_particular_raw};
use crate::error::{Error, Result};
use crate::grid::{FunctionTrace, Grid};
use crate::hyp2f1::{hyp2f1_jet, CutSide, Hyp2F1Args};
use crate::numverify::{integrate_system, quadrature, IntegratorOptions, ResidualReport};
use crate::ode::LinearODE;
use crate::params::{Kappa, ModelParams};
use crate::scalar::{cx, imag_unit, is_finite_cx, re, Cx, Jet, Real};

use super::{momentum, SpinorTrace};

/// `c c_f - 2 i c K u_p`; the fermionic equation is `w1'' - bracket w1 = 0`.
pub fn fermionic_bracket<T: Real>(p: &ModelParams<T>, eta: T) -> Result<Cx<T>> {
    p.check_riccati_pole(eta)?;
    Ok(fermionic_bracket_raw(p, eta))
}

/// `kappa c^2 + 2 i c K u_p`; the bosonic equation is `w2'' + bracket w2 = 0`.
pub fn bosonic_bracket<T: Real>(p: &ModelParams<T>, eta: T) -> Result<Cx<T>> {
    p.check_riccati_pole(eta)?;
    Ok(bosonic_bracket_raw(p, eta))
}

fn fermionic_bracket_raw<T: Real>(p: &ModelParams<T>, eta: T) -> Cx<T> {
    let up = u_particular_raw(p, eta).value;
    let two = T::lit(2.0);
    cx(p.c * fermionic_free_term_raw(p, eta).value, -two * p.c * p.k_mass * up)
}

fn bosonic_bracket_raw<T: Real>(p: &ModelParams<T>, eta: T) -> Cx<T> {
    let up = u_particular_raw(p, eta).value;
    let two = T::lit(2.0);
    cx(p.kappa.sign::<T>() * p.c * p.c, two * p.c * p.k_mass * up)
}

/// Decoupled equations `(fermionic for w1, bosonic for w2)`, both with `P = 0`.
pub fn d2_free_terms<T: Real>(p: &ModelParams<T>) -> (LinearODE<T>, LinearODE<T>) {
    let (pf, pb) = (*p, *p);
    (
        LinearODE::standard("w1'' - [c c_f - 2 i c K u_p] w1 = 0", move |eta| -fermionic_bracket_raw(&pf, eta)),
        LinearODE::standard("w2'' + [kappa c^2 + 2 i c K u_p] w2 = 0", move |eta| bosonic_bracket_raw(&pb, eta)),
    )
}

/// Which parameter set to use for the hypergeometric closed forms.
///
/// `AsPrinted` keeps the original exponents (`p = sqrt(-1 - 2K/c)`,
/// `q = sqrt(1 - 2K/c)`, and `r +- i s` in the first `kappa = -1` branch),
/// which do not solve the bosonic equation. `Corrected` uses
/// `p = sqrt(1 + 2K/c)`, `q = sqrt(-1 + 2K/c)` and `r +- s`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum D2Convention {
    AsPrinted,
    #[default]
    Corrected,
}

/// Evaluation options for the closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct D2Options<T: Real> {
    pub convention: D2Convention,
    /// Side of the cut used for `kappa = -1`, where the argument `e^{2 c eta}` exceeds 1.
    pub side: CutSide,
    /// Branch of `ln(-1)` in the `(-1)^{-+ i r / 2}` prefactors.
    pub log_minus_one: Cx<T>,
}

impl<T: Real> Default for D2Options<T> {
    fn default() -> Self {
        Self { convention: D2Convention::Corrected, side: CutSide::Above, log_minus_one: cx(T::zero(), T::PI()) }
    }
}

/// One term `coef * e^{mu beta eta} * 2F1(a, b; c; eps e^{2 beta eta})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct D2Branch<T: Real> {
    pub coef: Cx<T>,
    pub mu: Cx<T>,
    pub beta: Cx<T>,
    pub eps: T,
    pub a: Cx<T>,
    pub b: Cx<T>,
    pub c: Cx<T>,
}

impl<T: Real> D2Branch<T> {
    /// Both branches for `p`, superposition constants included.
    pub fn pair(p: &ModelParams<T>, opts: &D2Options<T>) -> [Self; 2] {
        let i = imag_unit::<T>();
        let half = T::lit(0.5);
        let one = re::<T>(T::one());
        let two_k = re::<T>(T::lit(2.0) * p.k_mass / p.c);
        match p.kappa {
            Kappa::Plus => {
                let (pp, qq) = match opts.convention {
                    D2Convention::Corrected => ((one + two_k).sqrt(), (two_k - one).sqrt()),
                    D2Convention::AsPrinted => ((-one - two_k).sqrt(), (one - two_k).sqrt()),
                };
                let beta = cx(T::zero(), p.c);
                [
                    Self {
                        coef: p.sup_a,
                        mu: -pp,
                        beta,
                        eps: -T::one(),
                        a: -(pp + i * qq) * half,
                        b: -(pp - i * qq) * half,
                        c: one - pp,
                    },
                    Self {
                        coef: p.sup_b,
                        mu: pp,
                        beta,
                        eps: -T::one(),
                        a: (pp - i * qq) * half,
                        b: (pp + i * qq) * half,
                        c: one + pp,
                    },
                ]
            }
            Kappa::Minus => {
                let r = (-one - i * two_k).sqrt();
                let s = (-one + i * two_k).sqrt();
                let ir = i * r;
                let (a1, b1) = match opts.convention {
                    D2Convention::Corrected => (-(i * half) * (r + s), -(i * half) * (r - s)),
                    D2Convention::AsPrinted => (-(i * half) * (r + i * s), -(i * half) * (r - i * s)),
                };
                let beta = re(p.c);
                let lm = opts.log_minus_one;
                [
                    Self {
                        coef: p.sup_c * (-ir * half * lm).exp(),
                        mu: -ir,
                        beta,
                        eps: T::one(),
                        a: a1,
                        b: b1,
                        c: one - ir,
                    },
                    Self {
                        coef: p.sup_d * (ir * half * lm).exp(),
                        mu: ir,
                        beta,
                        eps: T::one(),
                        a: (i * half) * (r - s),
                        b: (i * half) * (r + s),
                        c: one + ir,
                    },
                ]
            }
        }
    }

    /// Value and two derivatives in `eta`.
    pub fn jet(&self, eta: T, side: CutSide) -> Result<Jet<Cx<T>>> {
        let zero = re::<T>(T::zero());
        if self.coef == zero {
            return Ok(Jet::new(zero, zero, zero));
        }
        let two = T::lit(2.0);
        let e2 = (self.beta * (two * eta)).exp();
        let z = e2 * self.eps;
        // exact zero imaginary part keeps kappa = -1 arguments on the cut
        let z = if self.beta.im == T::zero() { re(z.re) } else { z };
        let args = Hyp2F1Args::new(self.a, self.b, self.c, z);
        let [f, f1, f2] = hyp2f1_jet(args, Some(side)).map_err(|e| match e {
            Error::PoleParameter { .. } => {
                Error::BranchConflict { what: "1 +- p (or 1 +- i r) of a non-terminating branch" }
            }
            other => other,
        })?;
        let dz = z * self.beta * two;
        let ddz = z * self.beta * self.beta * T::lit(4.0);
        let g1 = f1 * dz;
        let g2 = f2 * dz * dz + f1 * ddz;
        let mb = self.mu * self.beta;
        let pre = self.coef * (mb * eta).exp();
        Ok(Jet::new(pre * f, pre * (mb * f + g1), pre * (mb * mb * f + mb * g1 * two + g2)))
    }
}

/// Closed-form bosonic solution at `eta`.
pub fn w2_closed_form<T: Real>(p: &ModelParams<T>, eta: T, opts: &D2Options<T>) -> Result<Cx<T>> {
    w2_closed_form_jet(p, eta, opts).map(|j| j.value)
}

/// Closed-form bosonic solution with derivatives.
pub fn w2_closed_form_jet<T: Real>(p: &ModelParams<T>, eta: T, opts: &D2Options<T>) -> Result<Jet<Cx<T>>> {
    p.check_riccati_pole(eta)?;
    let [b1, b2] = D2Branch::pair(p, opts);
    let (x, y) = (b1.jet(eta, opts.side)?, b2.jet(eta, opts.side)?);
    let out = Jet::new(x.value + y.value, x.d1 + y.d1, x.d2 + y.d2);
    if !(is_finite_cx(out.value) && is_finite_cx(out.d1) && is_finite_cx(out.d2)) {
        return Err(Error::NonFinite { eta: eta.as_f64() });
    }
    Ok(out)
}

/// Variable in which the reduction-of-order integral is accumulated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Eq24Integration {
    /// `int w2^2 d eta`.
    #[default]
    Eta,
    /// `int w2^2 dy` with `dy = beta y d eta`.
    YJacobian,
}

/// `w1 = (1 + k int_{eta_0}^{eta} w2^2) / w2`, `k = p.k_int`, integrated from
/// the first grid point. Derivatives are analytic given the jet of `w2`.
pub fn w1_from_w2<T: Real, F>(
    p: &ModelParams<T>,
    w2: F,
    grid: &Grid<T>,
    mode: Eq24Integration,
) -> Result<FunctionTrace<T>>
where
    F: Fn(T) -> Result<Jet<Cx<T>>>,
{
    let beta = match p.kappa {
        Kappa::Plus => cx(T::zero(), p.c),
        Kappa::Minus => re(p.c),
    };
    let two = T::lit(2.0);
    // (J', J'') from the jet of w2
    let weight = |eta: T, w: &Jet<Cx<T>>| -> (Cx<T>, Cx<T>) {
        let sq = w.value * w.value;
        let dsq = w.value * w.d1 * two;
        match mode {
            Eq24Integration::Eta => (sq, dsq),
            Eq24Integration::YJacobian => {
                let by = beta * (beta * eta).exp();
                (sq * by, dsq * by + sq * by * beta)
            }
        }
    };
    let k = p.k_int;
    let tol = T::lit(1e-13).max(T::epsilon() * T::lit(100.0));
    let pts = grid.points();
    let n = pts.len();
    let (mut v, mut d1, mut d2) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    let mut acc = re::<T>(T::zero());
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    for (idx, &eta) in pts.iter().enumerate() {
        if idx > 0 && k != T::zero() {
            let seg = quadrature(
                |x| match w2(x) {
                    Ok(j) => weight(x, &j).0,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        re(T::nan())
                    }
                },
                pts[idx - 1],
                eta,
                tol,
            );
            if let Some(e) = failure.borrow_mut().take() {
                return Err(e);
            }
            acc = acc + seg?;
        }
        let w = w2(eta)?;
        if w.value.norm() == T::zero() || w.value.norm() <= w.d1.norm() * p.excluded_radius {
            return Err(Error::ZeroDivision { eta: eta.as_f64() });
        }
        let (j1, j2) = weight(eta, &w);
        let nn = acc * k + T::one();
        let (n1, n2) = (j1 * k, j2 * k);
        let (u, u1, u2) = (w.value, w.d1, w.d2);
        v.push(nn / u);
        d1.push(n1 / u - nn * u1 / (u * u));
        d2.push(n2 / u - n1 * u1 * two / (u * u) - nn * u2 / (u * u) + nn * u1 * u1 * two / (u * u * u));
    }
    FunctionTrace::new(grid.clone(), v, Some(d1), Some(d2))
}

/// Fermionic partner `w1 = L2 w2 / K` of a bosonic solution, with
/// derivatives. `w2'''` is taken from the bosonic equation.
pub fn fermionic_partner<T: Real>(p: &ModelParams<T>, w2: Jet<Cx<T>>, eta: T) -> Result<Jet<Cx<T>>> {
    if p.k_mass == T::zero() {
        return Err(Error::InvalidParams("the partner map needs K > 0".into()));
    }
    p.check_riccati_pole(eta)?;
    let i = imag_unit::<T>();
    let up = u_particular_raw(p, eta);
    let kk = re::<T>(p.k_mass);
    let a = i * (p.c * up.value) + kk;
    let a1 = i * (p.c * up.d1);
    let a2 = i * (p.c * up.d2);
    let b = bosonic_bracket_raw(p, eta);
    let b1 = i * (T::lit(2.0) * p.c * p.k_mass * up.d1);
    let w3 = -(b1 * w2.value + b * w2.d1);
    let two = T::lit(2.0);
    Ok(Jet::new(
        (momentum(&w2) + a * w2.value) / kk,
        (-i * w2.d2 + a1 * w2.value + a * w2.d1) / kk,
        (-i * w3 + a2 * w2.value + a1 * w2.d1 * two + a * w2.d2) / kk,
    ))
}

fn d2_rhs<T: Real>(p: &ModelParams<T>, eta: T, w: &[Cx<T>; 2]) -> [Cx<T>; 2] {
    let i = imag_unit::<T>();
    let kk = re::<T>(p.k_mass);
    let a = i * (p.c * u_particular_raw(p, eta).value) + kk;
    [-i * (kk * w[1] - a * w[0]), i * (kk * w[0] - a * w[1])]
}

/// Integrates the first-order coupled pair from `(w1, w2)` at the first grid point.
pub fn integrate_d2_coupled<T: Real>(
    p: &ModelParams<T>,
    grid: &Grid<T>,
    w1: Cx<T>,
    w2: Cx<T>,
) -> Result<SpinorTrace<T>> {
    for &eta in grid.points() {
        p.check_riccati_pole(eta)?;
    }
    let p = *p;
    let states = integrate_system(|t, y| d2_rhs(&p, t, y), [w1, w2], grid, IntegratorOptions::default())?;
    let derivs: Vec<[Cx<T>; 2]> = grid.points().iter().zip(&states).map(|(&t, s)| d2_rhs(&p, t, s)).collect();
    Ok(SpinorTrace {
        grid: grid.clone(),
        w1: states.iter().map(|s| s[0]).collect(),
        w2: states.iter().map(|s| s[1]).collect(),
        dw1: Some(derivs.iter().map(|s| s[0]).collect()),
        dw2: Some(derivs.iter().map(|s| s[1]).collect()),
    })
}

/// Row residuals `|L1 w1 - K w2|` and `|L2 w2 - K w1|` of a spinor carrying derivatives.
pub fn d2_coupled_residual<T: Real>(
    p: &ModelParams<T>,
    s: &SpinorTrace<T>,
    tol: T,
) -> Result<(ResidualReport, ResidualReport)> {
    let (dw1, dw2) = s.derivatives()?;
    let i = imag_unit::<T>();
    let kk = re::<T>(p.k_mass);
    let (mut r1, mut r2) = (Vec::with_capacity(s.len()), Vec::with_capacity(s.len()));
    for (n, &eta) in s.grid.points().iter().enumerate() {
        p.check_riccati_pole(eta)?;
        let a = i * (p.c * u_particular_raw(p, eta).value) + kk;
        r1.push((i * dw1[n] + a * s.w1[n] - kk * s.w2[n]).norm());
        r2.push((-i * dw2[n] + a * s.w2[n] - kk * s.w1[n]).norm());
    }
    Ok((ResidualReport::from_pointwise(&s.grid, &r1, tol), ResidualReport::from_pointwise(&s.grid, &r2, tol)))
}
