//! One-parameter family built on the general solution of the fermionic
//! Riccati equation.
//!
//! With `s(eta) = I(eta) + lambda`, `I(eta) = int_0^eta w_seed^2`:
//!
//! ```text
//! u_g   = u_p - w_seed^2 / (c s)
//! w_g   = w_seed / s
//! -kappa c_kappa = c u_g^2 + u_g'
//!                = -kappa c - 4 w w' / (c s) + 2 w^4 / (c s^2)
//! ```
//!
//! The domain is the half line `eta >= 0`.

use crate::closed_form::{u_particular_raw, w_seed_jet};
use crate::error::{Error, Result};
use crate::ode::LinearODE;
use crate::params::{Kappa, ModelParams};
use crate::scalar::{re, Jet, Real};

fn check_half_line<T: Real>(eta: T) -> Result<()> {
    if eta < T::zero() {
        return Err(Error::DomainError { eta: eta.as_f64() });
    }
    Ok(())
}

pub(crate) fn integral_raw<T: Real>(p: &ModelParams<T>, eta: T) -> T {
    let (c, w2) = (p.c, p.amp_w * p.amp_w);
    let (two, four) = (T::lit(2.0), T::lit(4.0));
    match p.kappa {
        Kappa::Plus => {
            let phi = p.phase_phi;
            w2 * (eta / two + ((two * (c * eta + phi)).sin() - (two * phi).sin()) / (four * c))
        }
        Kappa::Minus => w2 * ((two * c * eta).sinh() / (four * c) - eta / two),
    }
}

/// `I(eta) = int_0^eta w_seed(y)^2 dy` in closed form.
pub fn integral_i<T: Real>(p: &ModelParams<T>, eta: T) -> Result<T> {
    check_half_line(eta)?;
    Ok(integral_raw(p, eta))
}

/// `I` with derivatives `I' = w^2`, `I'' = 2 w w'`.
pub fn integral_i_jet<T: Real>(p: &ModelParams<T>, eta: T) -> Result<Jet<T>> {
    check_half_line(eta)?;
    let w = w_seed_jet(p, eta);
    Ok(Jet::new(integral_raw(p, eta), w.value * w.value, T::lit(2.0) * w.value * w.d1))
}

pub(crate) fn u_general_raw<T: Real>(p: &ModelParams<T>, eta: T) -> Jet<T> {
    let up = u_particular_raw(p, eta);
    let w = w_seed_jet(p, eta);
    let s = integral_raw(p, eta) + p.lambda;
    let two = T::lit(2.0);
    let g = w.value * w.value / s;
    let ww1 = w.value * w.d1;
    let g1 = two * ww1 / s - g * g;
    let g2 = two * (w.d1 * w.d1 + w.value * w.d2) / s - two * ww1 * w.value * w.value / (s * s) - two * g * g1;
    Jet::new(up.value - g / p.c, up.d1 - g1 / p.c, up.d2 - g2 / p.c)
}

/// General Riccati solution `u_g(eta; lambda)`.
pub fn u_general<T: Real>(p: &ModelParams<T>, eta: T) -> Result<T> {
    u_general_jet(p, eta).map(|j| j.value)
}

pub fn u_general_jet<T: Real>(p: &ModelParams<T>, eta: T) -> Result<Jet<T>> {
    check_half_line(eta)?;
    p.check_riccati_pole(eta)?;
    Ok(u_general_raw(p, eta))
}

pub(crate) fn family_free_term_raw<T: Real>(p: &ModelParams<T>, eta: T) -> (T, T) {
    let w = w_seed_jet(p, eta);
    let s = integral_raw(p, eta) + p.lambda;
    let c = p.c;
    let (two, four, eight) = (T::lit(2.0), T::lit(4.0), T::lit(8.0));
    let (v, v1) = (w.value, w.d1);
    let v2 = v * v;
    let v4 = v2 * v2;
    let y = -four * v * v1 / (c * s) + two * v4 / (c * s * s);
    let dy =
        -four * (v1 * v1 + v * w.d2) / (c * s) + four * v * v1 * v2 / (c * s * s) + eight * v2 * v * v1 / (c * s * s)
            - four * v4 * v2 / (c * s * s * s);
    let kappa = p.kappa.sign::<T>();
    (c - kappa * y, -kappa * dy)
}

/// Family free term `c_kappa(eta; lambda)`, normalized so that
/// `c u_g^2 + u_g' = -kappa c_kappa`; tends to `c` as `lambda -> inf`.
pub fn family_free_term<T: Real>(p: &ModelParams<T>, eta: T) -> Result<T> {
    family_free_term_with_derivative(p, eta).map(|(v, _)| v)
}

/// `c_kappa` together with its first derivative.
pub fn family_free_term_with_derivative<T: Real>(p: &ModelParams<T>, eta: T) -> Result<(T, T)> {
    check_half_line(eta)?;
    Ok(family_free_term_raw(p, eta))
}

pub(crate) fn w_general_raw<T: Real>(p: &ModelParams<T>, eta: T) -> Jet<T> {
    let w = w_seed_jet(p, eta);
    let s = integral_raw(p, eta) + p.lambda;
    let (two, four) = (T::lit(2.0), T::lit(4.0));
    let v2 = w.value * w.value;
    Jet::new(
        w.value / s,
        w.d1 / s - v2 * w.value / (s * s),
        w.d2 / s - four * v2 * w.d1 / (s * s) + two * v2 * v2 * w.value / (s * s * s),
    )
}

/// Zero mode `w_g = w_seed / (I + lambda)`.
pub fn w_general<T: Real>(p: &ModelParams<T>, eta: T) -> Result<T> {
    w_general_jet(p, eta).map(|j| j.value)
}

pub fn w_general_jet<T: Real>(p: &ModelParams<T>, eta: T) -> Result<Jet<T>> {
    check_half_line(eta)?;
    Ok(w_general_raw(p, eta))
}

/// `w'' + kappa c c_kappa(eta; lambda) w = 0`, annihilating `w_g`.
pub fn zero_mode_ode<T: Real>(p: &ModelParams<T>) -> LinearODE<T> {
    let p = *p;
    LinearODE::standard("w'' + kappa c c_kappa(eta; lambda) w = 0", move |eta| {
        re(p.kappa.sign::<T>() * p.c * family_free_term_raw(&p, eta).0)
    })
}

/// A member of the family at fixed `lambda`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyMember<T: Real> {
    pub params: ModelParams<T>,
}

impl<T: Real> FamilyMember<T> {
    pub fn new(params: ModelParams<T>) -> Self {
        Self { params }
    }

    pub fn lambda(&self) -> T {
        self.params.lambda
    }

    pub fn u_g(&self, eta: T) -> Result<Jet<T>> {
        u_general_jet(&self.params, eta)
    }

    pub fn free_term(&self, eta: T) -> Result<T> {
        family_free_term(&self.params, eta)
    }

    pub fn w_g(&self, eta: T) -> Result<Jet<T>> {
        w_general_jet(&self.params, eta)
    }

    pub fn integral(&self, eta: T) -> Result<T> {
        integral_i(&self.params, eta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{fermionic_free_term, u_particular, w_seed};
    use crate::grid::Grid;
    use crate::numverify::{quadrature, residual};
    use std::f64::consts::PI;

    fn params(kappa: Kappa, c: f64, lambda: f64) -> ModelParams<f64> {
        ModelParams::new(kappa, c).unwrap().with_lambda(lambda)
    }

    #[test]
    fn integral_values() {
        let p = params(Kappa::Plus, 1.0, 1.0);
        assert_eq!(integral_i(&p, 0.0).unwrap(), 0.0);
        assert!((integral_i(&p, PI).unwrap() - PI / 2.0).abs() < 1e-15);
        let m = params(Kappa::Minus, 1.0, 1.0);
        let v = integral_i(&m, 1.0).unwrap();
        assert!((v - (2.0f64.sinh() / 4.0 - 0.5)).abs() < 1e-15);
        assert!((v - 0.40672).abs() < 1e-5);
        assert!(matches!(integral_i(&p, -0.1), Err(Error::DomainError { .. })));
    }

    #[test]
    fn integral_matches_quadrature_with_phase_and_amplitude() {
        let p = params(Kappa::Plus, 1.7, 1.0).with_amp(1.3).with_phases(0.4, 0.0);
        for eta in [0.3, 1.1, 2.9] {
            let q = quadrature(|y: f64| re(w_seed(&p, y).powi(2)), 0.0, eta, 1e-12).unwrap();
            assert!((q.re - integral_i(&p, eta).unwrap()).abs() < 1e-11);
        }
    }

    #[test]
    fn general_solution_values() {
        let p = params(Kappa::Plus, 1.0, 1.0);
        assert!((u_general(&p, 0.0).unwrap() + 1.0).abs() < 1e-15);
        let m = params(Kappa::Minus, 1.0, 5.0);
        assert!(matches!(u_general(&m, 0.0), Err(Error::SingularPoint { .. })));
        let big = params(Kappa::Plus, 1.0, 1e12);
        let e = 0.7;
        assert!((u_general(&big, e).unwrap() - u_particular(&big, e).unwrap()).abs() < 1e-11);
    }

    #[test]
    fn free_term_values() {
        let p = params(Kappa::Plus, 1.0, 1.0);
        assert!((family_free_term(&p, 0.0).unwrap() + 1.0).abs() < 1e-15);
        for kappa in [Kappa::Plus, Kappa::Minus] {
            let big = params(kappa, 1.0, 1e12);
            assert!((family_free_term(&big, 0.9).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_mode_values() {
        let p = params(Kappa::Plus, 1.0, 2.0);
        assert_eq!(w_general(&p, 0.0).unwrap(), 0.5);
        assert_eq!(w_general(&params(Kappa::Minus, 3.0, 7.0), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn zero_mode_sup_scales_inversely_with_lambda() {
        let g = Grid::uniform(0.0, 2.0, 200).unwrap();
        let sup = |lambda: f64| {
            let p = params(Kappa::Plus, 1.0, lambda);
            g.points().iter().map(|&e| w_general(&p, e).unwrap().abs()).fold(0.0, f64::max)
        };
        let ratio = sup(1e4) / sup(1e5);
        assert!((ratio - 10.0).abs() < 1e-3, "{ratio}");
    }

    #[test]
    fn partner_invariance_and_riccati_property() {
        for kappa in [Kappa::Plus, Kappa::Minus] {
            for lambda in [0.5, 1.0, 10.0] {
                let p = params(kappa, 1.0, lambda);
                for i in 1..=60 {
                    let e = 0.1 + 0.02 * i as f64;
                    let u = u_general_jet(&p, e).unwrap();
                    let partner = -u.d1 + p.c * u.value * u.value;
                    assert!((partner - fermionic_free_term(&p, e).unwrap()).abs() < 1e-8);
                    let ric = p.c * u.value * u.value + u.d1 + p.kappa.sign::<f64>() * family_free_term(&p, e).unwrap();
                    assert!(ric.abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn zero_mode_solves_family_equation() {
        for kappa in [Kappa::Plus, Kappa::Minus] {
            let p = params(kappa, 1.0, 1.0);
            let g = Grid::uniform(0.0, 1.4, 300).unwrap();
            let r = residual(&zero_mode_ode(&p), |e| w_general_jet(&p, e).map(Jet::to_complex), &g, 1e-9).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
