//! Particular Riccati solutions, seed linear solutions, fermionic partner
//! free terms and solutions, and the two factorization orderings.
//!
//! Every closed form is available as a [`Jet`] with hand-coded first and
//! second derivatives.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{FunctionTrace, Grid};
use crate::numverify::{residual, ResidualReport};
use crate::ode::LinearODE;
use crate::params::{Kappa, ModelParams};
use crate::scalar::{re, Jet, Real};

/// `u_p` without the pole check.
pub(crate) fn u_particular_raw<T: Real>(p: &ModelParams<T>, eta: T) -> Jet<T> {
    let c = p.c;
    let x = c * eta;
    let two = T::lit(2.0);
    match p.kappa {
        Kappa::Plus => {
            let t = x.tan();
            let sec2 = T::one() + t * t;
            Jet::new(-t, -c * sec2, -two * c * c * sec2 * t)
        }
        Kappa::Minus => {
            let ct = T::one() / x.tanh();
            let csch2 = ct * ct - T::one();
            Jet::new(ct, -c * csch2, two * c * c * csch2 * ct)
        }
    }
}

/// Particular Riccati solution: `-tan(c eta)` for `kappa = +1`, `coth(c eta)` for `kappa = -1`.
pub fn u_particular<T: Real>(p: &ModelParams<T>, eta: T) -> Result<T> {
    u_particular_jet(p, eta).map(|j| j.value)
}

pub fn u_particular_jet<T: Real>(p: &ModelParams<T>, eta: T) -> Result<Jet<T>> {
    p.check_riccati_pole(eta)?;
    Ok(u_particular_raw(p, eta))
}

/// Seed solution `W cos(c eta + phi)` or `W sinh(c eta)`.
pub fn w_seed<T: Real>(p: &ModelParams<T>, eta: T) -> T {
    w_seed_jet(p, eta).value
}

pub fn w_seed_jet<T: Real>(p: &ModelParams<T>, eta: T) -> Jet<T> {
    let (c, w) = (p.c, p.amp_w);
    match p.kappa {
        Kappa::Plus => {
            let x = c * eta + p.phase_phi;
            let (s, co) = x.sin_cos();
            Jet::new(w * co, -w * c * s, -w * c * c * co)
        }
        Kappa::Minus => {
            let x = c * eta;
            Jet::new(w * x.sinh(), w * c * x.cosh(), w * c * c * x.sinh())
        }
    }
}

pub(crate) fn fermionic_free_term_raw<T: Real>(p: &ModelParams<T>, eta: T) -> Jet<T> {
    let c = p.c;
    let x = c * eta;
    let (two, four, eight) = (T::lit(2.0), T::lit(4.0), T::lit(8.0));
    let c3 = c * c * c;
    match p.kappa {
        Kappa::Plus => {
            let t = x.tan();
            let sec2 = T::one() + t * t;
            Jet::new(
                c * (T::one() + two * t * t),
                four * c * c * t * sec2,
                c3 * (four * sec2 * sec2 + eight * t * t * sec2),
            )
        }
        Kappa::Minus => {
            let ct = T::one() / x.tanh();
            let csch2 = ct * ct - T::one();
            Jet::new(
                c * (-T::one() + two * ct * ct),
                -four * c * c * ct * csch2,
                c3 * (four * csch2 * csch2 + eight * ct * ct * csch2),
            )
        }
    }
}

/// Partner free term `c(1 + 2 tan^2 c eta)` or `c(-1 + 2 coth^2 c eta)`.
pub fn fermionic_free_term<T: Real>(p: &ModelParams<T>, eta: T) -> Result<T> {
    fermionic_free_term_jet(p, eta).map(|j| j.value)
}

pub fn fermionic_free_term_jet<T: Real>(p: &ModelParams<T>, eta: T) -> Result<Jet<T>> {
    p.check_riccati_pole(eta)?;
    Ok(fermionic_free_term_raw(p, eta))
}

/// Fermionic solution `c / cos(c eta + d)` or `c / sinh(c eta)`.
pub fn w_fermionic<T: Real>(p: &ModelParams<T>, eta: T) -> Result<T> {
    w_fermionic_jet(p, eta).map(|j| j.value)
}

pub fn w_fermionic_jet<T: Real>(p: &ModelParams<T>, eta: T) -> Result<Jet<T>> {
    p.check_fermionic_pole(eta)?;
    let c = p.c;
    let two = T::lit(2.0);
    Ok(match p.kappa {
        Kappa::Plus => {
            let x = c * eta + p.phase_d;
            let sec = T::one() / x.cos();
            let t = x.tan();
            Jet::new(c * sec, c * c * sec * t, c * c * c * sec * (T::one() + two * t * t))
        }
        Kappa::Minus => {
            let x = c * eta;
            let csch = T::one() / x.sinh();
            let ct = T::one() / x.tanh();
            Jet::new(c * csch, -c * c * csch * ct, c * c * c * csch * (two * ct * ct - T::one()))
        }
    })
}

/// Bosonic linear equation `w'' + kappa c^2 w = 0`.
pub fn bosonic_ode<T: Real>(p: &ModelParams<T>) -> LinearODE<T> {
    let q = p.kappa.sign::<T>() * p.c * p.c;
    LinearODE::standard("w'' + kappa c^2 w = 0", move |_| re(q))
}

/// Fermionic linear equation `w'' - c c_f(eta) w = 0`.
pub fn fermionic_ode<T: Real>(p: &ModelParams<T>) -> LinearODE<T> {
    let p = *p;
    LinearODE::standard("w'' - c c_f(eta) w = 0", move |eta| re(-p.c * fermionic_free_term_raw(&p, eta).value))
}

/// Pointwise `|u' + c u^2 + kappa c|` of a sampled Riccati candidate.
pub fn riccati_residual<T: Real>(u: &FunctionTrace<T>, p: &ModelParams<T>, tol: T) -> Result<ResidualReport> {
    let d1 = u.d1.as_ref().ok_or(Error::MissingDerivative { order: "first" })?;
    let kc = p.kappa.sign::<T>() * p.c;
    let mags: Vec<T> = u.values.iter().zip(d1).map(|(&v, &dv)| (dv + v * v * p.c + re(kc)).norm()).collect();
    Ok(ResidualReport::from_pointwise(&u.grid, &mags, tol))
}

/// Residuals of the bosonic and fermionic equations, in both their
/// free-term form and their factorized-operator form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationReport {
    /// `w_seed'' + kappa c^2 w_seed`.
    pub bosonic: ResidualReport,
    /// `w_f'' - c c_f w_f`.
    pub fermionic: ResidualReport,
    /// `(D + c u_p)(D - c u_p) w_seed`.
    pub bosonic_factorized: ResidualReport,
    /// `(D - c u_p)(D + c u_p) w_f`.
    pub fermionic_factorized: ResidualReport,
}

impl FactorizationReport {
    pub fn pass(&self) -> bool {
        self.bosonic.pass && self.fermionic.pass && self.bosonic_factorized.pass && self.fermionic_factorized.pass
    }
}

/// `(D + s c u)(D - s c u) w` evaluated from jets; `s = +1` is the bosonic
/// ordering, `s = -1` the fermionic one.
fn factorized<T: Real>(c: T, s: T, u: Jet<T>, w: Jet<T>) -> T {
    // v = (D - s c u) w, result = v' + s c u v
    let v = w.d1 - s * c * u.value * w.value;
    let dv = w.d2 - s * c * (u.d1 * w.value + u.value * w.d1);
    dv + s * c * u.value * v
}

/// Checks the seed and fermionic solutions against their equations on `grid`.
///
/// The factorized forms are exact only at `phase_phi = phase_d = 0`.
pub fn factorization_check<T: Real>(p: &ModelParams<T>, grid: &Grid<T>, tol: T) -> Result<FactorizationReport> {
    let bosonic = residual(&bosonic_ode(p), |eta| Ok(w_seed_jet(p, eta).to_complex()), grid, tol)?;
    let fermionic = residual(&fermionic_ode(p), |eta| w_fermionic_jet(p, eta).map(Jet::to_complex), grid, tol)?;
    let mut bf = Vec::with_capacity(grid.len());
    let mut ff = Vec::with_capacity(grid.len());
    for &eta in grid.points() {
        let u = u_particular_jet(p, eta)?;
        bf.push(factorized(p.c, T::one(), u, w_seed_jet(p, eta)).abs());
        ff.push(factorized(p.c, -T::one(), u, w_fermionic_jet(p, eta)?).abs());
    }
    Ok(FactorizationReport {
        bosonic,
        fermionic,
        bosonic_factorized: ResidualReport::from_pointwise(grid, &bf, tol),
        fermionic_factorized: ResidualReport::from_pointwise(grid, &ff, tol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(kappa: Kappa, c: f64) -> ModelParams<f64> {
        ModelParams::new(kappa, c).unwrap()
    }

    #[test]
    fn particular_solution_values() {
        assert_eq!(u_particular(&params(Kappa::Plus, 1.0), 0.0).unwrap(), 0.0);
        let v = u_particular(&params(Kappa::Plus, 2.0), PI / 8.0).unwrap();
        assert!((v + 1.0).abs() < 1e-15);
        assert!(matches!(u_particular(&params(Kappa::Minus, 1.0), 1e-4), Err(Error::SingularPoint { .. })));
        assert!(matches!(u_particular(&params(Kappa::Plus, 1.0), PI / 2.0 + 1e-4), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn seed_values() {
        assert_eq!(w_seed(&params(Kappa::Plus, 1.0), 0.0), 1.0);
        assert_eq!(w_seed(&params(Kappa::Minus, 1.0), 0.0), 0.0);
        let p = params(Kappa::Plus, 1.0).with_amp(2.0).with_phases(PI / 2.0, 0.0);
        assert!(w_seed(&p, 0.0).abs() < 1e-15);
    }

    #[test]
    fn fermionic_free_term_values() {
        assert_eq!(fermionic_free_term(&params(Kappa::Plus, 0.5), 0.0).unwrap(), 0.5);
        let far = fermionic_free_term(&params(Kappa::Minus, 1.0), 20.0).unwrap();
        assert!((far - 1.0).abs() < 1e-15);
        let v = fermionic_free_term(&params(Kappa::Plus, 1.0), PI / 4.0).unwrap();
        assert!((v - 3.0).abs() < 1e-14);
    }

    #[test]
    fn fermionic_solution_values() {
        assert_eq!(w_fermionic(&params(Kappa::Plus, 1.0), 0.0).unwrap(), 1.0);
        assert!(matches!(w_fermionic(&params(Kappa::Minus, 2.0), 1e-5), Err(Error::SingularPoint { .. })));
        let v = w_fermionic(&params(Kappa::Minus, 1.0), 1.0).unwrap();
        assert!((v - 1.0 / 1.0f64.sinh()).abs() < 1e-15);
        assert!((v - 0.8509).abs() < 1e-4);
    }

    #[test]
    fn riccati_residual_of_particular_solution() {
        let p = params(Kappa::Plus, 1.0);
        let g = Grid::uniform(0.0, 1.4, 300).unwrap();
        let tr = FunctionTrace::sample_real(&g, |e| u_particular_jet(&p, e)).unwrap();
        assert!(riccati_residual(&tr, &p, 1e-12).unwrap().pass);
    }

    #[test]
    fn riccati_residual_of_zero_is_kappa_c() {
        let p = params(Kappa::Plus, 1.0);
        let g = Grid::uniform(0.0, 1.0, 20).unwrap();
        let tr = FunctionTrace::sample_real(&g, |_| Ok(Jet::new(0.0, 0.0, 0.0))).unwrap();
        let r = riccati_residual(&tr, &p, 1e-12).unwrap();
        assert!((r.sup_norm - 1.0).abs() < 1e-15 && !r.pass);
    }

    #[test]
    fn riccati_residual_requires_derivative() {
        let p = params(Kappa::Plus, 1.0);
        let g = Grid::uniform(0.0, 1.0, 5).unwrap();
        let tr = FunctionTrace::new(g, vec![re(0.0); 5], None, None).unwrap();
        assert!(matches!(riccati_residual(&tr, &p, 1e-12), Err(Error::MissingDerivative { .. })));
    }

    #[test]
    fn riccati_residual_with_finite_difference_derivative() {
        let p = params(Kappa::Plus, 1.0);
        // away from the pole at pi/2, where the O(h^2) term stays below 1e-8
        let g = Grid::uniform(0.0, 1.0, 200).unwrap();
        let h = 1e-5;
        let vals: Vec<_> = g.points().iter().map(|&e| re(u_particular(&p, e).unwrap())).collect();
        let d1: Vec<_> = g
            .points()
            .iter()
            .map(|&e| re((u_particular(&p, e + h).unwrap() - u_particular(&p, e - h).unwrap()) / (2.0 * h)))
            .collect();
        let tr = FunctionTrace::new(g, vals, Some(d1), None).unwrap();
        assert!(riccati_residual(&tr, &p, 1e-8).unwrap().pass);
    }

    #[test]
    fn factorizations_hold_on_pole_free_grids() {
        let p = params(Kappa::Plus, 1.0);
        let g = Grid::uniform(0.0, 1.4, 500).unwrap();
        let r = factorization_check(&p, &g, 1e-10).unwrap();
        assert!(r.pass(), "{r:?}");
        let p = params(Kappa::Minus, 1.0);
        let g = Grid::uniform(0.2, 5.0, 500).unwrap();
        let r = factorization_check(&p, &g, 1e-10).unwrap();
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn perturbed_seed_fails() {
        let p = params(Kappa::Plus, 1.0);
        let g = Grid::uniform(0.0, 1.4, 200).unwrap();
        let pert = |e: f64| {
            let w = w_seed_jet(&p, e);
            let f = 1.0 + 0.01 * e;
            Ok(Jet::new(w.value * f, w.d1 * f + 0.01 * w.value, w.d2 * f + 0.02 * w.d1).to_complex())
        };
        let r = residual(&bosonic_ode(&p), pert, &g, 1e-10).unwrap();
        assert!(r.sup_norm > 1e-3);
    }

    #[test]
    fn log_derivative_of_seed_is_particular_solution() {
        for kappa in [Kappa::Plus, Kappa::Minus] {
            let p = params(kappa, 1.3);
            for i in 1..40 {
                let e = 0.03 * i as f64;
                let w = w_seed_jet(&p, e);
                assert!((p.c * u_particular(&p, e).unwrap() - w.d1 / w.value).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn partner_free_term_identity() {
        for kappa in [Kappa::Plus, Kappa::Minus] {
            let p = params(kappa, 0.7);
            for i in 1..40 {
                let e = 0.05 * i as f64;
                let u = u_particular_jet(&p, e).unwrap();
                let rhs = -u.d1 + p.c * u.value * u.value;
                assert!((fermionic_free_term(&p, e).unwrap() - rhs).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn single_precision_evaluation() {
        let p = ModelParams::<f32>::new(Kappa::Plus, 1.0).unwrap();
        assert!((u_particular(&p, 0.5f32).unwrap() + 0.5f32.tan()).abs() < 1e-6);
    }
}
