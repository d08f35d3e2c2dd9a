//! Massless system `[i sigma_y P + sigma_x (i c u_p)] W = 0`.
//!
//! Row by row: `i (w1' + c u_p w1) = 0` and `-i (w2' - c u_p w2) = 0`, so
//! `w1 = 1/cos(c eta)`, `w2 = cos(c eta)` for `kappa = +1` and the `sinh`
//! analogues for `kappa = -1`.

use crate::closed_form::u_particular_raw;
use crate::error::Result;
use crate::grid::Grid;
use crate::numverify::ResidualReport;
use crate::params::{Kappa, ModelParams};
use crate::scalar::{Jet, Real};

use super::SpinorTrace;

/// `(w1, w2)` with unit constants and their derivatives.
pub fn d1_jets<T: Real>(p: &ModelParams<T>, eta: T) -> Result<(Jet<T>, Jet<T>)> {
    p.check_riccati_pole(eta)?;
    let c = p.c;
    let x = c * eta;
    let two = T::lit(2.0);
    Ok(match p.kappa {
        Kappa::Plus => {
            let (s, co) = x.sin_cos();
            let t = s / co;
            let sec = T::one() / co;
            (Jet::new(sec, c * sec * t, c * c * sec * (T::one() + two * t * t)), Jet::new(co, -c * s, -c * c * co))
        }
        Kappa::Minus => {
            let (sh, ch) = (x.sinh(), x.cosh());
            let csch = T::one() / sh;
            let ct = ch / sh;
            (
                Jet::new(csch, -c * csch * ct, c * c * csch * (two * ct * ct - T::one())),
                Jet::new(sh, c * ch, c * c * sh),
            )
        }
    })
}

/// Closed-form spinor on `grid`.
pub fn solve_d1<T: Real>(p: &ModelParams<T>, grid: &Grid<T>) -> Result<SpinorTrace<T>> {
    let n = grid.len();
    let mut out = SpinorTrace {
        grid: grid.clone(),
        w1: Vec::with_capacity(n),
        w2: Vec::with_capacity(n),
        dw1: Some(Vec::with_capacity(n)),
        dw2: Some(Vec::with_capacity(n)),
    };
    for &eta in grid.points() {
        let (a, b) = d1_jets(p, eta)?;
        out.w1.push(a.to_complex().value);
        out.w2.push(b.to_complex().value);
        out.dw1.as_mut().unwrap().push(a.to_complex().d1);
        out.dw2.as_mut().unwrap().push(b.to_complex().d1);
    }
    Ok(out)
}

/// Row residuals `|w1' + c u_p w1|` and `|w2' - c u_p w2|` with analytic derivatives.
pub fn d1_first_order_residuals<T: Real>(
    p: &ModelParams<T>,
    grid: &Grid<T>,
    tol: T,
) -> Result<(ResidualReport, ResidualReport)> {
    let (mut r1, mut r2) = (Vec::with_capacity(grid.len()), Vec::with_capacity(grid.len()));
    for &eta in grid.points() {
        let (a, b) = d1_jets(p, eta)?;
        let up = u_particular_raw(p, eta).value;
        r1.push((a.d1 + p.c * up * a.value).abs());
        r2.push((b.d1 - p.c * up * b.value).abs());
    }
    Ok((ResidualReport::from_pointwise(grid, &r1, tol), ResidualReport::from_pointwise(grid, &r2, tol)))
}
