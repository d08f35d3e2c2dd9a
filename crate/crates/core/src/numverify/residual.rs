use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{FunctionTrace, Grid};
use crate::ode::LinearODE;
use crate::scalar::{Cx, Jet, Real};

/// Sup and L2 norms of a pointwise residual with a pass/fail verdict.
///
/// `l2_norm` is the grid-weighted norm `sqrt(sum |r_i|^2 * spacing)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub sup_norm: f64,
    pub l2_norm: f64,
    pub worst_eta: f64,
    pub n_points: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualReport {
    /// Builds a report from pointwise residual magnitudes on `grid`.
    pub fn from_pointwise<T: Real>(grid: &Grid<T>, magnitudes: &[T], tolerance: T) -> Self {
        let mut sup = 0.0f64;
        let mut worst = grid.points()[0].as_f64();
        let mut sq = 0.0f64;
        for (&eta, &m) in grid.points().iter().zip(magnitudes) {
            let m = m.as_f64();
            // NaN must never pass.
            if !(m <= sup) {
                sup = if m.is_nan() { f64::INFINITY } else { m };
                worst = eta.as_f64();
            }
            sq += m * m;
        }
        let l2 = (sq * grid.spacing().as_f64()).sqrt();
        let tolerance = tolerance.as_f64();
        Self {
            sup_norm: sup,
            l2_norm: l2,
            worst_eta: worst,
            n_points: magnitudes.len(),
            tolerance,
            pass: sup <= tolerance,
        }
    }

    /// Combines reports on the same grid: worst sup, root-sum-square L2.
    pub fn merge(&self, other: &Self) -> Self {
        let (sup, worst) = if other.sup_norm > self.sup_norm {
            (other.sup_norm, other.worst_eta)
        } else {
            (self.sup_norm, self.worst_eta)
        };
        let tolerance = self.tolerance.min(other.tolerance);
        Self {
            sup_norm: sup,
            l2_norm: self.l2_norm.hypot(other.l2_norm),
            worst_eta: worst,
            n_points: self.n_points.max(other.n_points),
            tolerance,
            pass: self.pass && other.pass,
        }
    }
}

/// Residual `|w'' + P w' + Q w|` of a jet-valued candidate on `grid`.
///
/// A zero candidate passes trivially; callers must check nontriviality.
pub fn residual<T: Real, F>(ode: &LinearODE<T>, w: F, grid: &Grid<T>, tol: T) -> Result<ResidualReport>
where
    F: Fn(T) -> Result<Jet<Cx<T>>>,
{
    let mags = grid.points().iter().map(|&eta| w(eta).map(|j| ode.apply(eta, j).norm())).collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::from_pointwise(grid, &mags, tol))
}

/// Residual of a sampled trace that carries both derivatives.
pub fn residual_of_trace<T: Real>(ode: &LinearODE<T>, trace: &FunctionTrace<T>, tol: T) -> Result<ResidualReport> {
    let mags = (0..trace.len())
        .map(|i| trace.jet(i).map(|j| ode.apply(trace.grid.points()[i], j).norm()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::from_pointwise(&trace.grid, &mags, tol))
}

/// `max |W(eta) - W(eta_0)| / |W(eta_0)|` for `W = w v' - w' v`.
pub fn wronskian_drift<T: Real>(w: &FunctionTrace<T>, v: &FunctionTrace<T>) -> Result<T> {
    let wd = w.d1.as_ref().ok_or(Error::MissingDerivative { order: "first" })?;
    let vd = v.d1.as_ref().ok_or(Error::MissingDerivative { order: "first" })?;
    if w.grid.points() != v.grid.points() {
        return Err(Error::TraceMismatch("traces live on different grids".into()));
    }
    let wr = |i: usize| w.values[i] * vd[i] - wd[i] * v.values[i];
    let w0 = wr(0);
    let scale = w.values[0].norm() * vd[0].norm() + wd[0].norm() * v.values[0].norm();
    if w0.norm() <= T::lit(1e3) * T::epsilon() * scale || w0.norm() == T::zero() {
        return Err(Error::DegeneratePair);
    }
    Ok((0..w.len()).map(|i| (wr(i) - w0).norm() / w0.norm()).fold(T::zero(), T::max))
}
