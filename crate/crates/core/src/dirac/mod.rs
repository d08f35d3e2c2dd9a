//! Dirac-like 2x2 first-order systems built on the Riccati solutions.
//!
//! Three systems are covered:
//!
//! * [`d1`]: the massless pair, solved by `(w_f, w_b)` in closed form;
//! * [`d2`]: the pair with a single mass `K`, whose bosonic component has
//!   Gauss hypergeometric closed forms;
//! * [`d3`]: the pair with masses `K1`, `K2` and the family solution `u_g`,
//!   gauged to standard form and solved numerically.
//!
//! The momentum operator is `P = -i d/deta`; [`momentum`] applies it to a jet.

pub mod d1;
pub mod d2;
pub mod d3;

pub use crate::ode::LinearODE;
pub use d1::{d1_first_order_residuals, d1_jets, solve_d1};
pub use d2::{
    bosonic_bracket, d2_coupled_residual, d2_free_terms, fermionic_bracket, fermionic_partner, integrate_d2_coupled,
    w1_from_w2, w2_closed_form, w2_closed_form_jet, D2Branch, D2Convention, D2Options, Eq24Integration,
};
pub use d3::{
    d3_coupled_residual, d3_system, gauge_factor, gauge_transform, gauged_ode, integrate_d3_coupled,
    inverse_gauge_transform, q_free_term, solve_d3_numeric, BracketVariant, SpinorInit,
};

use crate::error::{Error, Result};
use crate::grid::{FunctionTrace, Grid};
use crate::scalar::{imag_unit, Cx, Jet, Real};

/// `P w = -i w'`.
pub fn momentum<T: Real>(w: &Jet<Cx<T>>) -> Cx<T> {
    -imag_unit::<T>() * w.d1
}

/// Two-component solution sampled on a grid, with first derivatives when the
/// producer has them.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorTrace<T: Real> {
    pub grid: Grid<T>,
    pub w1: Vec<Cx<T>>,
    pub w2: Vec<Cx<T>>,
    pub dw1: Option<Vec<Cx<T>>>,
    pub dw2: Option<Vec<Cx<T>>>,
}

impl<T: Real> SpinorTrace<T> {
    /// Assembles a spinor from two traces on the same grid.
    pub fn from_components(w1: FunctionTrace<T>, w2: FunctionTrace<T>) -> Result<Self> {
        if w1.grid != w2.grid {
            return Err(Error::TraceMismatch("components sampled on different grids".into()));
        }
        Ok(Self { grid: w1.grid, w1: w1.values, w2: w2.values, dw1: w1.d1, dw2: w2.d1 })
    }

    /// Component `i` (1 or 2) as a trace.
    pub fn component(&self, i: usize) -> Result<FunctionTrace<T>> {
        let (v, d) = match i {
            1 => (&self.w1, &self.dw1),
            2 => (&self.w2, &self.dw2),
            _ => return Err(Error::InvalidParams(format!("component index must be 1 or 2, got {i}"))),
        };
        FunctionTrace::new(self.grid.clone(), v.clone(), d.clone(), None)
    }

    pub fn len(&self) -> usize {
        self.w1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w1.is_empty()
    }

    fn derivatives(&self) -> Result<(&[Cx<T>], &[Cx<T>])> {
        match (&self.dw1, &self.dw2) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::MissingDerivative { order: "first" }),
        }
    }
}
