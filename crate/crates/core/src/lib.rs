//! Riccati solutions, supersymmetric factorizations, the Darboux family of
//! partner potentials and three Dirac-like spinor systems, with the numerical
//! machinery (integrator, quadrature, residuals, Gauss hypergeometric
//! function) needed to check every closed form.
//!
//! All routines are generic over the real scalar (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod cli;
pub mod closed_form;
pub mod darboux;
pub mod dirac;
pub mod error;
pub mod grid;
pub mod hyp2f1;
pub mod numverify;
pub mod ode;
pub mod params;
pub mod scalar;

pub use error::{Error, Result};
pub use params::Kappa;
pub use scalar::{Cx, Jet, Real};

pub type Params = params::ModelParams<f64>;
pub type Grid = grid::Grid<f64>;
pub type FunctionTrace = grid::FunctionTrace<f64>;
pub type LinearODE = ode::LinearODE<f64>;
pub type SpinorTrace = dirac::SpinorTrace<f64>;
pub type Complex = Cx<f64>;
