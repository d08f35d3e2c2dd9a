//! Numerical oracles kept independent of the closed forms they check:
//! adaptive complex ODE integration, adaptive quadrature, central
//! differences, residual norms and Wronskian drift.

mod finite_diff;
mod integrate;
mod quadrature;
mod residual;

pub use finite_diff::finite_diff;
pub use integrate::{integrate_fixed, integrate_ode, integrate_ode_with, integrate_system, IntegratorOptions};
pub use quadrature::{quadrature, quadrature_with_estimate, QuadratureEstimate};
pub use residual::{residual, residual_of_trace, wronskian_drift, ResidualReport};
