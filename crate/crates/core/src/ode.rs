//! Second-order linear ODEs `w'' + P(eta) w' + Q(eta) w = 0` with complex coefficients.

use std::fmt;
use std::sync::Arc;

use crate::scalar::{Cx, Jet, Real};

type Coefficient<T> = Arc<dyn Fn(T) -> Cx<T> + Send + Sync>;

/// Evaluable coefficient pair of a second-order linear ODE.
#[derive(Clone)]
pub struct LinearODE<T: Real> {
    p: Coefficient<T>,
    q: Coefficient<T>,
    description: String,
}

impl<T: Real> LinearODE<T> {
    pub fn new<P, Q>(description: impl Into<String>, p: P, q: Q) -> Self
    where
        P: Fn(T) -> Cx<T> + Send + Sync + 'static,
        Q: Fn(T) -> Cx<T> + Send + Sync + 'static,
    {
        Self { p: Arc::new(p), q: Arc::new(q), description: description.into() }
    }

    /// `w'' + Q w = 0`.
    pub fn standard<Q>(description: impl Into<String>, q: Q) -> Self
    where
        Q: Fn(T) -> Cx<T> + Send + Sync + 'static,
    {
        Self::new(description, |_| Cx::new(T::zero(), T::zero()), q)
    }

    pub fn p(&self, eta: T) -> Cx<T> {
        (self.p)(eta)
    }

    pub fn q(&self, eta: T) -> Cx<T> {
        (self.q)(eta)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// `w'' + P w' + Q w` for a jet of `w` at `eta`.
    pub fn apply(&self, eta: T, w: Jet<Cx<T>>) -> Cx<T> {
        w.d2 + self.p(eta) * w.d1 + self.q(eta) * w.value
    }

    /// Second derivative implied by the equation.
    pub fn second_derivative(&self, eta: T, w: Cx<T>, dw: Cx<T>) -> Cx<T> {
        -(self.p(eta) * dw + self.q(eta) * w)
    }
}

impl<T: Real> fmt::Debug for LinearODE<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearODE").field("description", &self.description).finish()
    }
}
