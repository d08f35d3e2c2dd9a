//! The constant parameters shared by every object in the crate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{cx, Cx, Real};

/// Sign of the constant Riccati free term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kappa {
    /// `kappa = +1`: trigonometric branch.
    Plus,
    /// `kappa = -1`: hyperbolic branch.
    Minus,
}

impl Kappa {
    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Kappa::Plus),
            -1 => Ok(Kappa::Minus),
            other => Err(Error::InvalidParams(format!("kappa must be +1 or -1, got {other}"))),
        }
    }

    pub fn sign<T: Real>(self) -> T {
        match self {
            Kappa::Plus => T::one(),
            Kappa::Minus => -T::one(),
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Kappa::Plus => 1,
            Kappa::Minus => -1,
        }
    }
}

/// All constants of the model in one record.
///
/// Defaults: `phase_phi = phase_d = 0`, `amp_w = 1`, `lambda = 1`, all masses
/// zero, `k_int = 0`, superposition constants `A = C = 1`, `B = D = 0`, and an
/// exclusion radius of `1e-3` around singular points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams<T: Real> {
    pub kappa: Kappa,
    /// Riccati coefficient `c`, nonzero.
    pub c: T,
    /// Phase of the trigonometric seed solution.
    pub phase_phi: T,
    /// Seed amplitude `W`, positive.
    pub amp_w: T,
    /// Phase of the trigonometric fermionic solution.
    pub phase_d: T,
    /// Family parameter, positive.
    pub lambda: T,
    /// Mass/energy constant of the second Dirac-like system.
    pub k_mass: T,
    pub k1: T,
    pub k2: T,
    /// Constant multiplying the integral in the reduction-of-order formula.
    pub k_int: T,
    pub sup_a: Cx<T>,
    pub sup_b: Cx<T>,
    pub sup_c: Cx<T>,
    pub sup_d: Cx<T>,
    /// Minimum distance kept from any pole when evaluating pointwise.
    pub excluded_radius: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(kappa: Kappa, c: T) -> Result<Self> {
        let one = cx(T::one(), T::zero());
        let zero = cx(T::zero(), T::zero());
        Self {
            kappa,
            c,
            phase_phi: T::zero(),
            amp_w: T::one(),
            phase_d: T::zero(),
            lambda: T::one(),
            k_mass: T::zero(),
            k1: T::zero(),
            k2: T::zero(),
            k_int: T::zero(),
            sup_a: one,
            sup_b: zero,
            sup_c: one,
            sup_d: zero,
            excluded_radius: T::lit(1e-3),
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidParams(msg.to_string()));
        if !(self.c.is_finite() && self.c != T::zero()) {
            return bad("c must be finite and nonzero");
        }
        if !(self.lambda.is_finite() && self.lambda > T::zero()) {
            return bad("lambda must be positive");
        }
        if !(self.amp_w.is_finite() && self.amp_w > T::zero()) {
            return bad("amplitude W must be positive");
        }
        for (name, v) in [("K", self.k_mass), ("K1", self.k1), ("K2", self.k2)] {
            if !(v.is_finite() && v >= T::zero()) {
                return Err(Error::InvalidParams(format!("{name} must be finite and >= 0")));
            }
        }
        if !(self.excluded_radius.is_finite() && self.excluded_radius > T::zero()) {
            return bad("excluded radius must be positive");
        }
        if !(self.phase_phi.is_finite() && self.phase_d.is_finite() && self.k_int.is_finite()) {
            return bad("phases and k must be finite");
        }
        Ok(self)
    }

    pub fn with_lambda(mut self, lambda: T) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_amp(mut self, amp_w: T) -> Self {
        self.amp_w = amp_w;
        self
    }

    pub fn with_phases(mut self, phi: T, d: T) -> Self {
        self.phase_phi = phi;
        self.phase_d = d;
        self
    }

    pub fn with_mass(mut self, k: T) -> Self {
        self.k_mass = k;
        self
    }

    pub fn with_masses(mut self, k1: T, k2: T) -> Self {
        self.k1 = k1;
        self.k2 = k2;
        self
    }

    pub fn with_k_int(mut self, k: T) -> Self {
        self.k_int = k;
        self
    }

    pub fn with_superposition(mut self, a: Cx<T>, b: Cx<T>, c: Cx<T>, d: Cx<T>) -> Self {
        self.sup_a = a;
        self.sup_b = b;
        self.sup_c = c;
        self.sup_d = d;
        self
    }

    pub fn with_excluded_radius(mut self, r: T) -> Self {
        self.excluded_radius = r;
        self
    }

    /// Poles of the particular Riccati solution inside `[start, end]`.
    pub fn riccati_poles(&self, start: T, end: T) -> Vec<T> {
        match self.kappa {
            // cos(c eta) = 0
            Kappa::Plus => periodic_points(T::FRAC_PI_2(), self.c, start, end),
            Kappa::Minus => {
                if start <= T::zero() && T::zero() <= end {
                    vec![T::zero()]
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// Poles of the fermionic solution `w_f` inside `[start, end]`.
    pub fn fermionic_poles(&self, start: T, end: T) -> Vec<T> {
        match self.kappa {
            // c eta + d = pi/2 + n pi
            Kappa::Plus => periodic_points(T::FRAC_PI_2() - self.phase_d, self.c, start, end),
            Kappa::Minus => self.riccati_poles(start, end),
        }
    }

    /// Union of all poles of the closed forms evaluated by the crate.
    pub fn singularities(&self, start: T, end: T) -> Vec<T> {
        let mut all = self.riccati_poles(start, end);
        all.extend(self.fermionic_poles(start, end));
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        all.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * (T::one() + a.abs()));
        all
    }

    /// Distance from `eta` to the nearest pole of `u_p`.
    pub(crate) fn riccati_pole_distance(&self, eta: T) -> T {
        match self.kappa {
            Kappa::Plus => periodic_distance(eta, T::FRAC_PI_2(), self.c),
            Kappa::Minus => eta.abs(),
        }
    }

    pub(crate) fn fermionic_pole_distance(&self, eta: T) -> T {
        match self.kappa {
            Kappa::Plus => periodic_distance(eta, T::FRAC_PI_2() - self.phase_d, self.c),
            Kappa::Minus => eta.abs(),
        }
    }

    pub(crate) fn check_riccati_pole(&self, eta: T) -> Result<()> {
        if self.riccati_pole_distance(eta) <= self.excluded_radius {
            return Err(Error::SingularPoint { eta: eta.as_f64() });
        }
        Ok(())
    }

    pub(crate) fn check_fermionic_pole(&self, eta: T) -> Result<()> {
        if self.fermionic_pole_distance(eta) <= self.excluded_radius {
            return Err(Error::SingularPoint { eta: eta.as_f64() });
        }
        Ok(())
    }
}

/// Points `eta` with `c eta = offset + n pi` in `[start, end]`.
fn periodic_points<T: Real>(offset: T, c: T, start: T, end: T) -> Vec<T> {
    let pi = T::PI();
    let (lo, hi) = {
        let (x, y) = (c * start, c * end);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let n0 = ((lo - offset) / pi).ceil();
    let mut out = Vec::new();
    let mut n = n0;
    loop {
        let arg = offset + n * pi;
        if arg > hi {
            break;
        }
        out.push(arg / c);
        n = n + T::one();
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Distance in eta from the lattice `c eta = offset + n pi`.
fn periodic_distance<T: Real>(eta: T, offset: T, c: T) -> T {
    let pi = T::PI();
    let x = c * eta - offset;
    let n = (x / pi).round();
    (x - n * pi).abs() / c.abs()
}
