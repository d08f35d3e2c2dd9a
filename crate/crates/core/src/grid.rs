//! Evaluation grids and sampled traces.

use crate::error::{Error, Result};
use crate::scalar::{is_finite_cx, Cx, Jet, Real};

/// Uniform 1-D lattice on `[start, end]` with points near singularities dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<T: Real> {
    start: T,
    end: T,
    n_points: usize,
    excluded_radius: T,
    points: Vec<T>,
}

impl<T: Real> Grid<T> {
    /// Plain uniform grid with inclusive endpoints.
    pub fn uniform(start: T, end: T, n_points: usize) -> Result<Self> {
        Self::excluding(start, end, n_points, T::lit(1e-3), &[])
    }

    /// Uniform grid keeping only points farther than `excluded_radius` from
    /// every entry of `singularities`.
    pub fn excluding(start: T, end: T, n_points: usize, excluded_radius: T, singularities: &[T]) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(Error::InvalidGrid(format!("need start < end, got {start} .. {end}")));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n_points}")));
        }
        if !(excluded_radius > T::zero()) {
            return Err(Error::InvalidGrid("excluded radius must be positive".into()));
        }
        let h = (end - start) / T::from_usize(n_points - 1).unwrap();
        let points: Vec<T> = (0..n_points)
            .map(|i| if i == n_points - 1 { end } else { start + h * T::from_usize(i).unwrap() })
            .filter(|&x| singularities.iter().all(|&s| (x - s).abs() > excluded_radius))
            .collect();
        if points.len() < 2 {
            return Err(Error::InvalidGrid("fewer than 2 points survive exclusion".into()));
        }
        Ok(Self { start, end, n_points, excluded_radius, points })
    }

    pub fn start(&self) -> T {
        self.start
    }

    pub fn end(&self) -> T {
        self.end
    }

    /// Number of lattice points before exclusion.
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn excluded_radius(&self) -> T {
        self.excluded_radius
    }

    /// Spacing of the underlying lattice.
    pub fn spacing(&self) -> T {
        (self.end - self.start) / T::from_usize(self.n_points - 1).unwrap()
    }

    /// Retained points, strictly increasing.
    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Complex samples of a function (and optionally its derivatives) on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionTrace<T: Real> {
    pub grid: Grid<T>,
    pub values: Vec<Cx<T>>,
    pub d1: Option<Vec<Cx<T>>>,
    pub d2: Option<Vec<Cx<T>>>,
}

impl<T: Real> FunctionTrace<T> {
    pub fn new(grid: Grid<T>, values: Vec<Cx<T>>, d1: Option<Vec<Cx<T>>>, d2: Option<Vec<Cx<T>>>) -> Result<Self> {
        let n = grid.len();
        let lens_ok =
            values.len() == n && d1.as_ref().is_none_or(|v| v.len() == n) && d2.as_ref().is_none_or(|v| v.len() == n);
        if !lens_ok {
            return Err(Error::TraceMismatch("sample count differs from grid length".into()));
        }
        for (i, &eta) in grid.points().iter().enumerate() {
            let finite = is_finite_cx(values[i])
                && d1.as_ref().is_none_or(|v| is_finite_cx(v[i]))
                && d2.as_ref().is_none_or(|v| is_finite_cx(v[i]));
            if !finite {
                return Err(Error::NonFinite { eta: eta.as_f64() });
            }
        }
        Ok(Self { grid, values, d1, d2 })
    }

    /// Samples a jet-valued function, keeping both derivatives.
    pub fn sample<F>(grid: &Grid<T>, mut f: F) -> Result<Self>
    where
        F: FnMut(T) -> Result<Jet<Cx<T>>>,
    {
        let n = grid.len();
        let (mut v, mut d1, mut d2) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        for &eta in grid.points() {
            let j = f(eta)?;
            v.push(j.value);
            d1.push(j.d1);
            d2.push(j.d2);
        }
        Self::new(grid.clone(), v, Some(d1), Some(d2))
    }

    /// Samples a real jet-valued function.
    pub fn sample_real<F>(grid: &Grid<T>, mut f: F) -> Result<Self>
    where
        F: FnMut(T) -> Result<Jet<T>>,
    {
        Self::sample(grid, |eta| f(eta).map(Jet::to_complex))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Jet at sample `i`; missing derivatives are reported as an error.
    pub fn jet(&self, i: usize) -> Result<Jet<Cx<T>>> {
        let d1 = self.d1.as_ref().ok_or(Error::MissingDerivative { order: "first" })?;
        let d2 = self.d2.as_ref().ok_or(Error::MissingDerivative { order: "second" })?;
        Ok(Jet::new(self.values[i], d1[i], d2[i]))
    }
}
