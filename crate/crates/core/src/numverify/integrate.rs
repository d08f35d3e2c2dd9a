//! Dormand-Prince 5(4) integration of `w'' + P w' + Q w = 0` as a complex
//! first-order 2-system, plus general first-order complex systems. Steps are
//! clipped so that every grid point is hit exactly; no interpolation is
//! involved in the sampled values.

use crate::error::{Error, Result};
use crate::grid::{FunctionTrace, Grid};
use crate::ode::LinearODE;
use crate::scalar::{is_finite_cx, Cx, Real};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// Step-size control settings.
#[derive(Clone, Copy, Debug)]
pub struct IntegratorOptions<T: Real> {
    pub rtol: T,
    pub atol: T,
    /// Steps below `h_min_rel * max(1, |eta|)` abort with `StepSizeUnderflow`.
    pub h_min_rel: T,
    pub max_steps: usize,
}

impl<T: Real> Default for IntegratorOptions<T> {
    fn default() -> Self {
        Self { rtol: T::lit(1e-10), atol: T::lit(1e-12), h_min_rel: T::lit(1e-13), max_steps: 2_000_000 }
    }
}

type State<T, const N: usize> = [Cx<T>; N];

/// One Dormand-Prince step; returns the 5th-order solution and the error vector.
fn dp_step<T: Real, const N: usize, F>(rhs: &F, t: T, y: &State<T, N>, h: T) -> (State<T, N>, State<T, N>)
where
    F: Fn(T, &State<T, N>) -> State<T, N>,
{
    let zero = Cx::new(T::zero(), T::zero());
    let mut k: [State<T, N>; 7] = [[zero; N]; 7];
    for s in 0..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            let a = T::lit(A[s][j]);
            if a != T::zero() {
                for c in 0..N {
                    ys[c] = ys[c] + kj[c] * (a * h);
                }
            }
        }
        k[s] = rhs(t + T::lit(C[s]) * h, &ys);
    }
    let mut y5 = *y;
    let mut err = [zero; N];
    for s in 0..7 {
        let b5 = T::lit(B5[s]);
        let db = T::lit(B5[s] - B4[s]);
        for c in 0..N {
            y5[c] = y5[c] + k[s][c] * (b5 * h);
            err[c] = err[c] + k[s][c] * (db * h);
        }
    }
    (y5, err)
}

/// Adaptive integration of the first-order system `y' = rhs(t, y)` from the
/// first grid point; returns the state at every grid point.
pub fn integrate_system<T: Real, const N: usize, F>(
    rhs: F,
    y0: State<T, N>,
    grid: &Grid<T>,
    opts: IntegratorOptions<T>,
) -> Result<Vec<State<T, N>>>
where
    F: Fn(T, &State<T, N>) -> State<T, N>,
{
    let pts = grid.points();
    let mut t = pts[0];
    let mut y = y0;
    if !y.iter().all(|&v| is_finite_cx(v)) {
        return Err(Error::NonFinite { eta: t.as_f64() });
    }
    let mut out = Vec::with_capacity(pts.len());
    out.push(y);

    let span = pts[pts.len() - 1] - t;
    let mut h = (span * T::lit(1e-3)).min(grid.spacing());
    let safety = T::lit(0.9);
    let fifth = T::lit(0.2);
    let mut steps = 0usize;

    for &target in &pts[1..] {
        while t < target {
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::StepSizeUnderflow { eta: t.as_f64(), h: h.as_f64() });
            }
            let remaining = target - t;
            let landing = h >= remaining;
            let step = if landing { remaining } else { h };
            let h_min = opts.h_min_rel * T::one().max(t.abs());
            if step < h_min && !landing {
                return Err(Error::StepSizeUnderflow { eta: t.as_f64(), h: step.as_f64() });
            }
            let (y_new, err) = dp_step(&rhs, t, &y, step);
            if !y_new.iter().all(|&v| is_finite_cx(v)) {
                // coefficient blow-up: shrink until it either resolves or underflows
                h = step * T::lit(0.25);
                if h < h_min {
                    return Err(Error::StepSizeUnderflow { eta: t.as_f64(), h: h.as_f64() });
                }
                continue;
            }
            let mut norm = T::zero();
            for c in 0..N {
                let scale = opts.atol + opts.rtol * y[c].norm().max(y_new[c].norm());
                norm = norm.max(err[c].norm() / scale);
            }
            if norm <= T::one() {
                t = if landing { target } else { t + step };
                y = y_new;
                let grow = if norm == T::zero() { T::lit(5.0) } else { safety * norm.powf(-fifth) };
                let grow = grow.min(T::lit(5.0)).max(T::lit(0.2));
                // landing steps are artificially short and must not shrink h
                if !landing || grow > T::one() {
                    h = step * grow;
                }
            } else {
                h = step * (safety * norm.powf(-fifth)).max(T::lit(0.1));
                if h < h_min {
                    return Err(Error::StepSizeUnderflow { eta: t.as_f64(), h: h.as_f64() });
                }
            }
        }
        out.push(y);
    }
    Ok(out)
}

fn second_order_rhs<T: Real>(ode: &LinearODE<T>) -> impl Fn(T, &State<T, 2>) -> State<T, 2> + '_ {
    move |t, y| [y[1], ode.second_derivative(t, y[0], y[1])]
}

/// Integrates with default tolerances (relative `1e-10`, absolute `1e-12`).
pub fn integrate_ode<T: Real>(ode: &LinearODE<T>, y0: Cx<T>, dy0: Cx<T>, grid: &Grid<T>) -> Result<FunctionTrace<T>> {
    integrate_ode_with(ode, y0, dy0, grid, IntegratorOptions::default())
}

/// Integrates from the first grid point, returning values, first derivatives
/// and the second derivatives implied by the equation.
pub fn integrate_ode_with<T: Real>(
    ode: &LinearODE<T>,
    y0: Cx<T>,
    dy0: Cx<T>,
    grid: &Grid<T>,
    opts: IntegratorOptions<T>,
) -> Result<FunctionTrace<T>> {
    let states = integrate_system(second_order_rhs(ode), [y0, dy0], grid, opts)?;
    let mut d2 = Vec::with_capacity(states.len());
    for (&t, s) in grid.points().iter().zip(&states) {
        let dd = ode.second_derivative(t, s[0], s[1]);
        if !is_finite_cx(dd) {
            return Err(Error::NonFinite { eta: t.as_f64() });
        }
        d2.push(dd);
    }
    let values = states.iter().map(|s| s[0]).collect();
    let d1 = states.iter().map(|s| s[1]).collect();
    FunctionTrace::new(grid.clone(), values, Some(d1), Some(d2))
}

/// Fixed-step 5th-order integration from `t0` to `t1`; returns `(w, w')` at `t1`.
/// Used for convergence-order checks.
pub fn integrate_fixed<T: Real>(
    ode: &LinearODE<T>,
    y0: Cx<T>,
    dy0: Cx<T>,
    t0: T,
    t1: T,
    n_steps: usize,
) -> (Cx<T>, Cx<T>) {
    let h = (t1 - t0) / T::from_usize(n_steps).unwrap();
    let rhs = second_order_rhs(ode);
    let mut y: State<T, 2> = [y0, dy0];
    for i in 0..n_steps {
        let t = t0 + h * T::from_usize(i).unwrap();
        y = dp_step(&rhs, t, &y, h).0;
    }
    (y[0], y[1])
}
