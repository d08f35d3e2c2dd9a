use crate::scalar::{Cx, Real};

/// Central differences `(f(x+h) - f(x-h)) / 2h` and `(f(x+h) - 2f(x) + f(x-h)) / h^2`.
pub fn finite_diff<T: Real, F>(f: F, eta: T, h: T) -> (Cx<T>, Cx<T>)
where
    F: Fn(T) -> Cx<T>,
{
    let two = T::lit(2.0);
    let (fp, f0, fm) = (f(eta + h), f(eta), f(eta - h));
    ((fp - fm) / (two * h), (fp - f0 * two + fm) / (h * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_zero_derivatives() {
        let (d1, d2) = finite_diff(|_| Cx::new(3.0, -1.0), 0.7, 1e-5);
        assert_eq!(d1, Cx::new(0.0, 0.0));
        assert_eq!(d2, Cx::new(0.0, 0.0));
    }

    #[test]
    fn exponential_at_origin() {
        let (d1, d2) = finite_diff(|x: f64| Cx::new(x.exp(), 0.0), 0.0, 1e-5);
        assert!((d1.re - 1.0).abs() < 1e-9);
        assert!((d2.re - 1.0).abs() < 1e-5);
    }

    #[test]
    fn tangent_near_pole() {
        let (d1, _) = finite_diff(|x: f64| Cx::new(x.tan(), 0.0), 1.5, 1e-5);
        let exact = 1.0 / 1.5f64.cos().powi(2);
        assert!((d1.re - exact).abs() < 1e-4);
    }
}
