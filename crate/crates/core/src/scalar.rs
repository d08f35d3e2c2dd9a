//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> Cx<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub(crate) fn imag_unit<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::one())
}

#[inline]
pub(crate) fn is_finite_cx<T: Real>(z: Cx<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Value of a function together with its first two derivatives at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<S> {
    pub value: S,
    pub d1: S,
    pub d2: S,
}

impl<S> Jet<S> {
    pub fn new(value: S, d1: S, d2: S) -> Self {
        Self { value, d1, d2 }
    }
}

impl<T: Real> Jet<T> {
    /// Lifts a real jet into the complex plane.
    pub fn to_complex(self) -> Jet<Cx<T>> {
        Jet::new(re(self.value), re(self.d1), re(self.d2))
    }
}
