//! Complex Gamma function (Lanczos, g = 7, 9 terms) with reflection.

use crate::scalar::{cx, re, Cx, Real};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Gamma(z)` for complex `z`; relative error around `1e-14` in `f64` away from the poles.
pub fn gamma<T: Real>(z: Cx<T>) -> Cx<T> {
    let half = T::lit(0.5);
    if z.re < half {
        let pi = T::PI();
        let s = (z * pi).sin();
        return re::<T>(pi) / (s * gamma(re::<T>(T::one()) - z));
    }
    let z = z - T::one();
    let mut x = re::<T>(T::lit(LANCZOS[0]));
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        x = x + re::<T>(T::lit(coef)) / (z + T::from_usize(i).unwrap());
    }
    let t = z + T::lit(LANCZOS_G) + half;
    let sqrt_2pi = (T::lit(2.0) * T::PI()).sqrt();
    (t.ln() * (z + half) - t).exp() * x * sqrt_2pi
}

/// `1 / Gamma(z)`, zero at the poles.
pub fn rgamma<T: Real>(z: Cx<T>) -> Cx<T> {
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        return cx(T::zero(), T::zero());
    }
    gamma(z).inv()
}
