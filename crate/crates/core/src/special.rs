//! Gamma function via the Lanczos approximation (g = 7, nine coefficients).
//!
//! Relative error stays below 1e-14 on (0, 3], which covers every argument
//! reached by the mBm normalising factor (at most 2h + 1 < 3).

use crate::scalar::Scalar;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

pub fn gamma<T: Scalar>(x: T) -> T {
    let pi = T::lit(std::f64::consts::PI);
    if x < T::lit(0.5) {
        // Reflection: Γ(x)Γ(1−x) = π / sin(πx)
        return pi / ((pi * x).sin() * gamma(T::one() - x));
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::count(i));
    }
    let t = x + T::lit(LANCZOS_G + 0.5);
    T::lit((2.0 * std::f64::consts::PI).sqrt()) * t.powf(x + T::lit(0.5)) * (-t).exp() * acc
}
