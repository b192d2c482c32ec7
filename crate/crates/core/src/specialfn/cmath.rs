//! Complex helpers with careful branch handling.

use num_complex::Complex;

use crate::scalar::Real;

/// Principal square root, accurate near the negative real axis.
pub fn csqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    let (a, b) = (z.re, z.im);
    if a.is_zero() && b.is_zero() {
        return Complex::new(T::zero(), b);
    }
    let t = ((a.abs() + a.hypot(b)) * T::lit(0.5)).sqrt();
    if a >= T::zero() {
        Complex::new(t, b / (t + t))
    } else {
        Complex::new(b.abs() / (t + t), if b.is_sign_negative() { -t } else { t })
    }
}

/// Principal `arccos` (Kahan's formulation, real part in `[0, pi]`).
pub fn cacos<T: Real>(z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let s1 = csqrt(one - z);
    let s2 = csqrt(one + z);
    let re = T::lit(2.0) * s1.re.atan2(s2.re);
    let im = (s2.conj() * s1).im.asinh();
    Complex::new(re, im)
}

/// Principal `log(-zeta)`, real for `zeta < 0`, cut along `[0, inf)`.
pub fn log_neg<T: Real>(zeta: Complex<T>) -> Complex<T> {
    let w = -zeta;
    Complex::new(w.norm().ln(), w.im.atan2(w.re))
}
