use num_complex::Complex;

use crate::scalar::Real;

/// Coefficients `c_j` with `p(t) = sum c_j T_j(t)` of the degree-`n`
/// interpolant of `f` at the Chebyshev points of the first kind.
pub fn chebyshev_coefficients<T: Real>(n: usize, f: impl Fn(T) -> T) -> Vec<T> {
    let count = n + 1;
    let pi = T::PI();
    let h = pi / T::int(count as i64);
    let theta: Vec<T> = (0..count).map(|i| h * (T::int(i as i64) + T::lit(0.5))).collect();
    let vals: Vec<T> = theta.iter().map(|&th| f(th.cos())).collect();
    (0..count)
        .map(|j| {
            let mut s = T::zero();
            for (i, v) in vals.iter().enumerate() {
                // cos(j theta_i) through the exact angle index, reduced mod 4 count
                let idx = (j * (2 * i + 1)) % (4 * count);
                let ang = pi * T::int(idx as i64) / T::int(2 * count as i64);
                s = s + *v * ang.cos();
            }
            let scale = if j == 0 { T::one() } else { T::lit(2.0) };
            s * scale / T::int(count as i64)
        })
        .collect()
}

pub fn clenshaw<T: Real>(c: &[T], t: T) -> T {
    let (mut b1, mut b2) = (T::zero(), T::zero());
    let two_t = t + t;
    for &cj in c.iter().skip(1).rev() {
        let b0 = cj + two_t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c.first().copied().unwrap_or_else(T::zero) + t * b1 - b2
}

pub fn clenshaw_complex<T: Real>(c: &[T], t: Complex<T>) -> Complex<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let (mut b1, mut b2) = (zero, zero);
    let two_t = t + t;
    for &cj in c.iter().skip(1).rev() {
        let b0 = two_t * b1 - b2 + cj;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c.first().copied().unwrap_or_else(T::zero)
}
