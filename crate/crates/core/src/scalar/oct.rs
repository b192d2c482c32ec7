//! 237-bit binary floating point, a thin wrapper over [`f256::f256`].
//!
//! The wrapper exists to provide the `num_traits` float traits and the
//! hyperbolic functions that `f256` lacks.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use f256::f256;
use num_bigint::BigInt;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

use super::{format_sci, parse_via_rational, Real};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Octuple(pub f256);

impl Octuple {
    #[inline]
    pub(crate) fn c(x: f64) -> Self {
        <Self as From<f64>>::from(x)
    }

    fn two() -> Self {
        Octuple(f256::TWO)
    }

    fn half(self) -> Self {
        Octuple(self.0.div2())
    }
}

impl From<f64> for Octuple {
    fn from(x: f64) -> Self {
        Octuple(f256::from(x))
    }
}

impl PartialOrd for Octuple {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&o.0)
    }
}

impl Neg for Octuple {
    type Output = Self;
    fn neg(self) -> Self {
        Octuple(-self.0)
    }
}

macro_rules! bin_ops {
    ($($tr:ident $m:ident $atr:ident $am:ident $op:tt),*) => {$(
        impl $tr for Octuple {
            type Output = Self;
            #[inline]
            fn $m(self, b: Self) -> Self {
                Octuple(self.0 $op b.0)
            }
        }
        impl $atr for Octuple {
            #[inline]
            fn $am(&mut self, b: Self) {
                self.0 = self.0 $op b.0;
            }
        }
    )*};
}
bin_ops!(
    Add add AddAssign add_assign +,
    Sub sub SubAssign sub_assign -,
    Mul mul MulAssign mul_assign *,
    Div div DivAssign div_assign /,
    Rem rem RemAssign rem_assign %
);

impl Zero for Octuple {
    fn zero() -> Self {
        Octuple(f256::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0 == f256::ZERO
    }
}

impl One for Octuple {
    fn one() -> Self {
        Octuple(f256::ONE)
    }
}

impl Num for Octuple {
    type FromStrRadixErr = &'static str;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err("only radix 10 is supported");
        }
        parse_via_rational(s).ok_or("invalid decimal literal")
    }
}

impl ToPrimitive for Octuple {
    fn to_i64(&self) -> Option<i64> {
        let (m, e) = self.trunc().to_dyadic()?;
        let v = if e >= 0 { m << (e as usize) } else { m >> ((-e) as usize) };
        v.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        let (m, e) = self.trunc().to_dyadic()?;
        let v = if e >= 0 { m << (e as usize) } else { m >> ((-e) as usize) };
        v.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        if self.0.is_nan() {
            return Some(f64::NAN);
        }
        if self.0.is_infinite() {
            return Some(if self.0 > f256::ZERO { f64::INFINITY } else { f64::NEG_INFINITY });
        }
        let (s, t, (hi, lo)) = self.0.as_sign_exp_signif();
        let v = super::ldexp(hi as f64, t as i64 + 128) + super::ldexp(lo as f64, t as i64);
        Some(if s == 1 { -v } else { v })
    }
}

impl FromPrimitive for Octuple {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Octuple(f256::from(n as i128)))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Octuple(f256::from(n as u128)))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Octuple(f256::from(x)))
    }
}

impl NumCast for Octuple {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        n.to_f64().map(Self::c)
    }
}

impl fmt::Display for Octuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p + 1).unwrap_or(71);
        f.write_str(&format_sci(*self, digits))
    }
}

impl fmt::Debug for Octuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octuple({})", format_sci(*self, 71))
    }
}

impl FloatConst for Octuple {
    fn E() -> Self {
        Octuple(::f256::consts::E)
    }
    fn FRAC_1_PI() -> Self {
        Octuple(::f256::consts::FRAC_1_PI)
    }
    fn FRAC_1_SQRT_2() -> Self {
        Octuple(::f256::consts::FRAC_1_SQRT_2)
    }
    fn FRAC_2_PI() -> Self {
        Octuple(::f256::consts::FRAC_2_PI)
    }
    fn FRAC_2_SQRT_PI() -> Self {
        Octuple(::f256::consts::FRAC_2_SQRT_PI)
    }
    fn FRAC_PI_2() -> Self {
        Octuple(::f256::consts::FRAC_PI_2)
    }
    fn FRAC_PI_3() -> Self {
        Octuple(::f256::consts::FRAC_PI_3)
    }
    fn FRAC_PI_4() -> Self {
        Octuple(::f256::consts::FRAC_PI_4)
    }
    fn FRAC_PI_6() -> Self {
        Octuple(::f256::consts::FRAC_PI_6)
    }
    fn FRAC_PI_8() -> Self {
        Octuple(::f256::consts::FRAC_PI_8)
    }
    fn LN_10() -> Self {
        Octuple(::f256::consts::LN_10)
    }
    fn LN_2() -> Self {
        Octuple(::f256::consts::LN_2)
    }
    fn LOG10_E() -> Self {
        Octuple(::f256::consts::LOG10_E)
    }
    fn LOG2_E() -> Self {
        Octuple(::f256::consts::LOG2_E)
    }
    fn PI() -> Self {
        Octuple(::f256::consts::PI)
    }
    fn SQRT_2() -> Self {
        Octuple(::f256::consts::SQRT_2)
    }
}

impl Float for Octuple {
    fn nan() -> Self {
        Octuple(f256::NAN)
    }
    fn infinity() -> Self {
        Octuple(f256::INFINITY)
    }
    fn neg_infinity() -> Self {
        Octuple(f256::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Octuple(f256::NEG_ZERO)
    }
    fn min_value() -> Self {
        Octuple(f256::MIN)
    }
    fn min_positive_value() -> Self {
        Octuple(f256::MIN_POSITIVE)
    }
    fn max_value() -> Self {
        Octuple(f256::MAX)
    }
    fn epsilon() -> Self {
        Octuple(f256::EPSILON)
    }
    fn is_nan(self) -> bool {
        self.0.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.0.is_finite()
    }
    fn is_normal(self) -> bool {
        self.0.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.0.classify()
    }
    fn floor(self) -> Self {
        Octuple(self.0.floor())
    }
    fn ceil(self) -> Self {
        Octuple(self.0.ceil())
    }
    fn round(self) -> Self {
        Octuple(self.0.round())
    }
    fn trunc(self) -> Self {
        Octuple(self.0.trunc())
    }
    fn fract(self) -> Self {
        Octuple(self.0.fract())
    }
    fn abs(self) -> Self {
        Octuple(self.0.abs())
    }
    fn signum(self) -> Self {
        if self.0.is_nan() {
            self
        } else if self.0.is_sign_negative() {
            -Self::one()
        } else {
            Self::one()
        }
    }
    fn is_sign_positive(self) -> bool {
        self.0.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.0.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        Octuple(self.0.mul_add(a.0, b.0))
    }
    fn recip(self) -> Self {
        Octuple(self.0.recip())
    }
    fn powi(self, n: i32) -> Self {
        Octuple(self.0.powi(n))
    }
    fn powf(self, y: Self) -> Self {
        Octuple(self.0.powf(&y.0))
    }
    fn sqrt(self) -> Self {
        Octuple(self.0.sqrt())
    }
    fn exp(self) -> Self {
        Octuple(self.0.exp())
    }
    fn exp2(self) -> Self {
        Octuple(self.0.exp2())
    }
    fn ln(self) -> Self {
        Octuple(self.0.ln())
    }
    fn log(self, base: Self) -> Self {
        Octuple(self.0.log(&base.0))
    }
    fn log2(self) -> Self {
        Octuple(self.0.log2())
    }
    fn log10(self) -> Self {
        Octuple(self.0.log10())
    }
    fn max(self, o: Self) -> Self {
        if self.is_nan() || o > self {
            o
        } else {
            self
        }
    }
    fn min(self, o: Self) -> Self {
        if self.is_nan() || o < self {
            o
        } else {
            self
        }
    }
    fn abs_sub(self, o: Self) -> Self {
        if self > o {
            self - o
        } else {
            Self::zero()
        }
    }
    fn cbrt(self) -> Self {
        Octuple(self.0.cbrt())
    }
    fn hypot(self, o: Self) -> Self {
        Octuple(self.0.hypot(o.0))
    }
    fn sin(self) -> Self {
        Octuple(self.0.sin())
    }
    fn cos(self) -> Self {
        Octuple(self.0.cos())
    }
    fn tan(self) -> Self {
        Octuple(self.0.tan())
    }
    fn asin(self) -> Self {
        Octuple(self.0.asin())
    }
    fn acos(self) -> Self {
        Octuple(self.0.acos())
    }
    fn atan(self) -> Self {
        Octuple(self.0.atan())
    }
    fn atan2(self, x: Self) -> Self {
        Octuple(self.0.atan2(&x.0))
    }
    fn sin_cos(self) -> (Self, Self) {
        let (s, c) = self.0.sin_cos();
        (Octuple(s), Octuple(c))
    }
    fn exp_m1(self) -> Self {
        Octuple(self.0.exp_m1())
    }
    fn ln_1p(self) -> Self {
        Octuple(self.0.ln_1p())
    }
    fn sinh(self) -> Self {
        if self.abs() < Self::one() {
            (self.exp_m1() - (-self).exp_m1()).half()
        } else {
            let e = self.exp();
            (e - e.recip()).half()
        }
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).half()
    }
    fn tanh(self) -> Self {
        if self.abs() > Self::c(100.0) {
            return self.signum();
        }
        let e = (self * Self::two()).exp_m1();
        e / (e + Self::two())
    }
    fn asinh(self) -> Self {
        let t = self.abs();
        let one = Self::one();
        let r = if t > Self::c(1e30) {
            t.ln() + Self::LN_2()
        } else {
            let t2 = t * t;
            (t + t2 / (one + (one + t2).sqrt())).ln_1p()
        };
        if self.is_sign_negative() {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        let one = Self::one();
        if self < one {
            return Self::nan();
        }
        if self > Self::c(1e30) {
            return self.ln() + Self::LN_2();
        }
        let d = self - one;
        (d + (d * (self + one)).sqrt()).ln_1p()
    }
    fn atanh(self) -> Self {
        (self * Self::two() / (Self::one() - self)).ln_1p().half()
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.f64().integer_decode()
    }
}

impl Real for Octuple {
    const MANTISSA_BITS: u32 = 237;
    const NAME: &'static str = "octuple";

    fn lit(x: f64) -> Self {
        Self::c(x)
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        parse_via_rational(s)
    }

    fn to_decimal(self, digits: usize) -> String {
        format_sci(self, digits)
    }

    fn to_dyadic(self) -> Option<(BigInt, i64)> {
        if !self.0.is_finite() {
            return None;
        }
        let (s, t, (hi, lo)) = self.0.as_sign_exp_signif();
        let m = (BigInt::from(hi) << 128usize) + BigInt::from(lo);
        Some((if s == 1 { -m } else { m }, t as i64))
    }
}
