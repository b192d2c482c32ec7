//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! with `|lo| <= ulp(hi)/2`, giving about 106 significant bits.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

use super::{dyadic_add, f64_dyadic, format_sci, parse_via_rational, Real};

#[derive(Clone, Copy, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const PI: DoubleDouble = DoubleDouble::new(std::f64::consts::PI, 1.224646799147353207e-16);
const E: DoubleDouble = DoubleDouble::new(std::f64::consts::E, 1.445646891729250158e-16);
const LN_2: DoubleDouble = DoubleDouble::new(std::f64::consts::LN_2, 2.319046813846299558e-17);
const LN_10: DoubleDouble = DoubleDouble::new(std::f64::consts::LN_10, -2.170756223382249351e-16);
const EPS: f64 = 4.93038065763132e-32; // 2^-104

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        DoubleDouble { hi, lo }
    }

    #[inline]
    pub(crate) fn c(x: f64) -> Self {
        <Self as From<f64>>::from(x)
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self::new(hi, lo)
    }

    fn special(x: f64) -> Self {
        Self::new(x, 0.0)
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        if !p1.is_finite() {
            return Self::special(p1);
        }
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Self::new(hi, lo)
    }

    fn sqr(self) -> Self {
        self * self
    }

    /// Multiplication by a power of two, exact.
    fn ldexp(self, e: i32) -> Self {
        let mut x = self;
        let mut e = e;
        while e > 1000 {
            x = Self::new(x.hi * 2f64.powi(1000), x.lo * 2f64.powi(1000));
            e -= 1000;
        }
        while e < -1000 {
            x = Self::new(x.hi * 2f64.powi(-1000), x.lo * 2f64.powi(-1000));
            e += 1000;
        }
        let s = 2f64.powi(e);
        Self::new(x.hi * s, x.lo * s)
    }

    /// `exp(x) - 1` for small `|x|`, by Taylor series after halving the
    /// argument and doubling back.
    fn expm1_small(x: Self) -> Self {
        let halvings = 10;
        let r = x.ldexp(-halvings);
        let mut term = r;
        let mut sum = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * r / Self::c(n);
            sum += term;
            if term.hi.abs() <= EPS * sum.hi.abs() {
                break;
            }
        }
        // expm1(2r) = expm1(r) * (expm1(r) + 2)
        for _ in 0..halvings {
            sum = sum * (sum + Self::c(2.0));
        }
        sum
    }

    /// Sine and cosine for `|x| <= pi/4`.
    fn sin_cos_small(x: Self) -> (Self, Self) {
        let x2 = x.sqr();
        let mut s = x;
        let mut term = x;
        let mut n = 1.0;
        loop {
            term = -term * x2 / Self::c((n + 1.0) * (n + 2.0));
            n += 2.0;
            s += term;
            if term.hi.abs() <= EPS * s.hi.abs().max(1e-300) {
                break;
            }
        }
        let mut c = Self::one();
        let mut term = Self::one();
        let mut n = 0.0;
        loop {
            term = -term * x2 / Self::c((n + 1.0) * (n + 2.0));
            n += 2.0;
            c += term;
            if term.hi.abs() <= EPS {
                break;
            }
        }
        (s, c)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::new(x, 0.0)
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, o: &Self) -> bool {
        self.hi == o.hi && self.lo == o.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&o.lo),
            ord => Some(ord),
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Self::special(s1);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self::new(hi, lo)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        if !p1.is_finite() {
            return Self::special(p1);
        }
        let (hi, lo) = quick_two_sum(p1, p2 + (self.hi * b.lo + self.lo * b.hi));
        Self::new(hi, lo)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || q1 == 0.0 {
            return Self::special(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self::new(hi, lo) + Self::c(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DoubleDouble {
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /, RemAssign rem_assign %);

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::new(1.0, 0.0)
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = &'static str;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err("only radix 10 is supported");
        }
        parse_via_rational(s).ok_or("invalid decimal literal")
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        let h = t.hi.to_i64()?;
        h.checked_add(t.lo.to_i64()?)
    }
    fn to_u64(&self) -> Option<u64> {
        let t = self.trunc();
        if t.hi < 0.0 {
            return None;
        }
        let h = t.hi.to_i128()?;
        u64::try_from(h + t.lo.to_i128()?).ok()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(Self::from_sum(hi, lo))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(Self::from_sum(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Self::c(x))
    }
}

impl NumCast for DoubleDouble {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        n.to_f64().map(Self::c)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p + 1).unwrap_or(32);
        f.write_str(&format_sci(*self, digits))
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({})", format_sci(*self, 32))
    }
}

impl FloatConst for DoubleDouble {
    fn E() -> Self {
        E
    }
    fn FRAC_1_PI() -> Self {
        Self::one() / PI
    }
    fn FRAC_1_SQRT_2() -> Self {
        Self::c(0.5).sqrt()
    }
    fn FRAC_2_PI() -> Self {
        Self::c(2.0) / PI
    }
    fn FRAC_2_SQRT_PI() -> Self {
        Self::c(2.0) / PI.sqrt()
    }
    fn FRAC_PI_2() -> Self {
        PI.ldexp(-1)
    }
    fn FRAC_PI_3() -> Self {
        PI / Self::c(3.0)
    }
    fn FRAC_PI_4() -> Self {
        PI.ldexp(-2)
    }
    fn FRAC_PI_6() -> Self {
        PI / Self::c(6.0)
    }
    fn FRAC_PI_8() -> Self {
        PI.ldexp(-3)
    }
    fn LN_10() -> Self {
        LN_10
    }
    fn LN_2() -> Self {
        LN_2
    }
    fn LOG10_E() -> Self {
        Self::one() / LN_10
    }
    fn LOG2_E() -> Self {
        Self::one() / LN_2
    }
    fn PI() -> Self {
        PI
    }
    fn SQRT_2() -> Self {
        Self::c(2.0).sqrt()
    }
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        Self::special(f64::NAN)
    }
    fn infinity() -> Self {
        Self::special(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        Self::special(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Self::special(-0.0)
    }
    fn min_value() -> Self {
        Self::special(f64::MIN)
    }
    fn min_positive_value() -> Self {
        // Smallest value that still carries full double-double precision.
        Self::special(f64::MIN_POSITIVE * 2f64.powi(53))
    }
    fn max_value() -> Self {
        Self::special(f64::MAX)
    }
    fn epsilon() -> Self {
        Self::special(EPS)
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }
    fn floor(self) -> Self {
        let h = self.hi.floor();
        if h == self.hi {
            Self::from_sum(h, self.lo.floor())
        } else {
            Self::special(h)
        }
    }
    fn ceil(self) -> Self {
        let h = self.hi.ceil();
        if h == self.hi {
            Self::from_sum(h, self.lo.ceil())
        } else {
            Self::special(h)
        }
    }
    fn round(self) -> Self {
        let f = self.floor();
        let d = self - f;
        let half = Self::c(0.5);
        if d > half || (d == half && self.hi > 0.0) {
            f + Self::one()
        } else {
            f
        }
    }
    fn trunc(self) -> Self {
        if self.hi < 0.0 {
            self.ceil()
        } else {
            self.floor()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        Self::special(self.hi.signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
    fn powf(self, y: Self) -> Self {
        if y.fract().is_zero() && y.abs().hi < 2f64.powi(30) {
            return self.powi(y.hi as i32 + y.lo as i32);
        }
        if self.hi < 0.0 || self.is_nan() || y.is_nan() {
            return Self::nan();
        }
        if self.is_zero() {
            return if y.hi > 0.0 { Self::zero() } else { Self::infinity() };
        }
        (y * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::zero() } else { Self::nan() };
        }
        if self.is_infinite() {
            return self;
        }
        let q = Self::c(self.hi.sqrt());
        q + (self - q.sqr()) / q.ldexp(1)
    }
    fn exp(self) -> Self {
        if self.hi > 709.8 {
            return Self::infinity();
        }
        if self.hi < -745.2 {
            return Self::zero();
        }
        if self.is_nan() {
            return self;
        }
        let k = (self.hi / LN_2.hi).round();
        let r = self - LN_2.mul_f64(k);
        (Self::expm1_small(r) + Self::one()).ldexp(k as i32)
    }
    fn exp2(self) -> Self {
        (self * LN_2).exp()
    }
    fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::neg_infinity() } else { Self::nan() };
        }
        if self.is_infinite() || self.is_nan() {
            return self;
        }
        let y = Self::c(self.hi.ln());
        y + self * (-y).exp() - Self::one()
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() / LN_2
    }
    fn log10(self) -> Self {
        self.ln() / LN_10
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
        if self.is_zero() || !self.is_finite() {
            return self;
        }
        let y = Self::c(self.hi.cbrt());
        y - (y.sqr() * y - self) / (Self::c(3.0) * y.sqr())
    }
    fn hypot(self, o: Self) -> Self {
        let a = self.abs();
        let b = o.abs();
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if big.is_zero() || big.is_infinite() {
            return big;
        }
        let r = small / big;
        big * (Self::one() + r.sqr()).sqrt()
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }
    fn asin(self) -> Self {
        if self.abs().hi > 1.0 {
            return Self::nan();
        }
        let one = Self::one();
        self.atan2(((one - self) * (one + self)).sqrt())
    }
    fn acos(self) -> Self {
        if self.abs().hi > 1.0 {
            return Self::nan();
        }
        let one = Self::one();
        ((one - self) * (one + self)).sqrt().atan2(self)
    }
    fn atan(self) -> Self {
        self.atan2(Self::one())
    }
    fn atan2(self, x: Self) -> Self {
        let y = self;
        if y.is_nan() || x.is_nan() {
            return Self::nan();
        }
        if y.is_infinite() || x.is_infinite() {
            return Self::c(y.hi.atan2(x.hi));
        }
        if y.is_zero() && x.is_zero() {
            return Self::c(y.hi.atan2(x.hi));
        }
        let mut z = Self::c(y.hi.atan2(x.hi));
        // One Newton step on y cos z - x sin z = 0 doubles the f64 digits.
        let (s, c) = z.sin_cos();
        z += (y * c - x * s) / (x * c + y * s);
        z
    }
    fn sin_cos(self) -> (Self, Self) {
        if !self.is_finite() {
            return (Self::nan(), Self::nan());
        }
        let half_pi = PI.ldexp(-1);
        let k = (self.hi / half_pi.hi).round();
        let r = self - half_pi * Self::c(k);
        let (s, c) = Self::sin_cos_small(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
    fn exp_m1(self) -> Self {
        if self.abs().hi < 0.5 {
            Self::expm1_small(self)
        } else {
            self.exp() - Self::one()
        }
    }
    fn ln_1p(self) -> Self {
        if self.abs().hi < 0.5 {
            let mut y = Self::c(self.hi.ln_1p());
            let e = y.exp_m1();
            y -= (e - self) / (Self::one() + e);
            y
        } else {
            (Self::one() + self).ln()
        }
    }
    fn sinh(self) -> Self {
        if self.abs().hi < 0.5 {
            (self.exp_m1() - (-self).exp_m1()).ldexp(-1)
        } else {
            let e = self.exp();
            (e - e.recip()).ldexp(-1)
        }
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).ldexp(-1)
    }
    fn tanh(self) -> Self {
        if self.abs().hi > 40.0 {
            return Self::c(self.hi.signum());
        }
        let e = self.ldexp(1).exp_m1();
        e / (e + Self::c(2.0))
    }
    fn asinh(self) -> Self {
        let t = self.abs();
        let r = if t.hi > 1e150 {
            t.ln() + LN_2
        } else {
            let t2 = t.sqr();
            (t + t2 / (Self::one() + (Self::one() + t2).sqrt())).ln_1p()
        };
        if self.hi < 0.0 {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        if self.hi < 1.0 {
            return Self::nan();
        }
        if self.hi > 1e150 {
            return self.ln() + LN_2;
        }
        let d = self - Self::one();
        (d + (d * (self + Self::one())).sqrt()).ln_1p()
    }
    fn atanh(self) -> Self {
        (self.ldexp(1) / (Self::one() - self)).ln_1p().ldexp(-1)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi.integer_decode()
    }
}

impl Real for DoubleDouble {
    const MANTISSA_BITS: u32 = 106;
    const NAME: &'static str = "double-double";

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
        Some(dyadic_add(f64_dyadic(self.hi)?, f64_dyadic(self.lo)?))
    }
}
