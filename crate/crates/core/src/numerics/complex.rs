use rug::float::Constant;
use rug::{Float, Rational};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::PrecisionContext;

/// Complex number with MPFR real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self::new(ctx.zero(), ctx.zero())
    }

    pub fn zero_prec(bits: u32) -> Self {
        Self::new(Float::new(bits), Float::new(bits))
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::new(ctx.float(1), ctx.zero())
    }

    pub fn i(ctx: &PrecisionContext) -> Self {
        Self::new(ctx.zero(), ctx.float(1))
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn from_f64(re: f64, im: f64, ctx: &PrecisionContext) -> Self {
        Self::new(ctx.float(re), ctx.float(im))
    }

    pub fn from_rational(re: &Rational, im: &Rational, ctx: &PrecisionContext) -> Self {
        Self::new(ctx.float(re), ctx.float(im))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn set_prec(&mut self, bits: u32) {
        self.re.set_prec(bits);
        self.im.set_prec(bits);
    }

    pub fn with_prec(mut self, bits: u32) -> Self {
        self.set_prec(bits);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn mul_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re * s), Float::with_val(p, &self.im * s))
    }

    pub fn scale_i64(&self, s: i64) -> Self {
        Self::new(self.re.clone() * s, self.im.clone() * s)
    }

    pub fn div_i64(&self, s: i64) -> Self {
        Self::new(self.re.clone() / s, self.im.clone() / s)
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Self::new(Float::with_val(self.prec(), &self.re / &n), -Float::with_val(self.prec(), &self.im / &n))
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self::new(c * &m, s * &m)
    }

    /// Principal logarithm, imaginary part in (-pi, pi].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let r = self.abs();
        let mut theta = self.arg();
        // atan2 yields -pi for (negative, -0); the principal value is +pi
        if theta == Float::with_val(p, Constant::Pi) * -1i32 {
            theta = -theta;
        }
        Self::new(r.ln(), theta)
    }

    /// Principal square root, argument in (-pi/2, pi/2].
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::new(Float::new(p), Float::new(p));
        }
        let r = self.abs();
        if self.re >= 0 {
            let w_re = (Float::with_val(p, &r + &self.re) / 2u32).sqrt();
            let w_im = Float::with_val(p, &self.im / &w_re) / 2u32;
            Self::new(w_re, w_im)
        } else {
            let mut t = (Float::with_val(p, &r - &self.re) / 2u32).sqrt();
            if self.im < 0 {
                t = -t;
            }
            let w_re = Float::with_val(p, &self.im / &t) / 2u32;
            Self::new(w_re, t)
        }
    }

    /// Principal power `z^(num/den) = exp((num/den) ln z)`.
    pub fn pow_frac(&self, num: i64, den: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if den == 2 && num % 2 != 0 {
            let s = self.sqrt();
            return s.powi(num);
        }
        let l = self.ln();
        let f = l.scale_i64(num).div_i64(den);
        f.exp()
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self.clone();
        let mut acc = Self::new(Float::with_val(p, 1), Float::new(p));
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Max of |re|, |im| as f64, for reporting.
    pub fn max_abs_f64(&self) -> f64 {
        self.re.to_f64().abs().max(self.im.to_f64().abs())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        write!(f, "{:.*e} {} {:.*e}i", d, self.re, if self.im < 0 { "-" } else { "+" }, d, self.im.clone().abs())
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-self.re, -self.im)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex::new(Float::with_val(p, &self.re + &o.re), Float::with_val(p, &self.im + &o.im))
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex::new(Float::with_val(p, &self.re - &o.re), Float::with_val(p, &self.im - &o.im))
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        BigComplex::new(ac - bd, ad + bc)
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        self * &o.recip()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                (&self).$m(&o)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex {
                (&self).$m(o)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, o: &BigComplex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign<BigComplex> for BigComplex {
    fn add_assign(&mut self, o: BigComplex) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, o: &BigComplex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, o: &BigComplex) {
        *self = &*self * o;
    }
}

impl Mul<&Float> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, s: &Float) -> BigComplex {
        self.scale(s)
    }
}

impl Mul<&Float> for BigComplex {
    type Output = BigComplex;
    fn mul(self, s: &Float) -> BigComplex {
        BigComplex::new(self.re * s, self.im * s)
    }
}
