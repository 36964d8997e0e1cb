//! Arbitrary-precision real and complex arithmetic.
//!
//! Reals are MPFR floats via `rug`. [`BigComplex`] is a plain pair of them with
//! the handful of operations the rest of the crate needs: field arithmetic,
//! `exp`, `ln`, the principal square root and `e(z) = exp(2 pi i z)`.

mod complex;
mod erfc;
mod quad;

pub use complex::BigComplex;
pub use erfc::{erfc, erfcx, ERFC_SPLIT};
pub use quad::{exp_sinh, exp_sinh_vec, tanh_sinh, QuadResult, QuadVecResult};

use rug::float::Constant;
use rug::{Assign, Float};
use thiserror::Error;

pub const DEFAULT_DIGITS: u32 = 60;
pub const DEFAULT_GUARD_DIGITS: u32 = 15;
pub const DIGITS_ENV: &str = "MOCKTHETA_DIGITS";

const LOG2_10: f64 = std::f64::consts::LOG2_10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("exponent overflow evaluating e(z): 2*pi*Im(-z) = {0:e}")]
    Overflow(f64),
    #[error("quadrature did not converge: estimate {estimate:e} after {levels} levels")]
    NoConvergence { estimate: f64, levels: u32 },
    #[error("parameter outside the domain of convergence: {0}")]
    Domain(String),
}

/// Decimal working precision plus internal guard digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    pub digits: u32,
    pub guard_digits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS)
    }
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Self {
        Self { digits: digits.max(1), guard_digits: DEFAULT_GUARD_DIGITS }
    }

    pub fn with_guard(digits: u32, guard_digits: u32) -> Self {
        Self { digits: digits.max(1), guard_digits: guard_digits.max(1) }
    }

    /// Default context, overridden by `MOCKTHETA_DIGITS` when set to a positive integer.
    pub fn from_env() -> Self {
        match std::env::var(DIGITS_ENV).ok().and_then(|s| s.trim().parse::<u32>().ok()) {
            Some(d) if d > 0 => Self::new(d),
            _ => Self::default(),
        }
    }

    /// Context used for certification re-runs.
    pub fn doubled(&self) -> Self {
        Self { digits: 2 * self.digits, guard_digits: self.guard_digits }
    }

    /// Binary precision of every float created under this context.
    pub fn bits(&self) -> u32 {
        ((self.digits + self.guard_digits) as f64 * LOG2_10).ceil() as u32 + 8
    }

    pub fn float<T>(&self, val: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), val)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    /// `10^(-k)` at working precision.
    pub fn ten_pow_neg(&self, k: i32) -> Float {
        use rug::ops::Pow;
        let ten = self.float(10);
        ten.pow(-k)
    }

    /// The nominal absolute error bound `10^(-digits)`.
    pub fn eps(&self) -> Float {
        self.ten_pow_neg(self.digits as i32)
    }

    /// Threshold below which series tails are discarded.
    pub fn tail_eps(&self) -> Float {
        self.ten_pow_neg((self.digits + self.guard_digits) as i32)
    }
}

/// `e(z) = exp(2 pi i z)`.
pub fn e_of(z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
    let bits = ctx.bits().max(z.prec());
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let growth = -Float::with_val(bits, &z.im * &two_pi);
    if growth > (1u64 << 30) as f64 {
        return Err(NumericsError::Overflow(growth.to_f64()));
    }
    let modulus = growth.exp();
    let frac = Float::with_val(bits, &z.re - z.re.clone().floor());
    let angle = frac * &two_pi;
    let (s, c) = angle.sin_cos(Float::new(bits));
    let mut out = BigComplex::new(c * &modulus, s * &modulus);
    out.set_prec(ctx.bits());
    Ok(out)
}

/// `e(x)` for an exact rational `x`.
pub fn e_rational(num: i64, den: i64, ctx: &PrecisionContext) -> BigComplex {
    let bits = ctx.bits();
    let r = num.rem_euclid(den);
    let angle = Float::with_val(bits + 16, Constant::Pi) * 2u32 * r / den;
    let (s, c) = angle.sin_cos(Float::new(bits + 16));
    let mut out = BigComplex::new(c, s);
    out.set_prec(bits);
    out
}

/// Principal square root: the root with argument in (-pi/2, pi/2].
pub fn principal_sqrt(z: &BigComplex, ctx: &PrecisionContext) -> BigComplex {
    let mut w = z.sqrt();
    w.set_prec(ctx.bits());
    w
}

/// Parse a decimal string (e.g. `"0.25"`, `"-1e-3"`) at context precision.
pub fn parse_float(s: &str, ctx: &PrecisionContext) -> Option<Float> {
    Float::parse(s.trim()).ok().map(|p| ctx.float(p))
}

/// Short decimal rendering used in reports.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
}
