use rug::float::Constant;
use rug::Float;

use super::PrecisionContext;

/// Below this argument erfc comes from the erf power series, above it from the
/// continued fraction.
pub const ERFC_SPLIT: f64 = 3.0;

/// Complementary error function. Negative arguments use `erfc(-x) = 2 - erfc(x)`.
pub fn erfc(x: &Float, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    if x.is_sign_negative() && !x.is_zero() {
        let pos = Float::with_val(bits, -x);
        return Float::with_val(bits, 2u32 - erfc(&pos, ctx));
    }
    if *x <= ERFC_SPLIT {
        let wp = bits + 64;
        let one_minus = Float::with_val(wp, 1u32) - erf_series(x, wp);
        Float::with_val(bits, one_minus)
    } else {
        let wp = bits + 32;
        let x2 = Float::with_val(wp, x.square_ref());
        let scaled = erfcx_cf(x, wp);
        Float::with_val(bits, scaled * (-x2).exp())
    }
}

/// Scaled complementary error function `exp(x^2) erfc(x)` for `x >= 0`,
/// accurate to relative precision even where erfc itself underflows.
pub fn erfcx(x: &Float, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    if *x <= ERFC_SPLIT {
        let wp = bits + 64;
        let x2 = Float::with_val(wp, x.square_ref());
        let one_minus = Float::with_val(wp, 1u32) - erf_series(x, wp);
        Float::with_val(bits, one_minus * x2.exp())
    } else {
        Float::with_val(bits, erfcx_cf(x, bits + 32))
    }
}

/// erf(x) = (2/sqrt(pi)) exp(-x^2) sum_n 2^n x^(2n+1) / (2n+1)!!, all terms positive.
fn erf_series(x: &Float, wp: u32) -> Float {
    let x = Float::with_val(wp, x);
    let x2 = Float::with_val(wp, x.square_ref());
    let two_x2 = Float::with_val(wp, &x2 * 2u32);
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut n: u32 = 0;
    loop {
        n += 1;
        term *= &two_x2;
        term /= 2 * n + 1;
        sum += &term;
        if term.is_zero() || term.get_exp().unwrap_or(i32::MIN) < sum.get_exp().unwrap_or(0) - wp as i32 - 2 {
            break;
        }
    }
    let pi = Float::with_val(wp, Constant::Pi);
    sum * 2u32 / pi.sqrt() * (-x2).exp()
}

/// exp(x^2) erfc(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz.
fn erfcx_cf(x: &Float, wp: u32) -> Float {
    let x = Float::with_val(wp, x);
    let tiny = Float::with_val(wp, Float::u_exp(1, -(wp as i32) - 64));
    let tol = Float::with_val(wp, Float::u_exp(1, -(wp as i32)));
    let mut f = x.clone();
    let mut c = x.clone();
    let mut d = Float::new(wp);
    let mut k: u32 = 1;
    loop {
        let a = Float::with_val(wp, k) / 2u32;
        d = Float::with_val(wp, &x + &a * &d);
        if d.is_zero() {
            d = tiny.clone();
        }
        d.recip_mut();
        c = Float::with_val(wp, &a / &c) + &x;
        if c.is_zero() {
            c = tiny.clone();
        }
        let delta = Float::with_val(wp, &c * &d);
        f *= &delta;
        let dev = (delta - 1u32).abs();
        if dev < tol || k > 200_000 {
            break;
        }
        k += 1;
    }
    let pi = Float::with_val(wp, Constant::Pi);
    Float::with_val(wp, pi.sqrt() * &f).recip()
}
