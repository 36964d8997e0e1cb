//! Traces of singular moduli `tr^{+/-}_F(D, r) = sum F(z_Q)/omega_Q` over Heegner orbits.

use rug::Float;
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{fmt_float, BigComplex, NumericsError, PrecisionContext};
use crate::qseries::EFunction;
use crate::quadforms::{enumerate_heegner, ext_gcd, BinaryQF, HeegnerOrbit, Mat2, QfError, Sign};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TraceError {
    #[error(transparent)]
    Form(#[from] QfError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

impl TraceError {
    pub fn is_congruence_fail(&self) -> bool {
        matches!(self, TraceError::Form(QfError::CongruenceFail { .. }))
    }
}

fn check_congruence(n: u64, d: i64, r: i64) -> Result<(), TraceError> {
    let four_n = 4 * n as i64;
    if (d - r * r).rem_euclid(four_n) != 0 {
        return Err(QfError::CongruenceFail { d, r, four_n }.into());
    }
    Ok(())
}

/// Element of `Gamma_0(N)` moving `z_Q` to the point of largest imaginary part in its orbit.
///
/// `Im(g z_Q) = sqrt|D| / (2 |Q|(d, -c))` for bottom row `(c, d)` of `g`, so this minimizes
/// `|Q|(d, -c)` over coprime pairs with `N | c`.
pub fn max_im_translate(q: &BinaryQF, n: u64) -> Mat2 {
    let q = if q.a < 0 { q.neg() } else { *q };
    let (a, b, cc) = (q.a as i128, q.b as i128, q.c as i128);
    let dd = -(q.disc() as i128);
    let n = n as i128;
    let val = |x: i128, y: i128| a * x * x + b * x * y + cc * y * y;
    let mut best = (a, 0i128, 1i128);
    let mut k = 1i128;
    // Q(x, y) >= (|D|/4a) y^2
    while dd * (n * k) * (n * k) < 4 * a * best.0 {
        let y = -n * k;
        let x0 = -b * y / (2 * a);
        let w = ((best.0 / a) as f64).sqrt() as i128 + 2;
        for x in x0 - w..=x0 + w {
            let v = val(x, y);
            if v < best.0 && gcd(x, n * k) == 1 {
                best = (v, n * k, x);
            }
        }
        k += 1;
    }
    let (_, c, d) = best;
    if c == 0 {
        return Mat2::I;
    }
    let (_, u, w) = ext_gcd(d as i64, c as i64);
    // u d + w c = 1  =>  [[u, -w], [c, d]]
    Mat2::new(u, -w, c as i64, d as i64)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// CM point of the orbit, moved to maximal imaginary part.
pub fn evaluation_point(orbit: &HeegnerOrbit, n: u64, ctx: &PrecisionContext) -> BigComplex {
    max_im_translate(&orbit.rep, n).act(&orbit.cm(ctx))
}

/// `sum F(z)/omega` over the given points, in order.
pub fn trace_sum(f: EFunction, points: &[(BigComplex, u32)], ctx: &PrecisionContext) -> Result<BigComplex, TraceError> {
    let mut acc = BigComplex::zero(ctx);
    for (z, w) in points {
        acc += f.eval(z, ctx)?.div_i64(*w as i64);
    }
    Ok(acc)
}

/// `tr^{sign}_F(D, r)`; zero for `D >= 0` (see [`TraceResult::degenerate`]).
pub fn trace(f: EFunction, n: u64, d: i64, r: i64, sign: Sign, ctx: &PrecisionContext) -> Result<BigComplex, TraceError> {
    Ok(trace_counted(f, n, d, r, sign, ctx)?.0)
}

fn trace_counted(f: EFunction, n: u64, d: i64, r: i64, sign: Sign, ctx: &PrecisionContext) -> Result<(BigComplex, usize), TraceError> {
    check_congruence(n, d, r)?;
    if d >= 0 {
        return Ok((BigComplex::zero(ctx), 0));
    }
    let orbits = enumerate_heegner(n, d, r, sign)?;
    let pts: Vec<(BigComplex, u32)> = orbits.iter().map(|o| (evaluation_point(o, n, ctx), o.omega)).collect();
    Ok((trace_sum(f, &pts, ctx)?, orbits.len()))
}

#[derive(Clone, Debug)]
pub struct TraceResult {
    pub plus: BigComplex,
    pub minus: BigComplex,
    pub orbit_count_plus: usize,
    pub orbit_count_minus: usize,
    /// `max |value(digits) - value(2 digits)|` over both signs.
    pub precision_certificate: Float,
    /// `D >= 0`: the form sets are empty and both traces are reported as zero.
    pub degenerate: bool,
}

impl TraceResult {
    /// `i/sqrt(-D) (tr^+ - tr^-)`; zero when degenerate.
    pub fn diff_over_sqrt(&self, d: i64, ctx: &PrecisionContext) -> BigComplex {
        if self.degenerate {
            return BigComplex::zero(ctx);
        }
        let s = ctx.float(-d).sqrt().recip();
        (&self.plus - &self.minus).mul_i().scale(&s)
    }
}

/// Both traces with a certificate from a second run at doubled precision.
pub fn trace_result(f: EFunction, n: u64, d: i64, r: i64, ctx: &PrecisionContext) -> Result<TraceResult, TraceError> {
    let (plus, cp) = trace_counted(f, n, d, r, Sign::Plus, ctx)?;
    let (minus, cm) = trace_counted(f, n, d, r, Sign::Minus, ctx)?;
    let hi = ctx.doubled();
    let (plus2, _) = trace_counted(f, n, d, r, Sign::Plus, &hi)?;
    let (minus2, _) = trace_counted(f, n, d, r, Sign::Minus, &hi)?;
    let gp = (&plus2 - &plus.clone().with_prec(hi.bits())).abs();
    let gm = (&minus2 - &minus.clone().with_prec(hi.bits())).abs();
    let cert = Float::with_val(ctx.bits(), if gp > gm { gp } else { gm });
    Ok(TraceResult { plus, minus, orbit_count_plus: cp, orbit_count_minus: cm, precision_certificate: cert, degenerate: d >= 0 })
}

#[derive(Clone, Debug)]
pub struct TraceDiff {
    pub value: BigComplex,
    /// `|Im(value)|`
    pub imag_residual: Float,
    pub degenerate: bool,
}

/// `i/sqrt(-D) (tr^+_F(D, r) - tr^-_F(D, r))`.
pub fn trace_diff_over_sqrt(f: EFunction, n: u64, d: i64, r: i64, ctx: &PrecisionContext) -> Result<TraceDiff, TraceError> {
    check_congruence(n, d, r)?;
    if d >= 0 {
        return Ok(TraceDiff { value: BigComplex::zero(ctx), imag_residual: ctx.zero(), degenerate: true });
    }
    let plus = trace(f, n, d, r, Sign::Plus, ctx)?;
    let minus = trace(f, n, d, r, Sign::Minus, ctx)?;
    let value = (&plus - &minus).mul_i().scale(&ctx.float(-d).sqrt().recip());
    let imag_residual = value.im.clone().abs();
    Ok(TraceDiff { value, imag_residual, degenerate: false })
}

/// JSON form of a trace query.
#[derive(Clone, Debug, Serialize)]
pub struct TraceRecord {
    pub schema: u32,
    pub function: String,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "D")]
    pub d: i64,
    pub r: i64,
    pub plus: [String; 2],
    pub minus: [String; 2],
    pub diff_over_sqrt: [String; 2],
    pub orbit_count_plus: usize,
    pub orbit_count_minus: usize,
    pub certificate: String,
    pub degenerate: bool,
}

impl TraceRecord {
    pub fn new(f: EFunction, n: u64, d: i64, r: i64, t: &TraceResult, ctx: &PrecisionContext) -> Self {
        let digits = ctx.digits as usize;
        let pair = |z: &BigComplex| [fmt_float(&z.re, digits), fmt_float(&z.im, digits)];
        TraceRecord {
            schema: 1,
            function: f.tag().into(),
            n,
            d,
            r,
            plus: pair(&t.plus),
            minus: pair(&t.minus),
            diff_over_sqrt: pair(&t.diff_over_sqrt(d, ctx)),
            orbit_count_plus: t.orbit_count_plus,
            orbit_count_minus: t.orbit_count_minus,
            certificate: fmt_float(&t.precision_certificate, 6),
            degenerate: t.degenerate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::mock_theta;
    use crate::qseries::SeriesId;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30)
    }

    #[test]
    fn constant_traces() {
        let c = ctx();
        let t = trace(EFunction::Const1, 1, -3, 1, Sign::Plus, &c).unwrap();
        assert!((&t - &BigComplex::from_rational(&rug::Rational::from((1, 3)), &rug::Rational::new(), &c)).abs() < 1e-25);
        let t = trace(EFunction::Const1, 1, -4, 0, Sign::Plus, &c).unwrap();
        assert!((&t - &BigComplex::from_rational(&rug::Rational::from((1, 2)), &rug::Rational::new(), &c)).abs() < 1e-25);
        let d = trace_diff_over_sqrt(EFunction::Const1, 12, -44, 2, &c).unwrap();
        assert!(d.value.abs() < 1e-25);
    }

    #[test]
    fn sigma_one_from_traces() {
        let c = ctx();
        let d = trace_diff_over_sqrt(EFunction::E61, 12, -44, 2, &c).unwrap();
        // a_sigma(1) = -(i/4 sqrt 44)(tr+ - tr-) = -(1/4) d
        let a = mock_theta(&SeriesId::parse("sigma6").unwrap(), 2).unwrap().coeff(1).unwrap();
        let got = d.value.scale_i64(-1).div_i64(4);
        assert!((&got - &BigComplex::from_rational(&a, &rug::Rational::new(), &c)).abs() < 1e-20);
        assert!(d.imag_residual < 1e-25);
    }

    #[test]
    fn congruence_and_degenerate() {
        let c = ctx();
        assert!(trace(EFunction::E61, 12, -43, 2, Sign::Plus, &c).unwrap_err().is_congruence_fail());
        let t = trace_result(EFunction::E61, 12, 4, 2, &c).unwrap();
        assert!(t.degenerate && t.plus.is_zero() && t.orbit_count_plus == 0);
    }

    #[test]
    fn translate_maximizes_imaginary_part() {
        let c = ctx();
        for o in enumerate_heegner(12, -44, 2, Sign::Plus).unwrap() {
            let g = max_im_translate(&o.rep, 12);
            assert!(g.in_gamma0(12));
            let z = g.act(&o.cm(&c));
            assert!(z.im >= o.cm(&c).im);
            // brute force over small bottom rows
            for cc in (12..=96).step_by(12) {
                for dd in -60i64..=60 {
                    let (gg, _, _) = ext_gcd(cc, dd);
                    if gg != 1 {
                        continue;
                    }
                    let den = (&o.cm(&c).scale_i64(cc) + &BigComplex::from_f64(dd as f64, 0.0, &c)).norm_sqr();
                    let im = Float::with_val(c.bits(), &o.cm(&c).im / &den);
                    assert!(im <= Float::with_val(c.bits(), &z.im + 1e-20));
                }
            }
        }
    }

    #[test]
    fn certificate_is_small() {
        let c = ctx();
        let t = trace_result(EFunction::E61, 12, -44, 2, &c).unwrap();
        assert!(t.precision_certificate < 1e-20);
        assert_eq!((t.orbit_count_plus, t.orbit_count_minus), (t.orbit_count_minus, t.orbit_count_plus));
    }
}
