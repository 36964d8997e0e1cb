//! Unary theta functions `theta_{N,a}(z) = sum_{n = a (2N)} n q^{n^2/4N}`.

use rug::{Float, Rational};

use super::FourierExpansion;
use crate::numerics::{e_of, e_rational, BigComplex, NumericsError, PrecisionContext};

/// Exact expansion through `q^m` over the denominator `4N`.
pub fn theta_na_expansion(n_level: u64, a: i64, m: u64) -> FourierExpansion {
    let two_n = 2 * n_level as i64;
    let four_n = 4 * n_level as i64;
    let bound = four_n * m as i64;
    let mut s = FourierExpansion::new(four_n as u64, bound + 1);
    let r = a.rem_euclid(two_n);
    let mut acc = std::collections::BTreeMap::<i64, i64>::new();
    // n = r + 2N j for all j with n^2 <= bound
    let mut j = -((bound as f64).sqrt() as i64 / two_n) - 2;
    loop {
        let n = r + two_n * j;
        if n > 0 && n * n > bound {
            break;
        }
        if n * n <= bound && n != 0 {
            *acc.entry(n * n).or_default() += n;
        }
        j += 1;
    }
    for (k, c) in acc {
        s.set(k, Rational::from(c));
    }
    s
}

/// Numeric `theta_{N,a}(z)` by direct summation; needs `Im z` not too small.
pub fn theta_eval(n_level: u64, a: i64, z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
    if z.im <= 0 {
        return Err(NumericsError::Domain("theta needs Im(z) > 0".into()));
    }
    let two_n = 2 * n_level as i64;
    let four_n = 4 * n_level as i64;
    let r = a.rem_euclid(two_n);
    let tol = ctx.tail_eps();
    let x = e_of(&z.div_i64(four_n), ctx)?;
    let mut sum = BigComplex::zero(ctx);
    // positive n = r, r + 2N, ...; negative n = r - 2N, r - 4N, ...
    for dir in [1i64, -1] {
        let mut n = if dir > 0 { r } else { r - two_n };
        loop {
            if n != 0 {
                let t = x.powi(n * n).scale_i64(n);
                let small = t.abs() < tol;
                sum += t;
                if small && n.abs() > two_n {
                    break;
                }
            }
            n += dir * two_n;
        }
    }
    Ok(sum)
}

/// `theta_{N,a}` at `z = i t` for small `t > 0`, through the S-law
/// `theta_{N,a}(i t) = (i/t)^{3/2} e(-1/8)/sqrt(2N) sum_k e(-ak/2N) theta_{N,k}(i/t)`.
pub fn theta_eval_imag_small(n_level: u64, a: i64, t: &Float, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
    let two_n = 2 * n_level as i64;
    let inv = BigComplex::new(ctx.zero(), ctx.float(t.clone().recip()));
    let mut sum = BigComplex::zero(ctx);
    for k in 0..two_n {
        let th = theta_eval(n_level, k, &inv, ctx)?;
        sum += &e_rational(-(a * k), two_n, ctx) * &th;
    }
    // (i/t)^{3/2} e(-1/8) = t^{-3/2} e(1/4)
    let tf = ctx.float(t);
    let mag = (tf.clone() * tf.sqrt()).recip();
    let norm = ctx.float(two_n).sqrt();
    Ok((&e_rational(1, 4, ctx) * &sum).scale(&(mag / norm)))
}
