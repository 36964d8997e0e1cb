//! Mordell integrals and the order-6 `S`-defect `R`.

use rug::Float;
use serde::{Deserialize, Serialize};

use super::{dense, eval_f, eval_g_closedform, family, CompletionError, FamilyLabel, Radical, VectorPoint};
use crate::numerics::{e_rational, exp_sinh, exp_sinh_vec, BigComplex, PrecisionContext};
use crate::qseries::theta::theta_eval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MordellKind {
    /// `int e^{-a x^2} / cosh(a x)`
    J,
    /// `int e^{-a x^2} cosh(2ax/3) / cosh(a x)`
    J1,
    /// `int e^{-a x^2/2} cosh(ax/2) / cosh(a x)`
    K,
    /// `int e^{-a x^2/2} (cosh(5ax/6) - cosh(ax/6)) / cosh(a x)`
    K1,
}

impl MordellKind {
    /// Gaussian factor `c` in `e^{-c a x^2}` and the `(weight, 6b)` pairs of `cosh(b a x)`.
    fn shape(&self) -> (f64, &'static [(i64, i64)]) {
        match self {
            MordellKind::J => (1.0, &[(1, 0)]),
            MordellKind::J1 => (1.0, &[(1, 4)]),
            MordellKind::K => (0.5, &[(1, 3)]),
            MordellKind::K1 => (0.5, &[(1, 5), (-1, 1)]),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "J" => Some(MordellKind::J),
            "J1" => Some(MordellKind::J1),
            "K" => Some(MordellKind::K),
            "K1" => Some(MordellKind::K1),
            _ => None,
        }
    }
}

/// `cosh(b y)/cosh(y)` for `Re y >= 0`, without overflow.
fn cosh_ratio(b: (i64, i64), y: &BigComplex, ctx: &PrecisionContext) -> BigComplex {
    let one = BigComplex::one(ctx);
    let bm = y.scale_i64(b.0 - b.1).div_i64(b.1).exp();
    let bp = y.scale_i64(-(b.0 + b.1)).div_i64(b.1).exp();
    let den = &one + &y.scale_i64(-2).exp();
    &(&bm + &bp) / &den
}

fn integrand(kind: MordellKind, y: &BigComplex, gauss: &BigComplex, ctx: &PrecisionContext) -> BigComplex {
    let (_, terms) = kind.shape();
    let mut acc = BigComplex::zero(ctx);
    for &(w, b) in terms {
        acc += cosh_ratio((b, 6), y, ctx).scale_i64(w);
    }
    &gauss.exp() * &acc
}

fn quad_tol(ctx: &PrecisionContext) -> Float {
    ctx.ten_pow_neg((ctx.digits + ctx.guard_digits / 2) as i32)
}

/// Mordell integral for `Re a > 0`, on the ray `x = s / sqrt(a)`, which carries no poles:
/// `a^{-1/2} int_0^inf e^{-c s^2} sum w cosh(b sqrt(a) s)/cosh(sqrt(a) s) ds`.
pub fn mordell(kind: MordellKind, alpha: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, CompletionError> {
    if alpha.re <= 0 {
        return Err(crate::numerics::NumericsError::Domain("Mordell integral needs Re(alpha) > 0".into()).into());
    }
    let (c, _) = kind.shape();
    let c = ctx.float(c);
    let ra = alpha.sqrt();
    let f = |s: &Float| {
        let y = ra.scale(s);
        let s2 = Float::with_val(ctx.bits(), s * s) * &c;
        let gauss = BigComplex::from_real(-s2);
        integrand(kind, &y, &gauss, ctx)
    };
    let r = exp_sinh(f, &quad_tol(ctx), ctx, 12)?;
    Ok(&r.value / &ra)
}

/// Mordell integral along the real `x` axis; an independent scheme for moderate `alpha`.
pub fn mordell_direct(kind: MordellKind, alpha: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, CompletionError> {
    if alpha.re <= 0 {
        return Err(crate::numerics::NumericsError::Domain("Mordell integral needs Re(alpha) > 0".into()).into());
    }
    let (c, _) = kind.shape();
    let c = ctx.float(c);
    let f = |x: &Float| {
        let y = alpha.scale(x);
        let x2 = Float::with_val(ctx.bits(), x * x) * &c;
        let gauss = -alpha.scale(&x2);
        integrand(kind, &y, &gauss, ctx)
    };
    Ok(exp_sinh(f, &quad_tol(ctx), ctx, 14)?.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum R6Method {
    Mordell,
    ThetaIntegral,
}

/// `R(tau) = (sqrt(6) i/tau) (-sqrt 8 J_1(6 pi i/tau), -2 J(6 pi i/tau), J_1(3 pi i/2tau),
/// K_1(3 pi i/tau), J(3 pi i/2tau)/sqrt 2, sqrt 2 K(3 pi i/tau))`.
fn r6_mordell(tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    let pi_i = BigComplex::new(ctx.zero(), ctx.pi());
    let a6 = (&pi_i / tau).scale_i64(6);
    let a3 = (&pi_i / tau).scale_i64(3);
    let a32 = a3.div_i64(2);
    let s2 = ctx.float(2).sqrt();
    let pre = (&BigComplex::i(ctx) / tau).scale(&ctx.float(6).sqrt());
    let vals = [
        -mordell(MordellKind::J1, &a6, ctx)?.scale(&ctx.float(8).sqrt()),
        -mordell(MordellKind::J, &a6, ctx)?.scale_i64(2),
        mordell(MordellKind::J1, &a32, ctx)?,
        mordell(MordellKind::K1, &a3, ctx)?,
        mordell(MordellKind::J, &a32, ctx)?.scale(&s2.clone().recip()),
        mordell(MordellKind::K, &a3, ctx)?.scale(&s2),
    ];
    Ok(vals.iter().map(|v| &pre * v).collect())
}

/// All `theta_{N,a}(i t)`, `0 <= a < 2N`; for `t < 1` through one shared `S`-transform.
fn theta_row_imag(n_level: u64, t: &Float, ctx: &PrecisionContext) -> Result<Vec<BigComplex>, CompletionError> {
    let two_n = 2 * n_level as i64;
    if *t >= 1 {
        let z = BigComplex::new(ctx.zero(), ctx.float(t));
        return (0..two_n).map(|a| Ok(theta_eval(n_level, a, &z, ctx)?)).collect();
    }
    let inv = BigComplex::new(ctx.zero(), ctx.float(t.clone().recip()));
    let base: Vec<BigComplex> = (0..two_n).map(|k| theta_eval(n_level, k, &inv, ctx)).collect::<Result<_, _>>()?;
    let tf = ctx.float(t);
    let mag = (tf.clone() * tf.sqrt()).recip() / ctx.float(two_n).sqrt();
    let pre = e_rational(1, 4, ctx).scale(&mag);
    let roots: Vec<BigComplex> = (0..two_n).map(|k| e_rational(-k, two_n, ctx)).collect();
    Ok((0..two_n)
        .map(|a| {
            let mut s = BigComplex::zero(ctx);
            for (k, b) in base.iter().enumerate() {
                if !b.is_zero() {
                    s += &roots[((a * k as i64) % two_n) as usize] * b;
                }
            }
            &pre * &s
        })
        .collect())
}

/// `R(tau) = i^{3/2}/sqrt(24) int_0^{i inf} g(z)/sqrt(-i(z tau - 1)) dz` with `z = i t`.
fn r6_theta(tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    let fam = family(FamilyLabel::Order6_1);
    let sh = fam.shadow()?;
    let coefs: Vec<Vec<(usize, Float)>> =
        sh.g.iter().map(|comp| comp.iter().map(|t| (t.a as usize, t.coef.value(ctx))).collect()).collect();
    let i = BigComplex::i(ctx);
    let mut failure = None;
    let f = |t: &Float| -> Vec<BigComplex> {
        let row = match theta_row_imag(12, t, ctx) {
            Ok(r) => r,
            Err(e) => {
                failure.get_or_insert(e);
                return vec![BigComplex::zero(ctx); 6];
            }
        };
        // -i(i t tau - 1) = t tau + i
        let w = (&tau.scale(t) + &i).sqrt().recip();
        coefs
            .iter()
            .map(|comp| {
                let mut s = BigComplex::zero(ctx);
                for (a, c) in comp {
                    s += row[*a].scale(c);
                }
                &s * &w
            })
            .collect()
    };
    let r = exp_sinh_vec(f, 6, &quad_tol(ctx), ctx, 12)?;
    if let Some(e) = failure {
        return Err(e);
    }
    // dz = i dt
    let pre = (&e_rational(3, 8, ctx) * &i).scale(&ctx.float(24).sqrt().recip());
    Ok(r.values.iter().map(|v| &pre * v).collect())
}

pub fn eval_r6(tau: &BigComplex, method: R6Method, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    if tau.im <= 0 {
        return Err(CompletionError::NotInUpperHalfPlane);
    }
    match method {
        R6Method::Mordell => r6_mordell(tau, ctx),
        R6Method::ThetaIntegral => r6_theta(tau, ctx),
    }
}

/// `(1/sqrt(-i tau)) X(-1/tau) - M X(tau)` for `X = F` (holomorphic, variant `j`) or `X = G`.
pub fn s_law_defect_r6(j: u8, holomorphic: bool, tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    let fam = family(if j == 1 { FamilyLabel::Order6_1 } else { FamilyLabel::Order6_2 });
    let st = &BigComplex::one(ctx).scale_i64(-1) / tau;
    let (a, b) = if holomorphic { (eval_f(&fam, &st, ctx)?, eval_f(&fam, tau, ctx)?) } else { (eval_g_closedform(&fam, &st, ctx)?, eval_g_closedform(&fam, tau, ctx)?) };
    let inv_root = tau.mul_i().scale_i64(-1).sqrt().recip();
    let m = dense(&fam.s_matrix, fam.dim(), &Radical::ONE, ctx);
    let mb = super::mat_vec(&m, &b, ctx);
    Ok(a.iter().zip(&mb).map(|(x, y)| &(&inv_root * x) - y).collect())
}
