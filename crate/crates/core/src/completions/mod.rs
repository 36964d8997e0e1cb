//! Harmonic Maass completions of the mock theta vectors.
//!
//! `H = F - G` where `F` is the holomorphic vector built from catalog series and
//! `G` is the period integral of the shadow theta vector `g`.

pub mod families;
pub mod lift;
pub mod mordell;

pub use families::{family, Arg, Component, CompletionFamily, Entry, FamilyLabel, Lift, LiftTerm, Radical, Shadow, ThetaTerm};
pub use lift::{lift_check, lift_eval, lift_expansion, lift_t_defects, principal_part, LiftCheck, PrincipalPart, PrincipalTerm};
pub use mordell::{eval_r6, mordell, mordell_direct, s_law_defect_r6, MordellKind, R6Method};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

use crate::numerics::{e_of, e_rational, erfcx, exp_sinh_vec, BigComplex, NumericsError, PrecisionContext};
use crate::qseries::theta::theta_eval;
use crate::qseries::{lookup, theta_na_expansion, FourierExpansion, SeriesError, SeriesId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompletionError {
    #[error("family {0} has no shadow")]
    NoShadow(FamilyLabel),
    #[error("family {0} has no lift")]
    NoLift(FamilyLabel),
    #[error("tau must lie in the upper half-plane")]
    NotInUpperHalfPlane,
    #[error("coefficient {0} is irrational")]
    Irrational(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type VectorPoint = Vec<BigComplex>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    Identity,
    T,
    S,
}

impl Generator {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "T" | "t" => Some(Generator::T),
            "S" | "s" => Some(Generator::S),
            "I" | "id" | "identity" => Some(Generator::Identity),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Generator::Identity => "I",
            Generator::T => "T",
            Generator::S => "S",
        }
    }
}

fn check_tau(tau: &BigComplex) -> Result<(), CompletionError> {
    if tau.im > 0 {
        Ok(())
    } else {
        Err(CompletionError::NotInUpperHalfPlane)
    }
}

/// Dense numeric matrix from sparse exact entries.
pub fn dense(entries: &[Entry], dim: usize, scale: &Radical, ctx: &PrecisionContext) -> Vec<Vec<BigComplex>> {
    let mut m = vec![vec![BigComplex::zero(ctx); dim]; dim];
    let s = scale.value(ctx);
    for e in entries {
        m[e.row][e.col] += e.value(ctx).scale(&s);
    }
    m
}

pub fn mat_vec(m: &[Vec<BigComplex>], v: &[BigComplex], ctx: &PrecisionContext) -> VectorPoint {
    m.iter()
        .map(|row| {
            let mut acc = BigComplex::zero(ctx);
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() {
                    acc += a * b;
                }
            }
            acc
        })
        .collect()
}

pub fn max_dist(a: &[BigComplex], b: &[BigComplex]) -> Float {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(Float::new(53), |m, d| if d > m { d } else { m })
}

impl CompletionFamily {
    pub fn t_numeric(&self, ctx: &PrecisionContext) -> Vec<Vec<BigComplex>> {
        dense(&self.t_matrix, self.dim(), &Radical::ONE, ctx)
    }

    /// `s_scale * M`.
    pub fn s_numeric(&self, ctx: &PrecisionContext) -> Vec<Vec<BigComplex>> {
        dense(&self.s_matrix, self.dim(), &self.s_scale, ctx)
    }

    pub fn shadow(&self) -> Result<&Shadow, CompletionError> {
        self.shadow.as_ref().ok_or(CompletionError::NoShadow(self.label))
    }

    pub fn lift(&self) -> Result<&Lift, CompletionError> {
        self.lift.as_ref().ok_or(CompletionError::NoLift(self.label))
    }
}

/// Value of one holomorphic component at `tau`.
pub fn eval_component(c: &Component, tau: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, CompletionError> {
    let def = lookup(&SeriesId::parse(c.series)?)?;
    let (num, den, sign) = c.arg.substitution();
    let mut x = e_of(&tau.scale_i64(num as i64).div_i64(den as i64), ctx)?;
    if sign < 0 {
        x = -x;
    }
    let mut s = def.eval(&x, ctx)?;
    if c.offset != 0 {
        s += BigComplex::from_real(ctx.float(c.offset));
    }
    let pre = e_of(&tau.scale_i64(c.shift.0).div_i64(c.shift.1), ctx)?;
    Ok((&pre * &s).scale(&c.scalar.value(ctx)))
}

/// Holomorphic vector `F(tau)`.
pub fn eval_f(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    check_tau(tau)?;
    fam.components.iter().map(|c| eval_component(c, tau, ctx)).collect()
}

/// Exact expansion of one component through `q^m`, as `sqrt(rad) * series`.
pub fn component_expansion(c: &Component, m: usize) -> Result<(u64, FourierExpansion), CompletionError> {
    let def = lookup(&SeriesId::parse(c.series)?)?;
    let (num, den, sign) = c.arg.substitution();
    // enough terms of the inner series to reach q^m after the substitution
    let inner = (m * den as usize) / num as usize + 2;
    let mut s = def.expansion(inner).substitute(num, den, sign);
    if c.offset != 0 {
        s = s.add(&FourierExpansion::constant(c.offset.into()));
    }
    let s = s.shift(&rug::Rational::from(c.shift)).scale(&rug::Rational::from((c.scalar.num, c.scalar.den)));
    Ok((c.scalar.rad, s))
}

/// Shadow vector `g(z)`.
pub fn eval_shadow(fam: &CompletionFamily, z: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    let sh = fam.shadow()?;
    check_tau(z)?;
    let mut cache: HashMap<(u64, i64), BigComplex> = HashMap::new();
    let mut out = Vec::with_capacity(sh.g.len());
    for comp in &sh.g {
        let mut acc = BigComplex::zero(ctx);
        for t in comp {
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry((t.n, t.a)) {
                e.insert(theta_eval(t.n, t.a, z, ctx)?);
            }
            acc += cache[&(t.n, t.a)].scale(&t.coef.value(ctx));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Exact shadow components through `q^m`, each as `sqrt(rad) * series`.
pub fn shadow_expansion(fam: &CompletionFamily, m: u64) -> Result<Vec<(u64, FourierExpansion)>, CompletionError> {
    let sh = fam.shadow()?;
    sh.g.iter()
        .map(|comp| {
            let rad = comp[0].coef.rad;
            let mut acc: Option<FourierExpansion> = None;
            for t in comp {
                if t.coef.rad != rad {
                    return Err(CompletionError::Irrational(t.coef.to_string()));
                }
                let s = theta_na_expansion(t.n, t.a, m).scale(&rug::Rational::from((t.coef.num, t.coef.den)));
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.add(&s),
                });
            }
            Ok((rad, acc.expect("nonempty shadow component")))
        })
        .collect()
}

/// `P_{N,a}(tau) = int_{-conj(tau)}^{i inf} theta_{N,a}(z) / sqrt(-i(z + tau)) dz` in closed form:
/// `sum_{n = a (2N)} i sgn(n) sqrt(2N) e(-n^2 u/4N) exp(-pi n^2 v/2N) erfcx(|n| sqrt(pi v/N))`.
pub fn theta_period(n_level: u64, a: i64, tau: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, CompletionError> {
    check_tau(tau)?;
    let two_n = 2 * n_level as i64;
    let r = a.rem_euclid(two_n);
    let pi = ctx.pi();
    let v = &tau.im;
    let lam = Float::with_val(ctx.bits(), &pi * v) / two_n;
    let root = Float::with_val(ctx.bits(), &pi * v) / n_level;
    let root = root.sqrt();
    let tol = ctx.tail_eps();
    let mut sum = BigComplex::zero(ctx);
    for dir in [1i64, -1] {
        let mut n = if dir > 0 { r } else { r - two_n };
        loop {
            if n != 0 {
                let n2 = n * n;
                let damp = (-Float::with_val(ctx.bits(), &lam * n2)).exp();
                let x = Float::with_val(ctx.bits(), &root * n.abs());
                let mag = damp * erfcx(&x, ctx);
                let phase = e_of(&BigComplex::from_real(-Float::with_val(ctx.bits(), &tau.re * n2) / (2 * two_n)), ctx)?;
                let small = mag < tol;
                sum += phase.scale(&mag).scale_i64(n.signum());
                if small {
                    break;
                }
            }
            n += dir * two_n;
        }
    }
    let norm = ctx.float(two_n as u64).sqrt();
    Ok(sum.mul_i().scale(&norm))
}

fn g_prefactor(sh: &Shadow, ctx: &PrecisionContext) -> BigComplex {
    BigComplex::i(ctx).scale(&sh.g_const.value(ctx))
}

/// `G(tau)` from the erfc closed form of each theta period.
pub fn eval_g_closedform(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    let sh = fam.shadow()?;
    check_tau(tau)?;
    let mut cache: HashMap<(u64, i64), BigComplex> = HashMap::new();
    let c = g_prefactor(sh, ctx);
    let mut out = Vec::with_capacity(sh.g.len());
    for comp in &sh.g {
        let mut acc = BigComplex::zero(ctx);
        for t in comp {
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry((t.n, t.a)) {
                e.insert(theta_period(t.n, t.a, tau, ctx)?);
            }
            acc += cache[&(t.n, t.a)].scale(&t.coef.value(ctx));
        }
        out.push(&c * &acc);
    }
    Ok(out)
}

/// `G(tau) = c i int_0^inf g(-conj(tau) + i t) / sqrt(2v + t) dt` by exp-sinh quadrature.
pub fn eval_g_quadrature(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    let sh = fam.shadow()?;
    check_tau(tau)?;
    let base = BigComplex::new(-tau.re.clone(), tau.im.clone());
    let two_v = Float::with_val(ctx.bits(), &tau.im * 2u32);
    let mut failure: Option<CompletionError> = None;
    let integrand = |t: &Float| -> Vec<BigComplex> {
        let z = &base + &BigComplex::new(ctx.zero(), ctx.float(t));
        let den = Float::with_val(ctx.bits(), &two_v + t).sqrt();
        match eval_shadow(fam, &z, ctx) {
            Ok(g) => g.into_iter().map(|x| x.scale(&den.clone().recip())).collect(),
            Err(e) => {
                failure.get_or_insert(e);
                vec![BigComplex::zero(ctx); sh.g.len()]
            }
        }
    };
    let tol = ctx.ten_pow_neg((ctx.digits + ctx.guard_digits / 2) as i32);
    let res = exp_sinh_vec(integrand, sh.g.len(), &tol, ctx, 12)?;
    if let Some(e) = failure {
        return Err(e);
    }
    let c = g_prefactor(sh, ctx).mul_i();
    Ok(res.values.iter().map(|x| &c * x).collect())
}

/// `H = F - G`.
pub fn eval_h(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    let f = eval_f(fam, tau, ctx)?;
    let g = eval_g_closedform(fam, tau, ctx)?;
    Ok(f.iter().zip(&g).map(|(a, b)| a - b).collect())
}

/// `H` for families with a shadow, `F` otherwise.
fn eval_best(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    if fam.shadow.is_some() {
        eval_h(fam, tau, ctx)
    } else {
        eval_f(fam, tau, ctx)
    }
}

/// Max-norm residual of the transformation law.
///
/// `T`: `H(tau + 1) - N H(tau)`. `S`: `H(-1/tau) - sqrt(-i tau) s M H(tau)`.
/// Families without a shadow are checked under `T` on `F` only.
pub fn check_transform(fam: &CompletionFamily, gen: Generator, tau: &BigComplex, ctx: &PrecisionContext) -> Result<Float, CompletionError> {
    check_tau(tau)?;
    match gen {
        Generator::Identity => Ok(ctx.zero()),
        Generator::T => {
            let h = eval_best(fam, tau, ctx)?;
            let h1 = eval_best(fam, &(tau + &BigComplex::one(ctx)), ctx)?;
            Ok(max_dist(&h1, &mat_vec(&fam.t_numeric(ctx), &h, ctx)))
        }
        Generator::S => {
            fam.shadow()?;
            let h = eval_h(fam, tau, ctx)?;
            let st = BigComplex::one(ctx).scale_i64(-1) / tau;
            let hs = eval_h(fam, &st, ctx)?;
            let root = tau.mul_i().scale_i64(-1).sqrt();
            let rhs: VectorPoint = mat_vec(&fam.s_numeric(ctx), &h, ctx).into_iter().map(|x| &root * &x).collect();
            Ok(max_dist(&hs, &rhs))
        }
    }
}

pub const XI_STEP: f64 = 1e-8;
pub const LAPLACE_STEP: f64 = 1e-5;

/// `xi_{1/2} f = 2i v^{1/2} conj(dbar f)` with central differences of step `h`.
pub fn xi_fd_of<F>(f: F, tau: &BigComplex, h: f64, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError>
where
    F: Fn(&BigComplex) -> Result<VectorPoint, CompletionError>,
{
    let hr = BigComplex::from_real(ctx.float(h));
    let hi = hr.mul_i();
    let (up, um) = (f(&(tau + &hr))?, f(&(tau - &hr))?);
    let (vp, vm) = (f(&(tau + &hi))?, f(&(tau - &hi))?);
    let inv = ctx.float(4.0 * h).recip();
    let pre = BigComplex::i(ctx).scale(&Float::with_val(ctx.bits(), tau.im.sqrt_ref())).scale_i64(2);
    Ok((0..up.len())
        .map(|k| {
            // dbar = (d_u + i d_v)/2
            let du = &up[k] - &um[k];
            let dv = &vp[k] - &vm[k];
            let dbar = (&du + &dv.mul_i()).scale(&inv);
            &pre * &dbar.conj()
        })
        .collect())
}

/// `Delta_k f = -v^2 (f_uu + f_vv) + i k v (f_u + i f_v)` with the five-point stencil of step `h`.
pub fn laplacian_fd_of<F>(f: F, k: f64, tau: &BigComplex, h: f64, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError>
where
    F: Fn(&BigComplex) -> Result<VectorPoint, CompletionError>,
{
    let hr = BigComplex::from_real(ctx.float(h));
    let hi = hr.mul_i();
    let c = f(tau)?;
    let (up, um) = (f(&(tau + &hr))?, f(&(tau - &hr))?);
    let (vp, vm) = (f(&(tau + &hi))?, f(&(tau - &hi))?);
    let h2 = ctx.float(h * h).recip();
    let h1 = ctx.float(2.0 * h).recip();
    let v = &tau.im;
    let v2 = Float::with_val(ctx.bits(), v * v);
    let kv = Float::with_val(ctx.bits(), v * ctx.float(k));
    Ok((0..c.len())
        .map(|j| {
            let two_c = c[j].scale_i64(2);
            let lap = &(&(&up[j] + &um[j]) - &two_c) + &(&(&vp[j] + &vm[j]) - &two_c);
            let lap = lap.scale(&h2);
            let fu = (&up[j] - &um[j]).scale(&h1);
            let fv = (&vp[j] - &vm[j]).scale(&h1);
            let first = (&fu + &fv.mul_i()).mul_i().scale(&kv);
            &first - &lap.scale(&v2)
        })
        .collect())
}

pub fn xi_fd(fam: &CompletionFamily, tau: &BigComplex, h: f64, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    fam.shadow()?;
    xi_fd_of(|t| eval_h(fam, t, ctx), tau, h, ctx)
}

/// Predicted `xi_{1/2} H = -xi_const g`.
pub fn xi_target(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    let k = fam.shadow()?.xi_const.value(ctx);
    Ok(eval_shadow(fam, tau, ctx)?.into_iter().map(|g| -g.scale(&k)).collect())
}

/// Max relative deviation between the finite-difference `xi` image and the prediction.
pub fn xi_relative_error(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<f64, CompletionError> {
    let fd = xi_fd(fam, tau, XI_STEP, ctx)?;
    let tg = xi_target(fam, tau, ctx)?;
    let scale = tg.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max);
    Ok(max_dist(&fd, &tg).to_f64() / scale)
}

pub fn laplacian_fd(fam: &CompletionFamily, tau: &BigComplex, h: f64, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    fam.shadow()?;
    laplacian_fd_of(|t| eval_h(fam, t, ctx), 0.5, tau, h, ctx)
}

/// `tau` with `u` in `[-1/2, 1/2]`, `v` in `[0.6, 1.6]`, reproducible from `seed`.
pub fn sample_taus(seed: u64, count: usize, ctx: &PrecisionContext) -> Vec<BigComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u: f64 = rng.gen_range(-0.5..=0.5);
            let v: f64 = rng.gen_range(0.6..=1.6);
            BigComplex::from_f64(u, v, ctx)
        })
        .collect()
}

/// Order 8: the four `U` identities as holomorphic-part series identities through `q^m`.
///
/// Returns `(label, lhs, rhs)` for `(F_4 +- F_6)/sqrt 2` vs `q^{-1/32} U_0(+-q^{1/4})` and
/// `(F_8 +- F_10)/sqrt 8` vs `q^{-1/32} U_1(+-q^{1/4})`.
pub fn order8_relation_series(m: usize) -> Result<Vec<(String, FourierExpansion, FourierExpansion)>, CompletionError> {
    let fam = family(FamilyLabel::Order8);
    let mut out = Vec::new();
    for (a, b, name) in [(4usize, 6usize, "U0_8"), (8, 10, "U1_8")] {
        let (ra, sa) = component_expansion(&fam.components[a], m)?;
        let (rb, sb) = component_expansion(&fam.components[b], m)?;
        if ra != 2 || rb != 2 {
            return Err(CompletionError::Irrational(format!("order8 component {a}")));
        }
        // sqrt(2) s / sqrt(2) = s and sqrt(2) s / sqrt(8) = s/2
        let norm = rug::Rational::from((1, if a == 4 { 1 } else { 2 }));
        let def = lookup(&SeriesId::parse(name)?)?;
        for sign in [1i32, -1] {
            let lhs = if sign > 0 { sa.add(&sb) } else { sa.sub(&sb) }.scale(&norm);
            let rhs = def.expansion(4 * m + 4).substitute(1, 4, sign).shift(&rug::Rational::from((-1, 32)));
            let label = format!("(h{a} {} h{b}) vs {name}({}q^(1/4))", if sign > 0 { '+' } else { '-' }, if sign > 0 { "" } else { "-" });
            out.push((label, lhs, rhs));
        }
    }
    Ok(out)
}

/// Max residual of the four full order-8 `U` identities, with the non-holomorphic part
/// built from theta combinations:
/// `(H_4 +- H_6)/sqrt 2 = q^{-1/32} U_0(+-q^{1/4}) + (i/4) P(th_1 -+ th_3 +- th_5 - th_7)` and
/// `(H_8 +- H_10)/sqrt 8 = q^{-1/32} U_1(+-q^{1/4}) + (i/8) P(-th_1 +- th_3 -+ th_5 + th_7)`.
pub fn order8_u_residual(tau: &BigComplex, ctx: &PrecisionContext) -> Result<Float, CompletionError> {
    let fam = family(FamilyLabel::Order8);
    let h = eval_h(&fam, tau, ctx)?;
    let p: Vec<BigComplex> = [1, 3, 5, 7].iter().map(|&a| theta_period(8, a, tau, ctx)).collect::<Result<_, _>>()?;
    let lead = e_of(&tau.div_i64(-32), ctx)?;
    let mut worst = ctx.zero();
    for (a, b, name, norm, den, signs) in [(4usize, 6usize, "U0_8", 2u32, 4i64, [1i64, -1, 1, -1]), (8, 10, "U1_8", 8, 8, [-1, 1, -1, 1])] {
        let def = lookup(&SeriesId::parse(name)?)?;
        let inv = ctx.float(norm).sqrt().recip();
        for sign in [1i64, -1] {
            let lhs = if sign > 0 { &h[a] + &h[b] } else { &h[a] - &h[b] }.scale(&inv);
            let mut x = e_of(&tau.div_i64(4), ctx)?;
            if sign < 0 {
                x = -x;
            }
            let mut comb = BigComplex::zero(ctx);
            for (k, pk) in p.iter().enumerate() {
                // the th_3 and th_5 coefficients flip with the sign
                let s = if k == 1 || k == 2 { signs[k] * sign } else { signs[k] };
                comb += pk.scale_i64(s);
            }
            let rhs = &(&lead * &def.eval(&x, ctx)?) + &comb.mul_i().div_i64(den);
            let d = (&lhs - &rhs).abs();
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(worst)
}

/// `e(k/den)` for matrix display.
pub fn root_of_unity(k: i64, den: i64, ctx: &PrecisionContext) -> BigComplex {
    e_rational(k, den, ctx)
}


#[cfg(test)]
mod tests;
