//! Lifts to the dual Weil representation of `Z/2N`.

use rug::{Float, Rational};
use serde::Serialize;

use super::{component_expansion, eval_f, eval_h, CompletionError, CompletionFamily, Radical, VectorPoint};
use crate::numerics::{BigComplex, PrecisionContext};
use crate::qseries::FourierExpansion;
use crate::weil::{rho_s, rho_t};

/// Lifted vector at `tau`, indexed by `r` in `0..2N`. Uses `H` when the family has a
/// shadow and the holomorphic `F` otherwise.
pub fn lift_eval(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<VectorPoint, CompletionError> {
    let lift = fam.lift()?;
    let h = if fam.shadow.is_some() { eval_h(fam, tau, ctx)? } else { eval_f(fam, tau, ctx)? };
    let mut out = vec![BigComplex::zero(ctx); 2 * lift.level as usize];
    for t in &lift.terms {
        out[t.r as usize] += h[t.comp].scale(&t.coef.value(ctx));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct LiftCheck {
    /// `|L(tau + 1) - rhobar(T) L(tau)|`
    pub t_residual: Float,
    /// `|L(-1/tau) - sqrt(tau) rhobar(S) L(tau)|`
    pub s_residual: Float,
}

/// Residuals of the dual Weil transformation laws for a family with a shadow.
pub fn lift_check(fam: &CompletionFamily, tau: &BigComplex, ctx: &PrecisionContext) -> Result<LiftCheck, CompletionError> {
    fam.shadow()?;
    let n = fam.lift()?.level;
    let l = lift_eval(fam, tau, ctx)?;
    let lt = lift_eval(fam, &(tau + &BigComplex::one(ctx)), ctx)?;
    let ls = lift_eval(fam, &(&BigComplex::one(ctx).scale_i64(-1) / tau), ctx)?;
    let t_rhs = rho_t(n, true, ctx).apply(&l);
    let root = tau.sqrt();
    let s_rhs: Vec<BigComplex> = rho_s(n, true, ctx).apply(&l).iter().map(|x| &root * x).collect();
    Ok(LiftCheck { t_residual: super::max_dist(&lt, &t_rhs), s_residual: super::max_dist(&ls, &s_rhs) })
}

/// Exact holomorphic expansion of each lifted component through `q^m`.
pub fn lift_expansion(fam: &CompletionFamily, m: usize) -> Result<Vec<FourierExpansion>, CompletionError> {
    let lift = fam.lift()?;
    let comps: Vec<(u64, FourierExpansion)> = fam.components.iter().map(|c| component_expansion(c, m)).collect::<Result<_, _>>()?;
    let mut out: Vec<Option<FourierExpansion>> = vec![None; 2 * lift.level as usize];
    for t in &lift.terms {
        let (rad, s) = &comps[t.comp];
        let k = Radical::new(t.coef.num, t.coef.den, t.coef.rad * rad);
        let q = k.to_rational().ok_or_else(|| CompletionError::Irrational(format!("{} at r = {}", k, t.r)))?;
        let term = s.scale(&q);
        let slot = &mut out[t.r as usize];
        *slot = Some(match slot.take() {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    let trunc = comps.iter().map(|(_, s)| s.trunc_exponent()).min().expect("family has components");
    Ok(out
        .into_iter()
        .map(|s| match s {
            Some(s) => s.normalize(),
            None => {
                let d = trunc.denom().clone();
                let d = d.to_u64().expect("denominator fits");
                FourierExpansion::new(d, Rational::from(&trunc * d).floor().numer().to_i64().expect("bound fits"))
            }
        })
        .collect())
}

/// Exponents where the lifted expansion violates the `T`-law `e(-r^2/4N)`:
/// every exponent of component `r` must be `= -r^2/4N (mod 1)`. Empty on success.
pub fn lift_t_defects(fam: &CompletionFamily, m: usize) -> Result<Vec<(i64, Rational)>, CompletionError> {
    let n = fam.lift()?.level as i64;
    let mut bad = Vec::new();
    for (r, s) in lift_expansion(fam, m)?.iter().enumerate() {
        let r = r as i64;
        let q = Rational::from((r * r, 4 * n));
        for (k, c) in s.terms() {
            if *c == 0 {
                continue;
            }
            let e = Rational::from((k, s.denom() as i64));
            let x = Rational::from(&e + &q);
            if !x.is_integer() {
                bad.push((r, e));
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalTerm {
    #[serde(serialize_with = "ser_rat")]
    pub exponent: Rational,
    pub r: i64,
    #[serde(serialize_with = "ser_rat")]
    pub coeff: Rational,
}

fn ser_rat<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub type PrincipalPart = Vec<PrincipalTerm>;

/// Terms with exponent `<= 0` of the lifted expansions, sorted by `(exponent, r)`.
pub fn principal_part(lifted: &[FourierExpansion]) -> PrincipalPart {
    let mut out: PrincipalPart = lifted
        .iter()
        .enumerate()
        .flat_map(|(r, s)| s.principal_terms().into_iter().filter(|(_, c)| *c != 0).map(move |(e, c)| PrincipalTerm { exponent: e, r: r as i64, coeff: c }))
        .collect();
    out.sort_by(|a, b| a.exponent.cmp(&b.exponent).then(a.r.cmp(&b.r)));
    out
}
