//! Eta quotients, the weight-4 Eisenstein series and the weight-0 inputs of the
//! trace formulas, both as exact expansions and as numeric evaluators.

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use super::intseries::{infinite_product, sigma3, IntSeries};
use super::FourierExpansion;
use crate::numerics::{e_of, e_rational, principal_sqrt, BigComplex, NumericsError, PrecisionContext};

/// `prod_j eta(m_j z)^{e_j}` through `q^m`, including the factor `q^{sum e_j m_j / 24}`.
pub fn eta_product(factors: &[(u64, i64)], m: usize) -> FourierExpansion {
    let shift: i64 = factors.iter().map(|(s, e)| *s as i64 * e).sum();
    // the prefactor may be negative; compute the product part far enough to reach q^m
    let lead = shift.div_euclid(24);
    let need = (m as i64 - lead).max(0) as usize;
    let mut p = IntSeries::one(need);
    for (s, e) in factors {
        let part = infinite_product(-1, *s as usize, *s as usize, *e, need);
        p = p.mul(&part);
    }
    FourierExpansion::from_int_series(&p, 24, 24, shift).normalize()
}

/// `E_4 = 1 + 240 sum sigma_3(n) q^n` through `q^m`.
pub fn eisenstein_e4(m: usize) -> FourierExpansion {
    let mut s = IntSeries::one(m);
    for n in 1..=m {
        s.coeffs[n] = sigma3(n as u64) * 240u32;
    }
    FourierExpansion::from_int_series(&s, 1, 1, 0)
}

/// The weight-0 functions entering the coefficient formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EFunction {
    /// `X^2 - 16/X^2`, `X = eta(z)eta(3z)/(eta(4z)eta(12z))`.
    E61,
    /// `X^4 - 256/X^4`.
    E62,
    /// `e62 + 3 e61`.
    BigE6,
    /// `-(E4(z)+4E4(2z)-9E4(3z)-36E4(6z)) / (40 (eta(z)eta(2z)eta(3z)eta(6z))^2)`.
    E3,
    /// `Y - 1/Y`, `Y = eta(z)eta(12z)eta(15z)eta(20z)/(eta(3z)eta(4z)eta(5z)eta(60z))`.
    E51,
    /// `Y^2 - 1/Y^2`.
    E52,
    /// `-e52 - e51`.
    BigE5,
    /// `Z^2 - 1/Z^2`, `Z = eta(z)eta(6z)eta(14z)eta(21z)/(eta(2z)eta(3z)eta(7z)eta(42z))`.
    E7,
    /// `W^2 - 25/W^2`, `W = eta(z)eta(2z)/(eta(5z)eta(10z))`.
    E10,
    /// The constant 1.
    Const1,
}

const X6: &[(u64, i64)] = &[(1, 1), (3, 1), (4, -1), (12, -1)];
const Y5: &[(u64, i64)] = &[(1, 1), (12, 1), (15, 1), (20, 1), (3, -1), (4, -1), (5, -1), (60, -1)];
const Z7: &[(u64, i64)] = &[(1, 1), (6, 1), (14, 1), (21, 1), (2, -1), (3, -1), (7, -1), (42, -1)];
const W10: &[(u64, i64)] = &[(1, 1), (2, 1), (5, -1), (10, -1)];
const ETA3: &[(u64, i64)] = &[(1, 2), (2, 2), (3, 2), (6, 2)];

fn powered(f: &[(u64, i64)], k: i64) -> Vec<(u64, i64)> {
    f.iter().map(|(s, e)| (*s, e * k)).collect()
}

impl EFunction {
    pub const ALL: [EFunction; 10] = [
        EFunction::E61,
        EFunction::E62,
        EFunction::BigE6,
        EFunction::E3,
        EFunction::E51,
        EFunction::E52,
        EFunction::BigE5,
        EFunction::E7,
        EFunction::E10,
        EFunction::Const1,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            EFunction::E61 => "e61",
            EFunction::E62 => "e62",
            EFunction::BigE6 => "E6",
            EFunction::E3 => "e3",
            EFunction::E51 => "e51",
            EFunction::E52 => "e52",
            EFunction::BigE5 => "E5",
            EFunction::E7 => "e7",
            EFunction::E10 => "e10",
            EFunction::Const1 => "const1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.tag() == s)
    }

    /// Level `N` of `Gamma_0(N)` under which the function is invariant (`None` for constants).
    pub fn level(&self) -> Option<u64> {
        match self {
            EFunction::E61 | EFunction::E62 | EFunction::BigE6 => Some(12),
            EFunction::E3 => Some(6),
            EFunction::E51 | EFunction::E52 | EFunction::BigE5 => Some(60),
            EFunction::E7 => Some(42),
            EFunction::E10 => Some(10),
            EFunction::Const1 => None,
        }
    }

    /// Exact expansion through `q^m`.
    pub fn expansion(&self, m: usize) -> FourierExpansion {
        let mm = m + 3;
        let quot = |f: &[(u64, i64)], k: i64, c: i64| -> FourierExpansion {
            let a = eta_product(&powered(f, k), mm);
            let b = eta_product(&powered(f, -k), mm).scale(&Rational::from(c));
            a.sub(&b)
        };
        let out = match self {
            EFunction::E61 => quot(X6, 2, 16),
            EFunction::E62 => quot(X6, 4, 256),
            EFunction::BigE6 => quot(X6, 4, 256).add(&quot(X6, 2, 16).scale(&Rational::from(3))),
            EFunction::E3 => {
                let e4 = eisenstein_e4(mm);
                let num = e4
                    .add(&e4.substitute(2, 1, 1).scale(&Rational::from(4)))
                    .sub(&e4.substitute(3, 1, 1).scale(&Rational::from(9)))
                    .sub(&e4.substitute(6, 1, 1).scale(&Rational::from(36)));
                let den = eta_product(&powered(ETA3, -1), mm);
                num.mul(&den).scale(&Rational::from((-1, 40)))
            }
            EFunction::E51 => quot(Y5, 1, 1),
            EFunction::E52 => quot(Y5, 2, 1),
            EFunction::BigE5 => quot(Y5, 2, 1).add(&quot(Y5, 1, 1)).neg(),
            EFunction::E7 => quot(Z7, 2, 1),
            EFunction::E10 => quot(W10, 2, 25),
            EFunction::Const1 => FourierExpansion::one(1, mm as i64 + 1),
        };
        out.normalize().truncate(m as i64 + 1)
    }

    /// Numeric value at `z` in the upper half-plane.
    pub fn eval(&self, z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
        let wp = PrecisionContext::with_guard(ctx.digits, ctx.guard_digits + 10);
        let one = BigComplex::one(&wp);
        let pair = |f: &[(u64, i64)], k: i64, c: i64| -> Result<BigComplex, NumericsError> {
            let x = eta_quotient(f, z, &wp)?.powi(k);
            Ok(&x - &x.recip().scale_i64(c))
        };
        let v = match self {
            EFunction::E61 => pair(X6, 2, 16)?,
            EFunction::E62 => pair(X6, 4, 256)?,
            EFunction::BigE6 => &pair(X6, 4, 256)? + &pair(X6, 2, 16)?.scale_i64(3),
            EFunction::E3 => {
                let e = |k: i64| eisenstein_e4_eval(&z.scale_i64(k), &wp);
                let num = &(&(&e(1)? + &e(2)?.scale_i64(4)) - &e(3)?.scale_i64(9)) - &e(6)?.scale_i64(36);
                let den = eta_quotient(ETA3, z, &wp)?.scale_i64(40);
                -(&num / &den)
            }
            EFunction::E51 => pair(Y5, 1, 1)?,
            EFunction::E52 => pair(Y5, 2, 1)?,
            EFunction::BigE5 => -(&pair(Y5, 2, 1)? + &pair(Y5, 1, 1)?),
            EFunction::E7 => pair(Z7, 2, 1)?,
            EFunction::E10 => pair(W10, 2, 25)?,
            EFunction::Const1 => one,
        };
        Ok(v.with_prec(ctx.bits()))
    }
}

/// Exact expansion of a weight-0 input by tag, through `q^m`.
pub fn e_function(tag: &str, m: usize) -> Option<FourierExpansion> {
    EFunction::parse(tag).map(|f| f.expansion(m))
}

/// `prod eta(m z)^e` numerically.
pub fn eta_quotient(factors: &[(u64, i64)], z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
    let mut acc = BigComplex::one(ctx);
    for (m, e) in factors {
        let w = z.scale_i64(*m as i64);
        acc = &acc * &eta_eval(&w, ctx)?.powi(*e);
    }
    Ok(acc)
}

fn nearest_integer(x: &rug::Float) -> i64 {
    x.clone().round().to_integer().and_then(|i| i.to_i64()).unwrap_or(0)
}

/// Dedekind eta with reduction to the standard fundamental domain.
pub fn eta_eval(w: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
    if w.im <= 0 {
        return Err(NumericsError::Domain("eta needs Im(w) > 0".into()));
    }
    let n = nearest_integer(&w.re);
    let mut w1 = w.clone();
    w1.re -= n;
    let phase = e_rational(n, 24, ctx);
    if w1.abs() >= 1 || w1.im > 0.5 {
        return Ok(&phase * &eta_series(&w1, ctx)?);
    }
    // eta(w) = eta(-1/w) / sqrt(-i w)
    let inv = -w1.recip();
    let root = principal_sqrt(&(-w1.mul_i()), ctx);
    Ok(&phase * &(&eta_eval(&inv, ctx)? / &root))
}

/// `e(w/24) sum_k (-1)^k (q^{k(3k-1)/2} + q^{k(3k+1)/2})`.
fn eta_series(w: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
    let q = e_of(w, ctx)?;
    let tol = ctx.tail_eps();
    let mut tot = BigComplex::one(ctx);
    let mut k = 1i64;
    loop {
        let t1 = q.powi(k * (3 * k - 1) / 2);
        let t2 = q.powi(k * (3 * k + 1) / 2);
        let small = t1.abs() < tol;
        let s = &t1 + &t2;
        if k % 2 == 0 {
            tot += s;
        } else {
            tot -= &s;
        }
        if small {
            break;
        }
        k += 1;
    }
    Ok(&e_of(&w.div_i64(24), ctx)? * &tot)
}

/// Numeric `E_4`, reduced with `E_4(w) = E_4(-1/w) / w^4`.
pub fn eisenstein_e4_eval(w: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
    let n = nearest_integer(&w.re);
    let mut w1 = w.clone();
    w1.re -= n;
    if w1.abs() >= 1 || w1.im > 0.5 {
        let q = e_of(&w1, ctx)?;
        let tol = ctx.tail_eps();
        let mut tot = BigComplex::zero(ctx);
        let mut pw = q.clone();
        let mut k = 1u64;
        loop {
            let c = sigma3(k);
            let term = pw.scale(&ctx.float(&c));
            let small = term.abs() < tol;
            tot += term;
            if small {
                break;
            }
            pw = &pw * &q;
            k += 1;
        }
        return Ok(&BigComplex::one(ctx) + &tot.scale_i64(240));
    }
    let inv = -w1.recip();
    Ok(&eisenstein_e4_eval(&inv, ctx)? / &w1.powi(4))
}

/// Integer value of an exact coefficient, when it is one.
pub fn as_integer(c: &Rational) -> Option<Integer> {
    c.is_integer().then(|| c.numer().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_leading_term() {
        let e = eta_product(&[(1, 1)], 5);
        assert_eq!(e.denom(), 24);
        assert_eq!(e.valuation(), 1);
        assert_eq!(e.coeff(1).unwrap(), 1);
    }

    #[test]
    fn delta_coefficients() {
        let d = eta_product(&[(1, 24)], 4);
        let c: Vec<i64> = (1..=4).map(|k| d.coeff(k).unwrap().numer().to_i64().unwrap()).collect();
        assert_eq!(c, vec![1, -24, 252, -1472]);
    }

    #[test]
    fn principal_parts_start_at_q_minus_one() {
        for f in [EFunction::E61, EFunction::E3, EFunction::E7, EFunction::E51, EFunction::E10] {
            let s = f.expansion(10);
            assert_eq!(s.denom(), 1, "{}", f.tag());
            assert_eq!(s.valuation(), -1, "{}", f.tag());
            assert_eq!(s.coeff(-1).unwrap(), 1, "{}", f.tag());
        }
        let e62 = EFunction::E62.expansion(10);
        assert_eq!(e62.valuation(), -2);
    }

    #[test]
    fn numeric_eta_matches_expansion() {
        let ctx = PrecisionContext::new(30);
        let z = BigComplex::from_f64(0.1, 0.35, &ctx);
        for f in [EFunction::E61, EFunction::E3, EFunction::E10] {
            let s = f.expansion(200);
            let a = s.eval(&z, &ctx).unwrap();
            let b = f.eval(&z, &ctx).unwrap();
            let err = (&a - &b).abs().to_f64();
            assert!(err < 1e-20, "{}: {err:e}", f.tag());
        }
    }
}
