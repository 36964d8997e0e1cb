//! Exact formal Fourier expansions in fractional powers of `q`.
//!
//! A [`FourierExpansion`] stores the coefficient of `q^{k/denom}` for each
//! integer `k` below an exclusive bound `trunc` (also in units of `1/denom`).
//! Everything at or above `trunc` is unknown.

pub mod catalog;
pub mod eta;
pub mod intseries;
pub mod theta;

pub use catalog::{lookup, mock_theta, pochhammer, SeriesDef, SeriesId, CATALOG};
pub use eta::{e_function, eisenstein_e4, eta_product, EFunction};
pub use intseries::IntSeries;
pub use theta::theta_na_expansion;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::numerics::{e_of, BigComplex, NumericsError, PrecisionContext};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("unknown series id `{0}`")]
    UnknownId(String),
    #[error("series cannot be inverted: leading coefficient is not known exactly")]
    NotInvertible,
    #[error("truncation too low: need exponent {need}, series exact below {have}")]
    Truncation { need: String, have: String },
    #[error("malformed series record: {0}")]
    Malformed(String),
}

/// Exact series `sum_k c_k q^{k/denom}`, known for `k < trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierExpansion {
    denom: u64,
    coeffs: BTreeMap<i64, Rational>,
    trunc: i64,
}

/// JSON record `{denom, trunc, coeffs: [[k, num, den], ...]}`; `trunc` is in units of `1/denom`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExpansionRecord {
    pub denom: u64,
    pub trunc: i64,
    pub coeffs: Vec<(i64, String, String)>,
}

/// First coefficient where two expansions differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

impl FourierExpansion {
    pub fn new(denom: u64, trunc: i64) -> Self {
        assert!(denom > 0);
        Self { denom, coeffs: BTreeMap::new(), trunc }
    }

    /// The constant 1, exact below `q^{trunc/denom}`.
    pub fn one(denom: u64, trunc: i64) -> Self {
        let mut s = Self::new(denom, trunc);
        s.set(0, Rational::from(1));
        s
    }

    /// A constant known to every order.
    pub fn constant(c: Rational) -> Self {
        let mut s = Self::new(1, i64::MAX / 4);
        s.set(0, c);
        s
    }

    /// Integer series in `q` with exponent offset `shift/denom`.
    pub fn from_int_series(s: &IntSeries, denom: u64, step: i64, shift: i64) -> Self {
        let mut out = Self::new(denom, shift + step * (s.max_exp() as i64 + 1));
        for (k, c) in s.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs.insert(shift + step * k as i64, Rational::from(c.clone()));
            }
        }
        out
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Truncation bound as an exponent of `q`.
    pub fn trunc_exponent(&self) -> Rational {
        Rational::from((self.trunc, self.denom as i64))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn set(&mut self, k: i64, c: Rational) {
        if k >= self.trunc {
            return;
        }
        if c == 0 {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    /// Coefficient of `q^{k/denom}`; `None` at or beyond the truncation.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k >= self.trunc {
            return None;
        }
        Some(self.coeffs.get(&k).cloned().unwrap_or_default())
    }

    /// Coefficient of `q^e` for a rational exponent.
    pub fn coeff_at(&self, e: &Rational) -> Option<Rational> {
        let scaled = Rational::from(e * self.denom);
        if !scaled.is_integer() {
            return if *e < self.trunc_exponent() { Some(Rational::new()) } else { None };
        }
        let k = scaled.numer().to_i64()?;
        self.coeff(k)
    }

    /// Lowest exponent with nonzero coefficient (units `1/denom`), or `trunc` if none.
    pub fn valuation(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.trunc)
    }

    /// Re-express over the denominator `d`, a multiple of the current one.
    pub fn rescale(&self, d: u64) -> Self {
        assert!(d.is_multiple_of(self.denom), "denominator {d} is not a multiple of {}", self.denom);
        let f = (d / self.denom) as i64;
        Self {
            denom: d,
            coeffs: self.coeffs.iter().map(|(k, c)| (k * f, c.clone())).collect(),
            trunc: self.trunc.saturating_mul(f),
        }
    }

    /// Smallest denominator representing the same series.
    pub fn normalize(&self) -> Self {
        let mut g = self.denom;
        for k in self.coeffs.keys() {
            g = gcd(g, k.unsigned_abs());
            if g == 1 {
                return self.clone();
            }
        }
        let gi = g as i64;
        Self {
            denom: self.denom / g,
            coeffs: self.coeffs.iter().map(|(k, c)| (k / gi, c.clone())).collect(),
            trunc: div_ceil(self.trunc, gi),
        }
    }

    pub fn truncate(&self, trunc: i64) -> Self {
        let t = trunc.min(self.trunc);
        Self {
            denom: self.denom,
            coeffs: self.coeffs.range(..t).map(|(k, c)| (*k, c.clone())).collect(),
            trunc: t,
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let d = lcm(a.denom, b.denom);
        (a.rescale(d), b.rescale(d))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let trunc = a.trunc.min(b.trunc);
        let mut out = a.truncate(trunc);
        for (k, c) in b.coeffs.range(..trunc) {
            let v = out.coeffs.get(k).cloned().unwrap_or_default() + c;
            out.set(*k, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::new(self.denom, self.trunc);
        if *s != 0 {
            for (k, c) in &self.coeffs {
                out.coeffs.insert(*k, Rational::from(c * s));
            }
        }
        out
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        let d = lcm(self.denom, e.denom().to_u64().expect("exponent denominator fits u64"));
        let base = self.rescale(d);
        let k = Rational::from(e * d).numer().to_i64().expect("shift fits i64");
        Self {
            denom: d,
            coeffs: base.coeffs.into_iter().map(|(j, c)| (j + k, c)).collect(),
            trunc: base.trunc.saturating_add(k),
        }
    }

    /// Product; exact below `min(val(a) + trunc(b), val(b) + trunc(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let trunc = a.valuation().saturating_add(b.trunc).min(b.valuation().saturating_add(a.trunc));
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (i, x) in &a.coeffs {
            for (j, y) in b.coeffs.range(..trunc - i) {
                let e = acc.entry(i + j).or_default();
                *e += Rational::from(x * y);
            }
        }
        acc.retain(|_, c| *c != 0);
        Self { denom: a.denom, coeffs: acc, trunc }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Multiplicative inverse; exact below `trunc - 2 val`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let v = self.valuation();
        if v >= self.trunc {
            return Err(SeriesError::NotInvertible);
        }
        let lead = self.coeffs[&v].clone();
        let inv_lead = Rational::from(lead.recip_ref());
        let tail: Vec<(i64, Rational)> = self.coeffs.range(v + 1..).map(|(k, c)| (k - v, c.clone())).collect();
        let len = self.trunc - v;
        let mut u: Vec<Rational> = Vec::with_capacity(len as usize);
        u.push(inv_lead.clone());
        for k in 1..len {
            let mut s = Rational::new();
            for (j, a) in &tail {
                if *j > k {
                    break;
                }
                let uk = &u[(k - j) as usize];
                if *uk != 0 {
                    s += Rational::from(a * uk);
                }
            }
            u.push(-(s * &inv_lead));
        }
        let mut out = Self::new(self.denom, self.trunc - 2 * v);
        for (k, c) in u.into_iter().enumerate() {
            out.set(k as i64 - v, c);
        }
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.denom, i64::MAX / 4);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute `q -> sign * q^{num/den}`. A sign of `-1` needs integral exponents.
    pub fn substitute(&self, num: u64, den: u64, sign: i32) -> Self {
        assert!(sign == 1 || sign == -1);
        assert!(sign == 1 || self.denom == 1, "q -> -q^r needs an integral-exponent series");
        let d = self.denom * den;
        let f = num as i64;
        let mut out = Self::new(d, self.trunc.saturating_mul(f));
        for (k, c) in &self.coeffs {
            let c = if sign < 0 && k.rem_euclid(2) == 1 { Rational::from(-c) } else { c.clone() };
            out.coeffs.insert(k * f, c);
        }
        out.normalize()
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Terms with exponent `<= 0`.
    pub fn principal_terms(&self) -> Vec<(Rational, Rational)> {
        self.coeffs
            .range(..=0)
            .map(|(k, c)| (Rational::from((*k, self.denom as i64)), c.clone()))
            .collect()
    }

    /// Numeric value `sum_k c_k e(k tau / denom)`; the caller bounds the tail.
    pub fn eval(&self, tau: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
        let step = tau.div_i64(self.denom as i64);
        let x = e_of(&step, ctx)?;
        let mut acc = BigComplex::zero(ctx);
        let Some(&k0) = self.coeffs.keys().next() else {
            return Ok(acc);
        };
        let mut pow = x.powi(k0);
        let mut cur = k0;
        for (k, c) in &self.coeffs {
            if *k != cur {
                pow = &pow * &x.powi(k - cur);
                cur = *k;
            }
            let cf = ctx.float(c);
            acc += pow.scale(&cf);
        }
        Ok(acc)
    }

    pub fn to_record(&self) -> ExpansionRecord {
        ExpansionRecord {
            denom: self.denom,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.numer().to_string(), c.denom().to_string())).collect(),
        }
    }

    pub fn from_record(r: &ExpansionRecord) -> Result<Self, SeriesError> {
        if r.denom == 0 {
            return Err(SeriesError::Malformed("denom must be positive".into()));
        }
        let mut out = Self::new(r.denom, r.trunc);
        for (k, n, d) in &r.coeffs {
            let n: Integer = n.parse().map_err(|_| SeriesError::Malformed(format!("numerator `{n}`")))?;
            let d: Integer = d.parse().map_err(|_| SeriesError::Malformed(format!("denominator `{d}`")))?;
            if d == 0 {
                return Err(SeriesError::Malformed("zero denominator".into()));
            }
            out.set(*k, Rational::from((n, d)));
        }
        Ok(out)
    }
}

/// Compare two expansions through `q^m` inclusive.
pub fn verify_series_identity(lhs: &FourierExpansion, rhs: &FourierExpansion, m: &Rational) -> Result<Option<Mismatch>, SeriesError> {
    let d = lcm(lhs.denom, rhs.denom);
    let (a, b) = (lhs.rescale(d), rhs.rescale(d));
    let bound = Rational::from(m * d).floor().numer().to_i64().expect("bound fits i64");
    for s in [&a, &b] {
        if s.trunc <= bound {
            return Err(SeriesError::Truncation { need: m.to_string(), have: s.trunc_exponent().to_string() });
        }
    }
    let keys: std::collections::BTreeSet<i64> = a.coeffs.range(..=bound).chain(b.coeffs.range(..=bound)).map(|(k, _)| *k).collect();
    for k in keys {
        let x = a.coeffs.get(&k).cloned().unwrap_or_default();
        let y = b.coeffs.get(&k).cloned().unwrap_or_default();
        if x != y {
            return Ok(Some(Mismatch { exponent: Rational::from((k, d as i64)), lhs: x, rhs: y }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(denom: u64, trunc: i64, terms: &[(i64, i64)]) -> FourierExpansion {
        let mut s = FourierExpansion::new(denom, trunc);
        for (k, c) in terms {
            s.set(*k, Rational::from(*c));
        }
        s
    }

    #[test]
    fn product_truncation_uses_valuations() {
        let a = series(1, 10, &[(2, 1), (3, 1)]);
        let b = series(1, 5, &[(0, 1), (1, -1)]);
        let p = a.mul(&b);
        assert_eq!(p.trunc(), 7);
        assert_eq!(p.coeff(2), Some(Rational::from(1)));
        assert_eq!(p.coeff(3), Some(Rational::from(0)));
        assert_eq!(p.coeff(4), Some(Rational::from(-1)));
    }

    #[test]
    fn inverse_of_one_minus_q() {
        let a = series(1, 8, &[(0, 1), (1, -1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.trunc(), 8);
        for k in 0..8 {
            assert_eq!(inv.coeff(k), Some(Rational::from(1)));
        }
        let shifted = a.shift(&Rational::from(-2)).inverse().unwrap();
        assert_eq!(shifted.trunc(), 10);
        assert_eq!(shifted.coeff(2), Some(Rational::from(1)));
    }

    #[test]
    fn substitution_and_normalization() {
        let a = series(1, 4, &[(0, 1), (1, 2), (3, 5)]);
        let h = a.substitute(1, 2, -1);
        assert_eq!(h.denom(), 2);
        assert_eq!(h.trunc(), 4);
        assert_eq!(h.coeff(1), Some(Rational::from(-2)));
        assert_eq!(h.coeff(3), Some(Rational::from(-5)));
        let back = h.substitute(2, 1, 1);
        assert_eq!(back.denom(), 1);
        assert_eq!(back.coeff(1), Some(Rational::from(-2)));
    }

    #[test]
    fn record_round_trip() {
        let mut a = series(24, 49, &[(1, 1), (25, -1)]);
        a.set(3, Rational::from((1, 2)));
        let r = a.to_record();
        assert_eq!(FourierExpansion::from_record(&r).unwrap(), a);
    }

    #[test]
    fn identity_reports_first_mismatch() {
        let a = series(1, 6, &[(0, 1), (2, 3)]);
        let b = series(1, 6, &[(0, 1), (2, 4)]);
        assert_eq!(verify_series_identity(&a, &a, &Rational::from(5)).unwrap(), None);
        let m = verify_series_identity(&a, &b, &Rational::from(5)).unwrap().unwrap();
        assert_eq!(m.exponent, Rational::from(2));
        assert!(verify_series_identity(&a, &b, &Rational::from(6)).is_err());
    }
}
