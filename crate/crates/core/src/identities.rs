//! Coefficient formulas `a(n) = c/sqrt(-D) (tr^+_F(D, r) - tr^-_F(D, r))` checked against exact series.

use rug::{Float, Rational};
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{fmt_float, BigComplex, PrecisionContext};
use crate::qseries::{mock_theta, EFunction, FourierExpansion, SeriesError, SeriesId};
use crate::traces::{trace_diff_over_sqrt, TraceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdentityError {
    #[error("n = {n} is outside the range n >= {min} of {row}")]
    OutOfRange { row: String, n: u64, min: u64 },
    #[error("unknown formula row {0}")]
    UnknownRow(String),
    #[error("expansion of {0} is not integral-exponent at the requested index")]
    Truncation(String),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// One parity case: `m = (n + add) / div`, `D = base - step m`, prefactor `i c / sqrt(-D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub c: (i64, i64),
    pub add: u64,
    pub div: u64,
    pub base: i64,
    pub step: i64,
    pub r: i64,
}

const fn case(c: (i64, i64), add: u64, div: u64, base: i64, step: i64, r: i64) -> Case {
    Case { c, add, div, base, step, r }
}

impl Case {
    pub fn m(&self, n: u64) -> i64 {
        ((n + self.add) / self.div) as i64
    }

    pub fn disc(&self, n: u64) -> i64 {
        self.base - self.step * self.m(n)
    }

    pub fn coefficient(&self) -> Rational {
        Rational::from(self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormulaSpec {
    /// Row key, e.g. `sigma6`.
    pub key: &'static str,
    pub family: &'static str,
    pub function: &'static str,
    pub input: EFunction,
    pub level: u64,
    /// Catalog key of the series whose `q^n` coefficient is the target.
    pub series: &'static str,
    /// The target is `scale * a(n)` (2 for `2 mu`).
    pub scale: i64,
    pub n_min: u64,
    /// `[even, odd]`; identical entries when the formula has no case split.
    pub cases: [Case; 2],
}

impl FormulaSpec {
    pub fn case(&self, n: u64) -> &Case {
        &self.cases[(n % 2) as usize]
    }

    pub fn split(&self) -> bool {
        self.cases[0] != self.cases[1]
    }
}

macro_rules! row {
    ($key:expr, $fam:expr, $fun:expr, $input:expr, $n:expr, $ser:expr, $scale:expr, $nmin:expr, $even:expr, $odd:expr) => {
        FormulaSpec { key: $key, family: $fam, function: $fun, input: $input, level: $n, series: $ser, scale: $scale, n_min: $nmin, cases: [$even, $odd] }
    };
    ($key:expr, $fam:expr, $fun:expr, $input:expr, $n:expr, $ser:expr, $scale:expr, $nmin:expr, $both:expr) => {
        row!($key, $fam, $fun, $input, $n, $ser, $scale, $nmin, $both, $both)
    };
}

use EFunction::{BigE5, BigE6, E10, E3, E51, E61, E7};

pub static FORMULAS: &[FormulaSpec] = &[
    // order 6, input e61
    row!("sigma6", "order6", "sigma", E61, 12, "sigma6", 1, 0, case((-1, 4), 0, 1, 4, 48, 2)),
    row!("rho6", "order6", "rho", E61, 12, "rho6", 1, 0, case((-1, 4), 1, 1, 36, 48, 6)),
    row!("phi6", "order6", "phi", E61, 12, "phi6", 1, 1, case((1, 2), 0, 2, 1, 48, 1), case((1, 2), 1, 2, 25, 48, 5)),
    row!("psi6", "order6", "psi", E61, 12, "psi6", 1, 0, case((1, 4), 0, 2, 9, 48, 3), case((-1, 4), 3, 2, 81, 48, 9)),
    // order 6, input E6
    row!("mu6", "order6", "2mu", BigE6, 12, "mu6", 2, 1, case((1, 2), 0, 1, 4, 48, 2)),
    row!("lambda6", "order6", "lambda", BigE6, 12, "lambda6", 1, 0, case((1, 4), 1, 1, 36, 48, 6)),
    row!("nu6", "order6", "nu", BigE6, 12, "nu6", 1, 0, case((-1, 8), 0, 2, 1, 48, 1), case((-1, 8), 1, 2, 25, 48, 5)),
    row!("xi6", "order6", "xi", BigE6, 12, "xi6", 1, 0, case((-1, 16), 0, 2, 9, 48, 3), case((1, 16), 3, 2, 81, 48, 9)),
    // order 3
    row!("f3", "order3", "f", E3, 6, "f3", 1, 1, case((1, 2), 0, 1, 1, 24, 1)),
    row!("omega3", "order3", "omega", E3, 6, "omega3", 1, 1, case((-1, 8), 2, 2, 16, 24, 4), case((-1, 8), 1, 2, 4, 24, 2)),
    // order 5, input E5
    row!("f0_5", "order5", "f0", BigE5, 60, "f0_5", 1, 1, case((-1, 2), 0, 1, 4, 240, 2)),
    row!("f1_5", "order5", "f1", BigE5, 60, "f1_5", 1, 1, case((-1, 2), 1, 1, 196, 240, 14)),
    row!("F0_5", "order5", "F0", BigE5, 60, "F0_5", 1, 1, case((1, 4), 0, 2, 1, 240, 1), case((1, 4), 1, 2, 121, 240, 11)),
    row!("F1_5", "order5", "F1", BigE5, 60, "F1_5", 1, 1, case((1, 4), 2, 2, 169, 240, 13), case((1, 4), 1, 2, 49, 240, 7)),
    // order 5, input e51
    row!("psi0_5", "order5", "psi0", E51, 60, "psi0_5", 1, 1, case((-1, 2), 0, 1, 4, 240, 2)),
    row!("psi1_5", "order5", "psi1", E51, 60, "psi1_5", 1, 1, case((-1, 2), 1, 1, 196, 240, 14)),
    row!("phi0_5", "order5", "phi0", E51, 60, "phi0_5", 1, 1, case((1, 2), 0, 2, 1, 240, 1), case((-1, 2), 1, 2, 121, 240, 11)),
    row!("phi1_5", "order5", "phi1", E51, 60, "phi1_5", 1, 1, case((-1, 2), 0, 2, 49, 240, 7), case((1, 2), 1, 2, 169, 240, 13)),
    // order 7
    row!("F0_7", "order7", "F0", E7, 42, "F0_7", 1, 1, case((1, 2), 0, 1, 1, 168, 1)),
    row!("F1_7", "order7", "F1", E7, 42, "F1_7", 1, 1, case((-1, 2), 0, 1, 25, 168, 5)),
    row!("F2_7", "order7", "F2", E7, 42, "F2_7", 1, 1, case((-1, 2), 1, 1, 121, 168, 11)),
    // order 10
    row!("X10", "order10", "X", E10, 10, "X10", 1, 1, case((1, 2), 0, 1, 1, 40, 1)),
    row!("chi10", "order10", "chi", E10, 10, "chi10", 1, 1, case((1, 2), 0, 1, 9, 40, 3)),
    row!("phi10", "order10", "phi", E10, 10, "phi10", 1, 1, case((-1, 4), 2, 2, 36, 40, 6), case((-1, 4), 1, 2, 16, 40, 4)),
    row!("psi10", "order10", "psi", E10, 10, "psi10", 1, 1, case((-1, 4), 0, 2, 4, 40, 2), case((-1, 4), 3, 2, 64, 40, 8)),
];

pub fn formula(key: &str) -> Result<&'static FormulaSpec, IdentityError> {
    FORMULAS.iter().find(|f| f.key == key).ok_or_else(|| IdentityError::UnknownRow(key.into()))
}

/// Rows matching optional family and function filters.
pub fn select(family: Option<&str>, function: Option<&str>) -> Vec<&'static FormulaSpec> {
    FORMULAS
        .iter()
        .filter(|f| family.is_none_or(|x| f.family == x))
        .filter(|f| function.is_none_or(|x| f.function == x || f.key == x))
        .collect()
}

/// `i c/sqrt(-D) (tr^+ - tr^-)`, with the imaginary residual of the result. Zero for `D >= 0`.
pub fn coefficient_via_traces(spec: &FormulaSpec, n: u64, ctx: &PrecisionContext) -> Result<BigComplex, IdentityError> {
    if n < spec.n_min {
        return Err(IdentityError::OutOfRange { row: spec.key.into(), n, min: spec.n_min });
    }
    let cs = spec.case(n);
    let t = trace_diff_over_sqrt(spec.input, spec.level, cs.disc(n), cs.r, ctx)?;
    let c = Float::with_val(ctx.bits(), &cs.coefficient());
    Ok(t.value.scale(&c))
}

fn series_expansion(spec: &FormulaSpec, n_max: u64) -> Result<FourierExpansion, IdentityError> {
    Ok(mock_theta(&SeriesId::parse(spec.series)?, n_max as usize + 1)?.normalize())
}

fn coefficient_of(spec: &FormulaSpec, s: &FourierExpansion, n: u64) -> Result<Rational, IdentityError> {
    let c = s.coeff_at(&Rational::from(n)).ok_or_else(|| IdentityError::Truncation(spec.series.into()))?;
    Ok(c * spec.scale)
}

/// Exact `scale * a(n)` from the catalog series.
pub fn coefficient_via_series(spec: &FormulaSpec, n: u64) -> Result<Rational, IdentityError> {
    coefficient_of(spec, &series_expansion(spec, n)?, n)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub key: String,
    pub n: u64,
    #[serde(rename = "D")]
    pub d: i64,
    pub r: i64,
    pub formula: String,
    pub formula_imag: String,
    #[serde(serialize_with = "ser_rat")]
    pub series: Rational,
    pub diff: String,
    pub degenerate: bool,
    pub pass: bool,
    #[serde(skip)]
    pub diff_value: f64,
    #[serde(skip)]
    pub imag_value: f64,
}

fn ser_rat<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub digits: u32,
    pub tolerance: String,
    pub rows: Vec<VerifyRow>,
    pub pass: bool,
}

pub const VERIFY_TOLERANCE: f64 = 1e-20;

/// Formula vs series for `n_min <= n <= n_max`. Failures are rows, not errors.
pub fn verify_range(spec: &FormulaSpec, n_max: u64, ctx: &PrecisionContext) -> Result<Vec<VerifyRow>, IdentityError> {
    let tol = Float::with_val(ctx.bits(), VERIFY_TOLERANCE);
    let s = series_expansion(spec, n_max)?;
    let mut out = Vec::new();
    for n in spec.n_min..=n_max {
        let cs = spec.case(n);
        let target = coefficient_of(spec, &s, n)?;
        let v = coefficient_via_traces(spec, n, ctx)?;
        let t = BigComplex::from_real(Float::with_val(ctx.bits(), &target));
        let diff = (&v - &t).abs();
        let imag = v.im.clone().abs();
        out.push(VerifyRow {
            key: spec.key.into(),
            n,
            d: cs.disc(n),
            r: cs.r,
            formula: fmt_float(&v.re, 30),
            formula_imag: fmt_float(&v.im, 6),
            series: target,
            diff: fmt_float(&diff, 6),
            degenerate: cs.disc(n) >= 0,
            pass: diff <= tol && imag <= tol,
            diff_value: diff.to_f64(),
            imag_value: imag.to_f64(),
        });
    }
    Ok(out)
}

/// `verify_range` over several rows, assembled into one report.
pub fn verify_all(specs: &[&FormulaSpec], n_max: u64, ctx: &PrecisionContext) -> Result<VerifyReport, IdentityError> {
    let mut rows = Vec::new();
    for s in specs {
        rows.extend(verify_range(s, n_max, ctx)?);
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(VerifyReport { schema: 1, digits: ctx.digits, tolerance: format!("{VERIFY_TOLERANCE:e}"), rows, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30)
    }

    #[test]
    fn manifest_counts() {
        let count = |fam: &str| FORMULAS.iter().filter(|f| f.family == fam).count();
        assert_eq!(FORMULAS.len(), 25);
        assert_eq!((count("order6"), count("order3"), count("order5"), count("order7"), count("order10")), (8, 2, 8, 3, 4));
        let mut keys: Vec<_> = FORMULAS.iter().map(|f| f.key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 25);
    }

    #[test]
    fn congruences_hold_for_every_case() {
        for f in FORMULAS {
            for n in f.n_min..=12 {
                let c = f.case(n);
                assert_eq!((c.disc(n) - c.r * c.r).rem_euclid(4 * f.level as i64), 0, "{} n = {n}", f.key);
                assert_eq!(c.step, 4 * f.level as i64);
            }
        }
    }

    #[test]
    fn known_instances() {
        // a_sigma(1): -i/(4 sqrt 44), (D, r) = (-44, 2)
        let s = formula("sigma6").unwrap().case(1);
        assert_eq!((s.disc(1), s.r, s.c), (-44, 2, (-1, 4)));
        // a_omega, odd n: (4 - 24 (n+1)/2, 2) with -i/8
        let w = formula("omega3").unwrap().case(3);
        assert_eq!((w.disc(3), w.r, w.c), (4 - 24 * 2, 2, (-1, 8)));
        // a_F1 order 5, even n: 169 - 240 (n+2)/2
        let f = formula("F1_5").unwrap().case(4);
        assert_eq!((f.disc(4), f.r), (169 - 240 * 3, 13));
        let p = formula("psi10").unwrap().case(5);
        assert_eq!((p.disc(5), p.r), (64 - 40 * 4, 8));
    }

    #[test]
    fn series_side_examples() {
        assert_eq!(coefficient_via_series(formula("f3").unwrap(), 0).unwrap(), 1);
        assert_eq!(coefficient_via_series(formula("sigma6").unwrap(), 0).unwrap(), 0);
        let s = series_expansion(formula("F0_7").unwrap(), 20).unwrap();
        for n in 0..=20 {
            assert!(s.coeff_at(&Rational::from(n)).unwrap().is_integer());
        }
    }

    #[test]
    fn sigma_rows_pass() {
        let rows = verify_range(formula("sigma6").unwrap(), 3, &ctx()).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].degenerate);
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
    }

    #[test]
    fn out_of_range() {
        let e = coefficient_via_traces(formula("X10").unwrap(), 0, &ctx()).unwrap_err();
        assert!(matches!(e, IdentityError::OutOfRange { .. }));
    }

    #[test]
    fn corrupted_constant_fails_everywhere() {
        let mut f = formula("f3").unwrap().clone();
        f.cases = [case((1, 3), 0, 1, 1, 24, 1); 2];
        let rows = verify_range(&f, 4, &ctx()).unwrap();
        assert!(rows.iter().all(|r| !r.pass), "{rows:?}");
    }

    /// The order-6 split formulas need `48 n/2`, not `48 n`; `lambda` needs `48 (n + 1)`.
    #[test]
    fn undivided_order6_maps_fail() {
        let mut f = formula("phi6").unwrap().clone();
        f.cases[0].div = 1;
        let rows = verify_range(&f, 4, &ctx()).unwrap();
        assert!(!rows.iter().find(|r| r.n == 2).unwrap().pass);
        let mut l = formula("lambda6").unwrap().clone();
        l.cases = [case((1, 4), 0, 1, 36, 48, 6); 2];
        let rows = verify_range(&l, 2, &ctx()).unwrap();
        assert!(!rows[0].pass);
    }
}
