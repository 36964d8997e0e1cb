//! The mock theta series, each stored as data: an exponent polynomial, an
//! optional alternating sign, and lists of Pochhammer factors in numerator and
//! denominator.
//!
//! Notation: `(a; q^k)_n = prod_{m<n} (1 - a q^{mk})`, `(a)_n = (a; q)_n`.
//! Definitions follow the standard tables (Gordon-McIntosh survey); orders 3
//! and 6 agree with Ramanujan's lost notebook and Berndt-Chan.

use rug::{Integer, Rational};

use super::intseries::IntSeries;
use super::{FourierExpansion, SeriesError};
use crate::numerics::{BigComplex, NumericsError, PrecisionContext};

/// `(a_sign * q^{b1 n + b0}; q^step)_{l1 n + l0}` with `a_sign = +1` for
/// `(q^..; ..)` and `-1` for `(-q^..; ..)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Poch {
    pub a_sign: i32,
    pub base: (i64, i64),
    pub step: i64,
    pub len: (i64, i64),
}

const fn qp(b1: i64, b0: i64, step: i64, l1: i64, l0: i64) -> Poch {
    Poch { a_sign: 1, base: (b1, b0), step, len: (l1, l0) }
}

const fn qm(b1: i64, b0: i64, step: i64, l1: i64, l0: i64) -> Poch {
    Poch { a_sign: -1, base: (b1, b0), step, len: (l1, l0) }
}

impl Poch {
    fn base_at(&self, n: i64) -> i64 {
        self.base.0 * n + self.base.1
    }

    fn len_at(&self, n: i64) -> i64 {
        self.len.0 * n + self.len.1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `sum_{n >= nmin} term(n)`.
    Plain,
    /// `-1 + 2 sum term(n)`.
    DoubledMinusOne,
    /// `t_inf/2 + sum_{n>=0} (-1)^n (t_n - t_inf)` with `t_n = (q;q^2)_n/(-q)_n`.
    RegularizedMu6,
}

/// One catalog entry.
#[derive(Clone, Copy, Debug)]
pub struct SeriesDef {
    pub key: &'static str,
    pub order: u8,
    pub name: &'static str,
    pub display: &'static str,
    pub alt: bool,
    pub nmin: i64,
    /// Exponent of the leading power is `(e2 n^2 + e1 n + e0) / 2`.
    pub expo: (i64, i64, i64),
    pub num: &'static [Poch],
    pub den: &'static [Poch],
    pub shape: Shape,
}

/// Identifier `(order, name)`, e.g. `(6, "sigma")`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesId {
    pub order: u8,
    pub name: String,
}

impl SeriesId {
    pub fn new(order: u8, name: &str) -> Self {
        Self { order, name: name.to_string() }
    }

    /// Accepts a catalog key (`sigma6`, `F0_7`) or `order:name` (`6:sigma`).
    pub fn parse(s: &str) -> Result<Self, SeriesError> {
        if let Some((o, n)) = s.split_once(':') {
            let order: u8 = o.trim().parse().map_err(|_| SeriesError::UnknownId(s.to_string()))?;
            let id = Self::new(order, n.trim());
            return lookup(&id).map(|_| id);
        }
        CATALOG
            .iter()
            .find(|d| d.key == s)
            .map(|d| Self::new(d.order, d.name))
            .ok_or_else(|| SeriesError::UnknownId(s.to_string()))
    }
}

impl std::fmt::Display for SeriesId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.order, self.name)
    }
}

macro_rules! def {
    ($key:expr, $order:expr, $name:expr, $disp:expr, alt=$alt:expr, nmin=$nmin:expr, expo=$expo:expr, num=$num:expr, den=$den:expr) => {
        def!($key, $order, $name, $disp, alt = $alt, nmin = $nmin, expo = $expo, num = $num, den = $den, shape = Shape::Plain)
    };
    ($key:expr, $order:expr, $name:expr, $disp:expr, alt=$alt:expr, nmin=$nmin:expr, expo=$expo:expr, num=$num:expr, den=$den:expr, shape=$shape:expr) => {
        SeriesDef {
            key: $key,
            order: $order,
            name: $name,
            display: $disp,
            alt: $alt,
            nmin: $nmin,
            expo: $expo,
            num: $num,
            den: $den,
            shape: $shape,
        }
    };
}

pub static CATALOG: &[SeriesDef] = &[
    // order 3
    def!("f3", 3, "f", "q^{n^2}/(-q)_n^2", alt = false, nmin = 0, expo = (2, 0, 0), num = &[], den = &[qm(0, 1, 1, 1, 0), qm(0, 1, 1, 1, 0)]),
    def!("phi3", 3, "phi", "q^{n^2}/(-q^2;q^2)_n", alt = false, nmin = 0, expo = (2, 0, 0), num = &[], den = &[qm(0, 2, 2, 1, 0)]),
    def!("psi3", 3, "psi", "q^{n^2}/(q;q^2)_n, n>=1", alt = false, nmin = 1, expo = (2, 0, 0), num = &[], den = &[qp(0, 1, 2, 1, 0)]),
    def!("chi3", 3, "chi", "q^{n^2}(-q)_n/(-q^3;q^3)_n", alt = false, nmin = 0, expo = (2, 0, 0), num = &[qm(0, 1, 1, 1, 0)], den = &[qm(0, 3, 3, 1, 0)]),
    def!("omega3", 3, "omega", "q^{2n(n+1)}/(q;q^2)_{n+1}^2", alt = false, nmin = 0, expo = (4, 4, 0), num = &[], den = &[qp(0, 1, 2, 1, 1), qp(0, 1, 2, 1, 1)]),
    def!("nu3", 3, "nu", "q^{n(n+1)}/(-q;q^2)_{n+1}", alt = false, nmin = 0, expo = (2, 2, 0), num = &[], den = &[qm(0, 1, 2, 1, 1)]),
    // order 6
    def!("sigma6", 6, "sigma", "q^{(n+1)(n+2)/2}(-q)_n/(q;q^2)_{n+1}", alt = false, nmin = 0, expo = (1, 3, 2), num = &[qm(0, 1, 1, 1, 0)], den = &[qp(0, 1, 2, 1, 1)]),
    def!("rho6", 6, "rho", "q^{n(n+1)/2}(-q)_n/(q;q^2)_{n+1}", alt = false, nmin = 0, expo = (1, 1, 0), num = &[qm(0, 1, 1, 1, 0)], den = &[qp(0, 1, 2, 1, 1)]),
    def!("phi6", 6, "phi", "(-1)^n q^{n^2}(q;q^2)_n/(-q)_{2n}", alt = true, nmin = 0, expo = (2, 0, 0), num = &[qp(0, 1, 2, 1, 0)], den = &[qm(0, 1, 1, 2, 0)]),
    def!("psi6", 6, "psi", "(-1)^n q^{(n+1)^2}(q;q^2)_n/(-q)_{2n+1}", alt = true, nmin = 0, expo = (2, 4, 2), num = &[qp(0, 1, 2, 1, 0)], den = &[qm(0, 1, 1, 2, 1)]),
    def!("lambda6", 6, "lambda", "(-1)^n q^n (q;q^2)_n/(-q)_n", alt = true, nmin = 0, expo = (0, 2, 0), num = &[qp(0, 1, 2, 1, 0)], den = &[qm(0, 1, 1, 1, 0)]),
    def!("mu6", 6, "mu", "(-1)^n (q;q^2)_n/(-q)_n, Abel-regularized", alt = true, nmin = 0, expo = (0, 0, 0), num = &[qp(0, 1, 2, 1, 0)], den = &[qm(0, 1, 1, 1, 0)], shape = Shape::RegularizedMu6),
    def!("nu6", 6, "nu", "q^n(-q)_{2n-1}/(q;q^2)_n, n>=1", alt = false, nmin = 1, expo = (0, 2, 0), num = &[qm(0, 1, 1, 2, -1)], den = &[qp(0, 1, 2, 1, 0)]),
    def!("xi6", 6, "xi", "q^n(-q)_{2n-2}/(q;q^2)_n, n>=1", alt = false, nmin = 1, expo = (0, 2, 0), num = &[qm(0, 1, 1, 2, -2)], den = &[qp(0, 1, 2, 1, 0)]),
    // order 2
    def!("A2", 2, "A", "q^{n+1}(-q^2;q^2)_n/(q;q^2)_{n+1}", alt = false, nmin = 0, expo = (0, 2, 2), num = &[qm(0, 2, 2, 1, 0)], den = &[qp(0, 1, 2, 1, 1)]),
    def!("B2", 2, "B", "q^n(-q;q^2)_n/(q;q^2)_{n+1}", alt = false, nmin = 0, expo = (0, 2, 0), num = &[qm(0, 1, 2, 1, 0)], den = &[qp(0, 1, 2, 1, 1)]),
    def!("mu2", 2, "mu", "(-1)^n q^{n^2}(q;q^2)_n/(-q^2;q^2)_n^2", alt = true, nmin = 0, expo = (2, 0, 0), num = &[qp(0, 1, 2, 1, 0)], den = &[qm(0, 2, 2, 1, 0), qm(0, 2, 2, 1, 0)]),
    // order 5
    def!("f0_5", 5, "f0", "q^{n^2}/(-q)_n", alt = false, nmin = 0, expo = (2, 0, 0), num = &[], den = &[qm(0, 1, 1, 1, 0)]),
    def!("f1_5", 5, "f1", "q^{n^2+n}/(-q)_n", alt = false, nmin = 0, expo = (2, 2, 0), num = &[], den = &[qm(0, 1, 1, 1, 0)]),
    def!("F0_5", 5, "F0", "q^{2n^2}/(q;q^2)_n", alt = false, nmin = 0, expo = (4, 0, 0), num = &[], den = &[qp(0, 1, 2, 1, 0)]),
    def!("F1_5", 5, "F1", "q^{2n^2+2n}/(q;q^2)_{n+1}", alt = false, nmin = 0, expo = (4, 4, 0), num = &[], den = &[qp(0, 1, 2, 1, 1)]),
    def!("phi0_5", 5, "phi0", "q^{n^2}(-q;q^2)_n", alt = false, nmin = 0, expo = (2, 0, 0), num = &[qm(0, 1, 2, 1, 0)], den = &[]),
    def!("phi1_5", 5, "phi1", "q^{(n+1)^2}(-q;q^2)_n", alt = false, nmin = 0, expo = (2, 4, 2), num = &[qm(0, 1, 2, 1, 0)], den = &[]),
    def!("psi0_5", 5, "psi0", "q^{(n+1)(n+2)/2}(-q)_n", alt = false, nmin = 0, expo = (1, 3, 2), num = &[qm(0, 1, 1, 1, 0)], den = &[]),
    def!("psi1_5", 5, "psi1", "q^{n(n+1)/2}(-q)_n", alt = false, nmin = 0, expo = (1, 1, 0), num = &[qm(0, 1, 1, 1, 0)], den = &[]),
    // order 7
    def!("F0_7", 7, "F0", "q^{n^2}/(q^{n+1})_n", alt = false, nmin = 0, expo = (2, 0, 0), num = &[], den = &[qp(1, 1, 1, 1, 0)]),
    def!("F1_7", 7, "F1", "q^{n^2}/(q^n)_n, n>=1", alt = false, nmin = 1, expo = (2, 0, 0), num = &[], den = &[qp(1, 0, 1, 1, 0)]),
    def!("F2_7", 7, "F2", "q^{n^2+n}/(q^{n+1})_{n+1}", alt = false, nmin = 0, expo = (2, 2, 0), num = &[], den = &[qp(1, 1, 1, 1, 1)]),
    // order 8
    def!("S0_8", 8, "S0", "q^{n^2}(-q;q^2)_n/(-q^2;q^2)_n", alt = false, nmin = 0, expo = (2, 0, 0), num = &[qm(0, 1, 2, 1, 0)], den = &[qm(0, 2, 2, 1, 0)]),
    def!("S1_8", 8, "S1", "q^{n(n+2)}(-q;q^2)_n/(-q^2;q^2)_n", alt = false, nmin = 0, expo = (2, 4, 0), num = &[qm(0, 1, 2, 1, 0)], den = &[qm(0, 2, 2, 1, 0)]),
    def!("T0_8", 8, "T0", "q^{(n+1)(n+2)}(-q^2;q^2)_n/(-q;q^2)_{n+1}", alt = false, nmin = 0, expo = (2, 6, 4), num = &[qm(0, 2, 2, 1, 0)], den = &[qm(0, 1, 2, 1, 1)]),
    def!("T1_8", 8, "T1", "q^{n(n+1)}(-q^2;q^2)_n/(-q;q^2)_{n+1}", alt = false, nmin = 0, expo = (2, 2, 0), num = &[qm(0, 2, 2, 1, 0)], den = &[qm(0, 1, 2, 1, 1)]),
    def!("U0_8", 8, "U0", "q^{n^2}(-q;q^2)_n/(-q^4;q^4)_n", alt = false, nmin = 0, expo = (2, 0, 0), num = &[qm(0, 1, 2, 1, 0)], den = &[qm(0, 4, 4, 1, 0)]),
    def!("U1_8", 8, "U1", "q^{(n+1)^2}(-q;q^2)_n/(-q^2;q^4)_{n+1}", alt = false, nmin = 0, expo = (2, 4, 2), num = &[qm(0, 1, 2, 1, 0)], den = &[qm(0, 2, 4, 1, 1)]),
    def!("V0_8", 8, "V0", "-1 + 2 q^{n^2}(-q;q^2)_n/(q;q^2)_n", alt = false, nmin = 0, expo = (2, 0, 0), num = &[qm(0, 1, 2, 1, 0)], den = &[qp(0, 1, 2, 1, 0)], shape = Shape::DoubledMinusOne),
    def!("V1_8", 8, "V1", "q^{(n+1)^2}(-q;q^2)_n/(q;q^2)_{n+1}", alt = false, nmin = 0, expo = (2, 4, 2), num = &[qm(0, 1, 2, 1, 0)], den = &[qp(0, 1, 2, 1, 1)]),
    // order 10
    def!("phi10", 10, "phi", "q^{n(n+1)/2}/(q;q^2)_{n+1}", alt = false, nmin = 0, expo = (1, 1, 0), num = &[], den = &[qp(0, 1, 2, 1, 1)]),
    def!("psi10", 10, "psi", "q^{(n+1)(n+2)/2}/(q;q^2)_{n+1}", alt = false, nmin = 0, expo = (1, 3, 2), num = &[], den = &[qp(0, 1, 2, 1, 1)]),
    def!("X10", 10, "X", "(-1)^n q^{n^2}/(-q)_{2n}", alt = true, nmin = 0, expo = (2, 0, 0), num = &[], den = &[qm(0, 1, 1, 2, 0)]),
    def!("chi10", 10, "chi", "(-1)^n q^{(n+1)^2}/(-q)_{2n+1}", alt = true, nmin = 0, expo = (2, 4, 2), num = &[], den = &[qm(0, 1, 1, 2, 1)]),
];

/// Catalog entry for an id.
pub fn lookup(id: &SeriesId) -> Result<&'static SeriesDef, SeriesError> {
    CATALOG
        .iter()
        .find(|d| d.order == id.order && d.name == id.name)
        .ok_or_else(|| SeriesError::UnknownId(id.to_string()))
}

impl SeriesDef {
    pub fn id(&self) -> SeriesId {
        SeriesId::new(self.order, self.name)
    }

    /// Exponent of the leading power of summand `n`.
    pub fn min_exponent(&self, n: i64) -> i64 {
        let (a, b, c) = self.expo;
        (a * n * n + b * n + c) / 2
    }

    fn sign(&self, n: i64) -> i64 {
        if self.alt && n % 2 != 0 {
            -1
        } else {
            1
        }
    }

    /// Summand `n` through `q^m`.
    fn summand(&self, n: i64, m: usize) -> IntSeries {
        let e = self.min_exponent(n);
        let mut s = IntSeries::monomial(e as usize, m);
        for p in self.num {
            for j in 0..p.len_at(n).max(0) {
                let ex = p.base_at(n) + j * p.step;
                s.mul_factor(-p.a_sign, ex as usize);
            }
        }
        for p in self.den {
            for j in 0..p.len_at(n).max(0) {
                let ex = p.base_at(n) + j * p.step;
                if ex as usize > m {
                    break;
                }
                s.div_factor(-p.a_sign, ex as usize);
            }
        }
        if self.sign(n) < 0 {
            s.scale(-1);
        }
        s
    }

    /// Exact integer series of `2^k * self` through `q^m` (k = 1 for the regularized mu, else 0).
    fn int_expansion(&self, m: usize) -> IntSeries {
        match self.shape {
            Shape::RegularizedMu6 => {
                // 2 mu = t_inf + 2 sum_{n<=m} (-1)^n (t_n - t_inf); t_n - t_inf = O(q^{n+1})
                let mut t_inf = IntSeries::one(m);
                for k in 0..=m {
                    if 2 * k < m {
                        t_inf.mul_factor(-1, 2 * k + 1);
                    }
                    if k < m {
                        t_inf.div_factor(1, k + 1);
                    }
                }
                let mut total = t_inf.clone();
                let mut t = IntSeries::one(m);
                for n in 0..=m {
                    let mut d = t.clone();
                    d.sub_assign(&t_inf);
                    d.scale(if n % 2 == 0 { 2 } else { -2 });
                    total.add_assign(&d);
                    if 2 * n < m {
                        t.mul_factor(-1, 2 * n + 1);
                    }
                    if n < m {
                        t.div_factor(1, n + 1);
                    }
                }
                total
            }
            Shape::Plain | Shape::DoubledMinusOne => {
                let mut total = IntSeries::zero(m);
                let mut n = self.nmin;
                while self.min_exponent(n) as usize <= m {
                    total.add_assign(&self.summand(n, m));
                    n += 1;
                }
                if self.shape == Shape::DoubledMinusOne {
                    total.scale(2);
                    total.coeffs[0] -= 1;
                }
                total
            }
        }
    }

    /// Exact expansion through `q^m`.
    pub fn expansion(&self, m: usize) -> FourierExpansion {
        let ints = self.int_expansion(m);
        let out = FourierExpansion::from_int_series(&ints, 1, 1, 0);
        if self.shape == Shape::RegularizedMu6 {
            out.scale(&Rational::from((1, 2)))
        } else {
            out
        }
    }

    /// Numeric value at `x` with `|x| < 1`, summing until the tail is below `ctx.tail_eps()`.
    pub fn eval(&self, x: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex, NumericsError> {
        let ax = x.abs();
        if ax >= 1 {
            return Err(NumericsError::Domain(format!("|q| = {} >= 1", ax.to_f64())));
        }
        let tol = ctx.tail_eps();
        let one = BigComplex::one(ctx);
        let pw = |k: i64| x.powi(k);
        if self.shape == Shape::RegularizedMu6 {
            // t_{n+1} = t_n (1 - x^{2n+1}) / (1 + x^{n+1})
            let mut t_inf = one.clone();
            let mut k = 0i64;
            loop {
                let a = pw(2 * k + 1);
                let b = pw(k + 1);
                t_inf = &t_inf * &(&one - &a);
                t_inf = &t_inf / &(&one + &b);
                if b.abs() < tol {
                    break;
                }
                k += 1;
            }
            let mut sum = t_inf.scale(&ctx.float(0.5f64));
            let mut t = one.clone();
            let mut n = 0i64;
            let mut small = 0;
            loop {
                let mut d = &t - &t_inf;
                if n % 2 != 0 {
                    d = -d;
                }
                let mag = d.abs();
                sum += &d;
                small = if mag < tol { small + 1 } else { 0 };
                if small >= 3 {
                    break;
                }
                t = &t * &(&one - &pw(2 * n + 1));
                t = &t / &(&one + &pw(n + 1));
                n += 1;
            }
            return Ok(sum);
        }
        let mut sum = BigComplex::zero(ctx);
        let mut n = self.nmin;
        let mut small = 0;
        let mut prev_exp = -1i64;
        let mut lead = one.clone();
        loop {
            let e = self.min_exponent(n);
            lead = if prev_exp < 0 { x.powi(e) } else { &lead * &x.powi(e - prev_exp) };
            prev_exp = e;
            let mut term = lead.clone();
            for p in self.num {
                for j in 0..p.len_at(n).max(0) {
                    let f = x.powi(p.base_at(n) + j * p.step);
                    term = if p.a_sign > 0 { &term * &(&one - &f) } else { &term * &(&one + &f) };
                }
            }
            for p in self.den {
                for j in 0..p.len_at(n).max(0) {
                    let f = x.powi(p.base_at(n) + j * p.step);
                    term = if p.a_sign > 0 { &term / &(&one - &f) } else { &term / &(&one + &f) };
                }
            }
            if self.sign(n) < 0 {
                term = -term;
            }
            let mag = term.abs();
            sum += &term;
            small = if mag < tol { small + 1 } else { 0 };
            if small >= 3 || n > 1_000_000 {
                break;
            }
            n += 1;
        }
        if self.shape == Shape::DoubledMinusOne {
            sum = &sum.scale_i64(2) - &one;
        }
        Ok(sum)
    }
}

/// Exact expansion of a catalog series through `q^m`.
pub fn mock_theta(id: &SeriesId, m: usize) -> Result<FourierExpansion, SeriesError> {
    Ok(lookup(id)?.expansion(m))
}

/// `(base_sign * q^{base}; q^{step})_n` through `q^m`, for rational `base >= 0`, `step > 0`.
pub fn pochhammer(base: &Rational, base_sign: i32, step: &Rational, n: u64, m: &Rational) -> FourierExpansion {
    assert!(base_sign == 1 || base_sign == -1);
    assert!(*step > 0 && *base >= 0);
    let d = Integer::from(base.denom().lcm_ref(step.denom())).to_u64().expect("denominator fits u64");
    let b = Rational::from(base * d).numer().to_i64().unwrap();
    let s = Rational::from(step * d).numer().to_i64().unwrap();
    let mu = Rational::from(m * d).floor().numer().to_i64().unwrap().max(0) as usize;
    let mut ser = IntSeries::one(mu);
    for j in 0..n as i64 {
        let e = b + j * s;
        if e as usize > mu {
            break;
        }
        ser.mul_factor(-base_sign, e as usize);
    }
    FourierExpansion::from_int_series(&ser, d, 1, 0).normalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(key: &str, m: usize) -> Vec<Rational> {
        let id = SeriesId::parse(key).unwrap();
        let s = mock_theta(&id, m).unwrap();
        (0..=m as i64).map(|k| s.coeff(k).unwrap()).collect()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|x| Rational::from(*x)).collect()
    }

    #[test]
    fn keys_are_unique() {
        for (i, a) in CATALOG.iter().enumerate() {
            for b in &CATALOG[i + 1..] {
                assert_ne!(a.key, b.key);
                assert!(a.order != b.order || a.name != b.name);
            }
        }
    }

    #[test]
    fn leading_exponents_increase() {
        for d in CATALOG.iter().filter(|d| d.shape != Shape::RegularizedMu6) {
            for n in d.nmin..d.nmin + 50 {
                assert!(d.min_exponent(n + 1) > d.min_exponent(n), "{}", d.key);
                let (a, b, c) = d.expo;
                assert_eq!((a * n * n + b * n + c) % 2, 0, "{}", d.key);
            }
        }
    }

    #[test]
    fn classical_first_coefficients() {
        assert_eq!(coeffs("f3", 6), ints(&[1, 1, -2, 3, -3, 3, -5]));
        assert_eq!(coeffs("sigma6", 6), ints(&[0, 1, 1, 2, 3, 3, 5]));
        assert_eq!(coeffs("omega3", 5), ints(&[1, 2, 3, 4, 6, 8]));
        assert_eq!(coeffs("f0_5", 6), ints(&[1, 1, -1, 1, 0, 0, -1]));
        assert_eq!(coeffs("F0_7", 6), ints(&[1, 1, 0, 1, 1, 1, 0]));
    }

    #[test]
    fn mu6_has_half_integer_constant() {
        let c = coeffs("mu6", 4);
        assert_eq!(c[0], Rational::from((1, 2)));
        assert!(c.iter().all(|x| Rational::from(x * 2).is_integer()));
    }

    #[test]
    fn pochhammer_examples() {
        let m = Rational::from(10);
        let p = pochhammer(&Rational::from(1), 1, &Rational::from(2), 2, &m);
        let expect = [(0, 1), (1, -1), (3, -1), (4, 1)];
        for k in 0..=10 {
            let want = expect.iter().find(|(e, _)| *e == k).map(|(_, c)| *c).unwrap_or(0);
            assert_eq!(p.coeff(k).unwrap(), want);
        }
        let p = pochhammer(&Rational::from(1), -1, &Rational::from(1), 1, &m);
        assert_eq!(p.coeff(1).unwrap(), 1);
        let p = pochhammer(&Rational::from(1), 1, &Rational::from(1), 0, &m);
        assert_eq!(p.nnz(), 1);
    }

    #[test]
    fn numeric_matches_expansion() {
        let ctx = PrecisionContext::new(30);
        let x = BigComplex::from_f64(0.05, 0.1, &ctx);
        for d in CATALOG {
            let exact = d.expansion(120);
            let mut direct = BigComplex::zero(&ctx);
            let mut pw = BigComplex::one(&ctx);
            for k in 0..=120 {
                let c = exact.coeff(k).unwrap();
                direct += pw.scale(&ctx.float(&c));
                pw = &pw * &x;
            }
            let v = d.eval(&x, &ctx).unwrap();
            let err = (&v - &direct).abs().to_f64();
            assert!(err < 1e-28, "{}: {err:e}", d.key);
        }
    }
}
