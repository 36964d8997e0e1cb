//! Integral binary quadratic forms with `Gamma_0(N)` level structure.
//!
//! Orbits of `Q_{N,D,r} = {[a,b,c] : b^2 - 4ac = D, N | a, b = r (2N)}` are
//! enumerated by cosets: every such form is `Q0 o g` for a reduced form `Q0`
//! and some `g` in `SL_2(Z)`, and its `Gamma_0(N)`-orbit only depends on the
//! coset `g Gamma_0(N)`, i.e. on the first column of `g` in `P^1(Z/N)`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

use crate::numerics::{BigComplex, PrecisionContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QfError {
    #[error("degenerate form: discriminant {0} is not negative")]
    Degenerate(i64),
    #[error("CONGRUENCE_FAIL: D = {d} is not r^2 = {r}^2 mod 4N = {four_n}")]
    CongruenceFail { d: i64, r: i64, four_n: i64 },
    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("forms have different definiteness")]
    SignMismatch,
}

/// 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const I: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };
    pub const T: Mat2 = Mat2 { a: 1, b: 1, c: 0, d: 1 };
    pub const S: Mat2 = Mat2 { a: 0, b: -1, c: 1, d: 0 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self) -> Mat2 {
        debug_assert_eq!(self.det(), 1);
        Mat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn in_gamma0(&self, n: u64) -> bool {
        self.det() == 1 && self.c.rem_euclid(n as i64) == 0
    }

    /// Moebius action on `z`.
    pub fn act(&self, z: &BigComplex) -> BigComplex {
        let p = z.re.prec();
        let num = &z.scale_i64(self.a) + &BigComplex::from_real(rug::Float::with_val(p, self.b));
        let den = &z.scale_i64(self.c) + &BigComplex::from_real(rug::Float::with_val(p, self.d));
        &num / &den
    }
}

/// `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryQF {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryQF {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.disc() < 0 && self.a > 0
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c)
    }

    /// `(Q o g)(x, y) = Q(g_a x + g_b y, g_c x + g_d y)`.
    pub fn compose(&self, g: &Mat2) -> Self {
        let (a, b, c) = (self.a, self.b, self.c);
        let (p, q, r, s) = (g.a, g.b, g.c, g.d);
        Self {
            a: a * p * p + b * p * r + c * r * r,
            b: 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            c: a * q * q + b * q * s + c * s * s,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.a > 0 && -self.a < self.b && self.b <= self.a && self.a <= self.c && !(self.a == self.c && self.b < 0)
    }

    pub fn satisfies_level(&self, n: u64, d: i64, r: i64) -> bool {
        let n = n as i64;
        self.disc() == d && self.a.rem_euclid(n) == 0 && (self.b - r).rem_euclid(2 * n) == 0
    }
}

/// Residues `r` in `[0, 2N)` with `r^2 = D (mod 4N)`.
pub fn square_roots_mod(d: i64, n: u64) -> Vec<i64> {
    let n = n as i64;
    (0..2 * n).filter(|r| (r * r - d).rem_euclid(4 * n) == 0).collect()
}

/// Gauss reduction: returns `(R, g)` with `Q o g = R` reduced. For `a < 0`
/// the form `-Q` is reduced and `R` is negative definite.
pub fn sl2_reduce(q: &BinaryQF) -> Result<(BinaryQF, Mat2), QfError> {
    let d = q.disc();
    if d >= 0 {
        return Err(QfError::Degenerate(d));
    }
    if q.a < 0 {
        let (r, g) = sl2_reduce(&q.neg())?;
        return Ok((r.neg(), g));
    }
    let mut f = *q;
    let mut g = Mat2::I;
    loop {
        // translate b into (-a, a]
        let a2 = 2 * f.a;
        let k = (f.a - f.b).div_euclid(a2);
        if k != 0 {
            let t = Mat2::new(1, k, 0, 1);
            f = f.compose(&t);
            g = g.mul(&t);
        }
        if f.a > f.c || (f.a == f.c && f.b < 0) {
            f = f.compose(&Mat2::S);
            g = g.mul(&Mat2::S);
            continue;
        }
        break;
    }
    debug_assert!(f.is_reduced());
    Ok((f, g))
}

/// All `s` in `SL_2(Z)` with `R o s = R`, for a reduced definite form.
/// Entries of automorphs of reduced forms are bounded by 1 in absolute value.
pub fn automorphs(r: &BinaryQF) -> Vec<Mat2> {
    automorphs_bounded(r, 1)
}

/// Automorph search over entries bounded by `bound`.
pub fn automorphs_bounded(r: &BinaryQF, bound: i64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    let s = Mat2::new(a, b, c, d);
                    if s.det() == 1 && r.compose(&s) == *r {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

/// `Some(gamma)` in `Gamma_0(N)` with `Q1 o gamma = Q2` if the forms are equivalent.
pub fn gamma0_equivalent(q1: &BinaryQF, q2: &BinaryQF, n: u64) -> Result<Option<Mat2>, QfError> {
    if q1.disc() != q2.disc() {
        return Err(QfError::DiscriminantMismatch(q1.disc(), q2.disc()));
    }
    if (q1.a > 0) != (q2.a > 0) {
        return Err(QfError::SignMismatch);
    }
    let (r1, g1) = sl2_reduce(q1)?;
    let (r2, g2) = sl2_reduce(q2)?;
    if r1 != r2 {
        return Ok(None);
    }
    let base = if r1.a < 0 { r1.neg() } else { r1 };
    for s in automorphs(&base) {
        let gamma = g1.mul(&s).mul(&g2.inv());
        if gamma.in_gamma0(n) {
            debug_assert_eq!(q1.compose(&gamma), *q2);
            return Ok(Some(gamma));
        }
    }
    Ok(None)
}

/// `omega_Q = |Gamma_0(N)_Q| / 2`.
pub fn stabilizer_weight(q: &BinaryQF, n: u64) -> Result<u32, QfError> {
    let (r, g) = sl2_reduce(q)?;
    let base = if r.a < 0 { r.neg() } else { r };
    let count = automorphs(&base).iter().filter(|s| g.mul(s).mul(&g.inv()).in_gamma0(n)).count();
    Ok((count / 2) as u32)
}

/// The root of `Q(z, 1) = 0` in the upper half-plane.
pub fn cm_point(q: &BinaryQF, ctx: &PrecisionContext) -> Result<BigComplex, QfError> {
    let d = q.disc();
    if d >= 0 || q.a == 0 {
        return Err(QfError::Degenerate(d));
    }
    let two_a = ctx.float(2 * q.a);
    let re = ctx.float(-q.b) / &two_a;
    let im = (ctx.float(-d).sqrt() / two_a).abs();
    Ok(BigComplex::new(re, im))
}

/// One `Gamma_0(N)`-orbit in `Q^{+/-}_{N,D,r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeegnerOrbit {
    pub rep: BinaryQF,
    pub reduced: BinaryQF,
    pub omega: u32,
}

impl HeegnerOrbit {
    pub fn cm(&self, ctx: &PrecisionContext) -> BigComplex {
        cm_point(&self.rep, ctx).expect("orbit representatives are definite")
    }
}

/// Positive or negative definite forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Bezout: `(g, x, y)` with `x a + y b = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), if a >= 0 { 1 } else { -1 }, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Points of `P^1(Z/N)` as normalized pairs, and the unit group.
fn projective_line(n: i64) -> (Vec<(i64, i64)>, Vec<i64>) {
    let units: Vec<i64> = (0..n.max(1)).filter(|u| gcd(*u, n) == 1).collect();
    let units = if n == 1 { vec![0] } else { units };
    let mut seen = BTreeSet::new();
    let mut pts = Vec::new();
    for c in 0..n {
        for d in 0..n {
            if gcd(gcd(c, d), n) != 1 {
                continue;
            }
            let key = normalize_point(c, d, n, &units);
            if seen.insert(key) {
                pts.push(key);
            }
        }
    }
    (pts, units)
}

fn normalize_point(c: i64, d: i64, n: i64, units: &[i64]) -> (i64, i64) {
    units.iter().map(|u| ((u * c).rem_euclid(n), (u * d).rem_euclid(n))).min().unwrap()
}

/// A matrix in `SL_2(Z)` whose first column is `(p, r) mod N`.
fn lift_column(p: i64, r: i64, n: i64) -> Mat2 {
    for k in 0..10_000i64 {
        for big_p in [p + n * k, p - n * k] {
            for big_r in [r, r + n, r + 2 * n] {
                if gcd(big_p, big_r) == 1 {
                    let (_, x, y) = ext_gcd(big_p, big_r);
                    // x P + y R = 1  =>  [[P, -y], [R, x]]
                    return Mat2::new(big_p, -y, big_r, x);
                }
            }
        }
    }
    unreachable!("no SL2 lift for ({p}:{r}) mod {n}")
}

/// Reduced positive definite forms of discriminant `D`.
pub fn reduced_forms(d: i64) -> Vec<BinaryQF> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b * b - d).rem_euclid(4 * a) == 0 {
                let c = (b * b - d) / (4 * a);
                let f = BinaryQF::new(a, b, c);
                if f.is_reduced() {
                    out.push(f);
                }
            }
        }
        a += 1;
    }
    out
}

/// Orbit representatives of `Q^{sign}_{N,D,r}` with their weights.
pub fn enumerate_heegner(n: u64, d: i64, r: i64, sign: Sign) -> Result<Vec<HeegnerOrbit>, QfError> {
    enumerate_heegner_bounded(n, d, r, sign, 1)
}

/// As [`enumerate_heegner`], searching automorphs with entries up to `bound`.
pub fn enumerate_heegner_bounded(n: u64, d: i64, r: i64, sign: Sign, bound: i64) -> Result<Vec<HeegnerOrbit>, QfError> {
    let four_n = 4 * n as i64;
    if d >= 0 {
        return Err(QfError::Degenerate(d));
    }
    if (d - r * r).rem_euclid(four_n) != 0 {
        return Err(QfError::CongruenceFail { d, r, four_n });
    }
    if sign == Sign::Minus {
        // Q^-_{N,D,r} = -Q^+_{N,D,-r}
        let mut out: Vec<HeegnerOrbit> = enumerate_heegner_bounded(n, d, -r, Sign::Plus, bound)?
            .into_iter()
            .map(|o| HeegnerOrbit { rep: o.rep.neg(), reduced: o.reduced.neg(), omega: o.omega })
            .collect();
        out.sort_by_key(|o| (o.reduced, o.rep));
        return Ok(out);
    }
    let ni = n as i64;
    let (pts, units) = projective_line(ni);
    let mut out = Vec::new();
    for q0 in reduced_forms(d) {
        let auts = automorphs_bounded(&q0, bound);
        let mut seen = BTreeSet::new();
        for &(p, rr) in &pts {
            if seen.contains(&(p, rr)) {
                continue;
            }
            for s in &auts {
                let p2 = (s.a * p + s.b * rr).rem_euclid(ni.max(1));
                let r2 = (s.c * p + s.d * rr).rem_euclid(ni.max(1));
                seen.insert(normalize_point(p2, r2, ni, &units));
            }
            let g = lift_column(p, rr, ni);
            let q = q0.compose(&g);
            if !q.satisfies_level(n, d, r) {
                continue;
            }
            let ginv = g.inv();
            let count = auts.iter().filter(|s| ginv.mul(s).mul(&g).in_gamma0(n)).count();
            out.push(HeegnerOrbit { rep: q, reduced: q0, omega: (count / 2) as u32 });
        }
    }
    out.sort_by_key(|o| (o.reduced, o.rep));
    Ok(out)
}

/// Independent scan: all forms in `Q^+_{N,D,r}` with `0 < a <= a_max` and `|b| <= b_max`.
pub fn scan_forms(n: u64, d: i64, r: i64, a_max: i64, b_max: i64) -> Vec<BinaryQF> {
    let ni = n as i64;
    let mut out = Vec::new();
    let mut a = ni;
    while a <= a_max {
        let b0 = r.rem_euclid(2 * ni);
        let mut b = b0 - 2 * ni * ((b_max + b0) / (2 * ni) + 1);
        while b <= b_max {
            if b.abs() <= b_max && (b * b - d) % (4 * a) == 0 {
                out.push(BinaryQF::new(a, b, (b * b - d) / (4 * a)));
            }
            b += 2 * ni;
        }
        a += ni;
    }
    out
}

/// Orbit count from the scan oracle: deduplicate scanned forms by `Gamma_0(N)`-equivalence.
pub fn scan_orbit_count(n: u64, d: i64, r: i64, a_max: i64, b_max: i64) -> usize {
    let mut reps: Vec<BinaryQF> = Vec::new();
    for f in scan_forms(n, d, r, a_max, b_max) {
        if !reps.iter().any(|g| gamma0_equivalent(g, &f, n).ok().flatten().is_some()) {
            reps.push(f);
        }
    }
    reps.len()
}

/// Orbit-list export record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub omega: u32,
    pub cm_re: String,
    pub cm_im: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitList {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "D")]
    pub d: i64,
    pub r: i64,
    pub sign: String,
    pub orbits: Vec<OrbitRecord>,
}

pub fn orbit_list(n: u64, d: i64, r: i64, sign: Sign, ctx: &PrecisionContext) -> Result<OrbitList, QfError> {
    let orbits = enumerate_heegner(n, d, r, sign)?
        .into_iter()
        .map(|o| {
            let z = o.cm(ctx);
            OrbitRecord {
                a: o.rep.a,
                b: o.rep.b,
                c: o.rep.c,
                omega: o.omega,
                cm_re: crate::numerics::fmt_float(&z.re, 30),
                cm_im: crate::numerics::fmt_float(&z.im, 30),
            }
        })
        .collect();
    Ok(OrbitList { n, d, r, sign: sign.as_str().into(), orbits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots_examples() {
        assert!(square_roots_mod(-44, 12).contains(&2));
        assert_eq!(square_roots_mod(-3, 1), vec![1]);
        assert!(square_roots_mod(-1, 1).is_empty());
    }

    #[test]
    fn reduction_examples() {
        let (r, g) = sl2_reduce(&BinaryQF::new(1, 1, 1)).unwrap();
        assert_eq!((r, g), (BinaryQF::new(1, 1, 1), Mat2::I));
        let q = BinaryQF::new(12, 2, 1);
        let (r, g) = sl2_reduce(&q).unwrap();
        assert!(r.is_reduced() && r.a <= 3);
        assert_eq!(q.compose(&g), r);
        assert!(reduced_forms(-44).contains(&r));
        assert!(sl2_reduce(&BinaryQF::new(1, 3, 1)).is_err());
    }

    #[test]
    fn automorph_bound_is_sufficient() {
        for d in [-3i64, -4, -7, -8, -12, -16, -27, -44, -48, -75] {
            for f in reduced_forms(d) {
                let big = (-d as f64).sqrt() as i64 + 1;
                assert_eq!(automorphs(&f).len(), automorphs_bounded(&f, big).len(), "{f:?}");
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(stabilizer_weight(&BinaryQF::new(1, 1, 1), 1).unwrap(), 3);
        assert_eq!(stabilizer_weight(&BinaryQF::new(1, 0, 1), 1).unwrap(), 2);
        assert_eq!(stabilizer_weight(&BinaryQF::new(12, 2, 1), 12).unwrap(), 1);
    }

    #[test]
    fn class_number_minus_three() {
        let orbits = enumerate_heegner(1, -3, 1, Sign::Plus).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].omega, 3);
        let ctx = PrecisionContext::new(30);
        let z = orbits[0].cm(&ctx);
        let q = orbits[0].rep;
        let (x, y) = (z.re.to_f64(), z.im.to_f64());
        let re = q.a as f64 * (x * x - y * y) + q.b as f64 * x + q.c as f64;
        let im = 2.0 * q.a as f64 * x * y + q.b as f64 * y;
        assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
        assert!((y * q.a as f64 - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn congruence_failure() {
        assert!(matches!(enumerate_heegner(12, -44, 3, Sign::Plus), Err(QfError::CongruenceFail { .. })));
    }

    #[test]
    fn cm_point_examples() {
        let ctx = PrecisionContext::new(30);
        let z = cm_point(&BinaryQF::new(1, 0, 1), &ctx).unwrap();
        assert!(z.re.is_zero() && (z.im.to_f64() - 1.0).abs() < 1e-25);
        let z = cm_point(&BinaryQF::new(-12, 2, -1), &ctx).unwrap();
        assert!((z.re.to_f64() - 2.0 / 24.0).abs() < 1e-20);
        assert!(z.im > 0);
    }

    #[test]
    fn minus_and_plus_counts_agree() {
        let p = enumerate_heegner(12, -44, 2, Sign::Plus).unwrap();
        let m = enumerate_heegner(12, -44, 2, Sign::Minus).unwrap();
        let pm = enumerate_heegner(12, -44, -2, Sign::Plus).unwrap();
        assert_eq!(p.len(), m.len());
        assert_eq!(p.len(), pm.len());
        assert!(m.iter().all(|o| o.rep.a < 0 && o.rep.satisfies_level(12, -44, 2)));
    }

    /// Brute-force search for `gamma` in `Gamma_0(N)` with bounded entries.
    fn brute_equivalent(q1: &BinaryQF, q2: &BinaryQF, n: i64, bound: i64) -> bool {
        for a in -bound..=bound {
            for b in -bound..=bound {
                for c in (-bound..=bound).filter(|c| c % n == 0) {
                    for d in -bound..=bound {
                        let g = Mat2::new(a, b, c, d);
                        if g.det() == 1 && q1.compose(&g) == *q2 {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn equivalence_agrees_with_brute_force() {
        let orbits = enumerate_heegner(12, -44, 2, Sign::Plus).unwrap();
        for (i, x) in orbits.iter().enumerate() {
            for y in &orbits[i + 1..] {
                assert!(gamma0_equivalent(&x.rep, &y.rep, 12).unwrap().is_none());
                assert!(!brute_equivalent(&x.rep, &y.rep, 12, 30));
            }
        }
        let q = BinaryQF::new(12, 2, 1);
        let shifted = q.compose(&Mat2::new(1, 3, 0, 1));
        assert!(gamma0_equivalent(&q, &shifted, 12).unwrap().is_some());
    }
}
