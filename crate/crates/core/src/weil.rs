//! The discriminant module `Z/2NZ`, its Weil representation and Atkin-Lehner maps.

use rug::Rational;
use thiserror::Error;

use crate::numerics::{e_rational, BigComplex, NumericsError, PrecisionContext};
use crate::quadforms::{ext_gcd, Mat2};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeilError {
    #[error("{q} is not an exact divisor of {n}")]
    NotExactDivisor { q: u64, n: u64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `Z/2NZ` with `q(r) = r^2/4N` and `b(r, s) = rs/2N`, both mod 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscriminantModule {
    pub n: u64,
}

impl DiscriminantModule {
    pub fn new(n: u64) -> Self {
        Self { n }
    }

    pub fn order(&self) -> usize {
        2 * self.n as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = i64> {
        0..2 * self.n as i64
    }

    fn frac(num: i64, den: i64) -> Rational {
        Rational::from((num.rem_euclid(den), den))
    }

    pub fn qform(&self, r: i64) -> Rational {
        Self::frac(r * r, 4 * self.n as i64)
    }

    pub fn bform(&self, r: i64, s: i64) -> Rational {
        Self::frac(r * s, 2 * self.n as i64)
    }
}

/// Square matrix over `BigComplex` indexed by residues mod `2N`.
#[derive(Clone, Debug)]
pub struct RepMatrix {
    pub dim: usize,
    pub data: Vec<BigComplex>,
}

impl RepMatrix {
    pub fn identity(dim: usize, ctx: &PrecisionContext) -> Self {
        let mut data = vec![BigComplex::zero(ctx); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = BigComplex::one(ctx);
        }
        Self { dim, data }
    }

    pub fn get(&self, r: usize, s: usize) -> &BigComplex {
        &self.data[r * self.dim + s]
    }

    pub fn mul(&self, o: &RepMatrix) -> RepMatrix {
        let n = self.dim;
        let prec = self.data[0].prec();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigComplex::zero_prec(prec);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                data.push(acc);
            }
        }
        RepMatrix { dim: n, data }
    }

    pub fn adjoint(&self) -> RepMatrix {
        let n = self.dim;
        let data = (0..n * n).map(|k| self.get(k % n, k / n).conj()).collect();
        RepMatrix { dim: n, data }
    }

    pub fn scale(&self, s: &BigComplex) -> RepMatrix {
        RepMatrix { dim: self.dim, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn apply(&self, v: &[BigComplex]) -> Vec<BigComplex> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                let mut acc = BigComplex::zero_prec(v[0].prec());
                for (k, x) in v.iter().enumerate() {
                    acc += self.get(i, k) * x;
                }
                acc
            })
            .collect()
    }

    /// Largest entrywise distance, as `f64`.
    pub fn max_dist(&self, o: &RepMatrix) -> f64 {
        self.data.iter().zip(&o.data).map(|(a, b)| (a - b).abs().to_f64()).fold(0.0, f64::max)
    }
}

fn sign(dual: bool) -> i64 {
    if dual {
        -1
    } else {
        1
    }
}

/// `rho(T) e_r = e(+-r^2/4N) e_r`.
pub fn rho_t(n: u64, dual: bool, ctx: &PrecisionContext) -> RepMatrix {
    let dim = 2 * n as usize;
    let mut m = RepMatrix::identity(dim, ctx);
    for r in 0..dim {
        let ri = r as i64;
        m.data[r * dim + r] = e_rational(sign(dual) * ri * ri, 4 * n as i64, ctx);
    }
    m
}

/// `rho(S)_{r,s} = e(-+1/8)/sqrt(2N) e(-+rs/2N)`.
pub fn rho_s(n: u64, dual: bool, ctx: &PrecisionContext) -> RepMatrix {
    let dim = 2 * n as usize;
    let sg = sign(dual);
    let pre = e_rational(-sg, 8, ctx).scale(&ctx.float(dim as u64).sqrt().recip());
    let roots: Vec<BigComplex> = (0..dim as i64).map(|k| e_rational(-sg * k, dim as i64, ctx)).collect();
    let mut data = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for s in 0..dim {
            data.push(&pre * &roots[(r * s) % dim]);
        }
    }
    RepMatrix { dim, data }
}

pub fn is_exact_divisor(q: u64, n: u64) -> bool {
    q > 0 && n.is_multiple_of(q) && gcd(q, n / q) == 1
}

pub fn exact_divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|q| is_exact_divisor(*q, n)).collect()
}

/// `sigma_Q(r) = -r mod 2Q` and `= r mod 2N/Q`, as a permutation of `0..2N`.
pub fn sigma_q(n: u64, q: u64) -> Result<Vec<i64>, WeilError> {
    if !is_exact_divisor(q, n) {
        return Err(WeilError::NotExactDivisor { q, n });
    }
    let m = 2 * n as i64;
    let (q2, p2) = (2 * q as i64, 2 * (n / q) as i64);
    Ok((0..m)
        .map(|r| {
            // residues mod 2N are determined by their images mod 2Q and 2N/Q up to the
            // overlap mod 2, on which -r and r agree
            (0..m).find(|s| (s + r).rem_euclid(q2) == 0 && (s - r).rem_euclid(p2) == 0).expect("CRT solution")
        })
        .collect())
}

/// `Q * Q' = Q Q' / gcd(Q, Q')^2`.
pub fn exact_divisor_product(q: u64, q2: u64, n: u64) -> Result<u64, WeilError> {
    for x in [q, q2] {
        if !is_exact_divisor(x, n) {
            return Err(WeilError::NotExactDivisor { q: x, n });
        }
    }
    let g = gcd(q, q2);
    Ok(q * q2 / (g * g))
}

/// `W_Q^N = [[Q alpha, beta], [N gamma, Q delta]]` with determinant `Q`.
pub fn atkin_lehner_matrix(q: u64, n: u64) -> Result<Mat2, WeilError> {
    if !is_exact_divisor(q, n) {
        return Err(WeilError::NotExactDivisor { q, n });
    }
    let (qi, mi) = (q as i64, (n / q) as i64);
    // x Q + y M = 1 with x >= 0
    let (_, mut x, mut y) = ext_gcd(qi, mi);
    while x < 0 {
        x += mi;
        y -= qi;
    }
    // Q alpha delta - M beta gamma = 1 with alpha = x, delta = 1, gamma = 1, beta = -y
    let w = Mat2::new(qi * x, -y, n as i64, qi);
    debug_assert_eq!(w.det(), qi);
    Ok(w)
}

/// `gamma W` for `gamma` in `Gamma_0(N)`: another matrix of Atkin-Lehner shape.
pub fn atkin_lehner_variant(q: u64, n: u64, gamma: &Mat2) -> Result<Mat2, WeilError> {
    Ok(gamma.mul(&atkin_lehner_matrix(q, n)?))
}

/// `(F|_0 W)(tau) = F(W tau)`.
pub fn atkin_lehner_slash<F>(f: F, w: &Mat2, tau: &BigComplex) -> Result<BigComplex, WeilError>
where
    F: Fn(&BigComplex) -> Result<BigComplex, NumericsError>,
{
    Ok(f(&w.act(tau))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_t_entries() {
        let ctx = PrecisionContext::new(30);
        let t = rho_t(12, false, &ctx);
        assert!((t.get(1, 1) - &e_rational(1, 48, &ctx)).abs().to_f64() < 1e-28);
        assert!((t.get(0, 0) - &BigComplex::one(&ctx)).abs().to_f64() < 1e-28);
        let td = rho_t(12, true, &ctx);
        assert!((td.get(5, 5) - &t.get(5, 5).conj()).abs().to_f64() < 1e-28);
    }

    #[test]
    fn rho_s_unitary_and_square() {
        let ctx = PrecisionContext::new(30);
        for dual in [false, true] {
            let s = rho_s(12, dual, &ctx);
            assert!((s.get(0, 0).abs().to_f64() - 1.0 / 24f64.sqrt()).abs() < 1e-14);
            let id = RepMatrix::identity(24, &ctx);
            assert!(s.mul(&s.adjoint()).max_dist(&id) < 1e-25);
            // S^2 = e(-+1/4) (r -> -r), built entry by entry
            let s2 = s.mul(&s);
            let z = e_rational(-sign(dual), 4, &ctx);
            let mut perm = RepMatrix::identity(24, &ctx);
            for r in 0..24 {
                for c in 0..24 {
                    perm.data[r * 24 + c] = if (r + c) % 24 == 0 { z.clone() } else { BigComplex::zero(&ctx) };
                }
            }
            assert!(s2.max_dist(&perm) < 1e-25);
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_q(12, 1).unwrap(), (0..24).collect::<Vec<_>>());
        assert_eq!(sigma_q(12, 12).unwrap(), (0..24).map(|r: i64| (-r).rem_euclid(24)).collect::<Vec<_>>());
        let s4 = sigma_q(12, 4).unwrap();
        assert_eq!(s4[1], 7);
        assert_eq!(s4[7], 1);
        assert!(sigma_q(12, 2).is_err());
    }

    #[test]
    fn exact_divisor_group_law() {
        assert_eq!(exact_divisor_product(4, 12, 12).unwrap(), 3);
        let divs = exact_divisors(12);
        assert_eq!(divs, vec![1, 3, 4, 12]);
        for &a in &divs {
            assert_eq!(exact_divisor_product(a, a, 12).unwrap(), 1);
            for &b in &divs {
                let sa = sigma_q(12, a).unwrap();
                let sb = sigma_q(12, b).unwrap();
                let sab = sigma_q(12, exact_divisor_product(a, b, 12).unwrap()).unwrap();
                for r in 0..24 {
                    assert_eq!(sab[r], sa[sb[r] as usize]);
                }
            }
        }
    }

    #[test]
    fn atkin_lehner_shapes() {
        for n in [6u64, 10, 12, 42, 60] {
            for q in exact_divisors(n) {
                let w = atkin_lehner_matrix(q, n).unwrap();
                let (qi, ni) = (q as i64, n as i64);
                assert_eq!(w.det(), qi);
                assert!(w.a % qi == 0 && w.c % ni == 0 && w.d % qi == 0);
            }
        }
    }

    #[test]
    fn e61_atkin_lehner_eigenvalues() {
        use crate::qseries::EFunction;
        let ctx = PrecisionContext::new(30);
        let tau = BigComplex::from_f64(0.13, 0.21, &ctx);
        let f = |z: &BigComplex| EFunction::E61.eval(z, &ctx);
        let base = f(&tau).unwrap();
        for (q, eig) in [(1u64, 1i64), (3, 1), (4, -1), (12, -1)] {
            let w = atkin_lehner_matrix(q, 12).unwrap();
            let v = atkin_lehner_slash(f, &w, &tau).unwrap();
            assert!((&v - &base.scale_i64(eig)).abs().to_f64() < 1e-20, "W_{q}");
            let w2 = atkin_lehner_variant(q, 12, &Mat2::new(1, 1, 12, 13)).unwrap();
            let v2 = atkin_lehner_slash(f, &w2, &tau).unwrap();
            assert!((&v - &v2).abs().to_f64() < 1e-20);
        }
    }

    #[test]
    fn theta_vector_transforms() {
        use crate::qseries::theta::theta_eval;
        let ctx = PrecisionContext::new(30);
        let n = 6u64;
        let tau = BigComplex::from_f64(0.21, 0.93, &ctx);
        let vec_at = |z: &BigComplex| -> Vec<BigComplex> { (0..12).map(|a| theta_eval(n, a, z, &ctx).unwrap()).collect() };
        let th = vec_at(&tau);
        let t1 = vec_at(&(&tau + &BigComplex::one(&ctx)));
        let rt = rho_t(n, false, &ctx).apply(&th);
        for a in 0..12 {
            assert!((&t1[a] - &rt[a]).abs().to_f64() < 1e-25);
        }
        let minv = (-BigComplex::one(&ctx)) / &tau;
        let ts = vec_at(&minv);
        let sq = tau.sqrt();
        let w = &(&sq * &sq) * &sq;
        let rs = rho_s(n, false, &ctx).apply(&th);
        for a in 0..12 {
            assert!((&ts[a] - &(&w * &rs[a])).abs().to_f64() < 1e-25);
        }
    }
}
