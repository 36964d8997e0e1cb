use rug::ops::Pow;
use rug::Integer;

/// Dense integer power series `sum_{k=0}^{M} c_k q^k`, exact through `q^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    pub coeffs: Vec<Integer>,
}

impl IntSeries {
    pub fn zero(m: usize) -> Self {
        Self { coeffs: vec![Integer::new(); m + 1] }
    }

    pub fn one(m: usize) -> Self {
        let mut s = Self::zero(m);
        s.coeffs[0] = Integer::from(1);
        s
    }

    /// `q^k`, or zero when `k > M`.
    pub fn monomial(k: usize, m: usize) -> Self {
        let mut s = Self::zero(m);
        if k <= m {
            s.coeffs[k] = Integer::from(1);
        }
        s
    }

    pub fn max_exp(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Multiply in place by `1 + sign q^e`.
    pub fn mul_factor(&mut self, sign: i32, e: usize) {
        let m = self.max_exp();
        if e == 0 {
            if sign == -1 {
                self.coeffs.iter_mut().for_each(|c| *c = Integer::new());
            } else {
                self.coeffs.iter_mut().for_each(|c| *c *= 2);
            }
            return;
        }
        if e > m {
            return;
        }
        for i in (e..=m).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            if sign > 0 {
                hi[0] += &lo[i - e];
            } else {
                hi[0] -= &lo[i - e];
            }
        }
    }

    /// Divide in place by `1 + sign q^e` with `e >= 1`.
    pub fn div_factor(&mut self, sign: i32, e: usize) {
        assert!(e >= 1, "division by a factor with constant term != 1");
        let m = self.max_exp();
        for i in e..=m {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            if sign > 0 {
                hi[0] -= &lo[i - e];
            } else {
                hi[0] += &lo[i - e];
            }
        }
    }

    pub fn add_assign(&mut self, other: &IntSeries) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &IntSeries) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    pub fn scale(&mut self, s: i64) {
        self.coeffs.iter_mut().for_each(|c| *c *= s);
    }

    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let m = self.max_exp().min(other.max_exp());
        let mut r = IntSeries::zero(m);
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                if !b.is_zero() {
                    r.coeffs[i + j] += Integer::from(a * b);
                }
            }
        }
        r
    }

    /// Substitute `q -> q^k`.
    pub fn dilate(&self, k: usize) -> IntSeries {
        let m = self.max_exp();
        let mut r = IntSeries::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > m {
                break;
            }
            r.coeffs[i * k] = c.clone();
        }
        r
    }
}

/// `(q^a; q^step)_inf` or its inverse, through `q^M`: `prod_{j>=0} (1 + sign q^{a + j step})^{power}`.
pub fn infinite_product(sign: i32, a: usize, step: usize, power: i64, m: usize) -> IntSeries {
    let mut s = IntSeries::one(m);
    let mut e = a;
    while e <= m {
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                s.mul_factor(sign, e);
            } else {
                s.div_factor(sign, e);
            }
        }
        e += step;
    }
    s
}

/// Sum of cubes of divisors.
pub fn sigma3(n: u64) -> Integer {
    let mut s = Integer::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += Integer::from(d).pow(3);
            let e = n / d;
            if e != d {
                s += Integer::from(e).pow(3);
            }
        }
        d += 1;
    }
    s
}
