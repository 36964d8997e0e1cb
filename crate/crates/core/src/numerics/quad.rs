use rug::float::Constant;
use rug::Float;

use super::{BigComplex, NumericsError, PrecisionContext};

/// Result of a double-exponential quadrature.
#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: BigComplex,
    /// Difference between the last two step-halving levels.
    pub error_estimate: f64,
    pub levels: u32,
    pub nodes: usize,
}

/// Result of a vector-valued double-exponential quadrature.
#[derive(Debug, Clone)]
pub struct QuadVecResult {
    pub values: Vec<BigComplex>,
    pub error_estimate: f64,
    pub levels: u32,
    pub nodes: usize,
}

const MAX_ABSCISSA: f64 = 8.0;

fn exp_sinh_node(bits: u32) -> impl Fn(&Float) -> (Float, Float) {
    let half_pi = Float::with_val(bits, Constant::Pi) / 2u32;
    move |x: &Float| {
        let sh = Float::with_val(bits, x.sinh_ref());
        let ch = Float::with_val(bits, x.cosh_ref());
        let t = Float::with_val(bits, &half_pi * &sh).exp();
        let w = Float::with_val(bits, &half_pi * &ch) * &t;
        (t, w)
    }
}

/// Componentwise `int_0^inf f(t) dt` for `dim`-vector integrands sharing nodes.
pub fn exp_sinh_vec<F>(f: F, dim: usize, tol: &Float, ctx: &PrecisionContext, max_levels: u32) -> Result<QuadVecResult, NumericsError>
where
    F: FnMut(&Float) -> Vec<BigComplex>,
{
    de_rule_vec(f, dim, exp_sinh_node(ctx.bits()), tol, ctx, max_levels)
}

/// `int_0^inf f(t) dt` by the exp-sinh rule `t = exp(pi/2 sinh x)`.
pub fn exp_sinh<F>(f: F, tol: &Float, ctx: &PrecisionContext, max_levels: u32) -> Result<QuadResult, NumericsError>
where
    F: FnMut(&Float) -> BigComplex,
{
    de_rule(f, exp_sinh_node(ctx.bits()), tol, ctx, max_levels)
}

/// `int_a^b f(t) dt` by the tanh-sinh rule.
pub fn tanh_sinh<F>(
    f: F,
    a: &Float,
    b: &Float,
    tol: &Float,
    ctx: &PrecisionContext,
    max_levels: u32,
) -> Result<QuadResult, NumericsError>
where
    F: FnMut(&Float) -> BigComplex,
{
    let bits = ctx.bits();
    let half_pi = Float::with_val(bits, Constant::Pi) / 2u32;
    let mid = Float::with_val(bits, a + b) / 2u32;
    let rad = Float::with_val(bits, b - a) / 2u32;
    let node = move |x: &Float| {
        let sh = Float::with_val(bits, x.sinh_ref());
        let ch = Float::with_val(bits, x.cosh_ref());
        let u = Float::with_val(bits, &half_pi * &sh);
        let th = Float::with_val(bits, u.tanh_ref());
        let cu = u.cosh();
        let t = Float::with_val(bits, &mid + &rad * &th);
        let w = Float::with_val(bits, &rad * &half_pi) * ch / cu.square();
        (t, w)
    };
    de_rule(f, node, tol, ctx, max_levels)
}

fn de_rule<F, N>(mut f: F, node: N, tol: &Float, ctx: &PrecisionContext, max_levels: u32) -> Result<QuadResult, NumericsError>
where
    F: FnMut(&Float) -> BigComplex,
    N: Fn(&Float) -> (Float, Float),
{
    let r = de_rule_vec(|t| vec![f(t)], 1, node, tol, ctx, max_levels)?;
    Ok(QuadResult { value: r.values.into_iter().next().expect("dim 1"), error_estimate: r.error_estimate, levels: r.levels, nodes: r.nodes })
}

fn de_rule_vec<F, N>(mut f: F, dim: usize, node: N, tol: &Float, ctx: &PrecisionContext, max_levels: u32) -> Result<QuadVecResult, NumericsError>
where
    F: FnMut(&Float) -> Vec<BigComplex>,
    N: Fn(&Float) -> (Float, Float),
{
    let bits = ctx.bits();
    let cutoff = Float::with_val(bits, tol * Float::with_val(bits, Float::u_exp(1, -40)));
    let mut nodes = 0usize;
    // sums of f(t_k) w_k over all nodes at spacing h, without the factor h
    let mut raw = vec![BigComplex::zero(ctx); dim];
    // adds the weighted node values; Some(tiny) if the node was usable
    let mut eval = |x: &Float, nodes: &mut usize, raw: &mut Vec<BigComplex>| -> Option<bool> {
        let (t, w) = node(x);
        if !t.is_finite() || !w.is_finite() || w.is_zero() {
            return None;
        }
        *nodes += 1;
        let v = f(&t);
        if v.iter().any(|c| !c.is_finite()) {
            return None;
        }
        let mut tiny = true;
        for (acc, c) in raw.iter_mut().zip(v) {
            let c = c * &w;
            tiny &= c.abs() < cutoff;
            *acc += c;
        }
        Some(tiny)
    };
    let mut sweep = |xs: &mut dyn Iterator<Item = Float>, nodes: &mut usize, raw: &mut Vec<BigComplex>| {
        let mut small = 0;
        for x in xs {
            match eval(&x, nodes, raw) {
                Some(tiny) => small = if tiny { small + 1 } else { 0 },
                None => small += 1,
            }
            if small >= 2 {
                break;
            }
        }
    };

    // level 0: all integers
    sweep(&mut std::iter::once(ctx.zero()), &mut nodes, &mut raw);
    for sign in [1i32, -1] {
        let mut xs = (1..=MAX_ABSCISSA as u32).map(|k| ctx.float(k) * sign);
        sweep(&mut xs, &mut nodes, &mut raw);
    }
    let mut h = ctx.float(1);
    let mut prev = raw.clone();
    let mut err = f64::INFINITY;
    for level in 1..=max_levels {
        h /= 2u32;
        // new nodes are odd multiples of h
        for sign in [1i32, -1] {
            let hh = h.clone();
            let mut xs = (0u64..)
                .map(move |j| Float::with_val(bits, &hh * (2 * j + 1)) * sign)
                .take_while(|x| x.to_f64().abs() <= MAX_ABSCISSA);
            sweep(&mut xs, &mut nodes, &mut raw);
        }
        let two_h = Float::with_val(bits, &h * 2u32);
        let cur: Vec<BigComplex> = raw.iter().map(|c| c.scale(&h)).collect();
        let mut worst = true;
        err = 0.0;
        for (c, p) in cur.iter().zip(&prev) {
            let diff = (c - &p.scale(&two_h)).abs();
            err = err.max(diff.to_f64());
            let scale = Float::with_val(bits, c.abs()).max(&ctx.float(1));
            worst &= diff <= Float::with_val(bits, tol * &scale);
        }
        if level >= 3 && worst {
            return Ok(QuadVecResult { values: cur, error_estimate: err, levels: level, nodes });
        }
        prev = raw.clone();
    }
    Err(NumericsError::NoConvergence { estimate: err, levels: max_levels })
}
