//! Family data: holomorphic components, shadows, `T`/`S` matrices and lifts.

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::numerics::{e_rational, BigComplex, PrecisionContext};

/// `(num/den) * sqrt(rad)` with `rad` squarefree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Radical {
    pub num: i64,
    pub den: i64,
    pub rad: u64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Radical {
    pub const ONE: Radical = Radical { num: 1, den: 1, rad: 1 };

    /// `(num/den) sqrt(rad)`, normalized.
    pub fn new(num: i64, den: i64, rad: u64) -> Self {
        let mut num = num;
        let mut r = rad;
        let mut k = 2u64;
        while k * k <= r {
            while r.is_multiple_of(k * k) {
                r /= k * k;
                num *= k as i64;
            }
            k += 1;
        }
        let g = gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Self { num: s * num / g, den: s * den / g, rad: if num == 0 { 1 } else { r } }
    }

    pub const fn int(n: i64) -> Self {
        Self { num: n, den: 1, rad: 1 }
    }

    pub fn sqrt(n: u64) -> Self {
        Self::new(1, 1, n)
    }

    pub fn mul(&self, o: &Radical) -> Radical {
        Radical::new(self.num * o.num, self.den * o.den, self.rad * o.rad)
    }

    pub fn neg(&self) -> Radical {
        Radical { num: -self.num, ..*self }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_rational(&self) -> Option<Rational> {
        (self.rad == 1).then(|| Rational::from((self.num, self.den)))
    }

    pub fn value(&self, ctx: &PrecisionContext) -> Float {
        ctx.float(self.rad).sqrt() * self.num / self.den
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.den == 1 { format!("{}", self.num) } else { format!("{}/{}", self.num, self.den) };
        if self.rad == 1 {
            write!(f, "{head}")
        } else {
            write!(f, "{head}*sqrt({})", self.rad)
        }
    }
}

/// Argument substitution applied to a catalog series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Arg {
    /// `q`
    Q,
    /// `q^{1/2}`
    HalfPlus,
    /// `-q^{1/2}`
    HalfMinus,
    /// `q^{1/4}`
    QuarterPlus,
    /// `-q^{1/4}`
    QuarterMinus,
}

impl Arg {
    /// `(num, den, sign)` of the substitution `q -> sign q^{num/den}`.
    pub fn substitution(&self) -> (u64, u64, i32) {
        match self {
            Arg::Q => (1, 1, 1),
            Arg::HalfPlus => (1, 2, 1),
            Arg::HalfMinus => (1, 2, -1),
            Arg::QuarterPlus => (1, 4, 1),
            Arg::QuarterMinus => (1, 4, -1),
        }
    }
}

/// `scalar * q^{shift} * (offset + series(arg))`.
#[derive(Clone, Copy, Debug)]
pub struct Component {
    pub series: &'static str,
    pub scalar: Radical,
    pub shift: (i64, i64),
    pub arg: Arg,
    pub offset: i64,
}

const fn comp(series: &'static str, scalar: Radical, shift: (i64, i64), arg: Arg) -> Component {
    Component { series, scalar, shift, arg, offset: 0 }
}

/// `coef * theta_{N,a}`.
#[derive(Clone, Copy, Debug)]
pub struct ThetaTerm {
    pub coef: Radical,
    pub n: u64,
    pub a: i64,
}

/// Matrix entry `e(phase) * coef * [sin(pi s)]`.
#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub coef: Radical,
    pub sin: Option<(i64, i64)>,
    pub phase: (i64, i64),
}

impl Entry {
    pub fn value(&self, ctx: &PrecisionContext) -> BigComplex {
        let mut mag = self.coef.value(ctx);
        if let Some((a, b)) = self.sin {
            mag *= (ctx.pi() * a / b).sin();
        }
        e_rational(self.phase.0, self.phase.1, ctx).scale(&mag)
    }
}

fn phase(row: usize, col: usize, num: i64, den: i64) -> Entry {
    Entry { row, col, coef: Radical::ONE, sin: None, phase: (num, den) }
}

fn real(row: usize, col: usize, coef: Radical) -> Entry {
    Entry { row, col, coef, sin: None, phase: (0, 1) }
}

fn sine(row: usize, col: usize, coef: Radical, a: i64, b: i64) -> Entry {
    Entry { row, col, coef, sin: Some((a, b)), phase: (0, 1) }
}

/// Lift coefficient: component `r` of the lifted vector gets `coef * h_comp`.
#[derive(Clone, Copy, Debug)]
pub struct LiftTerm {
    pub r: i64,
    pub comp: usize,
    pub coef: Radical,
}

#[derive(Clone, Debug)]
pub struct Lift {
    pub level: u64,
    pub terms: Vec<LiftTerm>,
}

impl Lift {
    fn push_pair(&mut self, r: i64, combo: &[(usize, Radical)], sign: i64) {
        let m = 2 * self.level as i64;
        for &(c, k) in combo {
            let k = if sign < 0 { k.neg() } else { k };
            self.terms.push(LiftTerm { r: r.rem_euclid(m), comp: c, coef: k });
            self.terms.push(LiftTerm { r: (-r).rem_euclid(m), comp: c, coef: k.neg() });
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyLabel {
    Order2,
    Order3a,
    Order3b,
    Order5_1,
    Order5_2,
    Order6_1,
    Order6_2,
    Order7,
    Order8,
    Order10,
}

impl FamilyLabel {
    pub const ALL: [FamilyLabel; 10] = [
        FamilyLabel::Order2,
        FamilyLabel::Order3a,
        FamilyLabel::Order3b,
        FamilyLabel::Order5_1,
        FamilyLabel::Order5_2,
        FamilyLabel::Order6_1,
        FamilyLabel::Order6_2,
        FamilyLabel::Order7,
        FamilyLabel::Order8,
        FamilyLabel::Order10,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyLabel::Order2 => "order2",
            FamilyLabel::Order3a => "order3a",
            FamilyLabel::Order3b => "order3b",
            FamilyLabel::Order5_1 => "order5_1",
            FamilyLabel::Order5_2 => "order5_2",
            FamilyLabel::Order6_1 => "order6_1",
            FamilyLabel::Order6_2 => "order6_2",
            FamilyLabel::Order7 => "order7",
            FamilyLabel::Order8 => "order8",
            FamilyLabel::Order10 => "order10",
        }
    }

    /// Accepts `order6_1`, or `order6` together with a variant index.
    pub fn parse(name: &str, j: Option<u8>) -> Option<Self> {
        let full = match (name, j) {
            ("order6" | "order5", Some(j)) => format!("{name}_{j}"),
            ("order6" | "order5", None) => format!("{name}_1"),
            ("order3", _) => "order3a".into(),
            _ => name.to_string(),
        };
        Self::ALL.into_iter().find(|l| l.name() == full)
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shadow data: `G = i * g_const * int g(z) / sqrt(-i(z + tau)) dz` and
/// `xi_{1/2}(H) = -xi_const * g`.
#[derive(Clone, Debug)]
pub struct Shadow {
    pub g: Vec<Vec<ThetaTerm>>,
    pub g_const: Radical,
    pub xi_const: Radical,
}

#[derive(Clone, Debug)]
pub struct CompletionFamily {
    pub label: FamilyLabel,
    pub components: Vec<Component>,
    pub t_matrix: Vec<Entry>,
    pub s_matrix: Vec<Entry>,
    /// Scalar in front of the `S` matrix.
    pub s_scale: Radical,
    pub shadow: Option<Shadow>,
    pub lift: Option<Lift>,
}

impl CompletionFamily {
    pub fn dim(&self) -> usize {
        self.components.len()
    }
}

fn th(coef: i64, n: u64, a: i64) -> ThetaTerm {
    ThetaTerm { coef: Radical::int(coef), n, a }
}

fn thr(coef: Radical, n: u64, a: i64) -> ThetaTerm {
    ThetaTerm { coef, n, a }
}

use Arg::{HalfMinus as HM, HalfPlus as HP, Q};

fn r2() -> Radical {
    Radical::sqrt(2)
}

fn order6_shadow() -> Shadow {
    let s2 = r2();
    Shadow {
        g: vec![
            vec![thr(s2, 12, 2), thr(s2, 12, 10)],
            vec![th(2, 12, 6)],
            vec![th(-1, 12, 1), th(-1, 12, 5), th(1, 12, 7), th(1, 12, 11)],
            vec![th(-1, 12, 1), th(1, 12, 5), th(1, 12, 7), th(-1, 12, 11)],
            vec![thr(s2.neg(), 12, 3), thr(s2, 12, 9)],
            vec![thr(s2.neg(), 12, 3), thr(s2.neg(), 12, 9)],
        ],
        g_const: Radical::new(1, 1, 24).recip_sqrt_form(),
        xi_const: Radical::new(1, 12, 12),
    }
}

impl Radical {
    /// `1/x` for `x = (num/den) sqrt(rad)`.
    pub fn recip_sqrt_form(&self) -> Radical {
        // den / (num sqrt(rad)) = den sqrt(rad) / (num rad)
        Radical::new(self.den, self.num * self.rad as i64, self.rad)
    }
}

fn order6_matrices() -> (Vec<Entry>, Vec<Entry>) {
    let t = vec![phase(0, 0, -1, 12), phase(1, 1, 1, 4), phase(2, 3, -1, 48), phase(3, 2, -1, 48), phase(4, 5, -3, 16), phase(5, 4, -3, 16)];
    let a = Radical::new(1, 3, 3); // 1/sqrt(3)
    let b = Radical::new(1, 3, 6); // sqrt(2/3)
    let s = vec![
        real(0, 2, a),
        real(0, 4, b),
        real(1, 2, b),
        real(1, 4, a.neg()),
        real(2, 0, a),
        real(2, 1, b),
        real(3, 3, a),
        real(3, 5, b.neg()),
        real(4, 0, b),
        real(4, 1, a.neg()),
        real(5, 3, b.neg()),
        real(5, 5, a.neg()),
    ];
    (t, s)
}

fn order6_lift() -> Lift {
    let s2 = r2();
    let one = Radical::ONE;
    let mut l = Lift { level: 12, terms: Vec::new() };
    l.push_pair(2, &[(0, s2)], -1);
    l.push_pair(10, &[(0, s2)], -1);
    l.push_pair(6, &[(1, Radical::int(2))], -1);
    l.push_pair(1, &[(2, one), (3, one)], 1);
    l.push_pair(7, &[(2, one), (3, one)], -1);
    l.push_pair(5, &[(2, one), (3, one.neg())], 1);
    l.push_pair(11, &[(2, one), (3, one.neg())], -1);
    l.push_pair(3, &[(4, s2), (5, s2)], 1);
    l.push_pair(9, &[(4, s2), (5, s2.neg())], -1);
    l
}

fn order6(j: u8) -> CompletionFamily {
    let s2 = r2();
    let s8 = Radical::sqrt(8);
    let components = if j == 1 {
        vec![
            comp("sigma6", s8, (-1, 12), Q),
            comp("rho6", Radical::int(2), (1, 4), Q),
            comp("phi6", Radical::ONE, (-1, 48), HP),
            comp("phi6", Radical::ONE, (-1, 48), HM),
            comp("psi6", s2, (-3, 16), HP),
            comp("psi6", s2, (-3, 16), HM),
        ]
    } else {
        vec![
            comp("mu6", s2.neg(), (-1, 12), Q),
            comp("lambda6", Radical::int(-1), (1, 4), Q),
            comp("nu6", Radical::int(-2), (-1, 48), HP),
            comp("nu6", Radical::int(-2), (-1, 48), HM),
            comp("xi6", s8.neg(), (-3, 16), HP),
            comp("xi6", s8.neg(), (-3, 16), HM),
        ]
    };
    let (t, s) = order6_matrices();
    CompletionFamily {
        label: if j == 1 { FamilyLabel::Order6_1 } else { FamilyLabel::Order6_2 },
        components,
        t_matrix: t,
        s_matrix: s,
        s_scale: Radical::ONE,
        shadow: Some(order6_shadow()),
        lift: Some(order6_lift()),
    }
}

fn order2() -> CompletionFamily {
    let s2 = r2();
    let s8 = Radical::sqrt(8);
    let components = vec![
        comp("A2", Radical::int(4), (-1, 16), HP),
        comp("A2", Radical::int(4), (-1, 16), HM),
        comp("B2", s8, (1, 4), HP),
        comp("B2", s8, (1, 4), HM),
        comp("mu2", Radical::ONE, (-1, 16), HP),
        comp("mu2", Radical::ONE, (-1, 16), HM),
    ];
    let g = vec![
        vec![th(1, 4, 1), th(1, 4, 3)],
        vec![th(1, 4, 1), th(-1, 4, 3)],
        vec![thr(s2, 4, 2)],
        vec![thr(s2.neg(), 4, 2)],
        vec![th(-1, 4, 1), th(1, 4, 3)],
        vec![th(-1, 4, 1), th(-1, 4, 3)],
    ];
    let t = vec![phase(0, 1, -1, 16), phase(1, 0, -1, 16), phase(2, 3, 1, 4), phase(3, 2, 1, 4), phase(4, 5, -1, 16), phase(5, 4, -1, 16)];
    let s = [(0, 5), (1, 3), (2, 4), (3, 1), (4, 2), (5, 0)].iter().map(|&(r, c)| real(r, c, Radical::ONE)).collect();
    CompletionFamily {
        label: FamilyLabel::Order2,
        components,
        t_matrix: t,
        s_matrix: s,
        s_scale: Radical::ONE,
        shadow: Some(Shadow { g, g_const: Radical::new(1, 2, 2), xi_const: Radical::ONE }),
        lift: None,
    }
}

fn order3a() -> CompletionFamily {
    let s2 = r2();
    let components = vec![
        comp("phi3", Radical::ONE, (-1, 48), HP),
        comp("phi3", Radical::ONE, (-1, 48), HM),
        comp("psi3", Radical::int(2), (-1, 48), HP),
        comp("psi3", Radical::int(2), (-1, 48), HM),
        comp("nu3", s2, (1, 6), HP),
        comp("nu3", s2, (1, 6), HM),
    ];
    let g = vec![
        vec![th(-1, 12, 1), th(-1, 12, 5), th(-1, 12, 7), th(-1, 12, 11)],
        vec![th(-1, 12, 1), th(1, 12, 5), th(-1, 12, 7), th(1, 12, 11)],
        vec![th(1, 12, 1), th(1, 12, 5), th(1, 12, 7), th(1, 12, 11)],
        vec![th(1, 12, 1), th(-1, 12, 5), th(1, 12, 7), th(-1, 12, 11)],
        vec![thr(s2.neg(), 12, 4), thr(s2.neg(), 12, 8)],
        vec![thr(s2, 12, 4), thr(s2, 12, 8)],
    ];
    let t = vec![phase(0, 1, -1, 48), phase(1, 0, -1, 48), phase(2, 3, -1, 48), phase(3, 2, -1, 48), phase(4, 5, 1, 6), phase(5, 4, 1, 6)];
    let s = [(0, 2), (1, 5), (2, 0), (3, 4), (4, 3), (5, 1)].iter().map(|&(r, c)| real(r, c, Radical::ONE)).collect();
    CompletionFamily {
        label: FamilyLabel::Order3a,
        components,
        t_matrix: t,
        s_matrix: s,
        s_scale: Radical::ONE,
        shadow: Some(Shadow { g, g_const: Radical::new(1, 24, 24), xi_const: Radical::new(1, 12, 12) }),
        lift: None,
    }
}

/// The `f`, `omega` vector. Its shadow is the level-6 theta combination fixed by the
/// transformation law.
fn order3b() -> CompletionFamily {
    let components = vec![
        comp("f3", Radical::ONE, (-1, 24), Q),
        comp("omega3", Radical::int(2), (1, 3), HP),
        comp("omega3", Radical::int(2), (1, 3), HM),
    ];
    let g = vec![
        vec![th(-1, 6, 1), th(-1, 6, 7)],
        vec![th(1, 6, 2), th(-1, 6, 8)],
        vec![th(-1, 6, 2), th(-1, 6, 8)],
    ];
    let t = vec![phase(0, 0, -1, 24), phase(1, 2, 1, 3), phase(2, 1, 1, 3)];
    let s = vec![real(0, 1, Radical::ONE), real(1, 0, Radical::ONE), real(2, 2, Radical::int(-1))];
    let one = Radical::ONE;
    let mut lift = Lift { level: 6, terms: Vec::new() };
    lift.push_pair(1, &[(0, one)], 1);
    lift.push_pair(5, &[(0, one)], -1);
    lift.push_pair(2, &[(2, one), (1, one.neg())], 1);
    lift.push_pair(4, &[(1, one), (2, one)], -1);
    CompletionFamily {
        label: FamilyLabel::Order3b,
        components,
        t_matrix: t,
        s_matrix: s,
        s_scale: Radical::ONE,
        shadow: Some(Shadow { g, g_const: Radical::new(1, 3, 3), xi_const: Radical::new(1, 3, 6) }),
        lift: Some(lift),
    }
}

fn order5_matrices() -> (Vec<Entry>, Vec<Entry>) {
    let t = vec![phase(0, 0, -1, 60), phase(1, 1, 11, 60), phase(2, 4, -1, 240), phase(3, 5, 71, 240), phase(4, 2, -1, 240), phase(5, 3, 71, 240)];
    let s2 = r2();
    let h = Radical::new(1, 2, 2);
    let s = vec![
        sine(0, 2, s2, 1, 5),
        sine(0, 3, s2, 2, 5),
        sine(1, 2, s2, 2, 5),
        sine(1, 3, s2.neg(), 1, 5),
        sine(2, 0, h, 1, 5),
        sine(2, 1, h, 2, 5),
        sine(3, 0, h, 2, 5),
        sine(3, 1, h.neg(), 1, 5),
        sine(4, 4, Radical::ONE, 2, 5),
        sine(4, 5, Radical::ONE, 1, 5),
        sine(5, 4, Radical::ONE, 1, 5),
        // the level-60 lift forces the minus sign here
        sine(5, 5, Radical::int(-1), 2, 5),
    ];
    (t, s)
}

/// Lift to level 60 with components ordered `(f_4, f_196, f_1, f_169, g_1, g_169)`.
fn order5_lift() -> Lift {
    let mut l = Lift { level: 60, terms: Vec::new() };
    let one = Radical::ONE;
    let gcd60 = |r: i64| gcd(r, 60);
    for r in 1..60i64 {
        let a = if r < 30 { 1 } else { -1 };
        let b = if [1, 13, 47, 59].contains(&r) { 1 } else { -1 };
        let m = r % 10;
        match (m, gcd60(r)) {
            (1 | 9, 1) => l.push_pair(r, &[(2, Radical::int(a)), (4, Radical::int(b))], 1),
            (2 | 8, 2) => l.push_pair(r, &[(0, one)], -1),
            (3 | 7, 1) => l.push_pair(r, &[(3, Radical::int(a)), (5, Radical::int(b))], 1),
            (4 | 6, 2) => l.push_pair(r, &[(1, one)], -1),
            _ => {}
        }
    }
    l
}

fn order5(j: u8) -> CompletionFamily {
    let components = if j == 1 {
        vec![
            comp("f0_5", Radical::ONE, (-1, 60), Q),
            comp("f1_5", Radical::ONE, (11, 60), Q),
            Component { offset: -1, ..comp("F0_5", Radical::ONE, (-1, 240), HP) },
            comp("F1_5", Radical::ONE, (71, 240), HP),
            Component { offset: -1, ..comp("F0_5", Radical::ONE, (-1, 240), HM) },
            comp("F1_5", Radical::ONE, (71, 240), HM),
        ]
    } else {
        vec![
            comp("psi0_5", Radical::int(2), (-1, 60), Q),
            comp("psi1_5", Radical::int(2), (11, 60), Q),
            comp("phi0_5", Radical::ONE, (-1, 240), HM),
            comp("phi1_5", Radical::int(-1), (-49, 240), HM),
            comp("phi0_5", Radical::ONE, (-1, 240), HP),
            comp("phi1_5", Radical::ONE, (-49, 240), HP),
        ]
    };
    let (t, s) = order5_matrices();
    CompletionFamily {
        label: if j == 1 { FamilyLabel::Order5_1 } else { FamilyLabel::Order5_2 },
        components,
        t_matrix: t,
        s_matrix: s,
        s_scale: Radical::new(2, 5, 5),
        shadow: None,
        lift: Some(order5_lift()),
    }
}

/// Components ordered `(f_1, f_121, f_25)`.
fn order7() -> CompletionFamily {
    let components = vec![
        comp("F0_7", Radical::ONE, (-1, 168), Q),
        comp("F2_7", Radical::ONE, (47, 168), Q),
        comp("F1_7", Radical::ONE, (-25, 168), Q),
    ];
    let t = vec![phase(0, 0, -1, 168), phase(1, 1, 47, 168), phase(2, 2, -25, 168)];
    let one = Radical::ONE;
    let s = vec![
        sine(0, 0, one, 1, 7),
        sine(0, 1, one, 3, 7),
        sine(0, 2, one, 2, 7),
        sine(1, 0, one, 3, 7),
        sine(1, 1, one.neg(), 2, 7),
        sine(1, 2, one, 1, 7),
        sine(2, 0, one, 2, 7),
        sine(2, 1, one, 1, 7),
        sine(2, 2, one.neg(), 3, 7),
    ];
    let mut lift = Lift { level: 42, terms: Vec::new() };
    lift.push_pair(1, &[(0, one)], 1);
    lift.push_pair(41, &[(0, one)], 1);
    for r in 2..=40i64 {
        let c = match (r * r) % 168 {
            1 => 0,
            121 => 1,
            25 => 2,
            _ => continue,
        };
        lift.push_pair(r, &[(c, one)], -1);
    }
    CompletionFamily {
        label: FamilyLabel::Order7,
        components,
        t_matrix: t,
        s_matrix: s,
        s_scale: Radical::new(2, 7, 7),
        shadow: None,
        lift: Some(lift),
    }
}

fn order8() -> CompletionFamily {
    let s2 = r2();
    let s8 = Radical::sqrt(8);
    let components = vec![
        comp("V0_8", Radical::ONE, (0, 1), HP),
        comp("V0_8", Radical::ONE, (0, 1), HM),
        comp("V1_8", s8, (-1, 8), HP),
        comp("V1_8", s8, (-1, 8), HM),
        comp("S0_8", s2, (-1, 32), HP),
        comp("S0_8", s2, (-1, 32), HM),
        comp("S1_8", s2, (7, 32), HP),
        comp("S1_8", s2, (7, 32), HM),
        comp("T0_8", s8, (-1, 32), HP),
        comp("T0_8", s8, (-1, 32), HM),
        comp("T1_8", s8, (7, 32), HP),
        comp("T1_8", s8, (7, 32), HM),
    ];
    let g = vec![
        vec![thr(s2, 8, 4)],
        vec![thr(s2.neg(), 8, 4)],
        vec![th(1, 8, 2), th(1, 8, 6)],
        vec![th(1, 8, 2), th(1, 8, 6)],
        vec![th(-1, 8, 1), th(1, 8, 7)],
        vec![th(-1, 8, 1), th(-1, 8, 7)],
        vec![th(1, 8, 3), th(-1, 8, 5)],
        vec![th(-1, 8, 3), th(-1, 8, 5)],
        vec![th(1, 8, 1), th(-1, 8, 7)],
        vec![th(1, 8, 1), th(1, 8, 7)],
        vec![th(-1, 8, 3), th(1, 8, 5)],
        vec![th(1, 8, 3), th(1, 8, 5)],
    ];
    let t = vec![
        phase(0, 1, 0, 1),
        phase(1, 0, 0, 1),
        phase(2, 3, -1, 8),
        phase(3, 2, -1, 8),
        phase(4, 5, -1, 32),
        phase(5, 4, -1, 32),
        phase(6, 7, 7, 32),
        phase(7, 6, 7, 32),
        phase(8, 9, -1, 32),
        phase(9, 8, -1, 32),
        phase(10, 11, 7, 32),
        phase(11, 10, 7, 32),
    ];
    let h = Radical::new(1, 2, 2);
    let one = Radical::ONE;
    // sqrt(2 -+ sqrt 2)/2 = sin(pi/8), sin(3 pi/8)
    let s = vec![
        real(0, 4, h),
        real(0, 6, h),
        real(1, 8, h),
        real(1, 10, h),
        real(2, 4, h),
        real(2, 6, h.neg()),
        real(3, 8, h.neg()),
        real(3, 10, h),
        real(4, 0, h),
        real(4, 2, h),
        sine(5, 9, one, 1, 8),
        sine(5, 11, one, 3, 8),
        real(6, 0, h),
        real(6, 2, h.neg()),
        sine(7, 9, one, 3, 8),
        sine(7, 11, one.neg(), 1, 8),
        real(8, 1, h),
        real(8, 3, h.neg()),
        sine(9, 5, one, 1, 8),
        sine(9, 7, one, 3, 8),
        real(10, 1, h),
        real(10, 3, h),
        sine(11, 5, one, 3, 8),
        sine(11, 7, one.neg(), 1, 8),
    ];
    CompletionFamily {
        label: FamilyLabel::Order8,
        components,
        t_matrix: t,
        s_matrix: s,
        s_scale: Radical::ONE,
        shadow: Some(Shadow { g, g_const: Radical::new(1, 8, 8), xi_const: Radical::new(1, 2, 1) }),
        lift: None,
    }
}

fn order10() -> CompletionFamily {
    let components = vec![
        comp("phi10", Radical::ONE, (1, 10), HP),
        comp("psi10", Radical::ONE, (-1, 10), HP),
        comp("phi10", Radical::ONE, (1, 10), HM),
        comp("psi10", Radical::ONE, (-1, 10), HM),
        comp("X10", Radical::ONE, (-1, 40), Q),
        comp("chi10", Radical::ONE, (-9, 40), Q),
    ];
    let t = vec![phase(0, 2, 1, 10), phase(1, 3, -1, 10), phase(2, 0, 1, 10), phase(3, 1, -1, 10), phase(4, 4, -1, 40), phase(5, 5, -9, 40)];
    let one = Radical::ONE;
    let s = vec![
        sine(0, 4, one, 2, 5),
        sine(0, 5, one.neg(), 1, 5),
        sine(1, 4, one, 1, 5),
        sine(1, 5, one, 2, 5),
        sine(2, 2, one, 2, 5),
        sine(2, 3, one, 1, 5),
        sine(3, 2, one, 1, 5),
        sine(3, 3, one.neg(), 2, 5),
        sine(4, 0, one, 2, 5),
        sine(4, 1, one, 1, 5),
        sine(5, 0, one.neg(), 1, 5),
        sine(5, 1, one, 2, 5),
    ];
    let mut lift = Lift { level: 10, terms: Vec::new() };
    lift.push_pair(6, &[(0, one), (2, one)], -1);
    lift.push_pair(4, &[(0, one), (2, one.neg())], -1);
    lift.push_pair(2, &[(1, one), (3, one)], -1);
    lift.push_pair(8, &[(1, one), (3, one.neg())], -1);
    lift.push_pair(1, &[(4, one)], 1);
    lift.push_pair(9, &[(4, one)], -1);
    lift.push_pair(3, &[(5, one)], 1);
    lift.push_pair(7, &[(5, one)], -1);
    CompletionFamily {
        label: FamilyLabel::Order10,
        components,
        t_matrix: t,
        s_matrix: s,
        s_scale: Radical::new(2, 5, 5),
        shadow: None,
        lift: Some(lift),
    }
}

pub fn family(label: FamilyLabel) -> CompletionFamily {
    match label {
        FamilyLabel::Order2 => order2(),
        FamilyLabel::Order3a => order3a(),
        FamilyLabel::Order3b => order3b(),
        FamilyLabel::Order5_1 => order5(1),
        FamilyLabel::Order5_2 => order5(2),
        FamilyLabel::Order6_1 => order6(1),
        FamilyLabel::Order6_2 => order6(2),
        FamilyLabel::Order7 => order7(),
        FamilyLabel::Order8 => order8(),
        FamilyLabel::Order10 => order10(),
    }
}
