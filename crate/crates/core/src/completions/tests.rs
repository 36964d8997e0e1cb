use super::*;
use rug::Rational;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(30)
}

fn tau(u: f64, v: f64, c: &PrecisionContext) -> BigComplex {
    BigComplex::from_f64(u, v, c)
}

const SHADOWED: [FamilyLabel; 6] =
    [FamilyLabel::Order2, FamilyLabel::Order3a, FamilyLabel::Order3b, FamilyLabel::Order6_1, FamilyLabel::Order6_2, FamilyLabel::Order8];

#[test]
fn radical_normalizes() {
    assert_eq!(Radical::sqrt(8), Radical { num: 2, den: 1, rad: 2 });
    assert_eq!(Radical::sqrt(2).mul(&Radical::sqrt(8)).to_rational(), Some(Rational::from(4)));
    assert_eq!(Radical::new(1, 1, 24).recip_sqrt_form(), Radical::new(1, 12, 6));
    assert_eq!(Radical::new(3, -6, 1), Radical { num: -1, den: 2, rad: 1 });
}

#[test]
fn xi_constant_is_sqrt2_times_g_constant() {
    let c = ctx();
    for l in SHADOWED {
        let sh = family(l).shadow.unwrap();
        let lhs = sh.xi_const.value(&c);
        let rhs = sh.g_const.value(&c) * c.float(2).sqrt();
        assert!((lhs - rhs).abs() < 1e-28, "{l}");
    }
}

#[test]
fn s_matrices_square_to_identity_and_orthogonality() {
    let c = ctx();
    for l in FamilyLabel::ALL {
        let f = family(l);
        let a = f.s_numeric(&c);
        let d = f.dim();
        for i in 0..d {
            for j in 0..d {
                let mut sq = BigComplex::zero(&c);
                let mut gram = BigComplex::zero(&c);
                for k in 0..d {
                    sq += &a[i][k] * &a[k][j];
                    gram += &a[i][k] * &a[j][k];
                }
                let id = if i == j { 1.0 } else { 0.0 };
                assert!((sq.re.to_f64() - id).abs() < 1e-25 && sq.im.to_f64().abs() < 1e-25, "{l} S^2 at ({i},{j})");
                if !matches!(l, FamilyLabel::Order5_1 | FamilyLabel::Order5_2) {
                    assert!((gram.re.to_f64() - id).abs() < 1e-25, "{l} S S^t at ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn order5_s_rows_are_not_unit() {
    // (2/sqrt 5) M has row norms^2 2 and 1/2 in the first four rows
    let c = ctx();
    let a = family(FamilyLabel::Order5_1).s_numeric(&c);
    let n0: f64 = a[0].iter().map(|x| x.norm_sqr().to_f64()).sum();
    let n2: f64 = a[2].iter().map(|x| x.norm_sqr().to_f64()).sum();
    assert!((n0 - 2.0).abs() < 1e-12 && (n2 - 0.5).abs() < 1e-12);
}

#[test]
fn t_matrices_are_unitary_monomial() {
    let c = ctx();
    for l in FamilyLabel::ALL {
        let f = family(l);
        let mut seen = vec![0; f.dim()];
        for e in &f.t_matrix {
            seen[e.row] += 1;
            assert!((e.value(&c).abs().to_f64() - 1.0).abs() < 1e-25);
        }
        assert!(seen.iter().all(|&k| k == 1), "{l}");
    }
}

#[test]
fn order6_t_powers() {
    let c = ctx();
    let t = family(FamilyLabel::Order6_1).t_numeric(&c);
    let mut p: Vec<Vec<BigComplex>> = (0..6).map(|i| (0..6).map(|j| if i == j { BigComplex::one(&c) } else { BigComplex::zero(&c) }).collect()).collect();
    for k in 1..=48 {
        p = (0..6).map(|i| (0..6).map(|j| (0..6).fold(BigComplex::zero(&c), |acc, k| &acc + &(&p[i][k] * &t[k][j]))).collect()).collect();
        if k % 24 == 0 {
            // T^24 = diag(1, 1, -1, -1, -1, -1), T^48 = 1
            for i in 0..6 {
                for j in 0..6 {
                    let want = if i != j { 0.0 } else if k == 24 && i >= 2 { -1.0 } else { 1.0 };
                    assert!((p[i][j].re.to_f64() - want).abs() < 1e-25 && p[i][j].im.to_f64().abs() < 1e-25, "T^{k} ({i},{j}) = {}", p[i][j]);
                }
            }
        }
    }
    let fam = family(FamilyLabel::Order6_1);
    let z = tau(0.2, 0.9, &c);
    let h = eval_h(&fam, &z, &c).unwrap();
    let h24 = eval_h(&fam, &(&z + &BigComplex::from_f64(24.0, 0.0, &c)), &c).unwrap();
    assert!(max_dist(&h24, &mat_vec(&p24(&c), &h, &c)) < 1e-25);
}

fn p24(c: &PrecisionContext) -> Vec<Vec<BigComplex>> {
    (0..6).map(|i| (0..6).map(|j| if i != j { BigComplex::zero(c) } else { BigComplex::one(c).scale_i64(if i >= 2 { -1 } else { 1 }) }).collect()).collect()
}

#[test]
fn order6_component0_at_2i() {
    let c = ctx();
    let z = tau(0.0, 2.0, &c);
    let f = eval_f(&family(FamilyLabel::Order6_1), &z, &c).unwrap();
    let q = e_of(&z, &c).unwrap();
    let sigma = lookup(&SeriesId::parse("sigma6").unwrap()).unwrap().eval(&q, &c).unwrap();
    let want = (&e_of(&z.div_i64(-12), &c).unwrap() * &sigma).scale(&c.float(8).sqrt());
    assert!((&f[0] - &want).abs() < 1e-28);
}

#[test]
fn order6_component3_is_shifted_component2() {
    let c = ctx();
    let fam = family(FamilyLabel::Order6_1);
    let z = tau(0.1, 0.9, &c);
    let a = eval_f(&fam, &z, &c).unwrap();
    let b = eval_f(&fam, &(&z + &BigComplex::one(&c)), &c).unwrap();
    assert!((&b[2] - &(&e_rational(-1, 48, &c) * &a[3])).abs() < 1e-25);
}

#[test]
fn shadow_examples() {
    let c = ctx();
    let z = tau(0.2, 0.7, &c);
    let g6 = eval_shadow(&family(FamilyLabel::Order6_1), &z, &c).unwrap();
    let th = theta_eval(12, 6, &z, &c).unwrap().scale_i64(2);
    assert!((&g6[1] - &th).abs() < 1e-28);
    let g2 = eval_shadow(&family(FamilyLabel::Order2), &z, &c).unwrap();
    assert!((&g2[2] + &g2[3]).abs() < 1e-28);
    let g8 = eval_shadow(&family(FamilyLabel::Order8), &z, &c).unwrap();
    assert!((&g8[4] + &g8[8]).abs() < 1e-28);
    assert_eq!(eval_shadow(&family(FamilyLabel::Order7), &z, &c).unwrap_err(), CompletionError::NoShadow(FamilyLabel::Order7));
}

#[test]
fn shadow_expansion_matches_numeric() {
    let c = ctx();
    let fam = family(FamilyLabel::Order6_1);
    let z = tau(0.0, 1.0, &c);
    let ex = shadow_expansion(&fam, 40).unwrap();
    let num = eval_shadow(&fam, &z, &c).unwrap();
    for ((rad, s), g) in ex.iter().zip(&num) {
        let v = s.eval(&z, &c).unwrap().scale(&c.float(*rad).sqrt());
        assert!((&v - g).abs() < 1e-25);
    }
}

#[test]
fn g_closed_form_matches_quadrature_order6() {
    let c = ctx();
    let fam = family(FamilyLabel::Order6_1);
    for (u, v) in [(0.0, 1.0 / 3.0), (0.2, 0.5), (-2.0 / 7.0, 2.0)] {
        let z = tau(u, v, &c);
        let a = eval_g_closedform(&fam, &z, &c).unwrap();
        let b = eval_g_quadrature(&fam, &z, &c).unwrap();
        assert!(max_dist(&a, &b) < 1e-25, "tau = {u} + {v}i");
    }
}

#[test]
fn g_decays_high_in_the_half_plane() {
    // slowest term n = 1, N = 12: exp(-pi v/24) times erfcx decay
    let c = ctx();
    let fam = family(FamilyLabel::Order6_1);
    let mut prev = f64::INFINITY;
    for v in [10.0, 50.0, 100.0] {
        let g = eval_g_closedform(&fam, &tau(0.3, v, &c), &c).unwrap();
        let worst = g.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max);
        assert!(worst < (-std::f64::consts::PI * v / 24.0).exp() && worst < prev);
        prev = worst;
    }
}

#[test]
fn transforms_of_h() {
    let c = ctx();
    for l in SHADOWED {
        let fam = family(l);
        let z = tau(1.0 / 7.0, 0.8, &c);
        for g in [Generator::T, Generator::S] {
            let r = check_transform(&fam, g, &z, &c).unwrap();
            assert!(r < 1e-25, "{l} {}: {}", g.as_str(), r.to_f64());
        }
        assert_eq!(check_transform(&fam, Generator::Identity, &z, &c).unwrap(), 0);
    }
}

#[test]
fn t_law_of_holomorphic_vectors_without_shadow() {
    let c = ctx();
    for l in [FamilyLabel::Order5_1, FamilyLabel::Order5_2, FamilyLabel::Order7, FamilyLabel::Order10] {
        let fam = family(l);
        let r = check_transform(&fam, Generator::T, &tau(0.3, 0.7, &c), &c).unwrap();
        assert!(r < 1e-25, "{l}");
        assert!(matches!(check_transform(&fam, Generator::S, &tau(0.3, 0.7, &c), &c), Err(CompletionError::NoShadow(_))));
    }
}

#[test]
fn xi_images() {
    let c = ctx();
    for l in [FamilyLabel::Order6_1, FamilyLabel::Order2] {
        let rel = xi_relative_error(&family(l), &tau(0.0, 1.0, &c), &c).unwrap();
        assert!(rel < 1e-6, "{l}: {rel}");
    }
}

#[test]
fn xi_of_holomorphic_part_vanishes() {
    let c = ctx();
    let fam = family(FamilyLabel::Order6_1);
    let x = xi_fd_of(|t| eval_f(&fam, t, &c), &tau(0.1, 1.0, &c), XI_STEP, &c).unwrap();
    assert!(x.iter().all(|v| v.abs() < 1e-10));
}

#[test]
fn theta_is_harmonic_in_weight_three_halves() {
    let c = ctx();
    let z = tau(0.1, 1.0, &c);
    let d = laplacian_fd_of(|t| Ok(vec![theta_eval(12, 2, t, &c)?]), 1.5, &z, LAPLACE_STEP, &c).unwrap();
    assert!(d[0].abs() < 1e-6);
}

#[test]
fn mordell_identity_and_dominance() {
    let c = ctx();
    for (re, im) in [(0.7, 0.0), (1.3, 0.8), (2.0, -1.5)] {
        let a = BigComplex::from_f64(re, im, &c);
        let j1 = mordell(MordellKind::J1, &a, &c).unwrap();
        let rhs = &mordell(MordellKind::J, &a, &c).unwrap().div_i64(2) + &mordell(MordellKind::J, &a.div_i64(9), &c).unwrap().div_i64(6);
        assert!((&j1 - &rhs).abs() < 1e-25);
    }
    let one = BigComplex::one(&c);
    assert!(mordell(MordellKind::K1, &one, &c).unwrap().re < mordell(MordellKind::K, &one, &c).unwrap().re);
    let direct = mordell_direct(MordellKind::J, &one, &c).unwrap();
    assert!((&direct - &mordell(MordellKind::J, &one, &c).unwrap()).abs() < 1e-28);
}

#[test]
fn r6_methods_agree() {
    let c = ctx();
    for (u, v) in [(0.0, 1.0), (1.0 / 3.0, 0.5)] {
        let z = tau(u, v, &c);
        let a = eval_r6(&z, R6Method::Mordell, &c).unwrap();
        let b = eval_r6(&z, R6Method::ThetaIntegral, &c).unwrap();
        assert!(max_dist(&a, &b) < 1e-25, "{u} {v}: {}", max_dist(&a, &b).to_f64());
    }
}

#[test]
fn r6_is_the_s_defect_of_f_and_g() {
    let c = ctx();
    let z = tau(0.1, 1.1, &c);
    let r = eval_r6(&z, R6Method::Mordell, &c).unwrap();
    for j in [1, 2] {
        assert!(max_dist(&s_law_defect_r6(j, true, &z, &c).unwrap(), &r) < 1e-25, "F_{j}");
    }
    assert!(max_dist(&s_law_defect_r6(1, false, &z, &c).unwrap(), &r) < 1e-25);
}

#[test]
fn lift_coefficients_match_table() {
    let l = family(FamilyLabel::Order6_1).lift.unwrap();
    let at = |r: i64| -> Vec<(usize, i64)> { l.terms.iter().filter(|t| t.r == r).map(|t| (t.comp, t.coef.num)).collect() };
    assert_eq!(at(1), vec![(2, 1), (3, 1)]);
    assert_eq!(at(23), vec![(2, -1), (3, -1)]);
    for l in FamilyLabel::ALL.map(family) {
        let Some(lift) = l.lift else { continue };
        let m = 2 * lift.level as i64;
        for t in &lift.terms {
            let back = lift.terms.iter().filter(|s| s.r == (m - t.r) % m && s.comp == t.comp).map(|s| s.coef).collect::<Vec<_>>();
            assert_eq!(back, vec![t.coef.neg()]);
        }
    }
    assert!(family(FamilyLabel::Order2).lift().is_err());
}

#[test]
fn order5_sign_tables() {
    let l = family(FamilyLabel::Order5_1).lift.unwrap();
    let coef = |r: i64, comp: usize| l.terms.iter().find(|t| t.r == r && t.comp == comp).map(|t| t.coef.num);
    assert_eq!(coef(1, 2), Some(1));
    assert_eq!(coef(1, 4), Some(1));
    assert_eq!(coef(11, 4), Some(-1));
    assert_eq!(coef(13, 5), Some(1));
    assert_eq!(coef(31, 2), Some(-1));
    assert_eq!(coef(59, 4), Some(1));
}

#[test]
fn lift_intertwines_s_matrix() {
    // Lambda A = e(1/8) rhobar(S) Lambda for the lift matrix Lambda
    let c = ctx();
    for l in [FamilyLabel::Order3b, FamilyLabel::Order5_1, FamilyLabel::Order6_1, FamilyLabel::Order7, FamilyLabel::Order10] {
        let fam = family(l);
        let lift = fam.lift.clone().unwrap();
        let m = 2 * lift.level as usize;
        let d = fam.dim();
        let mut lam = vec![vec![BigComplex::zero(&c); d]; m];
        for t in &lift.terms {
            lam[t.r as usize][t.comp] += BigComplex::from_real(t.coef.value(&c));
        }
        let a = fam.s_numeric(&c);
        let s = crate::weil::rho_s(lift.level, true, &c);
        let z = e_rational(1, 8, &c);
        for col in 0..d {
            let x: Vec<BigComplex> = (0..m).map(|r| lam[r][col].clone()).collect();
            let rhs: Vec<BigComplex> = s.apply(&x).into_iter().map(|v| &z * &v).collect();
            let lhs: Vec<BigComplex> = (0..m).map(|r| (0..d).fold(BigComplex::zero(&c), |acc, k| &acc + &(&lam[r][k] * &a[k][col]))).collect();
            assert!(max_dist(&lhs, &rhs) < 1e-25, "{l} column {col}");
        }
    }
}

#[test]
fn lifts_transform_under_dual_weil() {
    let c = ctx();
    for l in [FamilyLabel::Order3b, FamilyLabel::Order6_1, FamilyLabel::Order6_2] {
        let r = lift_check(&family(l), &tau(0.13, 0.9, &c), &c).unwrap();
        assert!(r.t_residual < 1e-25 && r.s_residual < 1e-25, "{l}");
    }
}

#[test]
fn lift_t_law_on_expansions() {
    for l in [FamilyLabel::Order3b, FamilyLabel::Order5_1, FamilyLabel::Order5_2, FamilyLabel::Order6_1, FamilyLabel::Order6_2, FamilyLabel::Order7, FamilyLabel::Order10] {
        assert!(lift_t_defects(&family(l), 12).unwrap().is_empty(), "{l}");
    }
}

#[test]
fn order6_principal_part() {
    let pp = principal_part(&lift_expansion(&family(FamilyLabel::Order6_1), 4).unwrap());
    let want: Vec<(i64, i64)> = vec![(1, 2), (7, -2), (17, 2), (23, -2)];
    assert_eq!(pp.len(), 4);
    for (t, (r, c)) in pp.iter().zip(want) {
        assert_eq!(t.exponent, Rational::from((-1, 48)));
        assert_eq!((t.r, t.coeff.clone()), (r, Rational::from(c)));
    }
}

#[test]
fn order7_principal_part() {
    let pp = principal_part(&lift_expansion(&family(FamilyLabel::Order7), 3).unwrap());
    let got: Vec<(i64, i64)> = pp.iter().map(|t| (t.r, t.coeff.to_f64() as i64)).collect();
    assert!(pp.iter().all(|t| t.exponent == Rational::from((-1, 168))));
    assert_eq!(got, vec![(1, 1), (13, -1), (29, -1), (41, 1), (43, -1), (55, 1), (71, 1), (83, -1)]);
}

#[test]
fn positive_input_has_empty_principal_part() {
    let mut s = FourierExpansion::new(1, 10);
    s.set(3, Rational::from(5));
    assert!(principal_part(&[s]).is_empty());
}

#[test]
fn order8_relations_exact() {
    for (label, lhs, rhs) in order8_relation_series(7).unwrap() {
        let m = Rational::from((200, 32));
        assert_eq!(crate::qseries::verify_series_identity(&lhs, &rhs, &m).unwrap(), None, "{label}");
    }
}

#[test]
fn order8_u_identities_numerically() {
    let c = ctx();
    assert!(order8_u_residual(&tau(0.05, 0.8, &c), &c).unwrap() < 1e-25);
}

#[test]
fn sampling_is_reproducible() {
    let c = ctx();
    let a = sample_taus(7, 5, &c);
    let b = sample_taus(7, 5, &c);
    assert_eq!(a, b);
    assert!(a.iter().all(|t| t.im >= 0.6 && t.im <= 1.6 && t.re.clone().abs() <= 0.5));
}
