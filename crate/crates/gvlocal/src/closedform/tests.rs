use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::qseries::coeff_ratio;
use crate::vertex::{run_with_plan, top_degree, Pipeline};

fn e(n: i64) -> HalfExp {
    HalfExp::int(n)
}

fn c(n: i64) -> ExactCoeff {
    coeff_int(n)
}

fn ints(v: &[i64]) -> Vec<ExactCoeff> {
    v.iter().map(|&x| c(x)).collect()
}

fn pipeline(dmax: u32) -> Pipeline {
    run_with_plan(verification_plan(dmax, 2)).unwrap()
}

/// `M_δ(d)` as frozen polynomials: `(α (d^2+3d) + β)`.
fn m_table(delta: usize, d: i64) -> ExactCoeff {
    let x = c(d * d + 3 * d);
    let (a, b): (ExactCoeff, ExactCoeff) = match delta {
        0 => (coeff_ratio(1, 2), c(1)),
        1 => (coeff_ratio(1, 2), c(-2)),
        2 => (coeff_ratio(3, 2), c(-9)),
        3 => (c(3), c(-24)),
        4 => (c(6), c(-66)),
        5 => (coeff_ratio(21, 2), c(-144)),
        6 => (c(20), c(-320)),
        7 => (coeff_ratio(67, 2), c(-626)),
        8 => (coeff_ratio(117, 2), c(-1233)),
        _ => unreachable!(),
    };
    a * x + b
}

#[test]
fn mdelta_series_matches_the_table() {
    let m = mdelta_series(8);
    for (delta, p) in m.iter().enumerate() {
        for d in -3..15 {
            assert_eq!(p.eval(d), m_table(delta, d), "M_{delta}({d})");
        }
    }
    assert_eq!(m[5].eval(6), coeff_ratio(21 * 54, 2) - c(144));
}

#[test]
fn poly_in_d_binomial_form() {
    let m = mdelta_series(4);
    // M_0 = C(d+2, 2)
    assert_eq!(m[0].binomial_form(0), Some((c(1), c(0))));
    assert_eq!(PolyInD::binom2(2).eval(4), c(15));
    assert_eq!(PolyInD::binom2(0).eval(5), c(10));
    // 3(d^2+3d) - 24 = 6 C(d+2, 2) - 30
    assert_eq!(m[3].binomial_form(0), Some((c(6), c(-30))));
    // a linear term that does not fit C(d+2-j, 2)
    assert_eq!(PolyInD::new(c(0), c(1), c(0)).binomial_form(0), None);
    let p = PolyInD::new(c(1), c(2), c(3));
    assert_eq!(p.add(&p).sub(&p), p);
    assert!(p.sub(&p).is_zero());
}

#[test]
fn w_small_degrees() {
    let f = e(-12);
    assert_eq!(wd_direct(0, f), DescSeries::one().limit_floor(f));
    let w1 = inv_one_minus_sq(f).scale(&c(3));
    assert_eq!(wd_direct(1, f), w1);
    // the constant term of both sides at d = 4
    let f4 = e(-4);
    assert_eq!(wd_direct(4, f4).coeff(e(0)).unwrap(), c(15));
    assert_eq!(wd_closed(4, f4).coeff(e(0)).unwrap(), c(15));
    assert_eq!(wd_closed(0, e(0)), DescSeries::one().limit_floor(e(0)));
}

#[test]
fn w_tilde_is_symmetric() {
    let f = e(-15);
    for m in 0..5 {
        for n in 0..5 {
            assert_eq!(w_tilde(m, n, f), w_tilde(n, m, f), "({m}), ({n})");
        }
    }
}

#[test]
fn tx_operator() {
    let f = e(-10);
    // T^x_m Σ_j x^j q^{-ij}, j ≥ 1 = (1 - q^{-im}) q^{-i}/(1 - q^{-i})
    for i in 1..4i64 {
        for m in 0..5usize {
            let coeffs: Vec<DescSeries> = (0..=m as i64)
                .map(|j| if j == 0 { DescSeries::zero() } else { DescSeries::monomial(e(-i * j), c(1)) })
                .collect();
            let want = geometric(e(-i), f)
                .mul_series(&DescSeries::poly_int(&[(0, 1), (-i * m as i64, -1)]))
                .shift(e(-i))
                .limit_floor(f);
            assert_eq!(tx(&coeffs, m).unwrap().limit_floor(f), want);
        }
    }
    let a = vec![DescSeries::constant(c(7)), DescSeries::constant(c(2))];
    assert_eq!(tx(&a, 0).unwrap(), DescSeries::constant(c(7)));
    assert_eq!(tx(&a, 2), Err(ClosedFormError::XOrder { need: 2, have: 1 }));
}

#[test]
fn inv_poch_x_matches_euler() {
    // x^n coefficient of 1/(x q^a; q^{-1})_∞ is q^{an}/[n]!
    let f = e(-20);
    for a in [-1i64, -2, -4] {
        let xs = inv_poch_x(a, 5, f);
        for (n, s) in xs.iter().enumerate() {
            let sh = e(a * n as i64);
            let want = if sh >= f {
                inv_q_factorial(n as u32, f - sh).shift(sh)
            } else {
                DescSeries::zero_to(f)
            };
            assert_eq!(*s, want.limit_floor(f), "a = {a}, n = {n}");
        }
    }
}

#[test]
fn tx_ratio_at_order_zero() {
    // T^x_0 keeps (q^{-a-1}; q^{-1})_∞ - 1
    let f = e(-15);
    for a in 0..4u32 {
        let poch =
            pochhammer(&DescSeries::monomial(e(-(a as i64) - 1), c(1)), PochLen::Infinite, f).unwrap();
        assert_eq!(tx_ratio(a, 0, f), poch.sub_series(&DescSeries::one()).limit_floor(f));
    }
}

#[test]
fn mdelta2_examples() {
    // δ = d - 1 at d = 6: M_5(6) - 3 C(7, 2)
    let s = mdelta2_series(6, 7);
    assert_eq!(s.coeff(5), c(360));
    let m = mdelta_series(7);
    for delta in 0..5 {
        assert_eq!(s.coeff(delta), m[delta as usize].eval(6));
    }
    assert_eq!(s.order(), 7);
    assert_eq!(s.coeffs().len(), 8);
}

#[test]
fn rel_hilbert_low_coefficients() {
    for d in 3..9u32 {
        let r = rel_hilbert_prediction(d, 2);
        let b = c(((d + 2) * (d + 1) / 2) as i64);
        assert_eq!(r.coeff(0), b);
        assert_eq!(r.coeff(1), b * c(3) - c(3));
    }
}

#[test]
fn ndelta_small_cases() {
    for d in 2..12i64 {
        assert_eq!(ndelta_poly(0, d), coeff_ratio(d * d + 3 * d + 2, 2));
        if d >= 3 {
            assert_eq!(ndelta_poly(1, d), coeff_ratio(d * (d - 1) * (d * d + d - 3), 2));
        }
        if d >= 4 {
            let p = (d - 1) * (d.pow(5) - 2 * d.pow(4) - 6 * d.pow(3) + 9 * d * d + 36);
            assert_eq!(ndelta_poly(2, d), coeff_ratio(p, 4));
        }
    }
}

#[test]
fn t_and_q_series() {
    // q/(1-q)^2 = Σ n q^n; its inverse has signed Catalan coefficients
    assert_eq!(asc::coeffs(&t_of_q(6), 6), ints(&[0, 1, 2, 3, 4, 5, 6]));
    assert_eq!(asc::coeffs(&q_of_t(6), 6), ints(&[0, 1, -2, 5, -14, 42, -132]));
    // pointwise: q = 1/2 gives t = 2, and (1 + 4 - 3)/4 = 1/2
    let t = coeff_ratio(1, 2) / (c(1) - coeff_ratio(1, 2)).pow(2);
    assert_eq!(t, c(2));
    assert_eq!((c(1) + c(2) * &t - c(3)) / (c(2) * &t), coeff_ratio(1, 2));
}

#[test]
fn kkv_numbers() {
    assert_eq!(hilbert_p2(4), [1, 3, 9, 22, 51].map(BigInt::from).to_vec());
    let e0 = &e_j_poly(0)[0];
    assert_eq!(e0.eval(5), c(21));
    for g in 0..10 {
        assert_eq!(b_coeff(g, 0), c(1));
        assert_eq!(b_coeff(g, 1), c(2 * (g - 1)));
        assert_eq!(b_coeff_binomial(g, 1), BigInt::from(2 * g - 3 + 1));
    }
    assert_eq!(kkv_series(4, 3).coeffs(), ints(&[15, 42, 117, 264]));
}

#[test]
fn quasimodular_series() {
    assert_eq!(g2_plain(5).coeffs(), ints(&[0, 1, 3, 4, 7, 6]));
    assert_eq!(g2_eisenstein(2).coeff(0), coeff_ratio(-1, 24));
    assert_eq!(dg2(4).coeffs(), ints(&[0, 1, 6, 12, 28]));
    let d = inv_delta(4);
    assert_eq!(d.series.top(), Some(e(1)));
    let want = [1, 24, 324, 3200, 25650, 176256];
    for (k, w) in want.iter().enumerate() {
        assert_eq!(d.series.coeff(e(1 - k as i64)).unwrap(), c(*w));
    }
}

#[test]
fn correction_table_examples() {
    assert_eq!(correction_table_value(0, 5), Some(c(60)));
    assert_eq!(correction_table_value(1, 6), Some(c(162)));
    assert_eq!(correction_table_value(2, 6), Some(c(270)));
    assert_eq!(correction_table_value(5, 8), Some(c(-1302)));
    assert_eq!(correction_table_value(6, 8), None);
    assert_eq!(correction_observed_value(0, 5), Some(c(-60)));
}

#[test]
fn correction_extract_from_vertex() {
    let p = pipeline(8);
    assert_eq!(correction_extract(2, p.table(5)).unwrap(), vec![c(-60)]);
    assert_eq!(correction_extract(2, p.table(7)).unwrap()[..2], [c(-126), c(-234)]);
    assert!(correction_extract(2, p.table(3)).unwrap().is_empty());
    assert_eq!(correction_extract(4, p.table(5)), Err(ClosedFormError::CorrectionOrder(4)));
    // the q^{3d-9} residue at d = 7, 8: -10 C(d-1, 2)
    assert_eq!(correction_extract(3, p.table(7)).unwrap()[0], c(-150));
    assert_eq!(correction_extract(3, p.table(8)).unwrap()[0], c(-210));
}

#[test]
fn first_instanton_and_the_product_term() {
    let p = pipeline(8);
    let f = e(-12);
    let i1 = -inv_one_minus_sq(f).shift(e(-1)).scale(&c(3));
    assert_eq!(p.instanton(1).limit_floor(f), i1.limit_floor(f));
    // normalised I(1)I(d-1) on q >= -2d+1
    for d in 3..=8u32 {
        let di = d as i64;
        let lhs = normalize(d, &p.instanton(1).mul_series(p.instanton(d - 1)));
        let fl = lhs.floor().unwrap();
        let rhs = i1id_formula(d, fl);
        assert_eq!(lhs.first_mismatch(&rhs, e(-2 * di + 1)).unwrap(), None, "d = {d}");
    }
}

#[test]
fn hook_sum_explains_degree_two() {
    let p = pipeline(3);
    let ni = normalize(2, p.instanton(2));
    let f = ni.floor().unwrap();
    let r = ni.sub_series(&wd_direct(2, f)).sub_series(&hook_triple_sum(2, f));
    assert!(r.is_zero());
    assert_eq!(top_degree(2), -1);
}

#[test]
fn registry_names_and_errors() {
    let names = identity_names();
    for n in ["q-binomial", "E1", "E2", "Wd-closed", "Mdelta", "Mdelta2", "MinE", "SumIdentity", "Fd2", "C_{d,2}-table"] {
        assert!(names.contains(&n), "{n}");
    }
    let ctx = VerifyContext::new(3);
    assert_eq!(run_identity("nope", &ctx), Err(ClosedFormError::UnknownIdentity("nope".into())));
    assert!(identity_suite("E1", 15).unwrap());
    assert!(identity_suite("q-binomial", 20).unwrap());
}

#[test]
fn pure_identities_pass() {
    let ctx = VerifyContext::new(10);
    let names: Vec<String> = [
        "q-binomial", "euler-e", "euler-h", "msum1", "msum2", "E1", "E2", "leading", "wbwc", "double-sum",
        "binomial-sum", "I2aa", "I2b", "Wd-closed", "MinE", "SumIdentity", "P2Case", "t-q-inverse", "M&n", "NEC",
        "NdeltaGen", "KKVPred-binomial", "G2", "DG2", "inv-delta",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for r in run_identities(&names, &ctx).unwrap() {
        assert_eq!(r.status, Status::Pass, "{}: {}", r.name, r.detail);
    }
}

#[test]
fn vertex_identities() {
    let ctx = VerifyContext::new(8);
    let all: Vec<String> = identity_names().iter().map(|s| s.to_string()).collect();
    for r in run_identities(&all, &ctx).unwrap() {
        match r.name {
            // stated forms that the vertex data contradicts
            "degreeofId2" | "C_{d,2}-table" => assert_eq!(r.status, Status::Fail, "{}", r.name),
            _ => assert_eq!(r.status, Status::Pass, "{}: {}", r.name, r.detail),
        }
    }
}

#[test]
fn vacuous_windows_are_skipped() {
    let ctx = VerifyContext::new(1);
    for name in ["Fd2", "Mdelta", "Mdelta2", "I1Id", "C_{d,2}-table"] {
        let r = run_identity(name, &ctx).unwrap();
        assert_eq!(r.status, Status::Skipped, "{name}");
    }
    assert_eq!(run_identity("Id2", &ctx).unwrap().status, Status::Pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sum_identity_any_m(m in -30i64..60) {
        let (l, r) = sum_identity_sides(m, 12);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn t_q_change_round_trips(v in proptest::collection::vec(-50i64..50, 1..12)) {
        let order = v.len() as u32 - 1;
        let s = asc::from_coeffs(&ints(&v));
        let there = t_q_change(TqDirection::QToT, &s, order);
        let back = t_q_change(TqDirection::TToQ, &there, order);
        prop_assert_eq!(back, s);
    }

    #[test]
    fn poly_in_d_is_linear(a in -20i64..20, b in -20i64..20, x in -30i64..30) {
        let p = PolyInD::binom2(a);
        let q = PolyInD::binom2(b);
        prop_assert_eq!(p.add(&q).eval(x), p.eval(x) + q.eval(x));
        prop_assert_eq!(p.eval(x), c((x + a) * (x + a - 1) / 2));
    }

    #[test]
    fn b_coeff_forms_agree(g in 0i64..30, k in 0i64..14) {
        prop_assert_eq!(b_coeff(g, k), big(b_coeff_binomial(g, k)));
    }
}

#[test]
fn zero_series_helpers() {
    assert!(divisor_series(1, e(-6)).sub_series(&lambert_tau(e(-6))).is_zero());
    assert_eq!(ndelta_series(5, 3).coeff(e(0)).unwrap(), c(21));
    assert!(ExactCoeff::zero().is_zero());
}
