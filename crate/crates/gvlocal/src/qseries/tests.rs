use super::*;
use proptest::prelude::*;

fn e(n: i64) -> HalfExp {
    HalfExp::int(n)
}

fn h(d: i64) -> HalfExp {
    HalfExp::from_doubled(d)
}

#[test]
fn add_examples() {
    let a = DescSeries::poly_int(&[(1, 1), (0, 1)]);
    let b = DescSeries::poly_int(&[(1, -1)]);
    assert_eq!(&a + &b, DescSeries::one());
    assert_eq!(&a + &DescSeries::zero(), a);
    let r = DescSeries::monomial(h(1), coeff_int(1));
    assert_eq!(&r + &r, DescSeries::monomial(h(1), coeff_int(2)));
}

#[test]
fn mul_examples() {
    let f = e(-10);
    let g = geometric(e(-1), f);
    let prod = q_int(1).mul_series(&g);
    assert_eq!(prod, DescSeries::one().limit_floor(f));
    let r = DescSeries::monomial(h(1), coeff_int(1));
    assert_eq!(&r * &r, DescSeries::poly_int(&[(1, 1)]));
    let s = DescSeries::from_terms([(h(1), coeff_int(1)), (h(-1), coeff_int(-1))], None);
    assert_eq!(&s * &s, DescSeries::poly_int(&[(1, 1), (0, -2), (-1, 1)]));
}

#[test]
fn mul_floor_rule() {
    // a = q^2 + O(q^-3), b = q + O(q^-1): floor max(-3+1, -1+2) = 1
    let a = DescSeries::from_terms([(e(2), coeff_int(1))], Some(e(-3)));
    let b = DescSeries::from_terms([(e(1), coeff_int(1))], Some(e(-1)));
    assert_eq!(a.mul_series(&b).floor(), Some(e(1)));
    // exact zero annihilates
    assert_eq!(a.mul_series(&DescSeries::zero()), DescSeries::zero());
    // an inexact zero does not
    let z = DescSeries::zero_to(e(-4));
    assert_eq!(z.mul_series(&a).floor(), Some(e(-2)));
}

#[test]
fn invert_examples() {
    let f = e(-12);
    assert_eq!(q_int(1).invert_unit(f).unwrap(), geometric(e(-1), f));
    let q = DescSeries::poly_int(&[(1, 1)]);
    assert_eq!(q.invert_unit(f).unwrap(), DescSeries::poly_int(&[(-1, 1)]));
    let qm1sq = DescSeries::poly_int(&[(2, 1), (1, -2), (0, 1)]);
    let inv = qm1sq.invert_unit(f).unwrap();
    for k in 2..=12 {
        assert_eq!(inv.coeff(e(-k)).unwrap(), coeff_int(k - 1));
    }
    assert_eq!(inv.top(), Some(e(-2)));
    assert_eq!(DescSeries::zero().invert_unit(f), Err(SeriesError::NotInvertible));
}

#[test]
fn invert_respects_input_floor() {
    // 1 - q^{-1} + O(q^{-5}) can only be inverted down to q^{-5}
    let a = q_int(1).limit_floor(e(-5));
    let inv = a.invert_unit(e(-20)).unwrap();
    assert_eq!(inv.floor(), Some(e(-5)));
    assert_eq!(inv, geometric(e(-1), e(-5)));
}

#[test]
fn truncate_examples() {
    let f = DescSeries::poly_int(&[(2, 1), (1, 1), (0, 1), (-1, 1)]);
    assert_eq!(f.truncate_at(e(0)).unwrap(), DescSeries::from_terms(
        [(e(2), coeff_int(1)), (e(1), coeff_int(1)), (e(0), coeff_int(1))],
        Some(e(0)),
    ));
    assert!(f.truncate_at(e(3)).unwrap().is_zero());
    let g = f.limit_floor(e(-1));
    assert!(matches!(g.truncate_at(e(-2)), Err(SeriesError::BelowFloor { .. })));
    assert!(g.coeff(e(-2)).is_err());
    // q f|_{q>=m} = (q f)|_{q>=m+1}
    let q = DescSeries::poly_int(&[(1, 1)]);
    let lhs = q.mul_series(&f.truncate_at(e(0)).unwrap());
    let rhs = q.mul_series(&f).truncate_at(e(1)).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn degree_examples() {
    assert_eq!(DescSeries::poly_int(&[(3, 1), (1, -1)]).deg_q(), Ok(e(3)));
    assert_eq!(DescSeries::zero().deg_q(), Err(SeriesError::ZeroSeries));
    // q^{3/2}(q^3 - q^2 + 1)/((q-1)^2 (q^2-1)) has degree 1/2
    let f = e(-20);
    let num = DescSeries::poly_int(&[(3, 1), (2, -1), (0, 1)]).shift(h(3));
    let den = DescSeries::poly_int(&[(2, 1), (1, -2), (0, 1)])
        .mul_series(&DescSeries::poly_int(&[(2, 1), (0, -1)]));
    let w = num.div_to(&den, f).unwrap();
    assert_eq!(w.deg_q(), Ok(h(1)));
}

#[test]
fn text_roundtrip_examples() {
    let s = DescSeries::from_terms(
        [(h(3), coeff_ratio(-7, 3)), (h(1), coeff_int(2)), (h(-4), coeff_ratio(1, 5))],
        Some(h(-9)),
    );
    let t = s.to_text();
    assert_eq!(t, "top=3;floor=-9;terms=3:-7/3,1:2/1,-4:1/5");
    assert_eq!(DescSeries::from_text(&t).unwrap(), s);
    assert_eq!(DescSeries::zero().to_text(), "top=none;floor=exact;terms=");
    assert!(DescSeries::from_text("top=1;floor=exact;terms=1:2/4").is_err());
    assert!(DescSeries::from_text("top=1;floor=exact;terms=1:0/1").is_err());
    assert!(DescSeries::from_text("top=2;floor=exact;terms=1:1/1").is_err());
    assert!(DescSeries::from_text("top=1;floor=exact;terms=-1:1/1,1:1/1").is_err());
}

#[test]
fn dilate_and_reflect() {
    let p = DescSeries::poly_int(&[(1, 1), (0, -2), (-1, 1)]);
    assert_eq!(p.dilate(2), DescSeries::poly_int(&[(2, 1), (0, -2), (-2, 1)]));
    assert_eq!(p.reflect().unwrap(), p);
    let r = DescSeries::poly_int(&[(3, 5), (-1, 2)]).reflect().unwrap();
    assert_eq!(r, DescSeries::poly_int(&[(1, -0), (1, 2), (-3, 5)]));
    assert!(geometric(e(-1), e(-3)).reflect().is_err());
}

#[test]
fn pow_examples() {
    let f = Some(e(-10));
    let a = q_int(1);
    let inv2 = a.pow_to(-2, f).unwrap();
    let direct = a.mul_series(&a).invert_unit(e(-10)).unwrap();
    assert_eq!(inv2, direct);
    assert_eq!(a.pow_to(3, None).unwrap(), a.mul_series(&a).mul_series(&a));
    assert_eq!(a.pow_to(0, None).unwrap(), DescSeries::one());
}

fn arb_series() -> impl Strategy<Value = DescSeries> {
    (
        -6i64..6,
        prop::collection::vec((-4i64..5, 1i64..4), 0..8),
        prop::option::of(-30i64..-10),
    )
        .prop_map(|(hi, cs, floor)| {
            let terms = cs
                .into_iter()
                .enumerate()
                .map(|(i, (n, d))| (HalfExp::from_doubled(hi - i as i64), coeff_ratio(n, d)));
            DescSeries::from_terms(terms, floor.map(HalfExp::from_doubled))
        })
}

fn arb_unit() -> impl Strategy<Value = DescSeries> {
    (arb_series(), 1i64..5, -3i64..3).prop_map(|(s, c, t)| {
        let lead = DescSeries::monomial(HalfExp::from_doubled(2 * t + 20), coeff_int(c));
        lead.add_series(&s).shift(HalfExp::int(-10))
    })
}

fn common_floor(xs: &[&DescSeries]) -> HalfExp {
    xs.iter().filter_map(|s| s.floor()).max().unwrap_or(HalfExp::int(-40)).max(HalfExp::int(-40))
}

proptest! {
    #[test]
    fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
        let l = a.add_series(&b).add_series(&c);
        let r = a.add_series(&b.add_series(&c));
        prop_assert_eq!(&l, &r);
        let l = a.mul_series(&b.add_series(&c));
        let r = a.mul_series(&b).add_series(&a.mul_series(&c));
        let f = l.floor().max(r.floor());
        match f {
            Some(f) => prop_assert!(l.agrees_from(&r, f).unwrap()),
            None => prop_assert_eq!(l, r),
        }
        prop_assert_eq!(a.mul_series(&b), b.mul_series(&a));
    }

    #[test]
    fn add_sub_cancel(a in arb_series(), b in arb_series()) {
        let r = a.add_series(&b).sub_series(&b);
        let f = common_floor(&[&a, &b]);
        prop_assert!(r.agrees_from(&a, f).unwrap());
    }

    #[test]
    fn invert_roundtrip(a in arb_unit()) {
        let f = HalfExp::int(-15);
        let inv = a.invert_unit(f).unwrap();
        let p = a.mul_series(&inv);
        let fl = p.floor().unwrap_or(f);
        prop_assert!(p.agrees_from(&DescSeries::one(), fl).unwrap());
    }

    #[test]
    fn truncation_property(a in arb_series(), j in 1i64..5, m in -8i64..4) {
        let m = HalfExp::from_doubled(m);
        prop_assume!(a.floor().map_or(true, |f| f <= m));
        let g = a.truncate_at(m).unwrap();
        let qj = q_int(j as u32);
        let lhs = qj.mul_series(&g);
        let rhs = qj.mul_series(&a).truncate_at(m).unwrap();
        prop_assert!(lhs.agrees_from(&rhs, m).unwrap());
    }

    #[test]
    fn text_roundtrip(a in arb_series()) {
        let t = a.to_text();
        prop_assert_eq!(DescSeries::from_text(&t).unwrap(), a);
    }

    #[test]
    fn q_binomial_random(an in -3i64..4, ae in -3i64..3, zn in 1i64..4, zd in 1i64..3, ze in -4i64..-1) {
        let a = DescSeries::monomial(HalfExp::int(ae), coeff_ratio(an, 2));
        let z = DescSeries::monomial(HalfExp::int(ze), coeff_ratio(zn, zd));
        prop_assert!(q_binomial_check(&a, &z, HalfExp::int(-15)).unwrap());
    }
}
