use super::*;
use crate::qseries::{binom, coeff_int};
use proptest::prelude::*;

fn e(n: i64) -> HalfExp {
    HalfExp::int(n)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn instanton_one() {
    let f = e(-12);
    let i1 = instanton_coeff(1, f);
    for k in 1..=12 {
        assert_eq!(i1.coeff(e(-k)).unwrap(), coeff_int(-3 * k), "q^-{k}");
    }
    assert_eq!(i1.top(), Some(e(-1)));
}

#[test]
fn instanton_degrees() {
    let v = Vertex::new();
    for d in 1..=5u32 {
        let (s, stats) = v.instanton(d, e(-(d as i64) - 4));
        assert_eq!(s.deg_q(), Ok(e(top_degree(d))), "d={d}");
        assert_eq!(stats.triples, u64::try_from(crate::partitions::triple_count(d)).unwrap());
        assert!(stats.kept <= stats.triples);
    }
    assert_eq!(top_degree(3), 0);
}

#[test]
fn pruning_does_not_change_the_sum() {
    // the unpruned sum is the same computation at a much deeper floor
    let deep = instanton_coeff(4, e(-30)).limit_floor(e(-8));
    let shallow = instanton_coeff(4, e(-8));
    assert_eq!(deep, shallow);
}

#[test]
fn row_stratum_dominates() {
    // I(d) minus the triples made of rows sits well below the top
    for d in 3..=5u32 {
        let f = e(-12);
        let full = instanton_coeff(d, f);
        let mut rows = DescSeries::zero().limit_floor(f);
        for (a, b, c) in triples(d) {
            if !(a.is_row() || a.is_empty()) || !(b.is_row() || b.is_empty()) || !(c.is_row() || c.is_empty()) {
                continue;
            }
            let s = HalfExp::from_doubled(a.kappa() + b.kappa() + c.kappa());
            let t = crate::hopf::w(&a, &b, f - s)
                .value
                .mul_series(&crate::hopf::w(&b, &c, f - s).value)
                .mul_series(&crate::hopf::w(&c, &a, f - s).value)
                .shift(s);
            rows = rows.add_series(&t.limit_floor(f));
        }
        if d % 2 == 1 {
            rows = -rows;
        }
        let rest = full.sub_series(&rows).limit_floor(f);
        let bound = e(top_degree(d) - d as i64 - 2);
        if let Some(t) = rest.top() {
            assert!(t <= bound, "d={d}: {t} > {bound}");
        }
    }
}

#[test]
fn free_energy_small_degrees() {
    let f = e(-14);
    let inst: Vec<DescSeries> = (1..=4).map(|d| instanton_coeff(d, f)).collect();
    let free = free_energy(&inst, &[f; 4]);
    assert_eq!(free[0], inst[0]);
    let half = ExactCoeff::new(BigInt::one(), BigInt::from(2));
    let f2 = inst[1].sub_series(&inst[0].mul_series(&inst[0]).scale(&half));
    assert!(free[1].agrees_from(&f2, f).unwrap());
    for d in 1..=4u32 {
        let c = free_energy_composition(d, &inst);
        assert!(free[d as usize - 1].agrees_from(&c, f).unwrap(), "d={d}");
        assert_eq!(free[d as usize - 1].deg_q(), Ok(e(top_degree(d))));
    }
}

#[test]
fn plan_floors_cover_the_recursion() {
    let plan = PrecisionPlan::new(6, 2);
    for d in 1..=6 {
        assert_eq!(plan.target_floor(d), e(-(d as i64) - 4));
        assert!(plan.free_floor(d) <= plan.target_floor(d));
        assert!(plan.instanton_floor(d) <= plan.free_floor(d));
        for j in 1..d {
            // F(j) I(d-j) reaches F(d)'s floor
            let top_i = e(top_degree(d - j));
            assert!(plan.free_floor(j) + top_i <= plan.free_floor(d));
            let top_f = e(top_degree(j));
            assert!(plan.instanton_floor(d - j) + top_f <= plan.free_floor(d));
        }
    }
}

#[test]
fn pipeline_known_values() {
    let p = run_pipeline(5, 2).unwrap();
    assert_eq!(p.table(1).n, big(&[3]));
    assert_eq!(p.table(1).big_n, big(&[3]));
    assert_eq!(p.table(1).e, big(&[3]));
    assert_eq!(p.table(2).n, big(&[-6]));
    assert_eq!(p.table(3).n, big(&[27, -10]));
    assert_eq!(p.table(3).big_n, big(&[7, 10]));
    assert_eq!(p.table(3).m(), big(&[10, 7]));
    assert_eq!(p.table(4).n, big(&[-192, 231, -102, 15]));
    assert_eq!(p.table(5).n[0], BigInt::from(1695));
    for t in &p.tables {
        assert_eq!(t.n.len() as u32, genus_bound(t.d) + 1);
    }
    // for prime d only k = d contributes, the image of n^0_1 = 3
    let f3 = p.plan.target_floor(3);
    let img = p.free(3).limit_floor(f3).sub_series(&p.stripped[2]);
    assert_eq!(img, multicover_term(p.table(1), 3, f3));
    assert_eq!(img.coeff(e(-3)).unwrap(), coeff_int(-1));
    assert_eq!(img.coeff(e(-6)).unwrap(), coeff_int(-2));
}

#[test]
fn strip_degree_two() {
    let f = e(-10);
    let inst: Vec<DescSeries> = (1..=2).map(|d| instanton_coeff(d, f)).collect();
    let free = free_energy(&inst, &[f; 2]);
    let mut tables = BTreeMap::new();
    tables.insert(1, GvTable::from_n(1, big(&[3])).unwrap());
    assert!(matches!(multicover_strip(2, &free[1], &BTreeMap::new()), Err(VertexError::MissingDivisor { d: 2, k: 1 })));
    let f2 = multicover_strip(2, &free[1], &tables).unwrap();
    // the subtracted image is -(3/2) q^{-2}/(1-q^{-2})^2
    let diff = free[1].sub_series(&f2);
    assert_eq!(diff.coeff(e(-2)).unwrap(), ExactCoeff::new(BigInt::from(-3), BigInt::from(2)));
    assert_eq!(diff.coeff(e(-3)).unwrap(), coeff_int(0));
    assert_eq!(diff.coeff(e(-4)).unwrap(), coeff_int(-3));
    assert_eq!(extract(2, &f2).unwrap().n, big(&[-6]));
}

#[test]
fn extract_rejects_corruption() {
    let f = e(-8);
    let inst: Vec<DescSeries> = (1..=3).map(|d| instanton_coeff(d, f)).collect();
    let free = free_energy(&inst, &[f; 3]);
    // the k = 3 image of degree one is still present
    assert!(matches!(extract(3, &free[2]), Err(VertexError::NonzeroResidue { d: 3, .. })));
    let mut tables = BTreeMap::new();
    tables.insert(1, GvTable::from_n(1, big(&[3])).unwrap());
    let f3 = multicover_strip(3, &free[2], &tables).unwrap();
    let good = extract(3, &f3).unwrap();
    assert_eq!(good.n, big(&[27, -10]));
    let bump = |x: i64, c: ExactCoeff| f3.add_series(&DescSeries::monomial(e(x), c));
    assert!(matches!(extract(3, &bump(-1, coeff_int(1))), Err(VertexError::Asymmetric { d: 3, .. })));
    assert!(matches!(extract(3, &bump(-5, coeff_int(1))), Err(VertexError::NonzeroResidue { d: 3, .. })));
    assert!(matches!(extract(3, &bump(3, coeff_int(1))), Err(VertexError::Vanishing { d: 3, .. })));
    // a multiple of -1/S_1 = q^{-1}(1-q^{-1})^{-2} keeps symmetry but breaks integrality
    let s = geometric(e(-1), f + e(1));
    let g0 = s.mul_series(&s).shift(e(-1)).limit_floor(f);
    let bad = f3.add_series(&g0.scale(&ExactCoeff::new(BigInt::one(), BigInt::from(2))));
    assert!(matches!(extract(3, &bad), Err(VertexError::NonIntegral { d: 3, .. })));
    let half = f3.add_series(&DescSeries::monomial(HalfExp::from_doubled(-3), coeff_int(1)));
    assert_eq!(extract(3, &half), Err(VertexError::HalfIntegral { d: 3 }));
    assert!(matches!(extract(3, &f3.limit_floor(e(0))), Err(VertexError::Precision { .. })));
}

#[test]
fn basis_examples() {
    assert_eq!(basis_s_to_r(1), big(&[-2, 1]));
    assert_eq!(basis_r_to_s(1), big(&[2, 1]));
    assert_eq!(basis_s_to_t(1), big(&[0, 1]));
    assert_eq!(basis_t_to_s(2), big(&[0, 2, 1]));
    assert_eq!(basis_s_to_t(0), big(&[1]));
    assert_eq!(basis_t_to_s(0), big(&[1]));
}

fn as_rat(v: &[BigInt]) -> Vec<ExactCoeff> {
    v.iter().cloned().map(ExactCoeff::from_integer).collect()
}

#[test]
fn basis_matches_laurent_expansion() {
    for g in 0..=12usize {
        let s = SymLaurent::s_basis(g);
        assert_eq!(SymLaurent::combination(&as_rat(&basis_s_to_r(g)), SymLaurent::r_basis), s, "S->R {g}");
        assert_eq!(SymLaurent::combination(&as_rat(&basis_s_to_t(g)), SymLaurent::t_basis), s, "S->T {g}");
        let r = SymLaurent::r_basis(g);
        assert_eq!(SymLaurent::combination(&as_rat(&basis_r_to_s(g)), SymLaurent::s_basis), r, "R->S {g}");
        let t = SymLaurent::t_basis(g);
        assert_eq!(SymLaurent::combination(&as_rat(&basis_t_to_s(g)), SymLaurent::s_basis), t, "T->S {g}");
    }
}

#[test]
fn basis_round_trips() {
    for g in 0..=12usize {
        for (fwd, back) in [
            (basis_s_to_r as fn(usize) -> Vec<BigInt>, basis_r_to_s as fn(usize) -> Vec<BigInt>),
            (basis_s_to_t, basis_t_to_s),
        ] {
            let mut acc = vec![BigInt::zero(); g + 1];
            for (j, c) in fwd(g).iter().enumerate() {
                for (i, b) in back(j).iter().enumerate() {
                    acc[i] += c * b;
                }
            }
            let mut unit = vec![BigInt::zero(); g + 1];
            unit[g] = BigInt::one();
            assert_eq!(acc, unit, "g={g}");
        }
    }
}

#[test]
fn binomial_identity() {
    for g in 0..=20i64 {
        for delta in 0..=12i64 {
            for j in 0..=12i64 {
                let l = binom(2 * g - delta - j - 1, delta - j) - binom(2 * g - delta - j - 3, delta - j - 2);
                let r = binom(2 * g - 2 - j - delta, delta - j) + binom(2 * g - 3 - j - delta, delta - j - 1);
                assert_eq!(l, r, "g={g} delta={delta} j={j}");
            }
        }
    }
}

#[test]
fn e_transform_needs_h_positive() {
    // the closed E formula read at h = 0 would add C(2g-2, g) n^g for g ≥ 2
    let n = big(&[0, 0, 1]);
    assert_eq!(n_to_e(&n)[0], BigInt::zero());
    assert_ne!(binom(2, 2), BigInt::zero());
    assert_eq!(n_to_e(&big(&[3])), big(&[3]));
}

#[test]
fn table_constructors() {
    let t = GvTable::from_n(4, big(&[-192, 231, -102, 15])).unwrap();
    assert_eq!(GvTable::from_big_n(4, t.big_n.clone()).unwrap(), t);
    assert_eq!(GvTable::from_e(4, t.e.clone()).unwrap(), t);
    assert_eq!(t.m_at(0), -t.big_n[3].clone());
    assert_eq!(GvTable::from_n(3, big(&[1, 2, 3])), Err(VertexError::Vanishing { d: 3, g: 2, gd: 1 }));
    assert_eq!(GvTable::from_n(3, big(&[27])).unwrap().n, big(&[27, 0]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transforms_round_trip(v in prop::collection::vec(-1000i64..1000, 1..14)) {
        let n = big(&v);
        prop_assert_eq!(big_n_to_n(&n_to_big_n(&n)), n.clone());
        prop_assert_eq!(e_to_n(&n_to_e(&n)), n.clone());
        let e = n_to_e(&n);
        let nn = n_to_big_n(&n);
        prop_assert_eq!(n_to_big_n(&e_to_n(&e)), nn);
    }

    #[test]
    fn transforms_preserve_the_laurent_polynomial(v in prop::collection::vec(-50i64..50, 1..10)) {
        let n = big(&v);
        let alt: Vec<ExactCoeff> = n
            .iter()
            .enumerate()
            .map(|(g, x)| ExactCoeff::from_integer(if g % 2 == 1 { -x.clone() } else { x.clone() }))
            .collect();
        let p = SymLaurent::combination(&alt, SymLaurent::s_basis);
        prop_assert_eq!(SymLaurent::combination(&as_rat(&n_to_big_n(&n)), SymLaurent::r_basis), p.clone());
        prop_assert_eq!(SymLaurent::combination(&as_rat(&n_to_e(&n)), SymLaurent::t_basis), p);
    }
}
