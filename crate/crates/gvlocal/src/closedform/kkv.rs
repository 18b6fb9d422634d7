//! Comparison with the K3-type prediction: Hilbert-scheme Euler numbers,
//! the `t = q/(1-q)^2` substitution, `n_δ(d)` and the quasimodular series.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{asc, big, inv_fact_cubed, lambert, mdelta_series, PolyInD, QGen};
use crate::qseries::{binom, binom_gen, coeff_int, eta_power_inverse, sigma1, DescSeries, ExactCoeff, HalfExp};
use crate::vertex::genus_bound;

/// Euler numbers of `(P^2)^{(j)}`, `j = 0..=order`: coefficients of `1/∏(1-q^n)^3`.
pub fn hilbert_p2(order: u32) -> Vec<BigInt> {
    eta_power_inverse(3, order as usize)
}

/// `e_j(x) = (C(x+2, 2) - j) e((P^2)^{(j)})` for `j = 0..=order`.
pub fn e_j_poly(order: u32) -> Vec<PolyInD> {
    hilbert_p2(order)
        .into_iter()
        .enumerate()
        .map(|(j, h)| PolyInD::binom2(2).sub(&PolyInD::constant(coeff_int(j as i64))).scale(&big(h)))
        .collect()
}

/// `Σ_j e_j(d) q^j` to `order`.
pub fn kkv_series(d: u32, order: u32) -> QGen {
    let c: Vec<ExactCoeff> = e_j_poly(order).iter().map(|p| p.eval(d as i64)).collect();
    QGen::new(format!("KKV[d={d}]"), asc::from_coeffs(&c))
}

/// Multiplies a `PolyInD`-valued series by an integer polynomial in `q`.
pub fn poly_series_mul(a: &[PolyInD], p: &[ExactCoeff]) -> Vec<PolyInD> {
    (0..a.len())
        .map(|n| {
            (0..=n.min(p.len().saturating_sub(1)))
                .fold(PolyInD::default(), |acc, k| acc.add(&a[n - k].scale(&p[k])))
        })
        .collect()
}

/// `(1-q)^2 (1-q^2) Σ e_j(x) q^j` to `order`; equals `Σ M_δ(x) q^δ`.
pub fn min_e_series(order: u32) -> Vec<PolyInD> {
    let p: Vec<ExactCoeff> = [1, -2, 0, 2, -1].iter().map(|&c| coeff_int(c)).collect();
    poly_series_mul(&e_j_poly(order), &p)
}

/// `b(g, k) = 2(g-1) ∏_{i=1}^{k-1} (2g - (k+2) - i) / k!`, `b(g, 0) = 1`.
pub fn b_coeff(g: i64, k: i64) -> ExactCoeff {
    if k == 0 {
        return ExactCoeff::one();
    }
    let mut num = coeff_int(2 * (g - 1));
    for i in 1..k {
        num *= coeff_int(2 * g - (k + 2) - i);
    }
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    num / big(fact)
}

/// `C(2g-2-k, k) + C(2g-3-k, k-1)`, with generalised upper index.
pub fn b_coeff_binomial(g: i64, k: i64) -> BigInt {
    binom_gen(2 * g - 2 - k, k) + binom_gen(2 * g - 3 - k, k - 1)
}

/// Right-hand side of the prediction for `(-1)^{(d^2+3d)/2 + δ} n^{g(d)-δ}_d`.
pub fn kkv_prediction(d: u32, delta: u32) -> BigInt {
    let g = genus_bound(d) as i64;
    let h = hilbert_p2(delta);
    let c = binom(d as i64 + 2, 2);
    (0..=delta as i64)
        .map(|j| {
            let k = delta as i64 - j;
            b_coeff_binomial(g - j, k) * (&c - j) * &h[j as usize]
        })
        .sum()
}

/// `n_δ(d) = Σ_{j≤δ} M_j(d) C(d^2-3d+3-δ-j, δ-j)`.
pub fn ndelta_poly(delta: u32, d: i64) -> ExactCoeff {
    ndelta_with(&mdelta_series(delta), delta, d)
}

fn ndelta_with(m: &[PolyInD], delta: u32, d: i64) -> ExactCoeff {
    let delta = delta as i64;
    (0..=delta)
        .map(|j| m[j as usize].eval(d) * big(binom_gen(d * d - 3 * d + 3 - delta - j, delta - j)))
        .fold(ExactCoeff::zero(), |a, b| a + b)
}

/// `Σ_δ n_δ(d) t^δ` to `order`, term by term.
pub fn ndelta_series(d: i64, order: u32) -> DescSeries {
    let m = mdelta_series(order);
    let c: Vec<ExactCoeff> = (0..=order).map(|delta| ndelta_with(&m, delta, d)).collect();
    asc::from_coeffs(&c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TqDirection {
    /// rewrite a series in `q` as a series in `t`
    QToT,
    /// rewrite a series in `t` as a series in `q`
    TToQ,
}

fn one_minus_q() -> DescSeries {
    DescSeries::poly_int(&[(0, 1), (-1, -1)])
}

/// `t(q) = q/(1-q)^2`.
pub fn t_of_q(order: u32) -> DescSeries {
    asc::mul(&asc::var(), &asc::pow(&one_minus_q(), -2, order), order)
}

/// `q(t) = (1 + 2t - √(1+4t))/(2t)`, with `√` the branch through 1.
pub fn q_of_t(order: u32) -> DescSeries {
    let s = asc::sqrt(&DescSeries::poly_int(&[(0, 1), (-1, 4)]).limit_floor(asc::floor(order + 1)), order + 1);
    let num = DescSeries::poly_int(&[(0, 1), (-1, 2)]).sub_series(&s);
    num.shift(HalfExp::int(1)).scale(&ExactCoeff::new(1.into(), 2.into())).limit_floor(asc::floor(order))
}

/// Substitutes `q = q(t)` or `t = t(q)` into `s`.
pub fn t_q_change(dir: TqDirection, s: &DescSeries, order: u32) -> DescSeries {
    let inner = match dir {
        TqDirection::QToT => q_of_t(order),
        TqDirection::TToQ => t_of_q(order),
    };
    asc::compose(s, &inner, order)
}

/// Both sides of
/// `Σ_k C(m-k, k) t^k = (1/√(1+4t)) ((1+√(1+4t))/2)^{m+1}` to `order`.
pub fn sum_identity_sides(m: i64, order: u32) -> (DescSeries, DescSeries) {
    let lhs: Vec<ExactCoeff> = (0..=order as i64)
        .map(|k| {
            let falling: BigInt = (k..2 * k).map(|j| BigInt::from(m - j)).product();
            let fact: BigInt = (1..=k).map(BigInt::from).product();
            big(falling) / big(fact)
        })
        .collect();
    let s = asc::sqrt(&DescSeries::poly_int(&[(0, 1), (-1, 4)]).limit_floor(asc::floor(order)), order);
    let half = ExactCoeff::new(1.into(), 2.into());
    let base = s.add_series(&DescSeries::one()).scale(&half);
    let rhs = asc::mul(&asc::inverse(&s, order), &asc::pow(&base, m + 1, order), order);
    (asc::from_coeffs(&lhs), rhs)
}

/// `Σ M_j(d) q^j / ((1-q)^{d^2-3d+2}(1-q^2))` rewritten in `t`.
pub fn ndelta_from_m(d: i64, order: u32) -> DescSeries {
    let m: Vec<ExactCoeff> = mdelta_series(order).iter().map(|p| p.eval(d)).collect();
    let den = asc::mul(
        &asc::pow(&one_minus_q(), d * d - 3 * d + 2, order),
        &DescSeries::poly_int(&[(0, 1), (-2, -1)]),
        order,
    );
    let q = asc::mul(&asc::from_coeffs(&m), &asc::inverse(&den, order), order);
    t_q_change(TqDirection::QToT, &q, order)
}

/// `(1-q)^{-(d^2-3d)} Σ_j e_j(d) q^j` rewritten in `t`.
pub fn ndelta_from_e(d: i64, order: u32) -> DescSeries {
    let e = kkv_series(d as u32, order).series;
    let q = asc::mul(&e, &asc::pow(&one_minus_q(), -(d * d - 3 * d), order), order);
    t_q_change(TqDirection::QToT, &q, order)
}

/// `(C(d+2,2) - 3 Σ q^i/(1-q^i)^2) / ((1-q)^{d^2-3d} [∞]!^3)` rewritten in `t`.
pub fn ndelta_from_gen(d: i64, order: u32) -> DescSeries {
    let f = asc::floor(order);
    let b = DescSeries::constant(big(binom(d + 2, 2))).sub_series(&lambert(f).scale(&coeff_int(3)));
    let p = asc::mul(&inv_fact_cubed(f), &b, order);
    let q = asc::mul(&p, &asc::pow(&one_minus_q(), -(d * d - 3 * d), order), order);
    t_q_change(TqDirection::QToT, &q, order)
}

/// `G_2 = Σ σ₁(n) q^n`, without constant term.
pub fn g2_plain(order: u32) -> QGen {
    QGen::new("G2", lambert(asc::floor(order)))
}

/// `G_2 = -1/24 + Σ σ₁(n) q^n`.
pub fn g2_eisenstein(order: u32) -> QGen {
    let s = lambert(asc::floor(order)).add_series(&DescSeries::constant(ExactCoeff::new((-1).into(), 24.into())));
    QGen::new("G2E", s)
}

/// `q d/dq G_2 = Σ n σ₁(n) q^n`.
pub fn dg2(order: u32) -> QGen {
    let c: Vec<ExactCoeff> = (0..=order as i64).map(|n| coeff_int(n * sigma1(n))).collect();
    QGen::new("DG2", asc::from_coeffs(&c))
}

/// `1/Δ = q^{-1} ∏ (1-q^n)^{-24}`, to `q^order`.
pub fn inv_delta(order: u32) -> QGen {
    let c = eta_power_inverse(24, order as usize + 1);
    let s = DescSeries::from_terms(
        c.into_iter().enumerate().map(|(n, v)| (HalfExp::int(1 - n as i64), big(v))),
        Some(asc::floor(order)),
    );
    QGen::new("1/Delta", s)
}
