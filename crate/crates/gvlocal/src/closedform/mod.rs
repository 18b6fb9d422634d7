//! Closed formulas for the leading invariants and the series identities
//! used to derive them.
//!
//! Everything here is written in the base `q^{-1}`: a formula stated with
//! `q^{-i}` is a [`DescSeries`] as is, and a generating function in
//! ascending `q` goes through [`asc`]. `P` below is `1/[∞]!^3` and
//! `L = Σ_{i≥1} q^{-i}/(1-q^{-i})^2`.

pub mod asc;
mod identities;
mod kkv;

pub use identities::*;
pub use kkv::*;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::qseries::{
    binom, coeff_int, geometric, inv_q_factorial, inv_q_factorial_inf, lambert_sigma, lambert_tau, pochhammer,
    q_int, DescSeries, ExactCoeff, HalfExp, PochLen, SeriesError,
};
use crate::vertex::{genus_bound, GvTable, VertexError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("x-expansion known to order {have}, need {need}")]
    XOrder { need: usize, have: usize },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("no vertex table for degree {0}")]
    MissingTable(u32),
    #[error("correction order {0} is not supported")]
    CorrectionOrder(u32),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A polynomial of degree at most two in the degree variable `d`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyInD {
    /// coefficients of `1, d, d²`
    pub c: [ExactCoeff; 3],
}

impl PolyInD {
    pub fn new(c0: ExactCoeff, c1: ExactCoeff, c2: ExactCoeff) -> Self {
        PolyInD { c: [c0, c1, c2] }
    }

    pub fn constant(c: ExactCoeff) -> Self {
        Self::new(c, ExactCoeff::zero(), ExactCoeff::zero())
    }

    /// `C(d + s, 2)`.
    pub fn binom2(s: i64) -> Self {
        let h = |n: i64| ExactCoeff::new(BigInt::from(n), BigInt::from(2));
        Self::new(h(s * (s - 1)), h(2 * s - 1), h(1))
    }

    pub fn eval(&self, d: i64) -> ExactCoeff {
        let d = coeff_int(d);
        &self.c[0] + &d * (&self.c[1] + &d * &self.c[2])
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2])
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-ExactCoeff::one()))
    }

    pub fn scale(&self, k: &ExactCoeff) -> Self {
        Self::new(&self.c[0] * k, &self.c[1] * k, &self.c[2] * k)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// `(a, b)` with `self = a C(d+2-j, 2) + b`, if the linear term fits.
    pub fn binomial_form(&self, j: i64) -> Option<(ExactCoeff, ExactCoeff)> {
        let a = &self.c[2] * coeff_int(2);
        let base = Self::binom2(2 - j).scale(&a);
        (base.c[1] == self.c[1]).then(|| (a, &self.c[0] - &base.c[0]))
    }
}

impl fmt::Display for PolyInD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({}) d + ({}) d^2", self.c[0], self.c[1], self.c[2])
    }
}

/// A generating function in ascending `q`, stored under `q -> q^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGen {
    pub label: String,
    pub series: DescSeries,
}

impl QGen {
    pub fn new(label: impl Into<String>, series: DescSeries) -> Self {
        QGen { label: label.into(), series }
    }

    pub fn order(&self) -> u32 {
        asc::order(&self.series).unwrap_or(u32::MAX)
    }

    pub fn coeff(&self, n: u32) -> ExactCoeff {
        asc::coeff(&self.series, n)
    }

    pub fn coeffs(&self) -> Vec<ExactCoeff> {
        asc::coeffs(&self.series, self.order())
    }
}

pub(crate) fn big(n: BigInt) -> ExactCoeff {
    ExactCoeff::from_integer(n)
}

fn depth(f: HalfExp) -> u32 {
    (-f.doubled()).max(0) as u32 / 2
}

/// `1/[∞]!^3` truncated at `f`.
pub fn inv_fact_cubed(f: HalfExp) -> DescSeries {
    let p = inv_q_factorial_inf(f);
    p.mul_to(&p, Some(f)).mul_to(&p, Some(f))
}

/// `L = Σ_{i≥1} q^{-i}/(1-q^{-i})^2` truncated at `f`.
pub fn lambert(f: HalfExp) -> DescSeries {
    lambert_sigma(depth(f))
}

/// `Σ_{i≥from} q^{-i}/(1-q^{-i})` truncated at `f`.
pub fn divisor_series(from: i64, f: HalfExp) -> DescSeries {
    let mut s = lambert_tau(f);
    for i in 1..from {
        let e = HalfExp::int(-i);
        s = s.sub_series(&geometric(e, f - e).shift(e));
    }
    s.limit_floor(f)
}

/// `1/(1-q^{-1})^2` truncated at `f`.
pub fn inv_one_minus_sq(f: HalfExp) -> DescSeries {
    let g = geometric(HalfExp::int(-1), f);
    g.mul_to(&g, Some(f))
}

/// `c - 3L - extra`, truncated at `f`.
fn bracket(c: ExactCoeff, extra: Option<&DescSeries>, f: HalfExp) -> DescSeries {
    let mut s = DescSeries::constant(c).sub_series(&lambert(f).scale(&coeff_int(3)));
    if let Some(x) = extra {
        s = s.sub_series(x);
    }
    s.limit_floor(f)
}

fn binom_c(n: i64, k: i64) -> ExactCoeff {
    big(binom(n, k))
}

/// `P (C(d+2, 2) - 3L)`, the closed form of `W_d` on `q ≥ -d`.
pub fn wd_closed(d: u32, f: HalfExp) -> DescSeries {
    let d = d as i64;
    inv_fact_cubed(f).mul_to(&bracket(binom_c(d + 2, 2), None, f), Some(f))
}

/// `W̃_{(m),(n)} = Σ_{k≤n} q^{-k(m+1)}/([m]! [k]!)`.
pub fn w_tilde(m: u32, n: u32, f: HalfExp) -> DescSeries {
    let mut acc = DescSeries::zero_to(f);
    for k in 0..=n {
        let s = HalfExp::int(-(k as i64) * (m as i64 + 1));
        if s < f {
            break;
        }
        let inv = inv_q_factorial(m, f - s).mul_to(&inv_q_factorial(k, f - s), Some(f - s));
        acc = acc.add_series(&inv.shift(s));
    }
    acc.limit_floor(f)
}

/// `W_d = Σ_{d_1+d_2+d_3=d} W̃_{(d_1),(d_2)} W̃_{(d_2),(d_3)} W̃_{(d_3),(d_1)}`.
pub fn wd_direct(d: u32, f: HalfExp) -> DescSeries {
    let mut acc = DescSeries::zero_to(f);
    for d1 in 0..=d {
        for d2 in 0..=d - d1 {
            let d3 = d - d1 - d2;
            let t = w_tilde(d1, d2, f)
                .mul_to(&w_tilde(d2, d3, f), Some(f))
                .mul_to(&w_tilde(d3, d1, f), Some(f));
            acc = acc.add_series(&t);
        }
    }
    acc.limit_floor(f)
}

/// `T^x_m f = a_0 + ... + a_m` for `f = Σ a_j x^j`.
pub fn tx(coeffs: &[DescSeries], m: usize) -> Result<DescSeries, ClosedFormError> {
    if coeffs.len() <= m {
        return Err(ClosedFormError::XOrder { need: m, have: coeffs.len().saturating_sub(1) });
    }
    Ok(coeffs[..=m].iter().fold(DescSeries::zero(), |acc, c| acc.add_series(c)))
}

/// x-coefficients `0..=m` of `1/(x q^a; q^{-1})_∞ = ∏_{i≥0} 1/(1 - x q^{a-i})`
/// for `a < 0`, multiplied out factor by factor.
pub fn inv_poch_x(a: i64, m: usize, f: HalfExp) -> Vec<DescSeries> {
    assert!(a < 0, "exponent must be negative");
    let mut out: Vec<DescSeries> = (0..=m).map(|j| if j == 0 { DescSeries::one() } else { DescSeries::zero() }).collect();
    let mut i = 0i64;
    while HalfExp::int(a - i) >= f {
        let e = a - i;
        let mut next = out.clone();
        for (n, slot) in next.iter_mut().enumerate() {
            for k in 1..=n {
                let s = HalfExp::int(k as i64 * e);
                if s < f {
                    break;
                }
                *slot = slot.add_series(&out[n - k].shift(s));
            }
        }
        out = next.into_iter().map(|s| s.limit_floor(f)).collect();
        i += 1;
    }
    out.into_iter().map(|s| s.limit_floor(f)).collect()
}

/// `T^x_m ((q^{-a-1}; q^{-1})_∞ / (x q^{-a-1}; q^{-1})_∞ - 1)`.
pub fn tx_ratio(a: u32, m: usize, f: HalfExp) -> DescSeries {
    let e = -(a as i64) - 1;
    let poch = pochhammer(&DescSeries::monomial(HalfExp::int(e), ExactCoeff::one()), PochLen::Infinite, f)
        .expect("convergent product");
    let xs: Vec<DescSeries> = inv_poch_x(e, m, f).iter().map(|c| c.mul_to(&poch, Some(f))).collect();
    tx(&xs, m).expect("expanded to order m").sub_series(&DescSeries::one()).limit_floor(f)
}

/// `(1 - q^{-1})^2 (1 - q^{-2})`, written `[1]^2 [2]`.
fn m_prefactor() -> DescSeries {
    q_int(1).mul_series(&q_int(1)).mul_series(&q_int(2))
}

/// `M_δ(x)` for `δ = 0..=order`, from
/// `Σ M_δ(x) q^δ = [1]^2[2]/[∞]!^3 (C(x+2, 2) - 3 Σ q^i/(1-q^i)^2)`.
pub fn mdelta_series(order: u32) -> Vec<PolyInD> {
    let f = asc::floor(order);
    let a = inv_fact_cubed(f).mul_to(&m_prefactor(), Some(f));
    let b = a.mul_to(&lambert(f), Some(f));
    let c2 = PolyInD::binom2(2);
    (0..=order)
        .map(|n| c2.scale(&asc::coeff(&a, n)).sub(&PolyInD::constant(asc::coeff(&b, n) * coeff_int(3))))
        .collect()
}

/// `C(d+1, 2) - 3L - 3q^{-3}/(1-q^{-3})`, the bracket of the first correction.
fn correction_bracket(d: i64, f: HalfExp) -> DescSeries {
    let e = HalfExp::int(-3);
    let g3 = geometric(e, f - e).shift(e).scale(&coeff_int(3));
    bracket(binom_c(d + 1, 2), Some(&g3), f)
}

/// The refined generating function
/// `[1]^2[2] P (C(d+2,2) - 3L) - 3 q^{d-1} [2][3] P (C(d+1,2) - 3L - 3q^3/(1-q^3))`.
pub fn mdelta2_series(d: u32, order: u32) -> QGen {
    let f = asc::floor(order);
    let di = d as i64;
    let first = wd_closed(d, f).mul_to(&m_prefactor(), Some(f));
    let s = HalfExp::int(-(di - 1));
    let g = (f - s).min(HalfExp::ZERO);
    let second = inv_fact_cubed(g)
        .mul_to(&q_int(2).mul_series(&q_int(3)), Some(g))
        .mul_to(&correction_bracket(di, g), Some(g))
        .shift(s)
        .scale(&coeff_int(3));
    QGen::new(format!("M2[d={d}]"), first.sub_series(&second).limit_floor(f))
}

/// Euler numbers of relative Hilbert schemes predicted modulo `q^{2d-4}`:
/// `P (C(d+2,2) - 3L) - 3 q^{d-1} [3]/[1]^2 P (C(d+1,2) - 3L - 3q^3/(1-q^3))`.
pub fn rel_hilbert_prediction(d: u32, order: u32) -> QGen {
    let f = asc::floor(order);
    let di = d as i64;
    let first = wd_closed(d, f);
    let s = HalfExp::int(-(di - 1));
    let g = (f - s).min(HalfExp::ZERO);
    let second = inv_fact_cubed(g)
        .mul_to(&q_int(3), Some(g))
        .mul_to(&inv_one_minus_sq(g), Some(g))
        .mul_to(&correction_bracket(di, g), Some(g))
        .shift(s)
        .scale(&coeff_int(3));
    QGen::new(format!("relHilb[d={d}]"), first.sub_series(&second).limit_floor(f))
}

/// Normalised leading terms of `I(d)`, valid on `q > -2d`:
/// `P [(C(d+2,2) - 3L) + 3q^{-d-2}/(1-q^{-1})^2 (C(d+1,2) - 3L + 3)]`.
pub fn id2_formula(d: u32, f: HalfExp) -> DescSeries {
    let di = d as i64;
    let s = HalfExp::int(-di - 2);
    let g = (f - s).min(HalfExp::ZERO);
    let inner = bracket(binom_c(di + 1, 2) + coeff_int(3), None, g);
    let second = inv_one_minus_sq(g).mul_to(&inner, Some(g)).shift(s).scale(&coeff_int(3));
    let b = bracket(binom_c(di + 2, 2), None, f).add_series(&second);
    inv_fact_cubed(f).mul_to(&b, Some(f))
}

/// Normalised `I(1) I(d-1)`: `3 q^{-(d-1)}/(1-q^{-1})^2 P (C(d+1,2) - 3L)`.
pub fn i1id_formula(d: u32, f: HalfExp) -> DescSeries {
    let di = d as i64;
    let s = HalfExp::int(-(di - 1));
    let g = (f - s).min(HalfExp::ZERO);
    inv_one_minus_sq(g)
        .mul_to(&wd_closed(d - 1, g), Some(g))
        .shift(s)
        .scale(&coeff_int(3))
        .limit_floor(f)
}

/// Normalised `F(d)` for `d > 3`, valid on `q > -(2d-4)`:
/// `P [(C(d+2,2) - 3L) - 3q^{-d+1}(1-q^{-3})/(1-q^{-1})^2 (C(d+1,2) - 3L - 3q^{-3}/(1-q^{-3}))]`.
pub fn fd2_formula(d: u32, f: HalfExp) -> DescSeries {
    let di = d as i64;
    let s = HalfExp::int(-(di - 1));
    let g = (f - s).min(HalfExp::ZERO);
    let second = inv_one_minus_sq(g)
        .mul_to(&q_int(3), Some(g))
        .mul_to(&correction_bracket(di, g), Some(g))
        .shift(s)
        .scale(&coeff_int(3));
    let b = bracket(binom_c(di + 2, 2), None, f).sub_series(&second);
    inv_fact_cubed(f).mul_to(&b, Some(f))
}

/// `(-1)^d q^{-(g(d)-1)} s`, the normalisation used by [`id2_formula`] and
/// [`fd2_formula`].
pub fn normalize(d: u32, s: &DescSeries) -> DescSeries {
    let t = s.shift(HalfExp::int(1 - genus_bound(d) as i64));
    if d % 2 == 1 {
        -t
    } else {
        t
    }
}

/// `C^δ_{d,2}` values observed on vertex tables, as `(a, b, d_min)` with
/// `C^δ_{d,2} = a C(d,2) + b` for `d ≥ d_min`, `δ = 0..=5`.
pub const CORRECTION_TABLE: [(i64, i64, u32); 6] =
    [(6, 0, 5), (12, -18, 6), (24, -90, 6), (30, -252, 7), (33, -549, 7), (-15, -882, 8)];

/// The tabulated `C^δ_{d,2}`, if `δ ≤ 5`.
pub fn correction_table_value(delta: u32, d: u32) -> Option<ExactCoeff> {
    CORRECTION_TABLE
        .get(delta as usize)
        .map(|&(a, b, _)| coeff_int(a) * binom_c(d as i64, 2) + coeff_int(b))
}

/// `C^δ_{d,2}` as the vertex produces it: the tabulated value with the
/// opposite sign.
pub fn correction_observed_value(delta: u32, d: u32) -> Option<ExactCoeff> {
    correction_table_value(delta, d).map(|v| -v)
}

/// `C^δ_{d,j}` for `j ∈ {2, 3}` from a vertex table: `M^{δ'}_d` minus the
/// closed-form `C_{d,0}`, `C_{d,1}` parts at `δ' = δ + (jd - j^2)`
/// (onsets `2d-4`, `3d-9`); for `j = 3` the observed `C_{d,2}` is removed
/// too. Returns values for `δ = 0, 1, ...` while `δ' ≤ g(d)`.
pub fn correction_extract(j: u32, table: &GvTable) -> Result<Vec<ExactCoeff>, ClosedFormError> {
    if !(j == 2 || j == 3) {
        return Err(ClosedFormError::CorrectionOrder(j));
    }
    let d = table.d as i64;
    let onset = j as i64 * d - (j * j) as i64;
    let gd = table.gd as i64;
    if onset > gd || onset < 0 {
        return Ok(Vec::new());
    }
    let closed = mdelta2_series(table.d, gd as u32);
    let mut out = Vec::new();
    for delta in 0..=(gd - onset) {
        let dp = (delta + onset) as u32;
        let mut c = big(table.m_at(dp)) - closed.coeff(dp);
        if j == 3 {
            let d2 = dp as i64 - (2 * d - 4);
            match correction_observed_value(d2 as u32, table.d) {
                Some(v) if d2 >= 0 => c -= v,
                _ => break,
            }
        }
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
