//! Power series in an ascending variable, stored as descending series under
//! `q -> q^{-1}`: the coefficient of `q^n` sits at exponent `-n`, and a
//! series known to order `n` has floor `-n`.

use num_traits::{One, Zero};

use crate::qseries::{DescSeries, ExactCoeff, HalfExp};

/// Floor that keeps coefficients up to `q^order`.
pub fn floor(order: u32) -> HalfExp {
    HalfExp::int(-(order as i64))
}

/// `Σ_n c_n q^n` known to order `c.len() - 1`.
pub fn from_coeffs(c: &[ExactCoeff]) -> DescSeries {
    let order = c.len().saturating_sub(1) as u32;
    DescSeries::from_terms(
        c.iter().enumerate().map(|(n, v)| (HalfExp::int(-(n as i64)), v.clone())),
        Some(floor(order)),
    )
}

/// The variable itself, `q`.
pub fn var() -> DescSeries {
    DescSeries::monomial(HalfExp::int(-1), ExactCoeff::one())
}

/// `c q^n`.
pub fn monomial(n: i64, c: ExactCoeff) -> DescSeries {
    DescSeries::monomial(HalfExp::int(-n), c)
}

/// Coefficient of `q^n`.
pub fn coeff(s: &DescSeries, n: u32) -> ExactCoeff {
    s.coeff(HalfExp::int(-(n as i64))).expect("coefficient below the known order")
}

/// Coefficients of `q^0 .. q^order`.
pub fn coeffs(s: &DescSeries, order: u32) -> Vec<ExactCoeff> {
    (0..=order).map(|n| coeff(s, n)).collect()
}

/// Order to which `s` is known, `None` for a polynomial.
pub fn order(s: &DescSeries) -> Option<u32> {
    s.floor().map(|f| (-f.doubled() / 2).max(0) as u32)
}

/// `1/s` to `order`; needs a nonzero constant term.
pub fn inverse(s: &DescSeries, order: u32) -> DescSeries {
    s.invert_unit(floor(order)).expect("constant term must be invertible")
}

/// `s^k` to `order` for any integer `k`.
pub fn pow(s: &DescSeries, k: i64, order: u32) -> DescSeries {
    s.pow_to(k, Some(floor(order))).expect("constant term must be invertible")
}

/// `a b` to `order`.
pub fn mul(a: &DescSeries, b: &DescSeries, order: u32) -> DescSeries {
    a.mul_to(b, Some(floor(order))).limit_floor(floor(order))
}

/// Square root with constant term 1 of a series with constant term 1.
pub fn sqrt(a: &DescSeries, order: u32) -> DescSeries {
    let a = coeffs(a, order);
    assert!(a[0].is_one(), "square root needs constant term 1");
    let two = ExactCoeff::from_integer(2.into());
    let mut y = vec![ExactCoeff::zero(); order as usize + 1];
    y[0] = ExactCoeff::one();
    for n in 1..=order as usize {
        let mut s = a[n].clone();
        for k in 1..n {
            s -= &y[k] * &y[n - k];
        }
        y[n] = s / &two;
    }
    from_coeffs(&y)
}

/// `f(g)` to `order`, where `g` has no constant term.
pub fn compose(f: &DescSeries, g: &DescSeries, order: u32) -> DescSeries {
    assert!(coeff(g, 0).is_zero(), "inner series must have no constant term");
    let fc = coeffs(f, order);
    let mut acc = DescSeries::zero_to(floor(order));
    let mut gp = DescSeries::one();
    for c in &fc {
        acc = acc.add_series(&gp.scale(c));
        gp = mul(&gp, g, order);
    }
    acc.limit_floor(floor(order))
}
