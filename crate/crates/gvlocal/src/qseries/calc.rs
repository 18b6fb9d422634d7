//! q-integers, q-factorials, Pochhammer symbols and Euler products, all in
//! the base `q^{-1}` so that every expansion is a descending series.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{coeff_int, DescSeries, ExactCoeff, HalfExp, SeriesError};

/// `[k] = 1 - q^{-k}`.
pub fn q_int(k: u32) -> DescSeries {
    DescSeries::poly_int(&[(0, 1), (-(k as i64), -1)])
}

/// `[k]! = (1 - q^{-1}) ... (1 - q^{-k})`, an exact polynomial.
pub fn q_factorial(k: u32) -> DescSeries {
    (1..=k).fold(DescSeries::one(), |acc, j| acc.mul_series(&q_int(j)))
}

/// `[∞]! = (q^{-1}; q^{-1})_∞` truncated at `floor`.
pub fn q_factorial_inf(floor: HalfExp) -> DescSeries {
    let f = Some(floor);
    let mut acc = DescSeries::one().limit_floor(floor);
    let mut j = 1i64;
    while HalfExp::int(-j) >= floor {
        acc = acc.mul_to(&q_int(j as u32), f);
        j += 1;
    }
    acc
}

/// `1/[k]!` truncated at `floor`.
pub fn inv_q_factorial(k: u32, floor: HalfExp) -> DescSeries {
    let mut acc = DescSeries::one().limit_floor(floor);
    for j in 1..=k {
        acc = acc.mul_to(&geometric(HalfExp::int(-(j as i64)), floor), Some(floor));
    }
    acc
}

/// `1/[∞]!` truncated at `floor`.
pub fn inv_q_factorial_inf(floor: HalfExp) -> DescSeries {
    q_factorial_inf(floor)
        .invert_unit(floor)
        .expect("[∞]! has constant term 1")
}

/// `1/(1 - q^e)` for `e < 0`, truncated at `floor`.
pub fn geometric(e: HalfExp, floor: HalfExp) -> DescSeries {
    assert!(e.doubled() < 0, "geometric ratio must have negative degree");
    let mut terms = Vec::new();
    let mut x = HalfExp::ZERO;
    while x >= floor {
        terms.push((x, ExactCoeff::one()));
        x = x + e;
    }
    DescSeries::from_terms(terms, Some(floor))
}

/// Length of a Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(u32),
    Infinite,
}

/// `(a; q^{-1})_n = ∏_{i<n} (1 - a q^{-i})`, truncated at `floor`.
pub fn pochhammer(a: &DescSeries, n: PochLen, floor: HalfExp) -> Result<DescSeries, SeriesError> {
    let f = Some(floor);
    let mut acc = DescSeries::one();
    let mut i = 0i64;
    loop {
        if let PochLen::Finite(n) = n {
            if i >= n as i64 {
                break;
            }
        }
        let term = a.shift(HalfExp::int(-i));
        match (n, term.top().or(term.floor().map(|x| x - HalfExp::from_doubled(1)))) {
            (_, None) => {
                // a is exactly zero: every remaining factor is 1.
                break;
            }
            (PochLen::Infinite, Some(t)) => {
                // a vanished partial product stays zero
                let Some(acc_top) = acc.top() else { break };
                if t + acc_top < floor {
                    break;
                }
            }
            _ => {}
        }
        let factor = &DescSeries::one() - &term;
        acc = acc.mul_to(&factor, f);
        i += 1;
        if i > 1_000_000 {
            return Err(SeriesError::Divergent("Pochhammer product does not stabilise".into()));
        }
    }
    Ok(acc.limit_floor(floor))
}

/// Checks the q-binomial theorem
/// `Σ_n (a;q^{-1})_n/(q^{-1};q^{-1})_n z^n = (az;q^{-1})_∞/(z;q^{-1})_∞`
/// down to `floor`. Needs `deg z < 0` unless `z = 0`.
pub fn q_binomial_check(a: &DescSeries, z: &DescSeries, floor: HalfExp) -> Result<bool, SeriesError> {
    let (lhs, rhs) = q_binomial_sides(a, z, floor)?;
    lhs.agrees_from(&rhs, floor)
}

/// Both sides of the q-binomial theorem, truncated at `floor`.
pub fn q_binomial_sides(
    a: &DescSeries,
    z: &DescSeries,
    floor: HalfExp,
) -> Result<(DescSeries, DescSeries), SeriesError> {
    if let Some(t) = z.top() {
        if t >= HalfExp::ZERO {
            return Err(SeriesError::Divergent("q-binomial sum needs deg z < 0".into()));
        }
    }
    let f = Some(floor);
    let zt = z.top();
    let at = a.top();
    let mut lhs = DescSeries::one().limit_floor(floor);
    let mut poch = DescSeries::one();
    let mut zn = DescSeries::one();
    // upper bound for deg (a;q^{-1})_n
    let mut poch_bound = HalfExp::ZERO;
    if let Some(zt) = zt {
        for n in 1u32.. {
            let i = HalfExp::int(n as i64 - 1);
            if let Some(at) = at {
                poch_bound = poch_bound + (at - i).max(HalfExp::ZERO);
            }
            let growing = at.is_some_and(|at| at > i);
            let bound = poch_bound + zt * (n as i64);
            if bound < floor && !growing {
                break;
            }
            poch = poch.mul_series(&(&DescSeries::one() - &a.shift(-i)));
            zn = zn.mul_series(z);
            let prod = poch.mul_series(&zn);
            if let Some(top) = prod.top() {
                if top >= floor {
                    let inv = inv_q_factorial(n, floor - top);
                    lhs = lhs.add_series(&prod.mul_to(&inv, f));
                }
            }
            if n > 10_000 {
                return Err(SeriesError::Divergent("q-binomial sum does not stabilise".into()));
            }
        }
    }
    let az = a.mul_series(z);
    let num = pochhammer(&az, PochLen::Infinite, floor)?;
    let den = pochhammer(z, PochLen::Infinite, floor)?;
    let rhs = num.mul_to(&den.invert_unit(floor)?, f);
    Ok((lhs.limit_floor(floor), rhs.limit_floor(floor)))
}

/// Σ_{i≥1} q^i/(1-q^i)^2 = Σ σ₁(n) q^n, stored under `q -> q^{-1}` with floor `-order`.
pub fn lambert_sigma(order: u32) -> DescSeries {
    let floor = HalfExp::int(-(order as i64));
    DescSeries::from_terms(
        (1..=order as i64).map(|n| (HalfExp::int(-n), coeff_int(sigma1(n)))),
        Some(floor),
    )
}

/// Σ_{i≥1} q^{-i}/(1-q^{-i})^2 summed term by term, truncated at `floor`.
pub fn lambert_sigma_direct(floor: HalfExp) -> DescSeries {
    let mut acc = DescSeries::zero_to(floor);
    let mut i = 1i64;
    while HalfExp::int(-i) >= floor {
        let g = geometric(HalfExp::int(-i), floor);
        let t = g.mul_to(&g, Some(floor)).shift(HalfExp::int(-i)).limit_floor(floor);
        acc = acc.add_series(&t);
        i += 1;
    }
    acc
}

/// Σ_{i≥1} q^{-i}/(1-q^{-i}), the divisor-count series, truncated at `floor`.
pub fn lambert_tau(floor: HalfExp) -> DescSeries {
    let mut acc = DescSeries::zero_to(floor);
    let mut i = 1i64;
    while HalfExp::int(-i) >= floor {
        let t = geometric(HalfExp::int(-i), floor).shift(HalfExp::int(-i)).limit_floor(floor);
        acc = acc.add_series(&t);
        i += 1;
    }
    acc
}

/// Sum of divisors.
pub fn sigma1(n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

/// Euler's product `∏_{n≥0}(1 - q^{-n} z)` expanded by its sum side
/// `Σ (-1)^n q^{-n(n-1)/2} z^n/[n]!`.
pub fn euler_e_sum(z: &DescSeries, floor: HalfExp) -> DescSeries {
    let f = Some(floor);
    let mut acc = DescSeries::one().limit_floor(floor);
    let mut zn = DescSeries::one();
    let zt = z.top().unwrap_or(HalfExp::int(-1));
    for n in 1u32.. {
        let shift = HalfExp::int(-((n as i64) * (n as i64 - 1) / 2));
        let deg = zt * (n as i64) + shift;
        // beyond this point the q^{-n(n-1)/2} factor wins for good
        if deg < floor && zt - HalfExp::int(n as i64) < HalfExp::ZERO {
            break;
        }
        zn = zn.mul_series(z);
        if zn.is_zero() {
            break;
        }
        let sign = if n % 2 == 1 { -ExactCoeff::one() } else { ExactCoeff::one() };
        let rel = floor - deg;
        let inv = inv_q_factorial(n, rel.min(HalfExp::ZERO));
        let term = zn.shift(shift).mul_to(&inv, f).scale(&sign);
        acc = acc.add_series(&term);
    }
    acc
}

/// Euler's product `∏_{n≥0} 1/(1 - q^{-n} z)` expanded by its sum side
/// `Σ z^n/[n]!`; needs `deg z < 0`.
pub fn euler_h_sum(z: &DescSeries, floor: HalfExp) -> DescSeries {
    let f = Some(floor);
    let mut acc = DescSeries::one().limit_floor(floor);
    let mut zn = DescSeries::one();
    let zt = z.top().unwrap_or(HalfExp::int(-1));
    assert!(zt < HalfExp::ZERO, "Euler h-product needs deg z < 0");
    for n in 1u32.. {
        let deg = zt * (n as i64);
        if deg < floor {
            break;
        }
        zn = zn.mul_series(z);
        let inv = inv_q_factorial(n, floor - deg);
        acc = acc.add_series(&zn.mul_to(&inv, f));
    }
    acc
}

/// Integer power series coefficients of `∏_{n≥1} (1-q^n)^{-k}` up to `order`.
pub fn eta_power_inverse(k: i64, order: usize) -> Vec<BigInt> {
    // Euler's recurrence via logarithmic derivative:
    // m a_m = k Σ_{j=1}^{m} σ₁(j) a_{m-j}
    let mut a = vec![BigInt::zero(); order + 1];
    a[0] = BigInt::one();
    for m in 1..=order {
        let mut s = BigInt::zero();
        for j in 1..=m {
            s += BigInt::from(sigma1(j as i64)) * &a[m - j];
        }
        a[m] = s * BigInt::from(k) / BigInt::from(m as i64);
    }
    a
}
