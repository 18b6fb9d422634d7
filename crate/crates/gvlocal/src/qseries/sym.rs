//! Symmetric Laurent polynomials `p(q) = p(q^{-1})` with integer exponents.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DescSeries, ExactCoeff, HalfExp, SeriesError};

/// `coeffs[j]` is the common coefficient of `q^j` and `q^{-j}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymLaurent {
    coeffs: Vec<ExactCoeff>,
}

impl SymLaurent {
    pub fn zero() -> Self {
        SymLaurent { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactCoeff>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SymLaurent { coeffs }
    }

    /// Coefficient of `q^{±j}`.
    pub fn coeff(&self, j: usize) -> ExactCoeff {
        self.coeffs.get(j).cloned().unwrap_or_else(ExactCoeff::zero)
    }

    pub fn coeffs(&self) -> &[ExactCoeff] {
        &self.coeffs
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `S_g = (q^{1/2} - q^{-1/2})^{2g}`.
    pub fn s_basis(g: usize) -> Self {
        // (q - 2 + q^{-1})^g: coefficient of q^j is (-1)^{g-j} C(2g, g-j)
        let c = (0..=g)
            .map(|j| {
                let b = binom_u(2 * g, g - j);
                if (g - j) % 2 == 0 {
                    ExactCoeff::from_integer(b)
                } else {
                    -ExactCoeff::from_integer(b)
                }
            })
            .collect();
        Self::from_coeffs(c)
    }

    /// `R_g = q^g + q^{g-2} + ... + q^{-g}`.
    pub fn r_basis(g: usize) -> Self {
        let c = (0..=g)
            .map(|j| if (g - j) % 2 == 0 { ExactCoeff::one() } else { ExactCoeff::zero() })
            .collect();
        Self::from_coeffs(c)
    }

    /// `T_0 = 1`, `T_1 = S_1`, `T_g = S_1 (q^{g-1} + q^{-(g-1)})` for `g ≥ 2`.
    pub fn t_basis(g: usize) -> Self {
        match g {
            0 => Self::from_coeffs(vec![ExactCoeff::one()]),
            1 => Self::s_basis(1),
            _ => {
                let s1 = Self::s_basis(1).to_series();
                let m = DescSeries::poly_int(&[(g as i64 - 1, 1), (1 - g as i64, 1)]);
                Self::from_series(&s1.mul_series(&m)).expect("symmetric by construction")
            }
        }
    }

    /// Expands to an exact descending series.
    pub fn to_series(&self) -> DescSeries {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push((HalfExp::int(j as i64), c.clone()));
            if j > 0 {
                terms.push((HalfExp::int(-(j as i64)), c.clone()));
            }
        }
        DescSeries::from_terms(terms, None)
    }

    /// Reads an exact symmetric polynomial with integer exponents.
    pub fn from_series(s: &DescSeries) -> Result<Self, SeriesError> {
        if !s.is_exact() {
            return Err(SeriesError::NotExact);
        }
        let Some(top) = s.top() else {
            return Ok(Self::zero());
        };
        let Some(t) = top.as_integer().filter(|t| *t >= 0) else {
            return Err(SeriesError::Parse("not a symmetric Laurent polynomial".into()));
        };
        let c: Vec<ExactCoeff> =
            (0..=t).map(|j| s.coeff(HalfExp::int(j)).unwrap()).collect();
        let me = Self::from_coeffs(c);
        if &me.to_series() != s {
            return Err(SeriesError::Parse("not a symmetric Laurent polynomial".into()));
        }
        Ok(me)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|j| self.coeff(j) + o.coeff(j)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|j| self.coeff(j) - o.coeff(j)).collect())
    }

    pub fn scale(&self, c: &ExactCoeff) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_series(&self.to_series().mul_series(&o.to_series())).expect("closed under products")
    }

    /// Σ c_g basis(g).
    pub fn combination(c: &[ExactCoeff], basis: fn(usize) -> Self) -> Self {
        c.iter()
            .enumerate()
            .fold(Self::zero(), |acc, (g, x)| acc.add(&basis(g).scale(x)))
    }

    /// Coordinates in a basis whose `g`-th element has top term `q^g`
    /// with coefficient 1, by peeling from the top.
    pub fn decompose(&self, basis: fn(usize) -> Self) -> Vec<ExactCoeff> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut rest = self.clone();
        let mut out = vec![ExactCoeff::zero(); deg + 1];
        for g in (0..=deg).rev() {
            let c = rest.coeff(g);
            if !c.is_zero() {
                rest = rest.sub(&basis(g).scale(&c));
            }
            out[g] = c;
        }
        debug_assert!(rest.is_zero());
        out
    }
}

/// Binomial coefficient for nonnegative arguments.
pub fn binom_u(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Binomial `C(n, k)` that vanishes unless `0 ≤ k ≤ n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        BigInt::zero()
    } else {
        binom_u(n as usize, k as usize)
    }
}

/// Binomial `C(n, k)` as a polynomial in the upper index: zero for `k < 0`,
/// `n(n-1)...(n-k+1)/k!` otherwise, for any integer `n`.
pub fn binom_gen(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

#[cfg(test)]
pub(crate) fn int_coeff(n: i64) -> ExactCoeff {
    super::coeff_int(n)
}
