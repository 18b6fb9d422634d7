//! Truncated Laurent series in descending powers of `q`.
//!
//! Exponents are half-integers stored doubled, coefficients are exact
//! rationals. Every series carries a floor: the lowest exponent whose
//! coefficient is still known. A series without a floor is an exact
//! Laurent polynomial.
//!
//! Ascending generating functions in `q` are represented by the same type
//! after the substitution `q -> q^{-1}`: the coefficient of `q^n` in the
//! ascending series is stored at exponent `-n`. See [`DescSeries::reflect`]
//! and the helpers in [`crate::closedform::asc`].

mod calc;
mod sym;
mod text;

pub use calc::*;
pub use sym::{binom, binom_gen, binom_u, SymLaurent};

use std::cmp::max;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact coefficient type.
pub type ExactCoeff = BigRational;

/// Builds an integer coefficient.
pub fn coeff_int(n: i64) -> ExactCoeff {
    ExactCoeff::from_integer(BigInt::from(n))
}

/// Builds the coefficient `n/d`.
pub fn coeff_ratio(n: i64, d: i64) -> ExactCoeff {
    ExactCoeff::new(BigInt::from(n), BigInt::from(d))
}

/// Half-integer exponent, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfExp(i64);

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp(0);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfExp(doubled)
    }

    /// The integer exponent `n`.
    pub const fn int(n: i64) -> Self {
        HalfExp(2 * n)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        if self.is_integral() {
            Some(self.0 / 2)
        } else {
            None
        }
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, o: HalfExp) -> HalfExp {
        HalfExp(self.0 + o.0)
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, o: HalfExp) -> HalfExp {
        HalfExp(self.0 - o.0)
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp(-self.0)
    }
}

impl Mul<i64> for HalfExp {
    type Output = HalfExp;
    fn mul(self, k: i64) -> HalfExp {
        HalfExp(self.0 * k)
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series has no leading coefficient and cannot be inverted")]
    NotInvertible,
    #[error("exponent q^{requested} lies below the floor q^{floor}")]
    BelowFloor { requested: HalfExp, floor: HalfExp },
    #[error("degree of the zero series is undefined")]
    ZeroSeries,
    #[error("operation needs an exact Laurent polynomial")]
    NotExact,
    #[error("x-expansion known to order {have}, order {need} requested")]
    XOrder { have: usize, need: usize },
    #[error("series does not converge: {0}")]
    Divergent(String),
    #[error("malformed series text: {0}")]
    Parse(String),
}

/// Truncated Laurent series in descending powers of `q`.
///
/// Stored densely from the top exponent downwards in half steps. The first
/// and last stored coefficients are nonzero and nothing is stored below the
/// floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescSeries {
    hi: i64,
    coeffs: Vec<ExactCoeff>,
    floor: Option<i64>,
}

fn add_opt(a: Option<i64>, b: i64) -> Option<i64> {
    a.map(|x| x + b)
}

impl DescSeries {
    fn from_dense(hi: i64, mut coeffs: Vec<ExactCoeff>, floor: Option<i64>) -> Self {
        if let Some(f) = floor {
            let keep = hi - f + 1;
            if keep <= 0 {
                coeffs.clear();
            } else if (keep as usize) < coeffs.len() {
                coeffs.truncate(keep as usize);
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => DescSeries { hi: 0, coeffs: Vec::new(), floor },
            Some(0) => DescSeries { hi, coeffs, floor },
            Some(k) => {
                coeffs.drain(..k);
                DescSeries { hi: hi - k as i64, coeffs, floor }
            }
        }
    }

    /// Exact zero.
    pub fn zero() -> Self {
        DescSeries { hi: 0, coeffs: Vec::new(), floor: None }
    }

    /// Zero known only down to `floor`.
    pub fn zero_to(floor: HalfExp) -> Self {
        DescSeries { hi: 0, coeffs: Vec::new(), floor: Some(floor.0) }
    }

    pub fn one() -> Self {
        Self::constant(ExactCoeff::one())
    }

    pub fn constant(c: ExactCoeff) -> Self {
        Self::monomial(HalfExp::ZERO, c)
    }

    /// `c q^e` as an exact polynomial.
    pub fn monomial(e: HalfExp, c: ExactCoeff) -> Self {
        Self::from_dense(e.0, vec![c], None)
    }

    /// Builds a series from (exponent, coefficient) pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I, floor: Option<HalfExp>) -> Self
    where
        I: IntoIterator<Item = (HalfExp, ExactCoeff)>,
    {
        let floor = floor.map(|f| f.0);
        let terms: Vec<(i64, ExactCoeff)> = terms
            .into_iter()
            .filter(|(e, _)| floor.map_or(true, |f| e.0 >= f))
            .map(|(e, c)| (e.0, c))
            .collect();
        let Some(hi) = terms.iter().map(|t| t.0).max() else {
            return DescSeries { hi: 0, coeffs: Vec::new(), floor };
        };
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let mut coeffs = vec![ExactCoeff::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(hi - e) as usize] += c;
        }
        Self::from_dense(hi, coeffs, floor)
    }

    /// Exact polynomial with integer exponents from (exponent, integer) pairs.
    pub fn poly_int(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (HalfExp::int(e), coeff_int(c))), None)
    }

    pub fn top(&self) -> Option<HalfExp> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(HalfExp(self.hi))
        }
    }

    pub fn floor(&self) -> Option<HalfExp> {
        self.floor.map(HalfExp)
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// No nonzero terms (above the floor).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, if any.
    pub fn lead(&self) -> Option<&ExactCoeff> {
        self.coeffs.first()
    }

    /// Nonzero terms in descending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (HalfExp, &ExactCoeff)> + '_ {
        let hi = self.hi;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (HalfExp(hi - i as i64), c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coefficient of `q^e`; errors below the floor.
    pub fn coeff(&self, e: HalfExp) -> Result<ExactCoeff, SeriesError> {
        if let Some(f) = self.floor {
            if e.0 < f {
                return Err(SeriesError::BelowFloor { requested: e, floor: HalfExp(f) });
            }
        }
        Ok(self.coeff_raw(e.0))
    }

    fn coeff_raw(&self, d: i64) -> ExactCoeff {
        if self.coeffs.is_empty() || d > self.hi {
            return ExactCoeff::zero();
        }
        let i = (self.hi - d) as usize;
        self.coeffs.get(i).cloned().unwrap_or_else(ExactCoeff::zero)
    }

    fn coeff_ref(&self, d: i64) -> Option<&ExactCoeff> {
        if d > self.hi {
            return None;
        }
        self.coeffs.get((self.hi - d) as usize)
    }

    /// Top exponent; errors on the zero series.
    pub fn deg_q(&self) -> Result<HalfExp, SeriesError> {
        self.top().ok_or(SeriesError::ZeroSeries)
    }

    // Top used for floor propagation: an inexact empty series may still hide
    // terms just below its floor.
    fn eff_top(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.floor.map(|f| f - 1)
        } else {
            Some(self.hi)
        }
    }

    fn lowest(&self) -> i64 {
        self.hi - self.coeffs.len() as i64 + 1
    }

    /// `f|_{q >= m}`: drops terms below `m` and sets the floor to `m`.
    pub fn truncate_at(&self, m: HalfExp) -> Result<Self, SeriesError> {
        if let Some(f) = self.floor {
            if m.0 < f {
                return Err(SeriesError::BelowFloor { requested: m, floor: HalfExp(f) });
            }
        }
        Ok(Self::from_dense(self.hi, self.coeffs.clone(), Some(m.0)))
    }

    /// Raises the floor to at least `m`, never lowering it.
    pub fn limit_floor(&self, m: HalfExp) -> Self {
        let f = max(self.floor, Some(m.0));
        Self::from_dense(self.hi, self.coeffs.clone(), f)
    }

    /// Raises the floor to at least `m` when given.
    pub fn limit_floor_opt(self, m: Option<HalfExp>) -> Self {
        match m {
            Some(m) if Some(m.0) > self.floor => {
                Self::from_dense(self.hi, self.coeffs, Some(m.0))
            }
            _ => self,
        }
    }

    pub fn scale(&self, c: &ExactCoeff) -> Self {
        if c.is_zero() {
            return DescSeries { hi: 0, coeffs: Vec::new(), floor: self.floor };
        }
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        DescSeries { hi: self.hi, coeffs, floor: self.floor }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: HalfExp) -> Self {
        DescSeries {
            hi: if self.coeffs.is_empty() { 0 } else { self.hi + e.0 },
            coeffs: self.coeffs.clone(),
            floor: add_opt(self.floor, e.0),
        }
    }

    pub fn add_series(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub_series(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let floor = max(self.floor, other.floor);
        let parts: Vec<&DescSeries> =
            [self, other].into_iter().filter(|s| !s.coeffs.is_empty()).collect();
        if parts.is_empty() {
            return DescSeries { hi: 0, coeffs: Vec::new(), floor };
        }
        let hi = parts.iter().map(|s| s.hi).max().unwrap();
        let mut lo = parts.iter().map(|s| s.lowest()).min().unwrap();
        if let Some(f) = floor {
            lo = max(lo, f);
        }
        if lo > hi {
            return DescSeries { hi: 0, coeffs: Vec::new(), floor };
        }
        let mut coeffs = vec![ExactCoeff::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let d = self.hi - i as i64;
            if d < lo {
                break;
            }
            coeffs[(hi - d) as usize] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let d = other.hi - i as i64;
            if d < lo {
                break;
            }
            if negate {
                coeffs[(hi - d) as usize] -= c;
            } else {
                coeffs[(hi - d) as usize] += c;
            }
        }
        Self::from_dense(hi, coeffs, floor)
    }

    /// Cauchy product.
    pub fn mul_series(&self, other: &Self) -> Self {
        self.mul_to(other, None)
    }

    /// Cauchy product, additionally discarding everything below `req`.
    pub fn mul_to(&self, other: &Self, req: Option<HalfExp>) -> Self {
        let exact_zero = |s: &Self| s.coeffs.is_empty() && s.floor.is_none();
        if exact_zero(self) || exact_zero(other) {
            return Self::zero();
        }
        let natural = max(
            self.floor.and_then(|f| other.eff_top().map(|t| f + t)),
            other.floor.and_then(|f| self.eff_top().map(|t| f + t)),
        );
        let floor = max(natural, req.map(|r| r.0));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return DescSeries { hi: 0, coeffs: Vec::new(), floor };
        }
        let hi = self.hi + other.hi;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let n = match floor {
            Some(f) if hi - f + 1 <= 0 => {
                return DescSeries { hi: 0, coeffs: Vec::new(), floor };
            }
            Some(f) => full.min((hi - f + 1) as usize),
            None => full,
        };
        let a: Vec<(usize, &ExactCoeff)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let b: Vec<(usize, &ExactCoeff)> =
            other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut out = vec![ExactCoeff::zero(); n];
        for &(i, x) in &a {
            if i >= n {
                break;
            }
            for &(j, y) in &b {
                if i + j >= n {
                    break;
                }
                out[i + j] += x * y;
            }
        }
        Self::from_dense(hi, out, floor)
    }

    /// Multiplicative inverse down to `floor` (or further if exactness allows).
    ///
    /// The result is correct down to `max(floor, self.floor - 2*top)`.
    pub fn invert_unit(&self, floor: HalfExp) -> Result<Self, SeriesError> {
        let Some(a0) = self.coeffs.first() else {
            return Err(SeriesError::NotInvertible);
        };
        let inv0 = a0.recip();
        if self.floor.is_none() && self.num_terms() == 1 {
            return Ok(Self::monomial(HalfExp(-self.hi), inv0));
        }
        let res_floor = max(Some(floor.0), add_opt(self.floor, -2 * self.hi)).unwrap();
        let res_hi = -self.hi;
        if res_hi < res_floor {
            return Ok(DescSeries { hi: 0, coeffs: Vec::new(), floor: Some(res_floor) });
        }
        let n = (res_hi - res_floor + 1) as usize;
        let a: Vec<(usize, &ExactCoeff)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let minus_inv0 = -inv0.clone();
        let mut b: Vec<ExactCoeff> = Vec::with_capacity(n);
        b.push(inv0);
        for k in 1..n {
            let mut acc = ExactCoeff::zero();
            for &(i, x) in &a {
                if i > k {
                    break;
                }
                let y = &b[k - i];
                if !y.is_zero() {
                    acc += x * y;
                }
            }
            if !acc.is_zero() {
                acc *= &minus_inv0;
            }
            b.push(acc);
        }
        Ok(Self::from_dense(res_hi, b, Some(res_floor)))
    }

    /// `self / other`, truncated at `floor`.
    pub fn div_to(&self, other: &Self, floor: HalfExp) -> Result<Self, SeriesError> {
        let top = self.eff_top().unwrap_or(0);
        let inv = other.invert_unit(floor - HalfExp(top))?;
        Ok(self.mul_to(&inv, Some(floor)))
    }

    /// `self^k`; negative powers invert first.
    pub fn pow_to(&self, k: i64, floor: Option<HalfExp>) -> Result<Self, SeriesError> {
        if k < 0 {
            let f = floor.ok_or(SeriesError::NotExact)?;
            let t = self.deg_q()?;
            let base = self.invert_unit(f + t * (-k - 1))?;
            return base.pow_to(-k, floor);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_to(&base, floor);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_to(&base, floor);
            }
        }
        Ok(result.limit_floor_opt(floor))
    }

    /// Substitutes `q -> q^k` for a positive integer `k`.
    pub fn dilate(&self, k: u32) -> Self {
        let k = k as i64;
        let terms: Vec<(HalfExp, ExactCoeff)> =
            self.iter().map(|(e, c)| (HalfExp(e.0 * k), c.clone())).collect();
        Self::from_terms(terms, self.floor.map(|f| HalfExp(f * k)))
    }

    /// Substitutes `q -> q^{-1}`; defined only for exact polynomials.
    pub fn reflect(&self) -> Result<Self, SeriesError> {
        if self.floor.is_some() {
            return Err(SeriesError::NotExact);
        }
        Ok(Self::from_terms(self.iter().map(|(e, c)| (-e, c.clone())), None))
    }

    /// Highest exponent `>= from` where the two series differ, if any.
    pub fn first_mismatch(&self, other: &Self, from: HalfExp) -> Result<Option<HalfExp>, SeriesError> {
        for s in [self, other] {
            if let Some(f) = s.floor {
                if from.0 < f {
                    return Err(SeriesError::BelowFloor { requested: from, floor: HalfExp(f) });
                }
            }
        }
        let mut hi = from.0;
        for s in [self, other] {
            if !s.coeffs.is_empty() {
                hi = hi.max(s.hi);
            }
        }
        let zero = ExactCoeff::zero();
        let mut d = hi;
        while d >= from.0 {
            let x = self.coeff_ref(d).unwrap_or(&zero);
            let y = other.coeff_ref(d).unwrap_or(&zero);
            if x != y {
                return Ok(Some(HalfExp(d)));
            }
            d -= 1;
        }
        Ok(None)
    }

    /// Equality of all coefficients at exponents `>= from`.
    pub fn agrees_from(&self, other: &Self, from: HalfExp) -> Result<bool, SeriesError> {
        Ok(self.first_mismatch(other, from)?.is_none())
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Every stored exponent is an integer.
    pub fn has_integer_exponents(&self) -> bool {
        self.iter().all(|(e, _)| e.is_integral())
    }

    /// Sum of `|c|` over all terms; used by tests as a cheap fingerprint.
    pub fn abs_mass(&self) -> ExactCoeff {
        self.coeffs.iter().fold(ExactCoeff::zero(), |acc, c| acc + c.abs())
    }

    /// Human readable rendering such as `q^2 - 3q^-1/2 + ... + O(q^-5)`.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.iter() {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = a.is_one();
            if !unit || e == HalfExp::ZERO {
                out.push_str(&a.to_string());
            }
            if e != HalfExp::ZERO {
                if e == HalfExp::int(1) {
                    out.push('q');
                } else {
                    out.push_str(&format!("q^{e}"));
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        if let Some(f) = self.floor {
            out.push_str(&format!(" + O(q^{})", HalfExp(f)));
        }
        out
    }
}

impl Default for DescSeries {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a DescSeries> for &'a DescSeries {
    type Output = DescSeries;
    fn add(self, o: &DescSeries) -> DescSeries {
        self.add_series(o)
    }
}

impl<'a> Sub<&'a DescSeries> for &'a DescSeries {
    type Output = DescSeries;
    fn sub(self, o: &DescSeries) -> DescSeries {
        self.sub_series(o)
    }
}

impl<'a> Mul<&'a DescSeries> for &'a DescSeries {
    type Output = DescSeries;
    fn mul(self, o: &DescSeries) -> DescSeries {
        self.mul_series(o)
    }
}

impl Add for DescSeries {
    type Output = DescSeries;
    fn add(self, o: DescSeries) -> DescSeries {
        self.add_series(&o)
    }
}

impl Sub for DescSeries {
    type Output = DescSeries;
    fn sub(self, o: DescSeries) -> DescSeries {
        self.sub_series(&o)
    }
}

impl Mul for DescSeries {
    type Output = DescSeries;
    fn mul(self, o: DescSeries) -> DescSeries {
        self.mul_series(&o)
    }
}

impl Neg for &DescSeries {
    type Output = DescSeries;
    fn neg(self) -> DescSeries {
        self.scale(&-ExactCoeff::one())
    }
}

impl Neg for DescSeries {
    type Output = DescSeries;
    fn neg(self) -> DescSeries {
        -&self
    }
}

#[cfg(test)]
mod tests;
