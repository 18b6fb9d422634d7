//! Plain-text form of a series:
//! `top=<doubled|none>;floor=<doubled|exact>;terms=<doubled>:<num>/<den>,...`
//! with terms in descending exponent order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{DescSeries, ExactCoeff, HalfExp, SeriesError};

impl DescSeries {
    pub fn to_text(&self) -> String {
        let top = match self.top() {
            Some(t) => t.doubled().to_string(),
            None => "none".to_string(),
        };
        let floor = match self.floor() {
            Some(f) => f.doubled().to_string(),
            None => "exact".to_string(),
        };
        let terms: Vec<String> = self
            .iter()
            .map(|(e, c)| format!("{}:{}/{}", e.doubled(), c.numer(), c.denom()))
            .collect();
        format!("top={top};floor={floor};terms={}", terms.join(","))
    }

    pub fn from_text(s: &str) -> Result<Self, SeriesError> {
        let bad = |m: &str| SeriesError::Parse(m.to_string());
        let mut parts = s.trim().split(';');
        let top = parts.next().and_then(|p| p.strip_prefix("top=")).ok_or_else(|| bad("missing top"))?;
        let floor = parts.next().and_then(|p| p.strip_prefix("floor=")).ok_or_else(|| bad("missing floor"))?;
        let terms = parts.next().and_then(|p| p.strip_prefix("terms=")).ok_or_else(|| bad("missing terms"))?;
        if parts.next().is_some() {
            return Err(bad("trailing fields"));
        }
        let floor = match floor {
            "exact" => None,
            f => Some(HalfExp::from_doubled(f.parse().map_err(|_| bad("floor"))?)),
        };
        let mut list = Vec::new();
        let mut last: Option<i64> = None;
        for t in terms.split(',').filter(|t| !t.is_empty()) {
            let (e, c) = t.split_once(':').ok_or_else(|| bad("term"))?;
            let e: i64 = e.parse().map_err(|_| bad("exponent"))?;
            if last.is_some_and(|l| e >= l) {
                return Err(bad("terms not strictly descending"));
            }
            last = Some(e);
            let (n, d) = c.split_once('/').ok_or_else(|| bad("coefficient"))?;
            let n = BigInt::from_str(n).map_err(|_| bad("numerator"))?;
            let d = BigInt::from_str(d).map_err(|_| bad("denominator"))?;
            if d <= BigInt::from(0) {
                return Err(bad("denominator must be positive"));
            }
            let c = ExactCoeff::new_raw(n, d);
            let reduced = ExactCoeff::new(c.numer().clone(), c.denom().clone());
            if reduced.numer() != c.numer() || reduced.denom() != c.denom() {
                return Err(bad("coefficient not in lowest terms"));
            }
            if c == ExactCoeff::from_integer(BigInt::from(0)) {
                return Err(bad("zero coefficient"));
            }
            if floor.is_some_and(|f: HalfExp| e < f.doubled()) {
                return Err(bad("term below floor"));
            }
            list.push((HalfExp::from_doubled(e), c));
        }
        let s = DescSeries::from_terms(list, floor);
        let want_top = match top {
            "none" => None,
            t => Some(HalfExp::from_doubled(t.parse().map_err(|_| bad("top"))?)),
        };
        if s.top() != want_top {
            return Err(bad("top does not match terms"));
        }
        Ok(s)
    }
}

impl fmt::Display for DescSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for DescSeries {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, SeriesError> {
        Self::from_text(s)
    }
}
