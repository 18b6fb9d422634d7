//! Determinants of small matrices with series entries.
//!
//! Cofactor expansion up to size 4, Bareiss elimination above. Bareiss needs
//! every leading principal minor to be invertible; for Jacobi–Trudi matrices
//! those minors are Schur functions of truncated partitions, hence nonzero.

use crate::qseries::{DescSeries, HalfExp};

/// Entry of a Jacobi–Trudi style matrix: `None` is an exact zero.
pub(crate) type Entry = Option<DescSeries>;

pub(crate) fn det_cofactor(m: &[Vec<Entry>], floor: HalfExp) -> DescSeries {
    let n = m.len();
    if n == 0 {
        return DescSeries::one();
    }
    let cols: Vec<usize> = (0..n).collect();
    expand(m, 0, &cols).limit_floor(floor)
}

fn expand(m: &[Vec<Entry>], row: usize, cols: &[usize]) -> DescSeries {
    if cols.len() == 1 {
        return m[row][cols[0]].clone().unwrap_or_else(DescSeries::zero);
    }
    let mut acc = DescSeries::zero();
    for (k, &c) in cols.iter().enumerate() {
        let Some(a) = &m[row][c] else { continue };
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = expand(m, row + 1, &rest);
        if minor.is_zero() && minor.is_exact() {
            continue;
        }
        let term = a.mul_series(&minor);
        acc = if k % 2 == 0 { acc.add_series(&term) } else { acc.sub_series(&term) };
    }
    acc
}

/// Bareiss fraction-free elimination. Returns `None` if a pivot vanishes
/// within the available precision.
pub(crate) fn det_bareiss(m: &[Vec<Entry>]) -> Option<DescSeries> {
    let n = m.len();
    if n == 0 {
        return Some(DescSeries::one());
    }
    let mut a: Vec<Vec<DescSeries>> = m
        .iter()
        .map(|r| r.iter().map(|e| e.clone().unwrap_or_else(DescSeries::zero)).collect())
        .collect();
    let mut prev: Option<DescSeries> = None;
    for k in 0..n - 1 {
        let pivot = a[k][k].clone();
        pivot.top()?;
        for i in k + 1..n {
            for j in k + 1..n {
                let num = pivot.mul_series(&a[i][j]).sub_series(&a[i][k].mul_series(&a[k][j]));
                a[i][j] = match &prev {
                    None => num,
                    Some(p) => exact_div(&num, p)?,
                };
            }
        }
        prev = Some(pivot);
    }
    Some(a[n - 1][n - 1].clone())
}

// Division known to be exact in the polynomial ring of the entries, so the
// quotient is as precise as the inputs allow.
fn exact_div(a: &DescSeries, b: &DescSeries) -> Option<DescSeries> {
    let tb = b.top()?;
    let Some(ta) = a.top() else {
        let f = a.floor().map(|f| f - tb);
        return Some(DescSeries::zero().limit_floor_opt(f));
    };
    let natural = [a.floor().map(|f| f - tb), b.floor().map(|f| f + ta - tb * 2)]
        .into_iter()
        .flatten()
        .max()?;
    a.div_to(b, natural).ok()
}
