//! Changes of basis in the space of symmetric Laurent polynomials and the
//! induced transforms between `n^g_d`, `N^g_d` and `E^h_d`.
//!
//! `S_g = (q^{1/2} - q^{-1/2})^{2g}`, `R_g = q^g + q^{g-2} + ... + q^{-g}`,
//! `T_0 = 1`, `T_g = S_1 (q^{g-1} + q^{1-g})` for `g ≥ 2`, `T_1 = S_1`.
//! Each function returns the coordinates `c_0..=c_g`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::qseries::binom;

fn sign(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `S_g = Σ_j (-1)^{g-j} (C(2g, g-j) - C(2g, g-j-2)) R_j`.
pub fn basis_s_to_r(g: usize) -> Vec<BigInt> {
    let g = g as i64;
    (0..=g)
        .map(|j| sign(g - j) * (binom(2 * g, g - j) - binom(2 * g, g - j - 2)))
        .collect()
}

/// `R_g = Σ_j C(g+j+1, g-j) S_j`.
pub fn basis_r_to_s(g: usize) -> Vec<BigInt> {
    let g = g as i64;
    (0..=g).map(|j| binom(g + j + 1, g - j)).collect()
}

/// `S_g = Σ_{j=1}^g (-1)^{g-j} C(2g-2, g-j) T_j`, and `S_0 = T_0`.
pub fn basis_s_to_t(g: usize) -> Vec<BigInt> {
    if g == 0 {
        return vec![BigInt::one()];
    }
    let g = g as i64;
    (0..=g)
        .map(|j| if j == 0 { BigInt::zero() } else { sign(g - j) * binom(2 * g - 2, g - j) })
        .collect()
}

/// `T_g = Σ_{j=1}^g (C(g+j-1, g-j) - C(g+j-3, g-2-j)) S_j`, and `T_0 = S_0`.
pub fn basis_t_to_s(g: usize) -> Vec<BigInt> {
    if g == 0 {
        return vec![BigInt::one()];
    }
    let g = g as i64;
    (0..=g)
        .map(|j| {
            if j == 0 {
                BigInt::zero()
            } else {
                binom(g + j - 1, g - j) - binom(g + j - 3, g - 2 - j)
            }
        })
        .collect()
}

// y_h = Σ_g x_g basis(g)_h
fn apply(x: &[BigInt], basis: fn(usize) -> Vec<BigInt>) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); x.len()];
    for (g, xg) in x.iter().enumerate() {
        if xg.is_zero() {
            continue;
        }
        for (h, c) in basis(g).iter().enumerate() {
            out[h] += xg * c;
        }
    }
    out
}

fn alternate(x: &[BigInt]) -> Vec<BigInt> {
    x.iter().enumerate().map(|(g, v)| sign(g as i64) * v).collect()
}

/// `N^h = (-1)^h Σ_g n^g (C(2g, g-h) - C(2g, g-h-2))`.
pub fn n_to_big_n(n: &[BigInt]) -> Vec<BigInt> {
    apply(&alternate(n), basis_s_to_r)
}

/// `n^g = (-1)^g Σ_h N^h C(g+h+1, h-g)`.
pub fn big_n_to_n(big_n: &[BigInt]) -> Vec<BigInt> {
    alternate(&apply(big_n, basis_r_to_s))
}

/// `E^h = (-1)^h Σ_g C(2g-2, g-h) n^g` for `h ≥ 1`, and `E^0 = n^0`.
pub fn n_to_e(n: &[BigInt]) -> Vec<BigInt> {
    apply(&alternate(n), basis_s_to_t)
}

/// `n^g = (-1)^g Σ_h E^h (C(h+g-1, h-g) - C(h+g-3, h-g-2))` for `g ≥ 1`,
/// and `n^0 = E^0`.
pub fn e_to_n(e: &[BigInt]) -> Vec<BigInt> {
    alternate(&apply(e, basis_t_to_s))
}
