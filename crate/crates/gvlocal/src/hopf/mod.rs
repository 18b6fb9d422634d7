//! Hopf-link invariants `W_{μν}(q) = s_μ(q^ρ) s_ν(q^{μ+ρ})`.
//!
//! Here `q^ρ = (q^{-1/2}, q^{-3/2}, ...)` and `q^{μ+ρ}` shifts the i-th
//! variable by `q^{μ_i}`. The shifted Schur function is evaluated by
//! Jacobi–Trudi; the character expansion over power sums is kept as an
//! independent oracle.

mod det;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use crate::partitions::{character, enumerate, Partition};
use crate::qseries::{coeff_int, geometric, inv_q_factorial, DescSeries, ExactCoeff, HalfExp};
use det::{det_bareiss, det_cofactor, Entry};

/// A Hopf-link invariant together with its labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfInvariant {
    pub mu: Partition,
    pub nu: Partition,
    pub value: DescSeries,
}

// doubled exponent of the i-th variable (1-based) of q^{μ+ρ}
fn var_exp(mu: &Partition, i: usize) -> i64 {
    2 * mu.part(i) as i64 - 2 * i as i64 + 1
}

/// `deg s_μ(q^ρ) = -|μ|/2 - n(μ)`.
pub fn schur_principal_degree(mu: &Partition) -> HalfExp {
    HalfExp::from_doubled(-(mu.size() as i64) - 2 * mu.n_mu())
}

/// `s_μ(q^ρ) = q^{-|μ|/2 - n(μ)} ∏_{x∈μ} 1/(1 - q^{-h(x)})`.
pub fn schur_principal(mu: &Partition, floor: HalfExp) -> DescSeries {
    if mu.is_empty() {
        return DescSeries::one();
    }
    let t = schur_principal_degree(mu);
    let f = floor - t;
    let mut acc = DescSeries::one();
    for h in mu.hooks() {
        if f > HalfExp::ZERO {
            break;
        }
        acc = acc.mul_to(&geometric(HalfExp::int(-(h as i64)), f), Some(f));
    }
    acc.limit_floor(f).shift(t)
}

/// Exact degree of `s_ν(q^{μ+ρ})`, namely `Σ ν_i (μ_i - i + 1/2)`; the
/// leading coefficient is 1.
pub fn schur_shifted_degree(nu: &Partition, mu: &Partition) -> HalfExp {
    let d: i64 = nu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 * var_exp(mu, i + 1))
        .sum();
    HalfExp::from_doubled(d)
}

/// Exact degree of `W_{μν}`; its leading coefficient is 1.
pub fn leading_degree(mu: &Partition, nu: &Partition) -> HalfExp {
    schur_principal_degree(mu) + schur_shifted_degree(nu, mu)
}

/// Upper bound on `deg W_{μν}` in three tiers: `|μ||ν| - (|μ|+|ν|)/2`,
/// lowered by `|ν|+1` unless `μ` is a row, and by `2(|ν|+1)` unless `μ` is
/// also not the hook `(|μ|-1, 1)`.
pub fn degree_bound(mu: &Partition, nu: &Partition) -> HalfExp {
    let (m, n) = (mu.size() as i64, nu.size() as i64);
    let base = 2 * m * n - (m + n);
    let drop = match bound_tier(mu) {
        0 => 0,
        1 => n + 1,
        _ => 2 * (n + 1),
    };
    HalfExp::from_doubled(base - 2 * drop)
}

/// Which clause of the degree bound applies to `μ`: 0 for rows, 1 for the
/// hook `(|μ|-1, 1)`, 2 otherwise.
pub fn bound_tier(mu: &Partition) -> u8 {
    if mu.is_row() {
        0
    } else if mu.parts() == [mu.size() - 1, 1] {
        1
    } else {
        2
    }
}

/// Whether the bound of [`degree_bound`] is predicted to be attained.
pub fn bound_attained(mu: &Partition, nu: &Partition) -> bool {
    let n = mu.size();
    nu.is_row()
        && match bound_tier(mu) {
            0 | 1 => true,
            _ => n >= 4 && mu.parts() == [n - 2, 2],
        }
}

/// Power sum `p_m(q^{μ+ρ})`, used by the character oracle.
fn power_sum(mu: &Partition, m: u32, floor: HalfExp) -> DescSeries {
    let m = m as i64;
    let l = mu.len();
    let mut terms: Vec<(HalfExp, ExactCoeff)> = (1..=l)
        .map(|i| (HalfExp::from_doubled(m * var_exp(mu, i)), coeff_int(1)))
        .collect();
    let tail_top = HalfExp::from_doubled(m * var_exp(mu, l + 1));
    if tail_top >= floor {
        let g = geometric(HalfExp::int(-m), floor - tail_top).shift(tail_top);
        terms.extend(g.iter().map(|(e, c)| (e, c.clone())));
    }
    let mut out = DescSeries::from_terms(std::iter::empty(), Some(floor));
    for (e, c) in terms {
        out = out.add_series(&DescSeries::monomial(e, c));
    }
    out.limit_floor(floor)
}

/// `s_ν(q^{μ+ρ})` through the character expansion
/// `s_ν = Σ_η χ_ν(η) p_η / z_η`. Slow; meant as an oracle.
pub fn schur_shifted_oracle(nu: &Partition, mu: &Partition, floor: HalfExp) -> DescSeries {
    let n = nu.size();
    let a1 = HalfExp::from_doubled(var_exp(mu, 1));
    let mut acc = DescSeries::zero().limit_floor(floor);
    for eta in enumerate(n) {
        let chi = character(nu, &eta).expect("equal sizes");
        if chi == 0 {
            continue;
        }
        let mut prod = DescSeries::one();
        let mut left = n as i64;
        for &m in eta.parts() {
            // p_m tops out at m·a1
            let p = power_sum(mu, m, floor - a1 * (n as i64 - m as i64));
            left -= m as i64;
            prod = prod.mul_to(&p, Some(floor - a1 * left));
        }
        let c = ExactCoeff::new(chi.into(), eta.z());
        acc = acc.add_series(&prod.scale(&c));
    }
    acc.limit_floor(floor)
}

/// Which Jacobi–Trudi form to use: the h-form has size `l(ν)`, the e-form
/// size `ν_1`.
fn use_e_form(nu: &Partition) -> bool {
    nu.len() > nu.part(1) as usize
}

// Top exponents of h_k or e_k at q^{μ+ρ} for k = 0..=kmax.
fn entry_tops(mu: &Partition, kmax: usize, e_form: bool) -> Vec<HalfExp> {
    let mut tops = Vec::with_capacity(kmax + 1);
    let mut acc = 0i64;
    for k in 0..=kmax {
        let t = if e_form {
            if k > 0 {
                acc += var_exp(mu, k);
            }
            acc
        } else {
            k as i64 * var_exp(mu, 1)
        };
        tops.push(HalfExp::from_doubled(t));
    }
    tops
}

/// `h_k(q^{μ+ρ})` (or `e_k`) for `k = 0..floors.len()`, each truncated at its
/// own floor.
fn hook_entries(mu: &Partition, floors: &[HalfExp], e_form: bool) -> Vec<DescSeries> {
    let kmax = floors.len().saturating_sub(1);
    let l = mu.len();
    // finitely many variables: exact polynomials
    let mut fin = vec![DescSeries::zero(); kmax + 1];
    fin[0] = DescSeries::one();
    for i in 1..=l {
        let x = HalfExp::from_doubled(var_exp(mu, i));
        let mut next = vec![DescSeries::zero(); kmax + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            if e_form {
                *slot = fin[j].clone();
                if j > 0 {
                    *slot = slot.add_series(&fin[j - 1].shift(x));
                }
            } else {
                let mut s = DescSeries::zero();
                for a in 0..=j {
                    s = s.add_series(&fin[j - a].shift(x * a as i64));
                }
                *slot = s;
            }
        }
        fin = next;
    }
    // geometric tail q^{-(l+1/2)} (1, q^{-1}, q^{-2}, ...)
    let lead = -(2 * l as i64 + 1);
    let tail_top = |m: usize| {
        let m = m as i64;
        let extra = if e_form { -m * (m - 1) } else { 0 };
        HalfExp::from_doubled(m * lead + extra)
    };
    let mut tail_floor = vec![None::<HalfExp>; kmax + 1];
    for (k, &f) in floors.iter().enumerate() {
        for (j, p) in fin.iter().enumerate().take(k + 1) {
            if let Some(t) = p.top() {
                let need = f - t;
                let slot = &mut tail_floor[k - j];
                *slot = Some(slot.map_or(need, |s: HalfExp| s.min(need)));
            }
        }
    }
    let tails: Vec<Option<DescSeries>> = (0..=kmax)
        .map(|m| {
            tail_floor[m].map(|f| {
                let t = tail_top(m);
                let fl = f - t;
                if fl > HalfExp::ZERO {
                    DescSeries::zero_to(f)
                } else {
                    inv_q_factorial(m as u32, fl).shift(t)
                }
            })
        })
        .collect();
    floors
        .iter()
        .enumerate()
        .map(|(k, &f)| {
            let mut s = DescSeries::zero().limit_floor(f);
            for j in 0..=k {
                if fin[j].is_zero() {
                    continue;
                }
                if let Some(t) = &tails[k - j] {
                    s = s.add_series(&fin[j].mul_to(t, Some(f)));
                }
            }
            s.limit_floor(f)
        })
        .collect()
}

/// `s_ν(q^{μ+ρ})` truncated at `floor`, by Jacobi–Trudi.
pub fn schur_shifted(nu: &Partition, mu: &Partition, floor: HalfExp) -> DescSeries {
    if nu.is_empty() {
        return DescSeries::one();
    }
    let e_form = use_e_form(nu);
    let lam = if e_form { nu.conjugate() } else { nu.clone() };
    let n = lam.len();
    let kmax = lam.part(1) as usize + n - 1;
    let tops = entry_tops(mu, kmax, e_form);
    // k index of entry (i, j), 0-based
    let kidx = |i: usize, j: usize| lam.part(i + 1) as i64 - i as i64 + j as i64;
    let row_top: Vec<HalfExp> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| kidx(i, j) >= 0)
                .map(|j| tops[kidx(i, j) as usize])
                .max()
                .expect("diagonal entry is present")
        })
        .collect();
    let total: HalfExp = row_top.iter().fold(HalfExp::ZERO, |a, &b| a + b);
    let mut depth = total - floor;
    loop {
        // h_k is used in several rows; take the lowest floor asked of it
        let mut floors = vec![None::<HalfExp>; kmax + 1];
        for (i, &rt) in row_top.iter().enumerate() {
            for j in 0..n {
                let k = kidx(i, j);
                if k >= 0 {
                    let f = rt - depth;
                    let slot = &mut floors[k as usize];
                    *slot = Some(slot.map_or(f, |s: HalfExp| s.min(f)));
                }
            }
        }
        let floors: Vec<HalfExp> = floors.into_iter().map(|f| f.unwrap_or(floor)).collect();
        let entries = hook_entries(mu, &floors, e_form);
        let m: Vec<Vec<Entry>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let k = kidx(i, j);
                        (k >= 0).then(|| entries[k as usize].limit_floor(row_top[i] - depth))
                    })
                    .collect()
            })
            .collect();
        let det = if n <= 4 { Some(det_cofactor(&m, floor)) } else { det_bareiss(&m) };
        match det {
            Some(d) if d.floor().map_or(true, |f| f <= floor) => return d.limit_floor(floor),
            Some(d) => {
                let f = d.floor().expect("inexact");
                depth = depth + (f - floor) + HalfExp::int(1);
            }
            None => depth = depth + HalfExp::int(2),
        }
    }
}

// Orientation in which the shifted Schur factor has the smaller determinant.
fn cheap_orientation<'a>(a: &'a Partition, b: &'a Partition) -> (&'a Partition, &'a Partition) {
    let size = |p: &Partition| p.len().min(p.part(1) as usize);
    if (size(a), a) <= (size(b), b) {
        (b, a)
    } else {
        (a, b)
    }
}

fn w_series(mu: &Partition, nu: &Partition, floor: HalfExp) -> DescSeries {
    if mu.is_empty() && nu.is_empty() {
        return DescSeries::one();
    }
    let tp = schur_principal_degree(mu);
    let ts = schur_shifted_degree(nu, mu);
    let a = schur_principal(mu, floor - ts);
    let b = schur_shifted(nu, mu, floor - tp);
    a.mul_to(&b, Some(floor)).limit_floor(floor)
}

/// `W_{μν}` truncated at `floor`, computed in the given orientation.
pub fn w(mu: &Partition, nu: &Partition, floor: HalfExp) -> HopfInvariant {
    HopfInvariant { mu: mu.clone(), nu: nu.clone(), value: w_series(mu, nu, floor) }
}

/// `W_{(m),(n)} = q^{mn-(m+n)/2} Σ_{k≤n} q^{-k(m+1)} / ([m]! [k]!)`.
pub fn w_row(m: u32, n: u32, floor: HalfExp) -> DescSeries {
    let (mi, ni) = (m as i64, n as i64);
    let t = HalfExp::from_doubled(2 * mi * ni - mi - ni);
    let f = floor - t;
    let mut sum = DescSeries::zero().limit_floor(f);
    for k in 0..=n {
        let s = HalfExp::int(-(k as i64) * (mi + 1));
        if s < f {
            break;
        }
        sum = sum.add_series(&inv_q_factorial(k, f - s).shift(s));
    }
    let inv_m = inv_q_factorial(m, f);
    sum.mul_to(&inv_m, Some(f)).shift(t)
}

/// Thread-safe memo of `W_{μν}` keyed on the unordered pair `{μ, ν}`.
///
/// Each entry keeps the deepest floor computed so far; shallower requests
/// are answered by truncation.
#[derive(Default)]
pub struct HopfCache {
    map: RwLock<HashMap<(Partition, Partition), DescSeries>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl HopfCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, mu: &Partition, nu: &Partition, floor: HalfExp) -> DescSeries {
        let key = if mu <= nu { (mu.clone(), nu.clone()) } else { (nu.clone(), mu.clone()) };
        if let Some(s) = self.map.read().expect("cache lock").get(&key) {
            if s.floor().map_or(true, |f| f <= floor) {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return s.limit_floor(floor);
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let (a, b) = cheap_orientation(&key.0, &key.1);
        let s = w_series(a, b, floor);
        let mut map = self.map.write().expect("cache lock");
        let keep = match map.get(&key) {
            Some(old) => old.floor() > s.floor(),
            None => true,
        };
        if keep {
            map.insert(key, s.clone());
        }
        s
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
