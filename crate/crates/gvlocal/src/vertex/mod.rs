//! Local P² from the topological vertex.
//!
//! `I(d)` is the coefficient of `t^d` in the partition function
//! `Z = Σ q^{(κ_1+κ_2+κ_3)/2} W_{μ¹μ²} W_{μ²μ³} W_{μ³μ¹} (-t)^{|μ¹|+|μ²|+|μ³|}`,
//! `F(d)` the coefficient in `log Z`. After removing multiple covers the
//! degree-`d` part `f_d` satisfies
//! `-f_d S_1 = Σ_g (-1)^g n^g_d S_g = Σ_g N^g_d R_g = Σ_h E^h_d T_h`.

mod basis;

pub use basis::*;

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::hopf::{leading_degree, HopfCache};
use crate::partitions::{triples, Partition};
use crate::qseries::{coeff_int, geometric, DescSeries, ExactCoeff, HalfExp, SymLaurent};

/// `g(d) = (d-1)(d-2)/2`.
pub fn genus_bound(d: u32) -> u32 {
    assert!(d >= 1, "degree must be positive");
    ((d as i64 - 1) * (d as i64 - 2) / 2) as u32
}

/// `(d² - 3d)/2`, the exact degree of `I(d)` and `F(d)`.
pub fn top_degree(d: u32) -> i64 {
    let d = d as i64;
    (d * d - 3 * d) / 2
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexError {
    #[error("degree {d}: insufficient precision: {detail}")]
    Precision { d: u32, detail: String },
    #[error("degree {d}: {which}^{g} = {value} is not an integer")]
    NonIntegral { d: u32, which: &'static str, g: u32, value: String },
    #[error("degree {d}: f_d S_1 is not symmetric at q^{exponent}")]
    Asymmetric { d: u32, exponent: HalfExp },
    #[error("degree {d}: nonzero residue at q^{exponent}")]
    NonzeroResidue { d: u32, exponent: HalfExp },
    #[error("degree {d}: term at genus {g} exceeds g(d) = {gd}")]
    Vanishing { d: u32, g: u32, gd: u32 },
    #[error("degree {d}: no table for divisor degree {k}")]
    MissingDivisor { d: u32, k: u32 },
    #[error("degree {d}: half-integral exponent in the free energy")]
    HalfIntegral { d: u32 },
    #[error("degree {d}: {which} disagrees with the basis transform")]
    TransformMismatch { d: u32, which: &'static str },
}

/// Invariants of one degree, each indexed by genus `0..=g(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GvTable {
    pub d: u32,
    pub gd: u32,
    pub n: Vec<BigInt>,
    pub big_n: Vec<BigInt>,
    pub e: Vec<BigInt>,
}

fn padded(d: u32, v: Vec<BigInt>) -> Result<Vec<BigInt>, VertexError> {
    let gd = genus_bound(d);
    if let Some(g) = (gd as usize + 1..v.len()).find(|&g| !v[g].is_zero()) {
        return Err(VertexError::Vanishing { d, g: g as u32, gd });
    }
    let mut v = v;
    v.resize(gd as usize + 1, BigInt::zero());
    Ok(v)
}

impl GvTable {
    pub fn from_n(d: u32, n: Vec<BigInt>) -> Result<Self, VertexError> {
        let n = padded(d, n)?;
        Ok(GvTable { d, gd: genus_bound(d), big_n: n_to_big_n(&n), e: n_to_e(&n), n })
    }

    pub fn from_big_n(d: u32, big_n: Vec<BigInt>) -> Result<Self, VertexError> {
        let big_n = padded(d, big_n)?;
        Self::from_n(d, big_n_to_n(&big_n))
    }

    pub fn from_e(d: u32, e: Vec<BigInt>) -> Result<Self, VertexError> {
        let e = padded(d, e)?;
        Self::from_n(d, e_to_n(&e))
    }

    /// `M^δ_d = (-1)^{d-1} N^{g(d)-δ}_d` for `δ = 0..=g(d)`.
    pub fn m(&self) -> Vec<BigInt> {
        (0..=self.gd).map(|delta| self.m_at(delta)).collect()
    }

    pub fn m_at(&self, delta: u32) -> BigInt {
        let v = self.big_n[(self.gd - delta) as usize].clone();
        if self.d % 2 == 1 {
            v
        } else {
            -v
        }
    }
}

/// Floors (integer exponents) for every series in a run up to `dmax`.
///
/// Each `F(d)` is wanted down to its target; the log recursion
/// `F(d) = I(d) - (1/d) Σ_{j<d} j F(j) I(d-j)` then dictates how deep the
/// lower-degree `F(j)` and `I(j)` must go.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionPlan {
    target: Vec<i64>,
    free: Vec<i64>,
    inst: Vec<i64>,
}

impl PrecisionPlan {
    /// Target floor `-(d+2) - margin` for every `d ≤ dmax`.
    pub fn new(dmax: u32, margin: u32) -> Self {
        let t = (1..=dmax as i64).map(|d| -(d + 2) - margin as i64).collect();
        Self::with_targets(t)
    }

    /// `targets[d-1]` is the floor wanted for `F(d)`.
    pub fn with_targets(targets: Vec<i64>) -> Self {
        let n = targets.len();
        let mut free = vec![0i64; n + 1];
        let mut inst = vec![0i64; n + 1];
        for d in (1..=n).rev() {
            let mut f = targets[d - 1];
            for e in d + 1..=n {
                f = f.min(free[e] - top_degree((e - d) as u32));
            }
            free[d] = f;
        }
        for d in 1..=n {
            let mut f = free[d];
            for e in d + 1..=n {
                f = f.min(free[e] - top_degree((e - d) as u32));
            }
            inst[d] = f;
        }
        let mut target = vec![0i64; n + 1];
        target[1..].copy_from_slice(&targets);
        PrecisionPlan { target, free, inst }
    }

    pub fn dmax(&self) -> u32 {
        self.target.len() as u32 - 1
    }

    pub fn target_floor(&self, d: u32) -> HalfExp {
        HalfExp::int(self.target[d as usize])
    }

    pub fn free_floor(&self, d: u32) -> HalfExp {
        HalfExp::int(self.free[d as usize])
    }

    pub fn instanton_floor(&self, d: u32) -> HalfExp {
        HalfExp::int(self.inst[d as usize])
    }
}

/// Counters from one evaluation of `I(d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleStats {
    /// all ordered triples of total size `d`
    pub triples: u64,
    /// triples whose term reaches the floor
    pub kept: u64,
    /// distinct unordered pairs `{μ, ν}` needed
    pub pairs: u64,
}

struct Kept {
    mu: [Partition; 3],
    shift: HalfExp,
    deg: [HalfExp; 3],
}

/// Evaluates partition-function coefficients with a shared `W` cache.
#[derive(Default)]
pub struct Vertex {
    cache: HopfCache,
}

impl Vertex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache(&self) -> &HopfCache {
        &self.cache
    }

    /// `I(d)` truncated at `floor`.
    pub fn instanton(&self, d: u32, floor: HalfExp) -> (DescSeries, TripleStats) {
        let mut stats = TripleStats::default();
        let mut kept = Vec::new();
        let mut need: HashMap<(Partition, Partition), HalfExp> = HashMap::new();
        for (a, b, c) in triples(d) {
            stats.triples += 1;
            let shift = HalfExp::from_doubled(a.kappa() + b.kappa() + c.kappa());
            let deg = [leading_degree(&a, &b), leading_degree(&b, &c), leading_degree(&c, &a)];
            let total = shift + deg[0] + deg[1] + deg[2];
            // every W has leading coefficient 1, so this is the exact degree
            if total < floor {
                continue;
            }
            let mu = [a, b, c];
            for i in 0..3 {
                let others = total - deg[i];
                let f = floor - others;
                let (x, y) = (&mu[i], &mu[(i + 1) % 3]);
                let key = if x <= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
                need.entry(key).and_modify(|g| *g = (*g).min(f)).or_insert(f);
            }
            kept.push(Kept { mu, shift, deg });
        }
        stats.kept = kept.len() as u64;
        stats.pairs = need.len() as u64;
        let mut jobs: Vec<_> = need.into_iter().collect();
        jobs.sort();
        jobs.par_iter().for_each(|((x, y), f)| {
            self.cache.get(x, y, *f);
        });
        let zero = DescSeries::zero().limit_floor(floor);
        let sum = kept
            .par_iter()
            .map(|k| {
                let [a, b, c] = &k.mu;
                let w12 = self.cache.get(a, b, floor - k.shift - k.deg[1] - k.deg[2]);
                let w23 = self.cache.get(b, c, floor - k.shift - k.deg[0] - k.deg[2]);
                let w31 = self.cache.get(c, a, floor - k.shift - k.deg[0] - k.deg[1]);
                let base = floor - k.shift;
                w12.mul_to(&w23, Some(base - k.deg[2])).mul_to(&w31, Some(base)).shift(k.shift)
            })
            .reduce(|| zero.clone(), |x, y| x.add_series(&y));
        let sum = if d % 2 == 1 { -sum } else { sum };
        (sum.limit_floor(floor), stats)
    }
}

/// `I(d)` truncated at `floor`, with a private cache.
pub fn instanton_coeff(d: u32, floor: HalfExp) -> DescSeries {
    Vertex::new().instanton(d, floor).0
}

/// `F(1..=n)` from `I(1..=n)` by the log recursion, each `F(d)` truncated at
/// `floors[d-1]`.
pub fn free_energy(inst: &[DescSeries], floors: &[HalfExp]) -> Vec<DescSeries> {
    let mut out: Vec<DescSeries> = Vec::with_capacity(inst.len());
    for d in 1..=inst.len() {
        let f = floors[d - 1];
        let mut acc = DescSeries::zero().limit_floor(f);
        for j in 1..d {
            let t = out[j - 1].mul_to(&inst[d - j - 1], Some(f));
            acc = acc.add_series(&t.scale(&coeff_int(j as i64)));
        }
        let fd = inst[d - 1].sub_series(&acc.scale(&ExactCoeff::new(BigInt::one(), BigInt::from(d))));
        out.push(fd.limit_floor(f));
    }
    out
}

/// `F(d) = Σ_k ((-1)^{k-1}/k) Σ_{d_1+...+d_k=d} I(d_1)...I(d_k)`, summed
/// directly over compositions. Used to check [`free_energy`].
pub fn free_energy_composition(d: u32, inst: &[DescSeries]) -> DescSeries {
    let d = d as usize;
    // p[m] = Σ over compositions of m into k parts of the products
    let mut p: Vec<Option<DescSeries>> = (0..=d).map(|m| (m >= 1).then(|| inst[m - 1].clone())).collect();
    let mut total = p[d].clone().expect("d ≥ 1");
    for k in 2..=d {
        let mut next: Vec<Option<DescSeries>> = vec![None; d + 1];
        for (m, slot) in next.iter_mut().enumerate().skip(k) {
            let mut acc: Option<DescSeries> = None;
            for j in 1..m {
                if let Some(rest) = &p[m - j] {
                    let t = inst[j - 1].mul_series(rest);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.add_series(&t),
                    });
                }
            }
            *slot = acc;
        }
        p = next;
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let c = ExactCoeff::new(BigInt::from(sign), BigInt::from(k));
        total = total.add_series(&p[d].as_ref().expect("k ≤ d").scale(&c));
    }
    total
}

/// `(1/k) Σ_g n^g (-1)^{g-1} (q^{k/2} - q^{-k/2})^{2g-2}` for the table of
/// degree `d/k`, truncated at `floor`.
pub fn multicover_term(table: &GvTable, k: u32, floor: HalfExp) -> DescSeries {
    let inv_k = ExactCoeff::new(BigInt::one(), BigInt::from(k));
    let mut acc = DescSeries::zero().limit_floor(floor);
    for (g, n) in table.n.iter().enumerate() {
        if n.is_zero() {
            continue;
        }
        let c = ExactCoeff::from_integer(if g % 2 == 1 { n.clone() } else { -n.clone() }) * &inv_k;
        let s = if g == 0 {
            // q^{-k} (1 - q^{-k})^{-2}
            let e = HalfExp::int(-(k as i64));
            let geo = geometric(e, floor - e);
            geo.mul_to(&geo, Some(floor - e)).shift(e)
        } else {
            SymLaurent::s_basis(g - 1).to_series().dilate(k)
        };
        acc = acc.add_series(&s.scale(&c));
    }
    acc.limit_floor(floor)
}

/// `f_d = F(d) - Σ_{k|d, k>1} multicover_term(n_{d/k}, k)`.
pub fn multicover_strip(
    d: u32,
    fd: &DescSeries,
    tables: &BTreeMap<u32, GvTable>,
) -> Result<DescSeries, VertexError> {
    let floor = fd.floor().ok_or(VertexError::Precision { d, detail: "free energy has no floor".into() })?;
    let mut out = fd.clone();
    for k in 2..=d {
        if d % k != 0 {
            continue;
        }
        let t = tables.get(&(d / k)).ok_or(VertexError::MissingDivisor { d, k: d / k })?;
        out = out.sub_series(&multicover_term(t, k, floor));
    }
    Ok(out)
}

fn integral(d: u32, which: &'static str, v: &[ExactCoeff]) -> Result<Vec<BigInt>, VertexError> {
    v.iter()
        .enumerate()
        .map(|(g, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(VertexError::NonIntegral { d, which, g: g as u32, value: c.to_string() })
            }
        })
        .collect()
}

/// Solves `-f_d S_1 = Σ_g (-1)^g n^g S_g` and reads off `N` and `E` from the
/// same symmetric polynomial.
pub fn extract(d: u32, fd: &DescSeries) -> Result<GvTable, VertexError> {
    let gd = genus_bound(d);
    if !fd.has_integer_exponents() {
        return Err(VertexError::HalfIntegral { d });
    }
    let s1 = SymLaurent::s_basis(1).to_series();
    let sym = -fd.mul_series(&s1);
    let floor = sym.floor().unwrap_or(HalfExp::int(-(gd as i64) - 1));
    if floor > HalfExp::ZERO {
        return Err(VertexError::Precision { d, detail: format!("f_d S_1 known only down to q^{floor}") });
    }
    if let Some(top) = sym.top() {
        if top > HalfExp::int(gd as i64) {
            let g = top.as_integer().unwrap_or(0) as u32;
            return Err(VertexError::Vanishing { d, g, gd });
        }
    }
    let coeffs: Vec<ExactCoeff> =
        (0..=gd as i64).map(|j| sym.coeff(HalfExp::int(j)).expect("above floor")).collect();
    let poly = SymLaurent::from_coeffs(coeffs);
    let full = poly.to_series();
    let mut e = HalfExp::int(gd as i64);
    while e >= floor {
        let a = sym.coeff(e).expect("above floor");
        let b = full.coeff(e).expect("exact");
        if a != b {
            return Err(if e >= HalfExp::int(-(gd as i64)) {
                VertexError::Asymmetric { d, exponent: e }
            } else {
                VertexError::NonzeroResidue { d, exponent: e }
            });
        }
        e = e - HalfExp::int(1);
    }
    let s = integral(d, "n", &poly.decompose(SymLaurent::s_basis))?;
    let n: Vec<BigInt> =
        s.into_iter().enumerate().map(|(g, v)| if g % 2 == 1 { -v } else { v }).collect();
    let table = GvTable::from_n(d, n)?;
    let big_n = padded(d, integral(d, "N", &poly.decompose(SymLaurent::r_basis))?)?;
    let e = padded(d, integral(d, "E", &poly.decompose(SymLaurent::t_basis))?)?;
    if big_n != table.big_n {
        return Err(VertexError::TransformMismatch { d, which: "N" });
    }
    if e != table.e {
        return Err(VertexError::TransformMismatch { d, which: "E" });
    }
    Ok(table)
}

/// Timing and counting for one degree of a pipeline run.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    pub d: u32,
    pub stats: TripleStats,
    pub seconds: f64,
}

/// Everything computed by [`run_pipeline`].
pub struct Pipeline {
    pub plan: PrecisionPlan,
    pub instanton: Vec<DescSeries>,
    pub free: Vec<DescSeries>,
    pub stripped: Vec<DescSeries>,
    pub tables: Vec<GvTable>,
    pub reports: Vec<DegreeReport>,
    pub vertex: Vertex,
}

impl Pipeline {
    pub fn table(&self, d: u32) -> &GvTable {
        &self.tables[d as usize - 1]
    }

    pub fn instanton(&self, d: u32) -> &DescSeries {
        &self.instanton[d as usize - 1]
    }

    pub fn free(&self, d: u32) -> &DescSeries {
        &self.free[d as usize - 1]
    }
}

/// Runs `I(d) → F(d) → f_d → GvTable` for `d = 1..=dmax` with target floor
/// `-(d+2) - margin`.
pub fn run_pipeline(dmax: u32, margin: u32) -> Result<Pipeline, VertexError> {
    run_with_plan(PrecisionPlan::new(dmax, margin))
}

pub fn run_with_plan(plan: PrecisionPlan) -> Result<Pipeline, VertexError> {
    let dmax = plan.dmax();
    let vertex = Vertex::new();
    let mut instanton = Vec::new();
    let mut reports = Vec::new();
    for d in 1..=dmax {
        let start = Instant::now();
        let (s, stats) = vertex.instanton(d, plan.instanton_floor(d));
        reports.push(DegreeReport { d, stats, seconds: start.elapsed().as_secs_f64() });
        instanton.push(s);
    }
    let floors: Vec<HalfExp> = (1..=dmax).map(|d| plan.free_floor(d)).collect();
    let free = free_energy(&instanton, &floors);
    let mut by_degree = BTreeMap::new();
    let mut stripped = Vec::new();
    let mut tables = Vec::new();
    for d in 1..=dmax {
        let fd = free[d as usize - 1].limit_floor(plan.target_floor(d));
        let f = multicover_strip(d, &fd, &by_degree)?;
        let t = extract(d, &f)?;
        by_degree.insert(d, t.clone());
        stripped.push(f);
        tables.push(t);
    }
    Ok(Pipeline { plan, instanton, free, stripped, tables, reports, vertex })
}

#[cfg(test)]
mod tests;
