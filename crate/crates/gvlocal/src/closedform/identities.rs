//! Named series identities, each checked exactly on its validity window.
//!
//! Windows are quoted relative to the top degree `g(d) - 1` for identities
//! about `I(d)` and `F(d)`, and absolutely otherwise.

use std::fmt::{Debug, Display};
use std::sync::OnceLock;

use num_traits::One;
use rayon::prelude::*;

use super::*;
use crate::hopf::{leading_degree, w};
use crate::partitions::Partition;
use crate::qseries::{
    eta_power_inverse, euler_e_sum, euler_h_sum, lambert_sigma_direct, q_binomial_sides, q_factorial_inf, sigma1,
};
use crate::vertex::{run_with_plan, top_degree, Pipeline, PrecisionPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub window: &'static str,
    pub status: Status,
    /// highest exponent where the two sides differ, when a series comparison failed
    pub first_mismatch_exponent: Option<i64>,
    /// which instance failed, or why the identity was skipped
    pub detail: String,
}

/// Shared state for a verification run: the degree bound, the floor for
/// pure q-series identities and a lazily built vertex pipeline.
pub struct VerifyContext {
    dmax: u32,
    floor: u32,
    margin: u32,
    pipeline: OnceLock<Result<Pipeline, VertexError>>,
}

impl VerifyContext {
    pub fn new(dmax: u32) -> Self {
        VerifyContext { dmax, floor: 20, margin: 2, pipeline: OnceLock::new() }
    }

    pub fn with_floor(mut self, floor: u32) -> Self {
        self.floor = floor;
        self
    }

    pub fn with_margin(mut self, margin: u32) -> Self {
        self.margin = margin;
        self
    }

    pub fn dmax(&self) -> u32 {
        self.dmax
    }

    pub fn floor(&self) -> HalfExp {
        HalfExp::int(-(self.floor as i64))
    }

    pub fn pipeline(&self) -> Result<&Pipeline, ClosedFormError> {
        self.pipeline
            .get_or_init(|| run_with_plan(verification_plan(self.dmax, self.margin)))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    /// The pipeline error, if the pipeline was built and failed.
    pub fn pipeline_error(&self) -> Option<&VertexError> {
        self.pipeline.get().and_then(|r| r.as_ref().err())
    }

    fn degrees(&self, lo: u32, hi: u32) -> std::ops::RangeInclusive<u32> {
        lo..=hi.min(self.dmax)
    }
}

/// The usual floors, deepened so that every `I(d)` reaches `2d + 3` below
/// its top degree.
pub fn verification_plan(dmax: u32, margin: u32) -> PrecisionPlan {
    let t = (1..=dmax)
        .map(|d| {
            let di = d as i64;
            (-(di + 2) - margin as i64).min(top_degree(d) - 2 * di - 3)
        })
        .collect();
    PrecisionPlan::with_targets(t)
}

#[derive(Default)]
struct Check {
    ran: usize,
    fail: Option<(String, Option<i64>)>,
}

fn exponent(e: HalfExp) -> i64 {
    e.doubled().div_euclid(2)
}

impl Check {
    fn series(&mut self, label: impl FnOnce() -> String, a: &DescSeries, b: &DescSeries, from: HalfExp) {
        self.ran += 1;
        if self.fail.is_some() {
            return;
        }
        match a.first_mismatch(b, from) {
            Ok(None) => {}
            Ok(Some(e)) => self.fail = Some((label(), Some(exponent(e)))),
            Err(err) => self.fail = Some((format!("{}: {err}", label()), None)),
        }
    }

    fn equal<T: PartialEq + Debug>(&mut self, label: impl FnOnce() -> String, a: T, b: T) {
        self.ran += 1;
        if self.fail.is_none() && a != b {
            self.fail = Some((format!("{}: {a:?} != {b:?}", label()), None));
        }
    }

    fn value<T: PartialEq + Display>(&mut self, label: impl FnOnce() -> String, a: T, b: T) {
        self.ran += 1;
        if self.fail.is_none() && a != b {
            self.fail = Some((format!("{}: {a} != {b}", label()), None));
        }
    }

    fn degree(&mut self, label: impl FnOnce() -> String, got: Option<HalfExp>, want: i64) {
        self.ran += 1;
        if self.fail.is_none() && got != Some(HalfExp::int(want)) {
            let got = got.map_or("none above the floor".to_string(), |e| exponent(e).to_string());
            self.fail = Some((format!("{}: degree {got}, expected {want}", label()), None));
        }
    }
}

type Runner = fn(&VerifyContext) -> Result<Check, ClosedFormError>;

struct Entry {
    name: &'static str,
    window: &'static str,
    run: Runner,
}

const REGISTRY: &[Entry] = &[
    Entry { name: "q-binomial", window: "q >= floor", run: q_binomial },
    Entry { name: "euler-e", window: "q >= floor", run: euler_e },
    Entry { name: "euler-h", window: "q >= floor", run: euler_h },
    Entry { name: "msum1", window: "q >= floor, d, m <= 6", run: msum1 },
    Entry { name: "msum2", window: "q >= floor, d2, d3 <= 6", run: msum2 },
    Entry { name: "E1", window: "q >= floor", run: e1 },
    Entry { name: "E2", window: "q >= floor", run: e2 },
    Entry { name: "leading", window: "exact leading term, d, m <= 6", run: leading },
    Entry { name: "wbwc", window: "W2': q >= -2d+1; W3: q >= -2d-1; 2 <= d <= 8", run: wbwc },
    Entry { name: "double-sum", window: "q >= floor", run: double_sum },
    Entry { name: "binomial-sum", window: "q >= -d, d <= 10", run: binomial_sum },
    Entry { name: "I2aa", window: "q >= -2d-1, 1 <= d <= 8", run: i2aa },
    Entry { name: "I2b", window: "q >= -2d+1, 2 <= d <= 8", run: i2b },
    Entry { name: "Id2", window: "q >= -2d+1 below the top, 1 <= d <= dmax", run: id2 },
    Entry { name: "I1Id", window: "q >= -2d+1 below the top, 2 <= d <= dmax", run: i1id },
    Entry { name: "Fd2", window: "q >= -2d+5 below the top, 4 <= d <= dmax", run: fd2 },
    Entry { name: "degreeofId2", window: "exact degrees -(d+2) and -(2d+1) below the top, 2 <= d <= dmax", run: degree_of_id2 },
    Entry { name: "degreeofId2-bound", window: "deg(I - W - I2) <= -(2d+1), = -(2d+2) for d >= 4", run: degree_of_id2_bound },
    Entry { name: "Idwd", window: "q >= -d-1 below the top, 1 <= d <= 8", run: idwd },
    Entry { name: "F=I", window: "q >= -d+2 below the top, 1 <= d <= dmax", run: f_eq_i },
    Entry { name: "Wd-closed", window: "q >= -d, d <= 10", run: wd_closed_check },
    Entry { name: "Mdelta", window: "delta <= d-2, 2 <= d <= 8", run: mdelta },
    Entry { name: "Mdelta2", window: "delta <= 2d-5, 4 <= d <= 8", run: mdelta2 },
    Entry { name: "MinE", window: "order 20", run: min_e },
    Entry { name: "SumIdentity", window: "order 20", run: sum_identity },
    Entry { name: "P2Case", window: "order 15", run: p2_case },
    Entry { name: "t-q-inverse", window: "order 20", run: t_q_inverse },
    Entry { name: "M&n", window: "t-order 12, d = 5, 6, 7", run: m_and_n },
    Entry { name: "NEC", window: "t-order 10, d = 5, 6, 7", run: nec },
    Entry { name: "NdeltaGen", window: "t-order 10, d = 5, 6, 7", run: ndelta_gen },
    Entry { name: "ndelta-vertex", window: "delta <= d-2, 2 <= d <= 8", run: ndelta_vertex },
    Entry { name: "rel-hilbert", window: "q^j, j < 2d-4, 4 <= d <= 10", run: rel_hilbert },
    Entry { name: "C_{d,2}-table", window: "delta <= 5, d_min <= d <= dmax", run: c_d2_table },
    Entry { name: "C_{d,2}-observed", window: "delta <= min(5, d-6), 6 <= d <= dmax", run: c_d2_observed },
    Entry { name: "KKV-E", window: "j <= d-2, 1 <= d <= dmax", run: kkv_e },
    Entry { name: "KKVPred", window: "delta <= d-2, 1 <= d <= dmax", run: kkv_pred },
    Entry { name: "KKVPred-binomial", window: "g <= 20, k <= 12", run: kkv_binomial },
    Entry { name: "G2", window: "order 20", run: g2 },
    Entry { name: "DG2", window: "order 20", run: dg2_check },
    Entry { name: "inv-delta", window: "order 20", run: inv_delta_check },
];

/// All registered identity names, in registry order.
pub fn identity_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.name).collect()
}

fn lookup(name: &str) -> Result<&'static Entry, ClosedFormError> {
    REGISTRY.iter().find(|e| e.name == name).ok_or_else(|| ClosedFormError::UnknownIdentity(name.to_string()))
}

fn report(entry: &Entry, ctx: &VerifyContext) -> IdentityReport {
    let (status, first_mismatch_exponent, detail) = match (entry.run)(ctx) {
        Err(e) => (Status::Fail, None, e.to_string()),
        Ok(c) if c.ran == 0 => (Status::Skipped, None, format!("nothing to check for dmax = {}", ctx.dmax)),
        Ok(Check { fail: Some((what, e)), .. }) => (Status::Fail, e, what),
        Ok(_) => (Status::Pass, None, String::new()),
    };
    IdentityReport { name: entry.name, window: entry.window, status, first_mismatch_exponent, detail }
}

/// Runs one identity.
pub fn run_identity(name: &str, ctx: &VerifyContext) -> Result<IdentityReport, ClosedFormError> {
    Ok(report(lookup(name)?, ctx))
}

/// Runs the named identities (all when `names` is empty) in parallel and
/// returns the reports in the order requested.
pub fn run_identities(names: &[String], ctx: &VerifyContext) -> Result<Vec<IdentityReport>, ClosedFormError> {
    let entries: Vec<&Entry> = if names.is_empty() {
        REGISTRY.iter().collect()
    } else {
        names.iter().map(|n| lookup(n)).collect::<Result<_, _>>()?
    };
    Ok(entries.par_iter().map(|e| report(e, ctx)).collect())
}

/// `true` when the named identity holds down to `q^{-floor}`.
pub fn identity_suite(name: &str, floor: u32) -> Result<bool, ClosedFormError> {
    let ctx = VerifyContext::new(8).with_floor(floor);
    Ok(run_identity(name, &ctx)?.status != Status::Fail)
}

fn e(n: i64) -> HalfExp {
    HalfExp::int(n)
}

fn c(n: i64) -> ExactCoeff {
    coeff_int(n)
}

fn poly(t: &[(i64, i64)]) -> DescSeries {
    DescSeries::poly_int(t)
}

fn q_binomial(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let f = ctx.floor();
    let mut ck = Check::default();
    let a_list = [poly(&[(-2, 1)]), poly(&[(0, 2), (-1, -1)]), poly(&[(0, -1)]), poly(&[(1, 1)])];
    let z_list = [poly(&[(-1, 1)]), poly(&[(-2, 3)]), poly(&[(-1, 1), (-3, -2)])];
    for a in &a_list {
        for z in &z_list {
            let (l, r) = q_binomial_sides(a, z, f)?;
            ck.series(|| format!("a = {a:?}, z = {z:?}"), &l, &r, f);
        }
    }
    Ok(ck)
}

fn euler_zs() -> [DescSeries; 3] {
    [poly(&[(-1, 1)]), poly(&[(-1, -2)]), poly(&[(-2, 1), (-3, 1)])]
}

fn euler_e(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let f = ctx.floor();
    let mut ck = Check::default();
    for z in &euler_zs() {
        let prod = pochhammer(z, PochLen::Infinite, f)?;
        ck.series(|| format!("z = {z:?}"), &euler_e_sum(z, f), &prod, f);
    }
    Ok(ck)
}

fn euler_h(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let f = ctx.floor();
    let mut ck = Check::default();
    for z in &euler_zs() {
        let prod = pochhammer(z, PochLen::Infinite, f)?.invert_unit(f)?;
        ck.series(|| format!("z = {z:?}"), &euler_h_sum(z, f), &prod, f);
    }
    Ok(ck)
}

fn msum1(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let f = ctx.floor();
    let mut ck = Check::default();
    for d in 0..=6i64 {
        for m in 0..=6usize {
            let mut lhs = DescSeries::zero_to(f);
            for k in 1..=m as i64 {
                let s = e(-k * (d + 1));
                if s >= f {
                    lhs = lhs.add_series(&inv_q_factorial(k as u32, f - s).shift(s));
                }
            }
            let rhs = tx(&inv_poch_x(-(d + 1), m, f), m)?.sub_series(&DescSeries::one());
            ck.series(|| format!("d = {d}, m = {m}"), &lhs.limit_floor(f), &rhs.limit_floor(f), f);
        }
    }
    Ok(ck)
}

fn msum2(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let f = ctx.floor();
    let mut ck = Check::default();
    let p = inv_q_factorial_inf(f);
    for d2 in 0..=6u32 {
        for d3 in 0..=6u32 {
            let rhs = tx_ratio(d2, d3 as usize, f).add_series(&DescSeries::one()).mul_to(&p, Some(f));
            ck.series(|| format!("d2 = {d2}, d3 = {d3}"), &w_tilde(d2, d3, f), &rhs, f);
        }
    }
    Ok(ck)
}

/// `1/[∞]! - 1/[d]!`.
fn fact_tail(d: u32, f: HalfExp) -> DescSeries {
    inv_q_factorial_inf(f).sub_series(&inv_q_factorial(d, f))
}

fn e1(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let f = ctx.floor();
    let mut lhs = DescSeries::zero_to(f);
    let mut d = 0u32;
    while e(-(d as i64) - 1) >= f {
        lhs = lhs.add_series(&fact_tail(d, f));
        d += 1;
    }
    let rhs = inv_q_factorial_inf(f).mul_to(&lambert_tau(f), Some(f));
    let mut ck = Check::default();
    ck.series(|| "E1".into(), &lhs, &rhs, f);
    Ok(ck)
}

fn e2(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let f = ctx.floor();
    let depth = -(f.doubled() / 2);
    let mut lhs = DescSeries::zero_to(f);
    for d1 in 0..depth {
        for d2 in 0..depth {
            if (d1 + 1) * (d2 + 1) > depth {
                break;
            }
            lhs = lhs.add_series(&tx_ratio(d1 as u32, d2 as usize, f));
        }
    }
    let mut ck = Check::default();
    ck.series(|| "E2".into(), &lhs, &(-lambert(f)), f);
    Ok(ck)
}

fn leading(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in 0..=6u32 {
        let di = d as i64;
        let t = fact_tail(d, e(-di - 3));
        ck.equal(|| format!("1/[inf]! - 1/[{d}]! top"), (t.top(), t.lead().cloned()), (Some(e(-di - 1)), Some(c(1))));
        for m in 0..=6u32 {
            let top = -(di + 1) * (m as i64 + 1);
            let t = tx_ratio(d, m as usize, e(top - 2));
            ck.equal(|| format!("T_{m} at d = {d} top"), (t.top(), t.lead().cloned()), (Some(e(top)), Some(c(-1))));
        }
    }
    Ok(ck)
}

fn wbwc(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(2, 8) {
        let di = d as i64;
        let f = e(-2 * di - 4);
        let depth = 2 * di + 4;
        let p = inv_fact_cubed(f);
        let s = e(-di - 2);
        let g = f - s;
        let pre = inv_one_minus_sq(g).mul_to(&inv_fact_cubed(g), Some(g));

        let mut w2 = DescSeries::zero_to(f);
        for d1 in 0..depth {
            for d2 in 0..depth {
                if (d1 + 1) * (d2 + 1) > depth {
                    break;
                }
                if d1 + d2 > di {
                    w2 = w2.add_series(&tx_ratio(d1 as u32, d2 as usize, f));
                }
            }
        }
        let w2 = w2.mul_to(&p, Some(f)).scale(&c(-3));
        let rhs2 = pre.shift(s).scale(&c(6));
        ck.series(|| format!("W2' at d = {d}"), &w2, &rhs2.limit_floor(f), e(-2 * di + 1));

        let mut w3 = DescSeries::zero_to(f);
        for d1 in 0..=d {
            for d2 in 0..=d - d1 {
                let d3 = d - d1 - d2;
                let t = tx_ratio(d1, d2 as usize, f).mul_to(&tx_ratio(d2, d3 as usize, f), Some(f));
                w3 = w3.add_series(&t);
            }
        }
        let w3 = w3.mul_to(&p, Some(f)).scale(&c(3));
        let inner = DescSeries::constant(c(di + 1)).sub_series(&divisor_series(2, g).scale(&c(2)));
        let rhs3 = pre.mul_to(&inner, Some(g)).shift(s).scale(&c(3));
        ck.series(|| format!("W3 at d = {d}"), &w3, &rhs3.limit_floor(f), e(-2 * di - 1));
    }
    Ok(ck)
}

fn double_sum(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let f = ctx.floor();
    let mut lhs = DescSeries::zero_to(f);
    let mut d1 = 0i64;
    while e(-d1 - 2) >= f {
        let mut k = d1 + 1;
        while e(d1 - 2 * k) >= f {
            let s = e(d1 + 1 - k);
            lhs = lhs.add_series(&fact_tail(k as u32, f - s).shift(s));
            k += 1;
        }
        d1 += 1;
    }
    let rhs = geometric(e(-1), f)
        .mul_to(&inv_q_factorial_inf(f), Some(f))
        .mul_to(&divisor_series(2, f), Some(f));
    let mut ck = Check::default();
    ck.series(|| "double sum".into(), &lhs.limit_floor(f), &rhs, f);
    Ok(ck)
}

fn binomial_sum(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(0, 10) {
        let di = d as i64;
        let f = e(-di - 1);
        let mut lhs = DescSeries::zero_to(f);
        for d1 in 0..=d {
            lhs = lhs.add_series(&inv_q_factorial(d1, f).mul_to(&inv_q_factorial(d - d1, f), Some(f)));
        }
        let p = inv_q_factorial_inf(f);
        let inner = DescSeries::constant(c(di + 1)).sub_series(&lambert_tau(f).scale(&c(2)));
        let rhs = p.mul_to(&p, Some(f)).mul_to(&inner, Some(f));
        ck.series(|| format!("d = {d}"), &lhs, &rhs, e(-di));
    }
    Ok(ck)
}

/// `3q^{-(d+2)}/(1-q^{-1})^2` truncated at `f`, with the shift applied.
fn i2_prefactor(d: i64, f: HalfExp) -> (DescSeries, HalfExp) {
    let s = e(-d - 2);
    (inv_one_minus_sq(f - s).scale(&c(3)), s)
}

fn i2aa(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(1, 8) {
        let di = d as i64;
        let f = e(-2 * di - 3);
        let (pre, s) = i2_prefactor(di, f);
        let g = f - s;
        let mut sum = DescSeries::zero_to(g);
        for d1 in 0..d {
            let d3 = d - 1 - d1;
            let t = w_tilde(d1, 0, g).mul_to(&w_tilde(0, d3, g), Some(g)).mul_to(&w_tilde(d3, d1, g), Some(g));
            sum = sum.add_series(&t);
        }
        let lhs = -pre.mul_to(&sum, Some(g)).shift(s);
        let inner = DescSeries::constant(c(di)).sub_series(&lambert_tau(g).scale(&c(2)));
        let rhs = -pre.mul_to(&inv_fact_cubed(g), Some(g)).mul_to(&inner, Some(g)).shift(s);
        ck.series(|| format!("d = {d}"), &lhs, &rhs, e(-2 * di - 1));
    }
    Ok(ck)
}

fn i2b(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(2, 8) {
        let di = d as i64;
        let f = e(-2 * di - 1);
        let s = e(-di - 2);
        let g = f - s;
        let one_minus = geometric(e(-1), g);
        let mut sum = DescSeries::zero_to(g);
        for d2 in 2..=d {
            for d3 in 0..=d - d2 {
                let d1 = d - d2 - d3;
                let sh = e(-(d3 as i64 + 1) * (d2 as i64 - 1));
                if sh < g {
                    continue;
                }
                let h = g - sh;
                let t = w_tilde(d1, d2 - 1, h)
                    .mul_to(&w_tilde(d3, d1, h), Some(h))
                    .mul_to(&inv_q_factorial(d3, h), Some(h))
                    .mul_to(&inv_q_factorial(d2, h), Some(h))
                    .mul_to(&one_minus, Some(h))
                    .shift(sh);
                sum = sum.add_series(&t);
            }
        }
        let lhs = sum.shift(s).scale(&c(-6));
        let g1 = g - e(-1);
        let rhs = geometric(e(-1), g1)
            .pow_to(3, Some(g1))?
            .mul_to(&inv_fact_cubed(g1), Some(g1))
            .shift(s + e(-1))
            .scale(&c(-6));
        ck.series(|| format!("d = {d}"), &lhs.limit_floor(f), &rhs.limit_floor(f), e(-2 * di + 1));
    }
    Ok(ck)
}

fn normalized_instanton(p: &Pipeline, d: u32) -> DescSeries {
    normalize(d, p.instanton(d))
}

fn id2(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(1, u32::MAX) {
        let p = ctx.pipeline()?;
        let di = d as i64;
        let lhs = normalized_instanton(p, d);
        let f = lhs.floor().expect("truncated");
        ck.series(|| format!("d = {d}"), &lhs, &id2_formula(d, f), e(-2 * di + 1));
    }
    Ok(ck)
}

fn i1id(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(2, u32::MAX) {
        let p = ctx.pipeline()?;
        let di = d as i64;
        let lhs = normalize(d, &p.instanton(1).mul_series(p.instanton(d - 1)));
        let f = lhs.floor().expect("truncated");
        ck.series(|| format!("d = {d}"), &lhs, &i1id_formula(d, f), e(-2 * di + 1));
    }
    Ok(ck)
}

fn fd2(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(4, u32::MAX) {
        let p = ctx.pipeline()?;
        let di = d as i64;
        let lhs = normalize(d, p.free(d));
        let f = lhs.floor().expect("truncated");
        ck.series(|| format!("d = {d}"), &lhs, &fd2_formula(d, f), e(-2 * di + 5));
    }
    Ok(ck)
}

/// `q^{-(g(d)-1)} Σ q^{κ/2} W W W` over triples with exactly one hook
/// `(d_i - 1, 1)` and rows elsewhere.
pub fn hook_triple_sum(d: u32, f: HalfExp) -> DescSeries {
    let top = e(top_degree(d));
    let abs = f + top;
    let mut acc = DescSeries::zero_to(abs);
    for d1 in 0..=d {
        for d2 in 0..=d - d1 {
            let sizes = [d1, d2, d - d1 - d2];
            for hook in 0..3 {
                if sizes[hook] < 2 {
                    continue;
                }
                let mu: Vec<Partition> = (0..3)
                    .map(|i| if i == hook { Partition::hook(sizes[i]) } else { Partition::row(sizes[i]) })
                    .collect();
                let shift = HalfExp::from_doubled(mu.iter().map(Partition::kappa).sum());
                let deg: Vec<HalfExp> = (0..3).map(|i| leading_degree(&mu[i], &mu[(i + 1) % 3])).collect();
                let total = shift + deg[0] + deg[1] + deg[2];
                if total < abs {
                    continue;
                }
                let mut prod = DescSeries::one();
                for i in 0..3 {
                    let others = total - deg[i];
                    prod = prod.mul_series(&w(&mu[i], &mu[(i + 1) % 3], abs - others).value);
                }
                acc = acc.add_series(&prod.shift(shift).limit_floor(abs));
            }
        }
    }
    acc.shift(-top)
}

fn degree_of_id2(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(2, u32::MAX) {
        let p = ctx.pipeline()?;
        let di = d as i64;
        let ni = normalized_instanton(p, d);
        let f = ni.floor().expect("truncated");
        let r1 = ni.sub_series(&wd_direct(d, f));
        ck.degree(|| format!("deg(I - W) at d = {d}"), r1.top(), -di - 2);
        let r2 = i2_remainder(p, d);
        ck.degree(|| format!("deg(I - W - I2) at d = {d}"), r2.top(), -2 * di - 1);
    }
    Ok(ck)
}

fn i2_remainder(p: &Pipeline, d: u32) -> DescSeries {
    let ni = normalized_instanton(p, d);
    let f = ni.floor().expect("truncated");
    ni.sub_series(&wd_direct(d, f)).sub_series(&hook_triple_sum(d, f))
}

fn degree_of_id2_bound(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(2, u32::MAX) {
        let di = d as i64;
        let r = i2_remainder(ctx.pipeline()?, d);
        let top = r.top().unwrap_or(r.floor().expect("truncated"));
        ck.value(|| format!("bound at d = {d}, top {}", exponent(top)), top <= e(-2 * di - 1), true);
        if d >= 4 {
            ck.degree(|| format!("deg at d = {d}"), r.top(), -2 * di - 2);
        }
    }
    Ok(ck)
}

fn idwd(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(1, 8) {
        let p = ctx.pipeline()?;
        let ni = normalized_instanton(p, d);
        let f = ni.floor().expect("truncated");
        ck.series(|| format!("d = {d}"), &ni, &wd_direct(d, f), e(-(d as i64) - 1));
    }
    Ok(ck)
}

fn f_eq_i(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(1, u32::MAX) {
        let p = ctx.pipeline()?;
        let from = e(top_degree(d) - d as i64 + 2);
        ck.series(|| format!("d = {d}"), p.free(d), p.instanton(d), from);
    }
    Ok(ck)
}

fn wd_closed_check(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(0, 10) {
        let f = e(-(d as i64));
        ck.series(|| format!("d = {d}"), &wd_direct(d, f), &wd_closed(d, f), f);
    }
    Ok(ck)
}

fn mdelta(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    let m = mdelta_series(8);
    for d in ctx.degrees(2, 8) {
        let t = ctx.pipeline()?.table(d);
        for delta in 0..=d - 2 {
            ck.value(|| format!("M^{delta}_{d}"), big(t.m_at(delta)), m[delta as usize].eval(d as i64));
        }
    }
    Ok(ck)
}

fn mdelta2(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(4, 8) {
        let t = ctx.pipeline()?.table(d);
        let s = mdelta2_series(d, 2 * d - 5);
        for delta in 0..=2 * d - 5 {
            ck.value(|| format!("M^{delta}_{d}"), big(t.m_at(delta)), s.coeff(delta));
        }
    }
    Ok(ck)
}

fn min_e(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for (j, (a, b)) in min_e_series(20).into_iter().zip(mdelta_series(20)).enumerate() {
        ck.value(|| format!("q^{j}"), a, b);
    }
    Ok(ck)
}

fn sum_identity(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for m in [-5, -1, 0, 1, 2, 7, 16, 40] {
        let (l, r) = sum_identity_sides(m, 20);
        ck.series(|| format!("m = {m}"), &l, &r, asc::floor(20));
    }
    Ok(ck)
}

fn p2_case(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    let order = 15u32;
    let den = asc::pow(&DescSeries::poly_int(&[(0, 1), (-1, -2), (-3, 2), (-4, -1)]), -1, order);
    let lhs = poly_series_mul(&mdelta_series(order), &asc::coeffs(&den, order));
    let h: Vec<ExactCoeff> = eta_power_inverse(3, order as usize).into_iter().map(big).collect();
    let bracket: Vec<PolyInD> = (0..=order as i64)
        .map(|n| {
            if n == 0 {
                PolyInD::binom2(2)
            } else {
                PolyInD::constant(c(-3 * sigma1(n)))
            }
        })
        .collect();
    let mut ck = Check::default();
    for (j, (a, b)) in lhs.into_iter().zip(poly_series_mul(&bracket, &h)).enumerate() {
        ck.value(|| format!("q^{j}"), a, b);
    }
    Ok(ck)
}

fn t_q_inverse(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    let order = 20;
    let f = asc::floor(order);
    let mut ck = Check::default();
    let x = asc::var().limit_floor(f);
    ck.series(|| "t(q(t))".into(), &asc::compose(&t_of_q(order), &q_of_t(order), order), &x, f);
    ck.series(|| "q(t(q))".into(), &asc::compose(&q_of_t(order), &t_of_q(order), order), &x, f);
    let probe = asc::from_coeffs(&(0..=order as i64).map(|n| c(n * n - 3)).collect::<Vec<_>>());
    let back = t_q_change(TqDirection::TToQ, &t_q_change(TqDirection::QToT, &probe, order), order);
    ck.series(|| "round trip".into(), &back, &probe, f);
    Ok(ck)
}

fn three_way(order: u32, other: fn(i64, u32) -> DescSeries) -> Check {
    let mut ck = Check::default();
    for d in [5i64, 6, 7] {
        ck.series(|| format!("d = {d}"), &ndelta_series(d, order), &other(d, order), asc::floor(order));
    }
    ck
}

fn m_and_n(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    Ok(three_way(12, ndelta_from_m))
}

fn nec(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    Ok(three_way(10, ndelta_from_e))
}

fn ndelta_gen(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    Ok(three_way(10, ndelta_from_gen))
}

fn sign(k: i64) -> ExactCoeff {
    if k.rem_euclid(2) == 0 {
        ExactCoeff::one()
    } else {
        -ExactCoeff::one()
    }
}

fn ndelta_vertex(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(2, 8) {
        let t = ctx.pipeline()?.table(d);
        let g = t.gd as i64;
        for delta in 0..=d - 2 {
            let v = big(t.n[(g - delta as i64) as usize].clone()) * sign(g + d as i64 - 1 - delta as i64);
            ck.value(|| format!("n_{delta}({d})"), v, ndelta_poly(delta, d as i64));
        }
    }
    Ok(ck)
}

fn rel_hilbert(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(4, 10) {
        let di = d as i64;
        let order = 2 * d - 5;
        let rel = rel_hilbert_prediction(d, order);
        let lhs = asc::mul(&rel.series, &m_prefactor(), order);
        ck.series(|| format!("d = {d}"), &lhs, &mdelta2_series(d, order).series, asc::floor(order));
        ck.value(|| format!("j = 0 at d = {d}"), rel.coeff(0), big(binom(di + 2, 2)));
        ck.value(|| format!("j = 1 at d = {d}"), rel.coeff(1), big(binom(di + 2, 2)) * c(3) - c(3));
    }
    Ok(ck)
}

fn c_d2_table(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(5, 8) {
        let got = correction_extract(2, ctx.pipeline()?.table(d))?;
        for (delta, &(_, _, dmin)) in CORRECTION_TABLE.iter().enumerate() {
            if d < dmin || delta >= got.len() {
                continue;
            }
            let want = correction_table_value(delta as u32, d).expect("tabulated");
            ck.value(|| format!("C^{delta}_({d},2)"), got[delta].clone(), want);
        }
    }
    Ok(ck)
}

/// The tabulated values with the opposite sign, below the `q^{3d-9}` onset.
fn c_d2_observed(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(6, u32::MAX) {
        let got = correction_extract(2, ctx.pipeline()?.table(d))?;
        for delta in 0..=(d - 6).min(5) {
            let want = correction_observed_value(delta, d).expect("tabulated");
            ck.value(|| format!("C^{delta}_({d},2)"), got[delta as usize].clone(), want);
        }
    }
    Ok(ck)
}

fn kkv_e(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    let ej = e_j_poly(8);
    for d in ctx.degrees(1, u32::MAX) {
        let t = ctx.pipeline()?.table(d);
        for j in 0..=(d as i64 - 2).min(8) {
            let v = big(t.e[t.gd as usize - j as usize].clone()) * sign(d as i64 + 1);
            ck.value(|| format!("E^(g-{j})_{d}"), v, ej[j as usize].eval(d as i64));
        }
    }
    Ok(ck)
}

fn kkv_pred(ctx: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for d in ctx.degrees(1, u32::MAX) {
        let t = ctx.pipeline()?.table(d);
        let di = d as i64;
        for delta in 0..=(di - 2).max(-1) {
            let n = t.n[t.gd as usize - delta as usize].clone();
            let v = if ((di * di + 3 * di) / 2 + delta) % 2 == 0 { n } else { -n };
            ck.value(|| format!("delta = {delta} at d = {d}"), v, kkv_prediction(d, delta as u32));
        }
    }
    Ok(ck)
}

fn kkv_binomial(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    let mut ck = Check::default();
    for g in 0..=20i64 {
        for k in 0..=12i64 {
            ck.value(|| format!("b({g}, {k})"), b_coeff(g, k), big(b_coeff_binomial(g, k)));
        }
    }
    Ok(ck)
}

fn g2(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    let f = asc::floor(20);
    let mut ck = Check::default();
    ck.series(|| "plain".into(), &g2_plain(20).series, &lambert_sigma_direct(f), f);
    let shifted = g2_plain(20).series.sub_series(&DescSeries::constant(ExactCoeff::new(1.into(), 24.into())));
    ck.series(|| "Eisenstein".into(), &g2_eisenstein(20).series, &shifted, f);
    Ok(ck)
}

/// Checks `q dG_2/dq` against Ramanujan's `D E_2 = (E_2^2 - E_4)/12`, with
/// `E_2 = 1 - 24 G_2` and `E_4 = 1 + 240 Σ σ₃(n) q^n`.
fn dg2_check(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    let order = 20;
    let e2 = DescSeries::one().sub_series(&g2_plain(order).series.scale(&c(24)));
    let sigma3 = |n: i64| (1..=n).filter(|k| n % k == 0).map(|k| k * k * k).sum::<i64>();
    let e4 = asc::from_coeffs(&(0..=order as i64).map(|n| if n == 0 { c(1) } else { c(240 * sigma3(n)) }).collect::<Vec<_>>());
    let rhs = asc::mul(&e2, &e2, order).sub_series(&e4).scale(&ExactCoeff::new((-1).into(), 288.into()));
    let mut ck = Check::default();
    ck.series(|| "Ramanujan".into(), &dg2(order).series, &rhs, asc::floor(order));
    Ok(ck)
}

fn inv_delta_check(_: &VerifyContext) -> Result<Check, ClosedFormError> {
    let order = 20u32;
    let f = asc::floor(order + 1);
    let eta = q_factorial_inf(f).pow_to(24, Some(f))?;
    let direct = eta.invert_unit(f)?.shift(e(1));
    let mut ck = Check::default();
    ck.series(|| "1/Delta".into(), &inv_delta(order).series, &direct, asc::floor(order));
    Ok(ck)
}
