//! The Dujella-Petho reduction engine and its three-step orchestration.
//!
//! For an inequality 0 < |u tau - v + mu| < A B^(-w) with u <= M, the lemma
//! excludes all w >= log(A q / eps) / log B, where p/q is a convergent of tau
//! with q > 6M and eps := ||mu q|| - M ||tau q|| is positive. Here
//! tau = log rho / log alpha and mu = log(V / ((rho-1) a)) / log alpha with a
//! step-specific integer V; step 1 bounds ell (w = ell - 1, A = 6/log alpha),
//! step 2 bounds m (w = m - 1, A = 4/log alpha), step 3 bounds n directly
//! (w = n, A = 10/log alpha).
//!
//! Every epsilon is an outward-rounded interval: a case counts as certified
//! only when the entire enclosure clears the 1e-12 floor, and the reported
//! worst cases are re-derived at doubled precision as an independent check.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;
use std::fmt;

use crate::algebraic::{binet_coefficient_a, real_root_alpha};
use crate::contfrac::{cf_from_endpoints, convergent_exceeding, ContinuedFraction};
use crate::error::{Error, Result};
use crate::real::PrecisionReal;

pub const DEFAULT_PRECISION: u32 = 1024;
pub const DEFAULT_MAX_EXTRA_CONVERGENTS: usize = 20;
/// Certification floor for epsilon; the smallest epsilon reported in this
/// problem family is around 1e-8, four orders above the floor.
pub const EPSILON_FLOOR: f64 = 1e-12;
/// Once U rho^m exceeds 2^360, the relative correction -e/(U rho^m) moves
/// log V by less than 2^-352; widening by 2^-330 absorbs it with margin.
const CORRECTION_SKIP_BITS: u32 = 360;
const CORRECTION_WIDEN_EXP: i32 = -330;

pub fn default_m() -> Integer {
    Integer::from(2) * Integer::from(10).pow(51)
}

/// Provenance of one reduction case; fields absent for earlier steps are None.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CaseLabel {
    pub step: u8,
    pub rho: u32,
    pub d1: u32,
    pub d2: Option<u32>,
    pub d3: Option<u32>,
    pub ell: Option<u32>,
    pub m: Option<u32>,
}

impl CaseLabel {
    fn step1(rho: u32, d1: u32) -> Self {
        CaseLabel { step: 1, rho, d1, d2: None, d3: None, ell: None, m: None }
    }

    fn step2(rho: u32, d1: u32, d2: u32, ell: u32) -> Self {
        CaseLabel { step: 2, rho, d1, d2: Some(d2), d3: None, ell: Some(ell), m: None }
    }

    fn step3(rho: u32, d1: u32, d2: u32, d3: u32, ell: u32, m: u32) -> Self {
        CaseLabel { step: 3, rho, d1, d2: Some(d2), d3: Some(d3), ell: Some(ell), m: Some(m) }
    }

    /// The integer V whose logarithm defines this case's mu.
    pub fn v_value(&self) -> Integer {
        let rho = Integer::from(self.rho);
        match self.step {
            1 => Integer::from(self.d1),
            2 => {
                let ell = self.ell.unwrap();
                let d2 = self.d2.unwrap();
                rho.pow(ell) * self.d1 - (self.d1 as i64 - d2 as i64)
            }
            3 => {
                let (ell, m) = (self.ell.unwrap(), self.m.unwrap());
                let (d2, d3) = (self.d2.unwrap(), self.d3.unwrap());
                Integer::from(&rho).pow(ell + m) * self.d1
                    - rho.pow(m) * (self.d1 as i64 - d2 as i64)
                    - (d2 as i64 - d3 as i64)
            }
            _ => unreachable!("step is 1, 2 or 3"),
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step{} rho={} d1={}", self.step, self.rho, self.d1)?;
        if let Some(d2) = self.d2 {
            write!(f, " d2={d2}")?;
        }
        if let Some(d3) = self.d3 {
            write!(f, " d3={d3}")?;
        }
        if let Some(ell) = self.ell {
            write!(f, " ell={ell}")?;
        }
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        Ok(())
    }
}

/// One standalone Dujella-Petho instance.
#[derive(Clone, Debug)]
pub struct ReductionCase {
    pub tau: PrecisionReal,
    pub mu: PrecisionReal,
    pub a: PrecisionReal,
    pub b: PrecisionReal,
    pub m_big: Integer,
    pub label: CaseLabel,
}

#[derive(Clone, Debug)]
pub struct ReductionOutcome {
    /// 0-based index into the convergent list of tau.
    pub convergent_index: usize,
    pub q: Integer,
    pub epsilon: PrecisionReal,
    pub w_max: i64,
    pub certified: bool,
}

/// Aggregated result of one reduction step.
#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub step: u8,
    pub rho: u32,
    /// Cases actually evaluated after deduplication.
    pub cases_evaluated: u64,
    /// 0-based index of the first convergent with q > 6M.
    pub convergent_index: usize,
    /// Highest convergent index any case needed.
    pub max_convergent_index: usize,
    #[serde(serialize_with = "crate::report::serialize_integer")]
    pub q: Integer,
    /// Certified lower endpoint of the smallest epsilon over all cases.
    pub epsilon_lower: f64,
    /// Largest excluded-threshold exponent w over all cases.
    pub max_w: i64,
    /// max_w translated to the step's variable (ell, m, or n upper bound).
    pub bound: i64,
    pub worst_case: CaseLabel,
    /// Worst cases re-derived at doubled precision agreed in sign and to
    /// 20 significant bits.
    pub double_checked: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionSummary {
    pub rho: u32,
    pub ell_max: u32,
    pub m_max: u32,
    pub n_max: i64,
    pub steps: Vec<StepReport>,
}

#[derive(Clone, Debug)]
pub struct ReductionOptions {
    pub precision: u32,
    pub m_big: Integer,
    /// Restrict d2, d3 to 1..rho-1 (the narrower sweep some treatments state).
    pub strict_paper: bool,
    /// 0 means "use the global default pool".
    pub workers: usize,
    pub max_extra_convergents: usize,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            precision: DEFAULT_PRECISION,
            m_big: default_m(),
            strict_paper: false,
            workers: 0,
            max_extra_convergents: DEFAULT_MAX_EXTRA_CONVERGENTS,
        }
    }
}

struct ConvEntry {
    q: Integer,
    /// q / log alpha
    q_over_la: PrecisionReal,
    /// log((rho-1) a) * q / log alpha
    offset: PrecisionReal,
    /// M * ||tau q||
    m_tau_q: PrecisionReal,
    /// log q
    log_q: PrecisionReal,
}

/// Shared per-(rho, precision) state: the continued fraction of tau and the
/// convergent window starting at the first q > 6M. Read-only during sweeps.
pub struct ReductionContext {
    pub rho: u32,
    pub precision: u32,
    pub m_big: Integer,
    pub tau: PrecisionReal,
    pub log_alpha: PrecisionReal,
    pub log_rho: PrecisionReal,
    pub cf: ContinuedFraction,
    pub t0: usize,
    entries: Vec<ConvEntry>,
}

impl ReductionContext {
    /// Builds the context, doubling the working precision until the
    /// continued fraction of tau certifies enough convergents past 6M.
    pub fn new(rho: u32, m_big: &Integer, precision: u32, max_extra: usize) -> Result<Self> {
        assert!(rho >= 2, "need rho >= 2");
        assert!(*m_big >= 1, "need M >= 1");
        let threshold = Integer::from(6) * m_big;
        let mut p = precision.max(256);
        loop {
            let alpha = real_root_alpha(p);
            let log_alpha = alpha.value().ln();
            let log_rho = PrecisionReal::from_u64(p, rho as u64).ln();
            let tau = log_rho.div(&log_alpha);
            let (lo, hi) = tau.rational_endpoints();
            let cf = cf_from_endpoints(&lo, &hi, 4000);
            if let Ok((t0, _)) = convergent_exceeding(&cf, &threshold) {
                if cf.len() > t0 + max_extra {
                    let a = binet_coefficient_a(p);
                    let lc = a.mul_integer(&Integer::from(rho - 1)).ln();
                    let entries = (t0..=t0 + max_extra)
                        .map(|t| {
                            let q = cf.convergents[t].1.clone();
                            let qf = PrecisionReal::from_integer(p, &q);
                            let q_over_la = qf.div(&log_alpha);
                            let offset = lc.mul(&q_over_la);
                            let m_tau_q = tau
                                .mul_integer(&q)
                                .nearest_int_distance()
                                .mul_integer(m_big);
                            let log_q = qf.ln();
                            ConvEntry { q, q_over_la, offset, m_tau_q, log_q }
                        })
                        .collect();
                    return Ok(ReductionContext {
                        rho,
                        precision: p,
                        m_big: m_big.clone(),
                        tau,
                        log_alpha,
                        log_rho,
                        cf,
                        t0,
                        entries,
                    });
                }
            }
            if p >= 1 << 20 {
                return Err(Error::PrecisionExhausted(p as usize, (p * 2) as usize));
            }
            p *= 2;
        }
    }

    pub fn q0(&self) -> &Integer {
        &self.entries[0].q
    }

    /// epsilon = ||mu q_t|| - M ||tau q_t|| for ln V given directly;
    /// mu q = (ln V - ln((rho-1)a)) / ln alpha * q.
    fn epsilon_at(&self, ln_v: &PrecisionReal, t_rel: usize) -> PrecisionReal {
        let e = &self.entries[t_rel];
        let mu_q = ln_v.mul(&e.q_over_la).sub(&e.offset);
        mu_q.nearest_int_distance().sub(&e.m_tau_q)
    }

    /// Finds the first convergent (relative index) certifying epsilon > 0.
    fn certify(&self, ln_v: &PrecisionReal) -> Option<(usize, PrecisionReal)> {
        for t_rel in 0..self.entries.len() {
            let eps = self.epsilon_at(ln_v, t_rel);
            if eps.certainly_exceeds_f64(EPSILON_FLOOR) {
                return Some((t_rel, eps));
            }
        }
        None
    }

    /// w = floor(log(A q / eps) / log rho) with A = a_num / log alpha,
    /// computed from the upper interval endpoint (a certified majorant).
    fn w_from_eps(&self, a_num: u32, t_rel: usize, eps: &PrecisionReal) -> i64 {
        let p = self.precision;
        let num = PrecisionReal::from_u64(p, a_num as u64)
            .ln()
            .sub(&self.log_alpha.ln())
            .add(&self.entries[t_rel].log_q)
            .sub(&eps.ln());
        let w = num.div(&self.log_rho);
        w.hi().clone().floor().to_f64() as i64
    }
}

/// Per-worker accumulator; merging is commutative and tie-broken by label,
/// so the aggregate is independent of scheduling and worker count.
struct SweepAcc {
    cases: u64,
    advanced: u64,
    /// Per relative convergent index: smallest certified epsilon and its label.
    per_conv: Vec<Option<(PrecisionReal, CaseLabel)>>,
    failure: Option<CaseLabel>,
}

impl SweepAcc {
    fn new(width: usize) -> Self {
        SweepAcc {
            cases: 0,
            advanced: 0,
            per_conv: (0..width).map(|_| None).collect(),
            failure: None,
        }
    }

    fn record(&mut self, t_rel: usize, eps: PrecisionReal, label: CaseLabel) {
        self.cases += 1;
        self.advanced += t_rel as u64;
        let slot = &mut self.per_conv[t_rel];
        let replace = match slot {
            None => true,
            Some((cur, cur_label)) => {
                eps.lo() < cur.lo() || (eps.lo() == cur.lo() && label < *cur_label)
            }
        };
        if replace {
            *slot = Some((eps, label));
        }
    }

    fn fail(&mut self, label: CaseLabel) {
        if self.failure.as_ref().map_or(true, |f| label < *f) {
            self.failure = Some(label);
        }
    }

    fn merge(mut self, other: SweepAcc) -> SweepAcc {
        self.cases += other.cases;
        self.advanced += other.advanced;
        for (slot, o) in self.per_conv.iter_mut().zip(other.per_conv) {
            if let Some((eps, label)) = o {
                let replace = match slot {
                    None => true,
                    Some((cur, cur_label)) => {
                        eps.lo() < cur.lo() || (eps.lo() == cur.lo() && label < *cur_label)
                    }
                };
                if replace {
                    *slot = Some((eps, label));
                }
            }
        }
        if let Some(label) = other.failure {
            self.fail(label);
        }
        self
    }
}

fn finish_step(
    ctx: &ReductionContext,
    step: u8,
    a_num: u32,
    translate: i64,
    acc: SweepAcc,
    max_extra: usize,
) -> Result<StepReport> {
    if let Some(label) = acc.failure {
        return Err(Error::EpsilonNeverPositive(label.to_string(), max_extra));
    }
    let mut max_w = i64::MIN;
    let mut worst: Option<CaseLabel> = None;
    let mut worst_eps: Option<PrecisionReal> = None;
    let mut eps_lower = f64::INFINITY;
    let mut max_index = ctx.t0;
    for (t_rel, slot) in acc.per_conv.iter().enumerate() {
        if let Some((eps, label)) = slot {
            let w = ctx.w_from_eps(a_num, t_rel, eps);
            eps_lower = eps_lower.min(eps.lo_f64());
            max_index = max_index.max(ctx.t0 + t_rel);
            let better = w > max_w
                || (w == max_w && worst.as_ref().map_or(true, |cur| label < cur));
            if better {
                max_w = w;
                worst = Some(label.clone());
                worst_eps = Some(eps.clone());
            }
        }
    }
    let worst = worst.expect("at least one case evaluated");
    let worst_eps = worst_eps.expect("worst case carries its epsilon");
    let double_checked = double_check(ctx, &worst, &worst_eps)?;
    Ok(StepReport {
        step,
        rho: ctx.rho,
        cases_evaluated: acc.cases,
        convergent_index: ctx.t0,
        max_convergent_index: max_index,
        q: ctx.q0().clone(),
        epsilon_lower: eps_lower,
        max_w,
        bound: max_w + translate,
        worst_case: worst,
        double_checked,
    })
}

/// Re-derives the worst case's epsilon in a fresh context at doubled
/// precision and demands sign agreement to 20 significant bits.
fn double_check(
    ctx: &ReductionContext,
    label: &CaseLabel,
    eps: &PrecisionReal,
) -> Result<bool> {
    let ctx2 = ReductionContext::new(
        ctx.rho,
        &ctx.m_big,
        ctx.precision * 2,
        ctx.entries.len() - 1,
    )?;
    let v = label.v_value();
    let ln_v = PrecisionReal::from_integer(ctx2.precision, &v).ln();
    let Some((_, eps2)) = ctx2.certify(&ln_v) else {
        return Ok(false);
    };
    let agree = eps2.is_positive()
        && eps.sub(&eps2).abs().hi_f64() < eps.lo_f64().abs() * 2f64.powi(-20);
    Ok(agree)
}

/// Step 1: V = d1 over 1 <= d1 <= rho-1; bounds ell (w = ell - 1).
pub fn step1_with(ctx: &ReductionContext) -> Result<StepReport> {
    let mut acc = SweepAcc::new(ctx.entries.len());
    for d1 in 1..ctx.rho {
        let label = CaseLabel::step1(ctx.rho, d1);
        let ln_v = PrecisionReal::from_integer(ctx.precision, &Integer::from(d1)).ln();
        match ctx.certify(&ln_v) {
            Some((t_rel, eps)) => acc.record(t_rel, eps, label),
            None => acc.fail(label),
        }
    }
    finish_step(ctx, 1, 6, 1, acc, ctx.entries.len() - 1)
}

/// Step 2: V = d1 rho^ell - (d1 - d2), deduplicated by exact V collisions;
/// bounds m (w = m - 1).
pub fn step2_with(ctx: &ReductionContext, ell_max: u32, strict: bool) -> Result<StepReport> {
    let d2_lo = if strict { 1 } else { 0 };
    let mut dedup: std::collections::BTreeMap<Integer, CaseLabel> =
        std::collections::BTreeMap::new();
    for d1 in 1..ctx.rho {
        for d2 in d2_lo..ctx.rho {
            for ell in 1..=ell_max {
                let label = CaseLabel::step2(ctx.rho, d1, d2, ell);
                let v = label.v_value();
                debug_assert!(v > 0);
                dedup.entry(v).or_insert(label);
            }
        }
    }
    let cases: Vec<(Integer, CaseLabel)> = dedup.into_iter().collect();
    let width = ctx.entries.len();
    let acc = cases
        .par_chunks(256)
        .map(|chunk| {
            let mut acc = SweepAcc::new(width);
            for (v, label) in chunk {
                let ln_v = PrecisionReal::from_integer(ctx.precision, v).ln();
                match ctx.certify(&ln_v) {
                    Some((t_rel, eps)) => acc.record(t_rel, eps, label.clone()),
                    None => acc.fail(label.clone()),
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(SweepAcc::new(width), SweepAcc::merge);
    finish_step(ctx, 2, 4, 1, acc, width - 1)
}

/// Step 3: V = d1 rho^(ell+m) - (d1-d2) rho^m - (d2-d3); bounds n (w = n).
///
/// ln V is decomposed as ln U + m ln rho + ln(1 - e/(U rho^m)) with
/// U = d1 rho^ell - (d1 - d2) and e = d2 - d3, so the inner loop needs no
/// full-size logarithm; the correction term is skipped (with certified
/// widening) once U rho^m is astronomically large. Cases with d1 = d2
/// depend only on s = ell + m and collapse structurally.
pub fn step3_with(
    ctx: &ReductionContext,
    ell_max: u32,
    m_max: u32,
    strict: bool,
) -> Result<StepReport> {
    let p = ctx.precision;
    let d_lo = if strict { 1 } else { 0 };
    let rho = ctx.rho;
    let width = ctx.entries.len();

    // powers of rho and m * log(rho) up to ell_max + m_max
    let top = (ell_max + m_max) as usize;
    let mut rho_pows = Vec::with_capacity(top + 1);
    rho_pows.push(Integer::from(1));
    for i in 1..=top {
        rho_pows.push(Integer::from(&rho_pows[i - 1] * rho));
    }
    let mut m_log_rho = Vec::with_capacity(top + 1);
    m_log_rho.push(PrecisionReal::from_u64(p, 0));
    for i in 1..=top {
        m_log_rho.push(ctx.log_rho.mul_integer(&Integer::from(i)));
    }

    // evaluates one (U, s-or-m, e) case
    let eval = |acc: &mut SweepAcc, ln_u: &PrecisionReal, u: &Integer, m: u32, e: i64, label: CaseLabel| {
        let base = ln_u.add(&m_log_rho[m as usize]);
        let ln_v = if e == 0 {
            base
        } else if u.significant_bits() + rho_pows[m as usize].significant_bits()
            >= CORRECTION_SKIP_BITS
        {
            base.widen_2exp(CORRECTION_WIDEN_EXP)
        } else {
            let den = Integer::from(u * &rho_pows[m as usize]);
            let x = PrecisionReal::from_rational(p, &Rational::from((Integer::from(-e), den)));
            base.add(&x.ln_1p())
        };
        match ctx.certify(&ln_v) {
            Some((t_rel, eps)) => acc.record(t_rel, eps, label),
            None => acc.fail(label),
        }
    };

    let pairs: Vec<(u32, u32)> = (1..rho)
        .flat_map(|d1| (d_lo..rho).map(move |d2| (d1, d2)))
        .collect();
    let acc = pairs
        .par_iter()
        .map(|&(d1, d2)| {
            let mut acc = SweepAcc::new(width);
            if d1 == d2 {
                // V = d1 rho^s - (d1 - d3) depends only on s = ell + m
                let ln_u = PrecisionReal::from_integer(p, &Integer::from(d1)).ln();
                let u = Integer::from(d1);
                for s in 2..=(ell_max + m_max) {
                    let ell = s.saturating_sub(m_max).max(1).min(ell_max);
                    let m = s - ell;
                    for d3 in d_lo..rho {
                        let label = CaseLabel::step3(rho, d1, d2, d3, ell, m);
                        eval(&mut acc, &ln_u, &u, s, d1 as i64 - d3 as i64, label);
                    }
                }
            } else {
                for ell in 1..=ell_max {
                    let u = Integer::from(&rho_pows[ell as usize] * d1)
                        - (d1 as i64 - d2 as i64);
                    let ln_u = PrecisionReal::from_integer(p, &u).ln();
                    for m in 1..=m_max {
                        for d3 in d_lo..rho {
                            let label = CaseLabel::step3(rho, d1, d2, d3, ell, m);
                            eval(&mut acc, &ln_u, &u, m, d2 as i64 - d3 as i64, label);
                        }
                    }
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(SweepAcc::new(width), SweepAcc::merge);
    finish_step(ctx, 3, 10, 0, acc, width - 1)
}

fn in_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        f()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(f)
    }
}

/// Runs step1 -> step2 -> step3 with interlocked bounds.
pub fn full_reduction_with(rho: u32, opts: &ReductionOptions) -> Result<ReductionSummary> {
    let ctx = ReductionContext::new(
        rho,
        &opts.m_big,
        opts.precision,
        opts.max_extra_convergents,
    )?;
    in_pool(opts.workers, || {
        let s1 = step1_with(&ctx)?;
        let ell_max = s1.bound.max(1) as u32;
        let s2 = step2_with(&ctx, ell_max, opts.strict_paper)?;
        let m_max = s2.bound.max(1) as u32;
        let s3 = step3_with(&ctx, ell_max, m_max, opts.strict_paper)?;
        let n_max = s3.bound;
        Ok(ReductionSummary {
            rho,
            ell_max,
            m_max,
            n_max,
            steps: vec![s1, s2, s3],
        })
    })
}

pub fn step1(rho: u32, m_big: &Integer, precision: u32) -> Result<StepReport> {
    let ctx = ReductionContext::new(rho, m_big, precision, DEFAULT_MAX_EXTRA_CONVERGENTS)?;
    step1_with(&ctx)
}

pub fn step2(rho: u32, m_big: &Integer, ell_max: u32, precision: u32) -> Result<StepReport> {
    let ctx = ReductionContext::new(rho, m_big, precision, DEFAULT_MAX_EXTRA_CONVERGENTS)?;
    step2_with(&ctx, ell_max, false)
}

pub fn step3(
    rho: u32,
    m_big: &Integer,
    ell_max: u32,
    m_max: u32,
    precision: u32,
) -> Result<StepReport> {
    let ctx = ReductionContext::new(rho, m_big, precision, DEFAULT_MAX_EXTRA_CONVERGENTS)?;
    step3_with(&ctx, ell_max, m_max, false)
}

pub fn full_reduction(rho: u32, m_big: &Integer) -> Result<ReductionSummary> {
    let opts = ReductionOptions {
        m_big: m_big.clone(),
        ..ReductionOptions::default()
    };
    full_reduction_with(rho, &opts)
}

/// Standalone evaluation of one Dujella-Petho instance: starting from the
/// first convergent with q > 6M, advances until epsilon is certified
/// positive (full- and half-precision agreement above the 1e-12 floor).
pub fn reduce_case(c: &ReductionCase, max_extra_convergents: usize) -> Result<ReductionOutcome> {
    assert!(c.m_big >= 1, "need M >= 1");
    assert!(c.b.certainly_exceeds_f64(1.0), "need B > 1");
    assert!(c.a.is_positive(), "need A > 0");
    let threshold = Integer::from(6) * &c.m_big;
    let (lo, hi) = c.tau.rational_endpoints();
    let cf = cf_from_endpoints(&lo, &hi, 4000);
    let (t0, _) = convergent_exceeding(&cf, &threshold)?;
    let prec = c.tau.precision_bits();
    let eps_for = |mu: &PrecisionReal, tau: &PrecisionReal, q: &Integer| {
        mu.mul_integer(q)
            .nearest_int_distance()
            .sub(&tau.mul_integer(q).nearest_int_distance().mul_integer(&c.m_big))
    };
    let last = (t0 + max_extra_convergents).min(cf.len().saturating_sub(1));
    for t in t0..=last {
        let q = &cf.convergents[t].1;
        let eps = eps_for(&c.mu, &c.tau, q);
        if !eps.certainly_exceeds_f64(EPSILON_FLOOR) {
            continue;
        }
        // cross-check at half the carried precision
        let eps_half = eps_for(
            &c.mu.at_precision(prec / 2),
            &c.tau.at_precision(prec / 2),
            q,
        );
        let certified = eps_half.is_positive()
            && eps.sub(&eps_half).abs().hi_f64() < eps.lo_f64() * 2f64.powi(-20).max(f64::MIN_POSITIVE);
        let w = {
            let num = c.a.mul_integer(q).div(&eps).ln();
            num.div(&c.b.ln()).hi().clone().floor().to_f64() as i64
        };
        return Ok(ReductionOutcome {
            convergent_index: t,
            q: q.clone(),
            epsilon: eps,
            w_max: w,
            certified,
        });
    }
    Err(Error::EpsilonNeverPositive(
        c.label.to_string(),
        max_extra_convergents,
    ))
}

/// Convenience constructor for the paper-shaped step-1 case of a given base.
pub fn step1_case(rho: u32, d1: u32, m_big: &Integer, precision: u32) -> ReductionCase {
    let p = precision;
    let alpha = real_root_alpha(p);
    let la = alpha.value().ln();
    let lrho = PrecisionReal::from_u64(p, rho as u64).ln();
    let a = binet_coefficient_a(p);
    let lc = a.mul_integer(&Integer::from(rho - 1)).ln();
    let mu = PrecisionReal::from_u64(p, d1 as u64).ln().sub(&lc).div(&la);
    ReductionCase {
        tau: lrho.div(&la),
        mu,
        a: PrecisionReal::from_u64(p, 6).div(&la),
        b: PrecisionReal::from_u64(p, rho as u64),
        m_big: m_big.clone(),
        label: CaseLabel::step1(rho, d1),
    }
}
