//! The cross-check suite: sixteen equivalence and implication claims
//! between the axiom variants, counted over a corpus of instances.
//!
//! Every instance gets a full verdict vector (all fourteen function
//! axioms, the family axioms on its effective domain, and the swap
//! axiom on its lift), every claim is then evaluated per instance, and
//! failures are collected as instance digests. Per-claim counters track
//! how often both sides held (positives) and how often both failed
//! (negatives), so a suite run also shows that each claim was exercised
//! in both directions. Reports carry no timing or thread information
//! and serialize byte-identically for any worker count.

use crate::axioms::{self, AxiomId};
use crate::duality::{self, DualityConfig, ExchangeContext};
use crate::error::{DcaError, Result};
use crate::family::{self, FamilyAxiomId, SetFamily};
use crate::func::{PriceVector, SetFunction};
use crate::generators::{self, CorpusMode, CorpusSpec};
use crate::ground::{GroundSet, SubsetMask, DEFAULT_MULTI_EXCHANGE_CAP};
use crate::value::ExtValue;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

/// Labels of the sixteen suite claims. The strings are the stable data
/// contract; the enum order is the report order.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    T2_1,
    T2_2_1,
    T2_2_2,
    T2_3,
    T2_4,
    P3_1,
    P3_2,
    P4_1,
    P4_2,
    P4_3,
    T4_4,
    T4_5,
    T5_1,
    T5_2,
    R5_2,
    L3_6,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::T2_1,
        TheoremId::T2_2_1,
        TheoremId::T2_2_2,
        TheoremId::T2_3,
        TheoremId::T2_4,
        TheoremId::P3_1,
        TheoremId::P3_2,
        TheoremId::P4_1,
        TheoremId::P4_2,
        TheoremId::P4_3,
        TheoremId::T4_4,
        TheoremId::T4_5,
        TheoremId::T5_1,
        TheoremId::T5_2,
        TheoremId::R5_2,
        TheoremId::L3_6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "T2.1",
            TheoremId::T2_2_1 => "T2.2.1",
            TheoremId::T2_2_2 => "T2.2.2",
            TheoremId::T2_3 => "T2.3",
            TheoremId::T2_4 => "T2.4",
            TheoremId::P3_1 => "P3.1",
            TheoremId::P3_2 => "P3.2",
            TheoremId::P4_1 => "P4.1",
            TheoremId::P4_2 => "P4.2",
            TheoremId::P4_3 => "P4.3",
            TheoremId::T4_4 => "T4.4",
            TheoremId::T4_5 => "T4.5",
            TheoremId::T5_1 => "T5.1",
            TheoremId::T5_2 => "T5.2",
            TheoremId::R5_2 => "R5.2",
            TheoremId::L3_6 => "L3.6",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The full verdict vector of one instance: every function axiom, the
/// family axioms on the effective domain, the swap axiom on the lift,
/// and the witness re-validation tallies.
#[derive(Clone, Debug)]
pub struct InstanceVerdicts {
    pub digest: String,
    pub has_empty: bool,
    pub mnat: bool,
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
    pub p4: bool,
    pub l1: bool,
    pub l2: bool,
    pub l3: bool,
    pub m: bool,
    pub mloc: bool,
    pub mw: bool,
    pub mm: bool,
    pub mms: bool,
    pub mem: bool,
    /// Swap axiom on the lift of the function to its top cardinality.
    pub ml: bool,
    pub bnat: bool,
    pub bexc: bool,
    pub bexcw: bool,
    pub equi: bool,
    pub ind: bool,
    pub cd: bool,
    pub cs: bool,
    pub cc: bool,
    pub ud: bool,
    pub iv: bool,
    pub bnm: bool,
    pub bnms: bool,
    pub bem: bool,
    pub witnesses_verified: u64,
    pub witness_failures: u64,
}

/// Computes the verdict vector for one instance. Every failing check's
/// witness is immediately re-validated against the instance it came
/// from; a witness that no longer violates counts as a failure of the
/// harness itself.
pub fn instance_verdicts(f: &SetFunction, multi_cap: u8) -> Result<InstanceVerdicts> {
    let mut verified = 0u64;
    let mut failures = 0u64;

    let mut fun = |target: &SetFunction, id: AxiomId| -> Result<bool> {
        let report = axioms::check_axiom_with_cap(target, id, multi_cap)?;
        if let Some(w) = &report.witness {
            if axioms::verify_witness(target, w)? {
                verified += 1;
            } else {
                failures += 1;
            }
        }
        Ok(report.passed)
    };

    let mnat = fun(f, AxiomId::MnatExc)?;
    let p1 = fun(f, AxiomId::P1)?;
    let p2 = fun(f, AxiomId::P2)?;
    let p3 = fun(f, AxiomId::P3)?;
    let p4 = fun(f, AxiomId::P4)?;
    let l1 = fun(f, AxiomId::L1)?;
    let l2 = fun(f, AxiomId::L2)?;
    let l3 = fun(f, AxiomId::L3)?;
    let m = fun(f, AxiomId::MExc)?;
    let mloc = fun(f, AxiomId::MExcLoc)?;
    let mw = fun(f, AxiomId::MExcW)?;
    let mm = fun(f, AxiomId::MnatExcM)?;
    let mms = fun(f, AxiomId::MnatExcMs)?;
    let mem = fun(f, AxiomId::MExcM)?;

    let (r_min, r_max) = f.cardinality_range()?;
    let (lifted, _) = f.lift(r_max - r_min)?;
    let ml = fun(&lifted, AxiomId::MExc)?;

    let dom = f.effective_domain()?;
    let mut fam = |id: FamilyAxiomId| -> Result<bool> {
        let report = family::check_family_with_cap(&dom, id, multi_cap)?;
        if let Some(w) = &report.witness {
            if family::verify_family_witness(&dom, w)? {
                verified += 1;
            } else {
                failures += 1;
            }
        }
        Ok(report.passed)
    };

    let bnat = fam(FamilyAxiomId::BnatExc)?;
    let bexc = fam(FamilyAxiomId::BExc)?;
    let bexcw = fam(FamilyAxiomId::BExcW)?;
    let equi = fam(FamilyAxiomId::Equicard)?;
    let ind = fam(FamilyAxiomId::IndAxioms)?;
    let cd = fam(FamilyAxiomId::ConnDown)?;
    let cs = fam(FamilyAxiomId::ConnSwap)?;
    let cc = fam(FamilyAxiomId::ConnCross)?;
    let ud = fam(FamilyAxiomId::UpDown)?;
    let iv = fam(FamilyAxiomId::Interval)?;
    let bnm = fam(FamilyAxiomId::BnatExcM)?;
    let bem = fam(FamilyAxiomId::BExcM)?;

    let strong = family::check_family_multi_strong(&dom, multi_cap)?;
    if let Some(w) = &strong.witness {
        if family::verify_family_witness(&dom, w)? {
            verified += 1;
        } else {
            failures += 1;
        }
    }
    let bnms = strong.passed;

    Ok(InstanceVerdicts {
        digest: f.digest(),
        has_empty: f.eval(SubsetMask::EMPTY).is_finite(),
        mnat,
        p1,
        p2,
        p3,
        p4,
        l1,
        l2,
        l3,
        m,
        mloc,
        mw,
        mm,
        mms,
        mem,
        ml,
        bnat,
        bexc,
        bexcw,
        equi,
        ind,
        cd,
        cs,
        cc,
        ud,
        iv,
        bnm,
        bnms,
        bem,
        witnesses_verified: verified,
        witness_failures: failures,
    })
}

/// Per-instance outcome of one claim: whether it held, and whether the
/// instance counts as a positive (all sides true) or negative (all
/// sides false) exercise. `None` when the claim's hypothesis gate
/// leaves the instance out.
fn outcome(t: TheoremId, v: &InstanceVerdicts) -> Option<(bool, bool, bool)> {
    fn equiv(a: bool, b: bool) -> (bool, bool, bool) {
        (a == b, a && b, !a && !b)
    }
    fn implies(a: bool, b: bool) -> (bool, bool, bool) {
        (!a || b, a && b, !a && !b)
    }
    Some(match t {
        TheoremId::T2_1 => {
            if !v.has_empty {
                return None;
            }
            equiv(v.mnat, v.p1)
        }
        TheoremId::T2_2_1 => equiv(v.mnat, v.p1 && v.p2),
        TheoremId::T2_2_2 => equiv(v.mnat, v.p2 && v.p3 && v.p4),
        TheoremId::T2_3 => equiv(v.mnat, v.bnat && v.l1 && v.l2 && v.l3),
        TheoremId::T2_4 => {
            if !v.ind {
                return None;
            }
            equiv(v.mnat, v.l1 && v.l2)
        }
        TheoremId::P3_1 => implies(v.bnat, v.cd && v.cs && v.cc),
        TheoremId::P3_2 => equiv(v.mnat, v.cd && v.cs && v.cc && v.l1 && v.l2 && v.l3),
        TheoremId::P4_1 => implies(v.bexc, v.equi),
        TheoremId::P4_2 => equiv(v.m, v.mnat && v.equi),
        TheoremId::P4_3 => equiv(v.mnat, v.ml),
        TheoremId::T4_4 => equiv(v.m, v.bexc && v.mloc),
        TheoremId::T4_5 => (
            v.m == v.mw && v.bexc == v.bexcw,
            v.m && v.mw && v.bexc && v.bexcw,
            !v.m && !v.mw && !v.bexc && !v.bexcw,
        ),
        TheoremId::T5_1 => (
            v.mnat == v.mm && v.mm == v.mms,
            v.mnat && v.mm && v.mms,
            !v.mnat && !v.mm && !v.mms,
        ),
        TheoremId::T5_2 => implies(v.m, v.mem),
        TheoremId::R5_2 => (
            v.bnat == v.bnm && v.bnm == v.bnms && (!v.bexc || v.bem),
            v.bnat && v.bnm && v.bnms,
            !v.bnat && !v.bnm && !v.bnms,
        ),
        TheoremId::L3_6 => implies(v.ud, v.iv),
    })
}

/// Per-claim tally over the corpus.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub theorem: TheoremId,
    /// Instances that passed the claim's hypothesis gate.
    pub instances_checked: u64,
    /// Instances where every side of the claim held.
    pub positives: u64,
    /// Instances where every side of the claim failed.
    pub negatives: u64,
    /// Digests of the first failing instances, capped by the config.
    pub discrepancies: Vec<String>,
    pub discrepancies_total: u64,
    pub passed: bool,
}

/// Configuration of a suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub spec: CorpusSpec,
    /// Worker threads; 0 uses the available parallelism.
    pub threads: usize,
    pub multi_cap: u8,
    /// Cap on recorded discrepancy digests per claim.
    pub max_digests: usize,
}

impl SuiteConfig {
    pub fn new(spec: CorpusSpec) -> SuiteConfig {
        SuiteConfig { spec, threads: 0, multi_cap: DEFAULT_MULTI_EXCHANGE_CAP, max_digests: 20 }
    }
}

/// Full suite report. Serialization carries no timing or thread count,
/// so the bytes only depend on the corpus and the claim outcomes.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub n: u8,
    pub mode: String,
    pub grid: Vec<ExtValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub instances: u64,
    pub results: Vec<SuiteResult>,
    pub witnesses_verified: u64,
    pub witness_failures: u64,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite reports always serialize")
    }
}

fn with_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if threads > 0 {
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| DcaError::InternalContradiction(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

/// Runs the sixteen claims over a corpus.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let corpus: Vec<SetFunction> = generators::enumerate_corpus(&cfg.spec)?.collect();
    let multi_cap = cfg.multi_cap;
    let verdicts: Vec<Result<InstanceVerdicts>> = with_pool(cfg.threads, || {
        corpus.par_iter().map(|f| instance_verdicts(f, multi_cap)).collect()
    })?;

    let mut checked = vec![0u64; TheoremId::ALL.len()];
    let mut positives = vec![0u64; TheoremId::ALL.len()];
    let mut negatives = vec![0u64; TheoremId::ALL.len()];
    let mut digests: Vec<Vec<String>> = vec![Vec::new(); TheoremId::ALL.len()];
    let mut totals = vec![0u64; TheoremId::ALL.len()];
    let mut witnesses_verified = 0u64;
    let mut witness_failures = 0u64;
    let mut instances = 0u64;

    for v in verdicts {
        let v = v?;
        instances += 1;
        witnesses_verified += v.witnesses_verified;
        witness_failures += v.witness_failures;
        for (slot, t) in TheoremId::ALL.into_iter().enumerate() {
            let Some((ok, pos, neg)) = outcome(t, &v) else { continue };
            checked[slot] += 1;
            if pos {
                positives[slot] += 1;
            }
            if neg {
                negatives[slot] += 1;
            }
            if !ok {
                totals[slot] += 1;
                if digests[slot].len() < cfg.max_digests {
                    digests[slot].push(v.digest.clone());
                }
            }
        }
    }

    let results: Vec<SuiteResult> = TheoremId::ALL
        .into_iter()
        .enumerate()
        .map(|(slot, t)| SuiteResult {
            theorem: t,
            instances_checked: checked[slot],
            positives: positives[slot],
            negatives: negatives[slot],
            discrepancies: std::mem::take(&mut digests[slot]),
            discrepancies_total: totals[slot],
            passed: totals[slot] == 0,
        })
        .collect();

    let (count, seed) = match cfg.spec.mode {
        CorpusMode::Exhaustive => (None, None),
        CorpusMode::Random { count, seed } => (Some(count), Some(seed)),
    };
    let passed = results.iter().all(|r| r.passed) && witness_failures == 0;
    Ok(SuiteReport {
        n: cfg.spec.n,
        mode: match cfg.spec.mode {
            CorpusMode::Exhaustive => "exhaustive".to_string(),
            CorpusMode::Random { .. } => "random".to_string(),
        },
        grid: cfg.spec.grid.clone(),
        count,
        seed,
        instances,
        results,
        witnesses_verified,
        witness_failures,
        passed,
    })
}

/// Report of the lift equivalence sweep.
#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub max_n: u8,
    pub count: usize,
    pub seed: u64,
    pub checked: u64,
    /// Digests of instances where the function and its lift disagreed.
    pub mismatches: Vec<String>,
    pub passed: bool,
}

impl LiftReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lift reports always serialize")
    }
}

/// Draws `count` seeded random instances with n cycling through
/// 1..=max_n and checks on each that the transfer-or-swap axiom on the
/// function agrees with the swap axiom on its lift.
pub fn run_lift_equivalence(max_n: u8, count: usize, seed: u64, threads: usize) -> Result<LiftReport> {
    let grid = CorpusSpec::default_grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fns = Vec::with_capacity(count);
    for idx in 0..count {
        let n = (idx % max_n as usize) as u8 + 1;
        let ground = GroundSet::new(n)?;
        loop {
            let table: Vec<ExtValue> = (0..ground.size())
                .map(|_| grid[rng.random_range(0..grid.len())])
                .collect();
            if table.iter().any(|v| v.is_finite()) {
                fns.push(SetFunction::new(ground, table)?);
                break;
            }
        }
    }
    let outcomes: Vec<Result<(String, bool)>> = with_pool(threads, || {
        fns.par_iter()
            .map(|f| {
                let mnat = axioms::check_axiom(f, AxiomId::MnatExc)?.passed;
                let (r_min, r_max) = f.cardinality_range()?;
                let (lifted, _) = f.lift(r_max - r_min)?;
                let ml = axioms::check_axiom(&lifted, AxiomId::MExc)?.passed;
                Ok((f.digest(), mnat == ml))
            })
            .collect()
    })?;
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    for o in outcomes {
        let (digest, agreed) = o?;
        checked += 1;
        if !agreed {
            mismatches.push(digest);
        }
    }
    let passed = mismatches.is_empty();
    Ok(LiftReport { max_n, count, seed, checked, mismatches, passed })
}

/// Configuration of the duality battery.
#[derive(Clone, Debug)]
pub struct DualityBatteryConfig {
    pub instances: usize,
    pub q_samples: usize,
    pub submodular_samples: usize,
    pub seed: u64,
    pub threads: usize,
    pub max_n: u8,
}

impl Default for DualityBatteryConfig {
    fn default() -> DualityBatteryConfig {
        DualityBatteryConfig {
            instances: 20,
            q_samples: 200,
            submodular_samples: 500,
            seed: 42,
            threads: 0,
            max_n: 5,
        }
    }
}

/// Per-instance outcome of the duality battery.
#[derive(Clone, Debug, Serialize)]
pub struct DualityInstanceReport {
    pub digest: String,
    pub n: u8,
    pub integral: bool,
    pub lemma_violations: u64,
    pub min_slack: f64,
    pub weak_duality_ok: bool,
    pub one_sided_ok: bool,
    pub submodular_violations: u64,
    pub submodular_min_slack: f64,
    pub passed: bool,
}

/// Battery report.
#[derive(Clone, Debug, Serialize)]
pub struct DualityBatteryReport {
    pub seed: u64,
    pub q_samples: usize,
    pub submodular_samples: usize,
    pub instances: Vec<DualityInstanceReport>,
    pub passed: bool,
}

impl DualityBatteryReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("battery reports always serialize")
    }
}

/// Builds one battery instance: even indices get integral weights, odd
/// ones half-integral; the kind alternates between concave cardinality
/// profiles and weighted uniform-matroid valuations.
fn battery_instance(idx: usize, max_n: u8, rng: &mut ChaCha8Rng) -> Result<SetFunction> {
    let n = 2 + (idx % (max_n as usize - 1)) as u8;
    let ground = GroundSet::new(n)?;
    let integral = idx.is_multiple_of(2);
    let mut w: Vec<f64> = (0..n)
        .map(|_| {
            if integral {
                rng.random_range(-2..=3) as f64
            } else {
                rng.random_range(-4..=6) as f64 * 0.5
            }
        })
        .collect();
    if !integral {
        // Pin one genuinely fractional coordinate so the instance never
        // collapses to integral values.
        w[0] = w[0].floor() + 0.5;
    }
    let w = PriceVector::new(w)?;
    if (idx / 2).is_multiple_of(2) {
        let len = rng.random_range(2..=n as usize + 1);
        let mut phi = Vec::with_capacity(len);
        let mut value = rng.random_range(0..=2) as f64;
        let mut step = rng.random_range(1..=2) as f64;
        phi.push(value);
        for _ in 1..len {
            value += step;
            phi.push(value);
            step = (step - rng.random_range(0..=1) as f64).max(-2.0);
        }
        generators::concave_cardinality_valuation(ground, &phi, &w)
    } else {
        let r = rng.random_range(1..n);
        let bases = generators::uniform_matroid_bases(ground, r);
        generators::weighted_matroid_valuation(&bases, &w)
    }
}

/// Picks the first ordered pair of domain members with X \ Y nonempty
/// and moves the whole difference.
fn battery_context(f: &SetFunction, dom: &SetFamily) -> Result<ExchangeContext> {
    for x in dom.iter() {
        for y in dom.iter() {
            if !x.diff(y).is_empty() {
                return ExchangeContext::new(f.ground(), x, y, x.diff(y));
            }
        }
    }
    Err(DcaError::InternalContradiction(
        "battery instance has no exchangeable pair".to_string(),
    ))
}

/// Runs the sampled duality checks over a battery of generated
/// exchangeable instances, half of them with non-integral values.
pub fn run_duality_battery(cfg: &DualityBatteryConfig) -> Result<DualityBatteryReport> {
    if cfg.max_n < 2 {
        return Err(DcaError::Parse("the duality battery needs max_n >= 2".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut inputs = Vec::with_capacity(cfg.instances);
    for idx in 0..cfg.instances {
        let f = battery_instance(idx, cfg.max_n, &mut rng)?;
        let dom = f.effective_domain()?;
        let ctx = battery_context(&f, &dom)?;
        inputs.push((idx, f, ctx));
    }
    let seed = cfg.seed;
    let q_samples = cfg.q_samples;
    let submodular_samples = cfg.submodular_samples;
    let reports: Vec<Result<DualityInstanceReport>> = with_pool(cfg.threads, || {
        inputs
            .par_iter()
            .map(|(idx, f, ctx)| {
                let lemma_cfg = DualityConfig {
                    m: None,
                    q_samples,
                    seed: seed.wrapping_add(*idx as u64),
                    grid: None,
                };
                let lemma = duality::verify_lemma_g1g2(f, ctx, &lemma_cfg)?;
                let sub_cfg = DualityConfig { q_samples: submodular_samples, ..lemma_cfg.clone() };
                let sub = duality::check_conjugate_submodular(f, &sub_cfg)?;
                let eps = if f.is_integral() { 0.0 } else { 1e-9 };
                let passed = lemma.violations == 0
                    && lemma.min_slack >= -eps
                    && lemma.weak_duality_ok
                    && lemma.one_sided_ok
                    && sub.violations == 0
                    && sub.min_slack >= -eps;
                Ok(DualityInstanceReport {
                    digest: f.digest(),
                    n: f.ground().n(),
                    integral: f.is_integral(),
                    lemma_violations: lemma.violations,
                    min_slack: lemma.min_slack,
                    weak_duality_ok: lemma.weak_duality_ok,
                    one_sided_ok: lemma.one_sided_ok,
                    submodular_violations: sub.violations,
                    submodular_min_slack: sub.min_slack,
                    passed,
                })
            })
            .collect()
    })?;
    let mut instances = Vec::with_capacity(reports.len());
    for r in reports {
        instances.push(r?);
    }
    let passed = instances.iter().all(|r| r.passed);
    Ok(DualityBatteryReport {
        seed: cfg.seed,
        q_samples: cfg.q_samples,
        submodular_samples: cfg.submodular_samples,
        instances,
        passed,
    })
}
