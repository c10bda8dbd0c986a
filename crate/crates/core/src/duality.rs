//! Conjugates, exchange pairs, and sampled duality checks.
//!
//! For a pair X, Y and a moved set I ⊆ X \ Y, the exchange pair is the
//! two restrictions f1(J) = f((X \ I) ∪ J) and f2(J) = f((Y \ J) ∪ I),
//! both living over the compact ground set that renames Y \ X to
//! {1, ..., |Y \ X|}. The concave conjugate g(p) = max_Z f(Z) - p(Z)
//! connects the two: for exchangeable f the sum g1(q) + g2(-q) bounds
//! f(X) + f(Y) from above at every price q, and the conjugate itself is
//! submodular. Both facts are checked on sampled prices with
//! deterministic seeds, so reports are reproducible.

use crate::axioms::{self, AxiomId};
use crate::error::{DcaError, Result};
use crate::func::{PriceVector, SetFunction};
use crate::ground::{GroundSet, SubsetMask};
use crate::value::ExtValue;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A pair X, Y with a moved set I ⊆ X \ Y, plus the compact renaming of
/// Y \ X used by the exchange pair.
#[derive(Clone, Debug)]
pub struct ExchangeContext {
    ground: GroundSet,
    x: SubsetMask,
    y: SubsetMask,
    i_set: SubsetMask,
    y0_els: Vec<u8>,
    compact: GroundSet,
}

impl ExchangeContext {
    pub fn new(ground: GroundSet, x: SubsetMask, y: SubsetMask, i_set: SubsetMask) -> Result<ExchangeContext> {
        let full = ground.full_mask();
        for m in [x, y] {
            if !m.is_subset_of(full) {
                let el = m.diff(full).elements().next().expect("offender exists");
                return Err(DcaError::InvalidElement { el, n: ground.n() });
            }
        }
        if !i_set.is_subset_of(x.diff(y)) {
            return Err(DcaError::InvalidExchangeSet);
        }
        let y0_els: Vec<u8> = y.diff(x).elements().collect();
        let compact = GroundSet::relaxed(y0_els.len() as u8, ground.max_n());
        Ok(ExchangeContext { ground, x, y, i_set, y0_els, compact })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn x(&self) -> SubsetMask {
        self.x
    }

    pub fn y(&self) -> SubsetMask {
        self.y
    }

    pub fn i_set(&self) -> SubsetMask {
        self.i_set
    }

    /// X \ Y.
    pub fn x0(&self) -> SubsetMask {
        self.x.diff(self.y)
    }

    /// Y \ X, the ground of the compact world.
    pub fn y0(&self) -> SubsetMask {
        self.y.diff(self.x)
    }

    /// X ∩ Y.
    pub fn c(&self) -> SubsetMask {
        self.x.intersect(self.y)
    }

    /// The elements of Y \ X in ascending order; compact element k + 1
    /// stands for the (k + 1)-th smallest of them.
    pub fn y0_elements(&self) -> &[u8] {
        &self.y0_els
    }

    /// The compact ground set over {1, ..., |Y \ X|}.
    pub fn compact_ground(&self) -> GroundSet {
        self.compact
    }

    /// Maps a compact subset back to the parent elements it names.
    pub fn expand(&self, compact: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for k in compact.elements() {
            out = out.with(self.y0_els[k as usize - 1]);
        }
        out
    }

    /// Maps a parent subset of Y \ X to its compact renaming. Panics
    /// when the mask holds elements outside Y \ X.
    pub fn compress(&self, parent: SubsetMask) -> SubsetMask {
        assert!(
            parent.is_subset_of(self.y0()),
            "compress needs a subset of Y \\ X"
        );
        let mut out = SubsetMask::EMPTY;
        for el in parent.elements() {
            let k = self
                .y0_els
                .iter()
                .position(|&e| e == el)
                .expect("element of Y \\ X") as u8;
            out = out.with(k + 1);
        }
        out
    }
}

/// Builds the exchange pair (f1, f2) over the compact ground set. Either
/// restriction may come out with an empty effective domain; that is
/// reported by the duality checks, not treated as an error here.
pub fn exchange_pair(f: &SetFunction, ctx: &ExchangeContext) -> (SetFunction, SetFunction) {
    let base1 = ctx.x().diff(ctx.i_set());
    let mut t1 = Vec::with_capacity(ctx.compact.size());
    let mut t2 = Vec::with_capacity(ctx.compact.size());
    for jc in ctx.compact.masks() {
        let j = ctx.expand(jc);
        t1.push(f.eval(base1.union(j)));
        t2.push(f.eval(ctx.y().diff(j).union(ctx.i_set())));
    }
    let f1 = SetFunction::new_allow_empty(ctx.compact, t1).expect("table sized to the ground");
    let f2 = SetFunction::new_allow_empty(ctx.compact, t2).expect("table sized to the ground");
    (f1, f2)
}

/// Concave conjugate g(p) = max_Z f(Z) - p(Z). Finite whenever f has a
/// nonempty effective domain; -inf otherwise. The price vector must
/// match the ground-set size.
pub fn conjugate(f: &SetFunction, p: &PriceVector) -> ExtValue {
    conjugate_argmax(f, p).0
}

/// Concave conjugate together with the lexicographically smallest
/// maximizer (ties keep the smaller mask).
pub fn conjugate_argmax(f: &SetFunction, p: &PriceVector) -> (ExtValue, SubsetMask) {
    assert_eq!(
        p.len(),
        f.ground().n() as usize,
        "price vector must match the ground set"
    );
    let mut best = ExtValue::NEG_INF;
    let mut arg = SubsetMask::EMPTY;
    for z in f.ground().masks() {
        let v = f.eval(z);
        if !v.is_finite() {
            continue;
        }
        let cand = ExtValue::finite(v.as_f64() - p.sum_over(z));
        if !cand.leq_with_eps(best, 0.0) {
            best = cand;
            arg = z;
        }
    }
    (best, arg)
}

/// The best multiple-exchange value max_J f((X \ I) ∪ J) + f((Y \ J) ∪ I)
/// over all J ⊆ Y \ X, with the lexicographically smallest maximizer in
/// parent coordinates. Returns (-inf, ∅) when every candidate is -inf.
pub fn check_multiple_exchange_value(f: &SetFunction, ctx: &ExchangeContext) -> (ExtValue, SubsetMask) {
    let base1 = ctx.x().diff(ctx.i_set());
    let mut best = ExtValue::NEG_INF;
    let mut arg = SubsetMask::EMPTY;
    for jc in ctx.compact.masks() {
        let j = ctx.expand(jc);
        let cand = f.eval(base1.union(j)) + f.eval(ctx.y().diff(j).union(ctx.i_set()));
        if !cand.leq_with_eps(best, 0.0) {
            best = cand;
            arg = j;
        }
    }
    (best, arg)
}

/// Tuning for the sampled duality checks.
#[derive(Clone, Debug)]
pub struct DualityConfig {
    /// Price scale override; defaults to twice the finite value span
    /// plus one.
    pub m: Option<f64>,
    /// Number of sampled prices.
    pub q_samples: usize,
    /// RNG seed; identical seeds give identical reports.
    pub seed: u64,
    /// Optional explicit coordinate palette to draw from instead of the
    /// derived ranges.
    pub grid: Option<Vec<f64>>,
}

impl Default for DualityConfig {
    fn default() -> DualityConfig {
        DualityConfig { m: None, q_samples: 200, seed: 42, grid: None }
    }
}

/// Span of the finite values of f (max - min), 0 for a single value.
fn finite_span(f: &SetFunction) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for m in f.ground().masks() {
        let v = f.eval(m);
        if v.is_finite() {
            lo = lo.min(v.as_f64());
            hi = hi.max(v.as_f64());
        }
    }
    if lo <= hi {
        hi - lo
    } else {
        0.0
    }
}

fn grid_is_integral(grid: &[f64]) -> bool {
    grid.iter().all(|v| v.fract() == 0.0)
}

/// Draws `count` price vectors of dimension `dim`: the zero vector and
/// the ±unit vectors first, then seeded random coordinates, integral
/// when the instance allows exact comparison.
fn sample_prices(
    dim: usize,
    count: usize,
    seed: u64,
    span: f64,
    integral: bool,
    grid: Option<&[f64]>,
) -> Vec<PriceVector> {
    let mut out = Vec::with_capacity(count);
    out.push(PriceVector::zero(dim));
    for k in 0..dim {
        for sign in [1.0f64, -1.0] {
            let mut v = vec![0.0; dim];
            v[k] = sign;
            out.push(PriceVector::new(v).expect("unit prices are finite"));
        }
    }
    out.truncate(count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = span + 1.0;
    while out.len() < count {
        let coords: Vec<f64> = (0..dim)
            .map(|_| match grid {
                Some(g) => g[rng.random_range(0..g.len())],
                None if integral => rng.random_range(-(w as i64)..=w as i64) as f64,
                None => rng.random_range(-w..=w),
            })
            .collect();
        out.push(PriceVector::new(coords).expect("sampled prices are finite"));
    }
    out
}

/// Report of the sampled conjugate upper bound on an exchange pair.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaG1G2Report {
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    pub i_set: Vec<u8>,
    pub y0: Vec<u8>,
    pub samples: usize,
    pub violations: u64,
    /// Smallest observed g1(q) + g2(-q) - (f(X) + f(Y)); 0 when the
    /// inequality was vacuous at every sample.
    pub min_slack: f64,
    pub worst_q: Vec<f64>,
    pub f_x_plus_f_y: ExtValue,
    pub max_exchange: ExtValue,
    pub best_j: Vec<u8>,
    /// Smallest sampled upper bound g1(q) + g2(-q).
    pub upper_bound_min: ExtValue,
    pub weak_duality_ok: bool,
    pub one_sided_ok: bool,
    pub dom1_empty: bool,
    pub dom2_empty: bool,
    pub eps: f64,
}

/// Samples prices q and checks that g1(q) + g2(-q) stays above
/// f(X) + f(Y), that it also bounds the best multiple-exchange value,
/// and that the smallest sampled bound still dominates that value. The
/// function must satisfy the transfer-or-swap exchange axiom; otherwise
/// the claim has no backing and the check refuses to run.
pub fn verify_lemma_g1g2(
    f: &SetFunction,
    ctx: &ExchangeContext,
    cfg: &DualityConfig,
) -> Result<LemmaG1G2Report> {
    let hypothesis = axioms::check_axiom(f, AxiomId::MnatExc)?;
    if !hypothesis.passed {
        return Err(DcaError::HypothesisViolated(
            "the transfer-or-swap exchange axiom fails on this function".to_string(),
        ));
    }
    let (f1, f2) = exchange_pair(f, ctx);
    let fxy = f.eval(ctx.x()) + f.eval(ctx.y());
    let (max_exchange, best_j) = check_multiple_exchange_value(f, ctx);

    let integral = f.is_integral()
        && cfg.grid.as_deref().is_none_or(grid_is_integral);
    let eps = if integral { 0.0 } else { 1e-9 };
    let dim = ctx.compact.n() as usize;
    let prices = sample_prices(
        dim,
        cfg.q_samples,
        cfg.seed,
        finite_span(f),
        integral,
        cfg.grid.as_deref(),
    );

    let mut violations = 0u64;
    let mut min_slack = f64::INFINITY;
    let mut worst_q: Vec<f64> = Vec::new();
    let mut upper_min = ExtValue::NEG_INF;
    let mut have_upper = false;
    let mut weak_duality_ok = true;

    for q in &prices {
        let neg_q = PriceVector::new(q.values().iter().map(|v| -v).collect())
            .expect("negated prices are finite");
        let g1 = conjugate(&f1, q);
        let g2 = conjugate(&f2, &neg_q);
        let sum = g1 + g2;
        if !fxy.leq_with_eps(sum, eps) {
            violations += 1;
        }
        if !max_exchange.leq_with_eps(sum, eps) {
            weak_duality_ok = false;
        }
        if fxy.is_finite() && sum.is_finite() {
            let slack = sum.as_f64() - fxy.as_f64();
            if slack < min_slack {
                min_slack = slack;
                worst_q = q.values().to_vec();
            }
        }
        upper_min = if have_upper { upper_min.min(sum) } else { sum };
        have_upper = true;
    }
    if !min_slack.is_finite() {
        min_slack = 0.0;
    }
    let one_sided_ok = !have_upper || max_exchange.leq_with_eps(upper_min, eps);

    Ok(LemmaG1G2Report {
        x: ctx.x().to_vec(),
        y: ctx.y().to_vec(),
        i_set: ctx.i_set().to_vec(),
        y0: ctx.y0().to_vec(),
        samples: prices.len(),
        violations,
        min_slack,
        worst_q,
        f_x_plus_f_y: fxy,
        max_exchange,
        best_j: best_j.to_vec(),
        upper_bound_min: if have_upper { upper_min } else { ExtValue::NEG_INF },
        weak_duality_ok,
        one_sided_ok,
        dom1_empty: f1.dom_is_empty(),
        dom2_empty: f2.dom_is_empty(),
        eps,
    })
}

/// Report of the sampled submodularity check on the conjugate.
#[derive(Clone, Debug, Serialize)]
pub struct SubmodularReport {
    pub samples: usize,
    pub violations: u64,
    /// Smallest observed g(p) + g(p') - g(p ∨ p') - g(p ∧ p').
    pub min_slack: f64,
    pub worst_p: Vec<f64>,
    pub worst_p2: Vec<f64>,
    pub m_used: f64,
    pub eps: f64,
}

/// Samples price pairs and checks submodularity of the conjugate:
/// g(p ∨ p') + g(p ∧ p') <= g(p) + g(p'). Coordinates are drawn from a
/// palette spanning the value range up to ±M, where M defaults to twice
/// the finite span plus one. Requires the transfer-or-swap exchange
/// axiom, which is what makes the conjugate submodular.
pub fn check_conjugate_submodular(f: &SetFunction, cfg: &DualityConfig) -> Result<SubmodularReport> {
    let hypothesis = axioms::check_axiom(f, AxiomId::MnatExc)?;
    if !hypothesis.passed {
        return Err(DcaError::HypothesisViolated(
            "the transfer-or-swap exchange axiom fails on this function".to_string(),
        ));
    }
    let span = finite_span(f);
    let m = cfg.m.unwrap_or(2.0 * span + 1.0);
    let palette: Vec<f64> = match &cfg.grid {
        Some(g) => g.clone(),
        None => vec![-m, -(span + 1.0), -1.0, 0.0, 1.0, span + 1.0, m],
    };
    let integral = f.is_integral() && grid_is_integral(&palette);
    let eps = if integral { 0.0 } else { 1e-9 };

    let n = f.ground().n() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..n).map(|_| palette[rng.random_range(0..palette.len())]).collect()
    };

    let mut violations = 0u64;
    let mut min_slack = f64::INFINITY;
    let mut worst_p: Vec<f64> = Vec::new();
    let mut worst_p2: Vec<f64> = Vec::new();

    for idx in 0..cfg.q_samples {
        // The first pair is the trivial p = p', pinning the equality case.
        let (pv, pv2) = if idx == 0 {
            (vec![0.0; n], vec![0.0; n])
        } else {
            (draw(&mut rng), draw(&mut rng))
        };
        let join: Vec<f64> = pv.iter().zip(&pv2).map(|(a, b)| a.max(*b)).collect();
        let meet: Vec<f64> = pv.iter().zip(&pv2).map(|(a, b)| a.min(*b)).collect();
        let g = |coords: &[f64]| -> f64 {
            let p = PriceVector::new(coords.to_vec()).expect("palette prices are finite");
            conjugate(f, &p).as_f64()
        };
        let slack = g(&pv) + g(&pv2) - g(&join) - g(&meet);
        if slack < -eps {
            violations += 1;
        }
        if slack < min_slack {
            min_slack = slack;
            worst_p = pv;
            worst_p2 = pv2;
        }
    }
    if !min_slack.is_finite() {
        min_slack = 0.0;
    }

    Ok(SubmodularReport {
        samples: cfg.q_samples,
        violations,
        min_slack,
        worst_p,
        worst_p2,
        m_used: m,
        eps,
    })
}
