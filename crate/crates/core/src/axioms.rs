//! Exchange-axiom checkers for set functions.
//!
//! Fourteen axiom variants are checked by brute force: the
//! transfer-or-swap exchange axiom, its cardinality-split forms, the
//! local conditions on at most four free elements, the swap-only
//! (equicardinal) axioms, and the multiple-exchange forms. Every checker
//! sweeps tuples in a fixed lexicographic order (x ascending by mask
//! bits, then y, then the exchanged element), so the reported witness is
//! the first violating tuple in that order and reports are reproducible
//! bit for bit. Inequalities are compared with the instance tolerance:
//! a tuple violates an axiom iff lhs > rhs + eps.

use crate::error::{DcaError, Result};
use crate::family::FamilyAxiomId;
use crate::func::SetFunction;
use crate::ground::{SubsetMask, DEFAULT_MULTI_EXCHANGE_CAP};
use crate::value::ExtValue;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::{Duration, Instant};

/// The function-level exchange axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomId {
    /// Transfer-or-swap exchange for all pairs.
    MnatExc,
    /// Augmentation along cardinality: |X| < |Y|, no pivot element.
    P1,
    /// Swap exchange restricted to |X| = |Y|.
    P2,
    /// Swap exchange restricted to |X| < |Y|.
    P3,
    /// Transfer-or-swap exchange restricted to |X| > |Y|.
    P4,
    /// Pairwise local concavity on two free elements.
    L1,
    /// Local exchange on three free elements.
    L2,
    /// Local exchange on four free elements.
    L3,
    /// Swap-only exchange for all pairs (equicardinal world).
    MExc,
    /// Swap-only exchange for pairs with |X \ Y| = 2.
    MExcLoc,
    /// Swap-only exchange in max form for all distinct pairs.
    MExcW,
    /// Multiple exchange: any subset J of Y \ X may answer I.
    MnatExcM,
    /// Multiple exchange with |J| <= |I|.
    MnatExcMs,
    /// Multiple exchange with |J| = |I|.
    MExcM,
}

impl AxiomId {
    pub const ALL: [AxiomId; 14] = [
        AxiomId::MnatExc,
        AxiomId::P1,
        AxiomId::P2,
        AxiomId::P3,
        AxiomId::P4,
        AxiomId::L1,
        AxiomId::L2,
        AxiomId::L3,
        AxiomId::MExc,
        AxiomId::MExcLoc,
        AxiomId::MExcW,
        AxiomId::MnatExcM,
        AxiomId::MnatExcMs,
        AxiomId::MExcM,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::MnatExc => "MNAT_EXC",
            AxiomId::P1 => "P1",
            AxiomId::P2 => "P2",
            AxiomId::P3 => "P3",
            AxiomId::P4 => "P4",
            AxiomId::L1 => "L1",
            AxiomId::L2 => "L2",
            AxiomId::L3 => "L3",
            AxiomId::MExc => "M_EXC",
            AxiomId::MExcLoc => "M_EXC_LOC",
            AxiomId::MExcW => "M_EXC_W",
            AxiomId::MnatExcM => "MNAT_EXC_M",
            AxiomId::MnatExcMs => "MNAT_EXC_MS",
            AxiomId::MExcM => "M_EXC_M",
        }
    }

    /// Whether the axiom enumerates answer sets J, which is exponential
    /// in n and therefore capped.
    pub fn is_multiple_exchange(self) -> bool {
        matches!(self, AxiomId::MnatExcM | AxiomId::MnatExcMs | AxiomId::MExcM)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = DcaError;

    fn from_str(s: &str) -> Result<AxiomId> {
        AxiomId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| DcaError::UnsupportedAxiom(s.to_string()))
    }
}

/// The axiom a report or witness refers to: a function axiom, a family
/// axiom, or the strong multiple-exchange family variant, which is kept
/// outside the canonical family list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckedAxiom {
    Function(AxiomId),
    Family(FamilyAxiomId),
    FamilyMultiStrong,
}

impl CheckedAxiom {
    pub fn name(self) -> &'static str {
        match self {
            CheckedAxiom::Function(id) => id.name(),
            CheckedAxiom::Family(id) => id.name(),
            CheckedAxiom::FamilyMultiStrong => "BNAT_EXC_MS",
        }
    }
}

impl fmt::Display for CheckedAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CheckedAxiom {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A violating tuple. The fields that apply depend on the axiom: pair
/// axioms fill `x`, `y` and possibly the pivot `i`; the local axioms
/// fill the base set `z` plus the free elements or the two sides;
/// multiple-exchange axioms fill the moved set `i_set`; independence
/// checks label the failing sub-axiom in `sub`. `lhs`/`rhs` record the
/// two sides of the violated inequality (for structural family axioms a
/// 0 > -inf placeholder marks the missing member).
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub axiom: CheckedAxiom,
    pub x: SubsetMask,
    pub y: SubsetMask,
    pub z: Option<SubsetMask>,
    pub i: Option<u8>,
    pub j: Option<u8>,
    pub i_set: Option<SubsetMask>,
    pub sub: Option<String>,
    pub lhs: ExtValue,
    pub rhs: ExtValue,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("X", &self.x.to_vec())?;
        map.serialize_entry("Y", &self.y.to_vec())?;
        if let Some(z) = self.z {
            map.serialize_entry("Z", &z.to_vec())?;
        }
        if let Some(i) = self.i {
            map.serialize_entry("i", &i)?;
        }
        if let Some(j) = self.j {
            map.serialize_entry("j", &j)?;
        }
        if let Some(i_set) = self.i_set {
            map.serialize_entry("I", &i_set.to_vec())?;
        }
        if let Some(sub) = &self.sub {
            map.serialize_entry("sub", sub)?;
        }
        map.serialize_entry("lhs", &self.lhs)?;
        map.serialize_entry("rhs", &self.rhs)?;
        map.end()
    }
}

/// Outcome of one axiom check: pass/fail, the first violating tuple in
/// sweep order if any, and how many tuples the sweep examined. The wall
/// time is kept for logs but never serialized, so reports are stable.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub axiom: CheckedAxiom,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub pairs_examined: u64,
    pub elapsed: Duration,
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("axiom", &self.axiom)?;
        map.serialize_entry("passed", &self.passed)?;
        if let Some(w) = &self.witness {
            map.serialize_entry("witness", w)?;
        }
        map.serialize_entry("pairs_examined", &self.pairs_examined)?;
        map.end()
    }
}

type Visit<'a> = &'a mut dyn FnMut(Witness) -> ControlFlow<()>;

fn fun_witness(id: AxiomId, x: SubsetMask, y: SubsetMask, lhs: ExtValue, rhs: ExtValue) -> Witness {
    Witness {
        axiom: CheckedAxiom::Function(id),
        x,
        y,
        z: None,
        i: None,
        j: None,
        i_set: None,
        sub: None,
        lhs,
        rhs,
    }
}

/// max over j in y \ x of f(x - i + j) + f(y + i - j).
fn swap_best(f: &SetFunction, x: SubsetMask, y: SubsetMask, i: u8) -> ExtValue {
    let mut best = ExtValue::NEG_INF;
    let xi = x.without(i);
    let yi = y.with(i);
    for j in y.diff(x).elements() {
        best = best.max(f.eval(xi.with(j)) + f.eval(yi.without(j)));
    }
    best
}

fn sweep_mnat(f: &SetFunction, eps: f64, visit: Visit) -> u64 {
    let g = f.ground();
    let mut pairs = 0;
    for x in g.masks() {
        for y in g.masks() {
            pairs += 1;
            let lhs = f.eval(x) + f.eval(y);
            if !lhs.is_finite() {
                continue;
            }
            for i in x.diff(y).elements() {
                let transfer = f.eval(x.without(i)) + f.eval(y.with(i));
                let rhs = transfer.max(swap_best(f, x, y, i));
                if !lhs.leq_with_eps(rhs, eps) {
                    let mut w = fun_witness(AxiomId::MnatExc, x, y, lhs, rhs);
                    w.i = Some(i);
                    if visit(w).is_break() {
                        return pairs;
                    }
                }
            }
        }
    }
    pairs
}

fn sweep_p1(f: &SetFunction, eps: f64, visit: Visit) -> u64 {
    let g = f.ground();
    let mut pairs = 0;
    for x in g.masks() {
        for y in g.masks() {
            if x.card() >= y.card() {
                continue;
            }
            pairs += 1;
            let lhs = f.eval(x) + f.eval(y);
            if !lhs.is_finite() {
                continue;
            }
            let mut rhs = ExtValue::NEG_INF;
            for j in y.diff(x).elements() {
                rhs = rhs.max(f.eval(x.with(j)) + f.eval(y.without(j)));
            }
            if !lhs.leq_with_eps(rhs, eps)
                && visit(fun_witness(AxiomId::P1, x, y, lhs, rhs)).is_break()
            {
                return pairs;
            }
        }
    }
    pairs
}

/// Shared sweep for the pivot-and-swap axioms P2, P3 and M_EXC, which
/// differ only in the pair-level side condition.
fn sweep_swap_pivot(
    f: &SetFunction,
    eps: f64,
    id: AxiomId,
    side: impl Fn(SubsetMask, SubsetMask) -> bool,
    visit: Visit,
) -> u64 {
    let g = f.ground();
    let mut pairs = 0;
    for x in g.masks() {
        for y in g.masks() {
            if !side(x, y) {
                continue;
            }
            pairs += 1;
            let lhs = f.eval(x) + f.eval(y);
            if !lhs.is_finite() {
                continue;
            }
            for i in x.diff(y).elements() {
                let rhs = swap_best(f, x, y, i);
                if !lhs.leq_with_eps(rhs, eps) {
                    let mut w = fun_witness(id, x, y, lhs, rhs);
                    w.i = Some(i);
                    if visit(w).is_break() {
                        return pairs;
                    }
                }
            }
        }
    }
    pairs
}

fn sweep_p4(f: &SetFunction, eps: f64, visit: Visit) -> u64 {
    let g = f.ground();
    let mut pairs = 0;
    for x in g.masks() {
        for y in g.masks() {
            if x.card() <= y.card() {
                continue;
            }
            pairs += 1;
            let lhs = f.eval(x) + f.eval(y);
            if !lhs.is_finite() {
                continue;
            }
            for i in x.diff(y).elements() {
                let transfer = f.eval(x.without(i)) + f.eval(y.with(i));
                let rhs = transfer.max(swap_best(f, x, y, i));
                if !lhs.leq_with_eps(rhs, eps) {
                    let mut w = fun_witness(AxiomId::P4, x, y, lhs, rhs);
                    w.i = Some(i);
                    if visit(w).is_break() {
                        return pairs;
                    }
                }
            }
        }
    }
    pairs
}

fn sweep_l1(f: &SetFunction, eps: f64, visit: Visit) -> u64 {
    let g = f.ground();
    let mut pairs = 0;
    for z in g.masks() {
        let free: Vec<u8> = g.full_mask().diff(z).elements().collect();
        for (a, &i) in free.iter().enumerate() {
            for &j in &free[a + 1..] {
                pairs += 1;
                let lhs = f.eval(z.with(i).with(j)) + f.eval(z);
                let rhs = f.eval(z.with(i)) + f.eval(z.with(j));
                if !lhs.leq_with_eps(rhs, eps) {
                    let mut w = fun_witness(AxiomId::L1, z.with(i).with(j), z, lhs, rhs);
                    w.i = Some(i);
                    w.j = Some(j);
                    if visit(w).is_break() {
                        return pairs;
                    }
                }
            }
        }
    }
    pairs
}

/// The swap bound shared by L2 and L3: for the split {p,q} | rest, the
/// max of the two cross pairings obtained by trading q away.
fn cross_max(
    f: &SetFunction,
    z: SubsetMask,
    p: u8,
    q: u8,
    r: u8,
    s: Option<u8>,
) -> ExtValue {
    let right = |el: u8, other: Option<u8>| match other {
        Some(o) => z.with(el).with(o),
        None => z.with(el),
    };
    let a = f.eval(z.with(p).with(r)) + f.eval(right(q, s));
    let b = f.eval(z.with(q).with(r)) + f.eval(right(p, s));
    a.max(b)
}

fn sweep_l2(f: &SetFunction, eps: f64, visit: Visit) -> u64 {
    let g = f.ground();
    let mut pairs = 0;
    for z in g.masks() {
        let free: Vec<u8> = g.full_mask().diff(z).elements().collect();
        let m = free.len();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let (i, j, k) = (free[a], free[b], free[c]);
                    // Each triple is checked with every element once in
                    // the singleton role.
                    for (p, q, s) in [(i, j, k), (i, k, j), (j, k, i)] {
                        pairs += 1;
                        let lhs = f.eval(z.with(p).with(q)) + f.eval(z.with(s));
                        let rhs = cross_max(f, z, p, q, s, None);
                        if !lhs.leq_with_eps(rhs, eps) {
                            let mut w =
                                fun_witness(AxiomId::L2, z.with(p).with(q), z.with(s), lhs, rhs);
                            w.z = Some(z);
                            if visit(w).is_break() {
                                return pairs;
                            }
                        }
                    }
                }
            }
        }
    }
    pairs
}

fn sweep_l3(f: &SetFunction, eps: f64, visit: Visit) -> u64 {
    let g = f.ground();
    let mut pairs = 0;
    for z in g.masks() {
        let free: Vec<u8> = g.full_mask().diff(z).elements().collect();
        let m = free.len();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        let (i, j, k, l) = (free[a], free[b], free[c], free[d]);
                        // The three pairings of the quadruple, each once
                        // in the left-hand role.
                        for (p, q, r, s) in [(i, j, k, l), (i, k, j, l), (i, l, j, k)] {
                            pairs += 1;
                            let lhs =
                                f.eval(z.with(p).with(q)) + f.eval(z.with(r).with(s));
                            let rhs = cross_max(f, z, p, q, r, Some(s));
                            if !lhs.leq_with_eps(rhs, eps) {
                                let mut w = fun_witness(
                                    AxiomId::L3,
                                    z.with(p).with(q),
                                    z.with(r).with(s),
                                    lhs,
                                    rhs,
                                );
                                w.z = Some(z);
                                if visit(w).is_break() {
                                    return pairs;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    pairs
}

fn sweep_m_exc_loc(f: &SetFunction, eps: f64, visit: Visit) -> u64 {
    let g = f.ground();
    let mut pairs = 0;
    for x in g.masks() {
        for y in g.masks() {
            if x.diff(y).card() != 2 {
                continue;
            }
            pairs += 1;
            let lhs = f.eval(x) + f.eval(y);
            if !lhs.is_finite() {
                continue;
            }
            let mut rhs = ExtValue::NEG_INF;
            for i in x.diff(y).elements() {
                rhs = rhs.max(swap_best(f, x, y, i));
            }
            if !lhs.leq_with_eps(rhs, eps)
                && visit(fun_witness(AxiomId::MExcLoc, x, y, lhs, rhs)).is_break()
            {
                return pairs;
            }
        }
    }
    pairs
}

fn sweep_m_exc_w(f: &SetFunction, eps: f64, visit: Visit) -> u64 {
    let g = f.ground();
    let mut pairs = 0;
    for x in g.masks() {
        for y in g.masks() {
            if x == y {
                continue;
            }
            pairs += 1;
            let lhs = f.eval(x) + f.eval(y);
            if !lhs.is_finite() {
                continue;
            }
            // Max over both indices; an empty index range leaves -inf,
            // so a one-sided inclusion with a finite pair violates.
            let mut rhs = ExtValue::NEG_INF;
            for i in x.diff(y).elements() {
                rhs = rhs.max(swap_best(f, x, y, i));
            }
            if !lhs.leq_with_eps(rhs, eps)
                && visit(fun_witness(AxiomId::MExcW, x, y, lhs, rhs)).is_break()
            {
                return pairs;
            }
        }
    }
    pairs
}

/// Cardinality constraint on the answer set J of a multiple exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum JBound {
    /// Any J works.
    Any,
    /// |J| <= |I|.
    AtMost,
    /// |J| = |I|.
    Exact,
}

impl JBound {
    fn admits(self, j_card: u8, i_card: u8) -> bool {
        match self {
            JBound::Any => true,
            JBound::AtMost => j_card <= i_card,
            JBound::Exact => j_card == i_card,
        }
    }

    pub(crate) fn of(id: AxiomId) -> JBound {
        match id {
            AxiomId::MnatExcM => JBound::Any,
            AxiomId::MnatExcMs => JBound::AtMost,
            AxiomId::MExcM => JBound::Exact,
            _ => unreachable!("not a multiple-exchange axiom"),
        }
    }
}

fn sweep_multi(f: &SetFunction, eps: f64, id: AxiomId, visit: Visit) -> u64 {
    let bound = JBound::of(id);
    let g = f.ground();
    let mut pairs = 0;
    for x in g.masks() {
        for y in g.masks() {
            let y0 = y.diff(x);
            // Candidate answers in increasing cardinality, then mask
            // order, so the search stops at the cheapest witness.
            let mut js: Vec<SubsetMask> = y0.subsets().collect();
            js.sort_by_key(|j| (j.card(), j.bits()));
            let lhs = f.eval(x) + f.eval(y);
            for i_set in x.diff(y).subsets() {
                pairs += 1;
                if !lhs.is_finite() {
                    continue;
                }
                let i_card = i_set.card();
                let xi = x.diff(i_set);
                let yi = |j: SubsetMask| y.diff(j).union(i_set);
                let mut satisfied = false;
                for &j in &js {
                    if !bound.admits(j.card(), i_card) {
                        continue;
                    }
                    if lhs.leq_with_eps(f.eval(xi.union(j)) + f.eval(yi(j)), eps) {
                        satisfied = true;
                        break;
                    }
                }
                if !satisfied {
                    // An empty admissible range leaves the max at -inf;
                    // a finite pair then has no valid exchange at all.
                    let mut rhs = ExtValue::NEG_INF;
                    for &j in &js {
                        if bound.admits(j.card(), i_card) {
                            rhs = rhs.max(f.eval(xi.union(j)) + f.eval(yi(j)));
                        }
                    }
                    let mut w = fun_witness(id, x, y, lhs, rhs);
                    w.i_set = Some(i_set);
                    if visit(w).is_break() {
                        return pairs;
                    }
                }
            }
        }
    }
    pairs
}

fn sweep(f: &SetFunction, id: AxiomId, eps: f64, visit: Visit) -> u64 {
    match id {
        AxiomId::MnatExc => sweep_mnat(f, eps, visit),
        AxiomId::P1 => sweep_p1(f, eps, visit),
        AxiomId::P2 => sweep_swap_pivot(f, eps, AxiomId::P2, |x, y| x.card() == y.card(), visit),
        AxiomId::P3 => sweep_swap_pivot(f, eps, AxiomId::P3, |x, y| x.card() < y.card(), visit),
        AxiomId::P4 => sweep_p4(f, eps, visit),
        AxiomId::L1 => sweep_l1(f, eps, visit),
        AxiomId::L2 => sweep_l2(f, eps, visit),
        AxiomId::L3 => sweep_l3(f, eps, visit),
        AxiomId::MExc => sweep_swap_pivot(f, eps, AxiomId::MExc, |_, _| true, visit),
        AxiomId::MExcLoc => sweep_m_exc_loc(f, eps, visit),
        AxiomId::MExcW => sweep_m_exc_w(f, eps, visit),
        AxiomId::MnatExcM | AxiomId::MnatExcMs | AxiomId::MExcM => sweep_multi(f, eps, id, visit),
    }
}

fn guard_multi_cap(f: &SetFunction, id: AxiomId, multi_cap: u8) -> Result<()> {
    if id.is_multiple_exchange() && f.ground().n() > multi_cap {
        return Err(DcaError::MultiExchangeCapExceeded { n: f.ground().n(), cap: multi_cap });
    }
    Ok(())
}

/// Checks one axiom under the default multiple-exchange cap.
pub fn check_axiom(f: &SetFunction, id: AxiomId) -> Result<CheckReport> {
    check_axiom_with_cap(f, id, DEFAULT_MULTI_EXCHANGE_CAP)
}

/// Checks one axiom; `multi_cap` bounds n for the multiple-exchange
/// axioms, whose sweeps are exponential in the answer set.
pub fn check_axiom_with_cap(f: &SetFunction, id: AxiomId, multi_cap: u8) -> Result<CheckReport> {
    guard_multi_cap(f, id, multi_cap)?;
    let start = Instant::now();
    let mut first: Option<Witness> = None;
    let pairs = sweep(f, id, f.eps(), &mut |w| {
        first = Some(w);
        ControlFlow::Break(())
    });
    Ok(CheckReport {
        axiom: CheckedAxiom::Function(id),
        passed: first.is_none(),
        witness: first,
        pairs_examined: pairs,
        elapsed: start.elapsed(),
    })
}

/// Checks the transfer-or-swap exchange axiom.
pub fn is_mnat_concave(f: &SetFunction) -> Result<CheckReport> {
    check_axiom(f, AxiomId::MnatExc)
}

/// Checks the swap-only exchange axiom.
pub fn is_m_concave(f: &SetFunction) -> Result<CheckReport> {
    check_axiom(f, AxiomId::MExc)
}

/// Collects every violating tuple of one axiom, in sweep order.
pub fn violations(f: &SetFunction, id: AxiomId) -> Result<Vec<Witness>> {
    guard_multi_cap(f, id, DEFAULT_MULTI_EXCHANGE_CAP)?;
    let mut out = Vec::new();
    sweep(f, id, f.eps(), &mut |w| {
        out.push(w);
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Checks L2 or L3 through their two-maximizer characterization: over
/// every base set and every triple (respectively quadruple) of free
/// elements, the maximum of the three pairing sums must be attained at
/// least twice (within eps). Tuples where all three sums are -inf count
/// as attained three times.
pub fn two_maximizer_check(f: &SetFunction, id: AxiomId) -> Result<CheckReport> {
    if id != AxiomId::L2 && id != AxiomId::L3 {
        return Err(DcaError::UnsupportedAxiom(id.name().to_string()));
    }
    let start = Instant::now();
    let g = f.ground();
    let eps = f.eps();
    let mut pairs = 0u64;
    let mut first: Option<Witness> = None;

    'outer: for z in g.masks() {
        let free: Vec<u8> = g.full_mask().diff(z).elements().collect();
        let m = free.len();
        let arity = if id == AxiomId::L2 { 3 } else { 4 };
        if m < arity {
            continue;
        }
        let mut combo = |els: &[u8]| -> ControlFlow<()> {
            pairs += 1;
            // The three splits of the tuple, as (left, right) sides.
            let splits: [(SubsetMask, SubsetMask); 3] = if id == AxiomId::L2 {
                let (i, j, k) = (els[0], els[1], els[2]);
                [
                    (z.with(i).with(j), z.with(k)),
                    (z.with(i).with(k), z.with(j)),
                    (z.with(j).with(k), z.with(i)),
                ]
            } else {
                let (i, j, k, l) = (els[0], els[1], els[2], els[3]);
                [
                    (z.with(i).with(j), z.with(k).with(l)),
                    (z.with(i).with(k), z.with(j).with(l)),
                    (z.with(i).with(l), z.with(j).with(k)),
                ]
            };
            let sums: Vec<ExtValue> =
                splits.iter().map(|(a, b)| f.eval(*a) + f.eval(*b)).collect();
            let top = sums[0].max(sums[1]).max(sums[2]);
            let hits = sums.iter().filter(|s| top.leq_with_eps(**s, eps)).count();
            if hits < 2 {
                // Exactly one sum reaches the top; that split violates
                // the local exchange against the other two.
                let t = sums.iter().position(|s| *s == top).expect("top is one of the sums");
                let others = sums[(t + 1) % 3].max(sums[(t + 2) % 3]);
                let mut w = fun_witness(id, splits[t].0, splits[t].1, top, others);
                w.z = Some(z);
                first = Some(w);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        };
        if id == AxiomId::L2 {
            for a in 0..m {
                for b in a + 1..m {
                    for c in b + 1..m {
                        if combo(&[free[a], free[b], free[c]]).is_break() {
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            for a in 0..m {
                for b in a + 1..m {
                    for c in b + 1..m {
                        for d in c + 1..m {
                            if combo(&[free[a], free[b], free[c], free[d]]).is_break() {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(CheckReport {
        axiom: CheckedAxiom::Function(id),
        passed: first.is_none(),
        witness: first,
        pairs_examined: pairs,
        elapsed: start.elapsed(),
    })
}

fn mismatch(msg: &str) -> DcaError {
    DcaError::WitnessMismatch(msg.to_string())
}

/// Re-validates a function witness against an instance: recomputes both
/// sides of the axiom at the recorded tuple and reports whether the
/// tuple still violates. The recorded lhs/rhs are not trusted. Fails
/// when the tuple does not fit the instance (wrong ground set, missing
/// fields, or side conditions that do not hold).
pub fn verify_witness(f: &SetFunction, w: &Witness) -> Result<bool> {
    let id = match w.axiom {
        CheckedAxiom::Function(id) => id,
        _ => return Err(mismatch("family witness checked against a function")),
    };
    let full = f.ground().full_mask();
    if !w.x.is_subset_of(full) || !w.y.is_subset_of(full) {
        return Err(mismatch("witness subsets leave the ground set"));
    }
    let eps = f.eps();
    let (x, y) = (w.x, w.y);

    let violated = match id {
        AxiomId::MnatExc | AxiomId::P2 | AxiomId::P3 | AxiomId::P4 | AxiomId::MExc => {
            let i = w.i.ok_or_else(|| mismatch("missing pivot element"))?;
            if !x.contains(i) || y.contains(i) {
                return Err(mismatch("pivot must lie in X \\ Y"));
            }
            let fits = match id {
                AxiomId::P2 => x.card() == y.card(),
                AxiomId::P3 => x.card() < y.card(),
                AxiomId::P4 => x.card() > y.card(),
                _ => true,
            };
            if !fits {
                return Err(mismatch("cardinality side condition does not hold"));
            }
            let lhs = f.eval(x) + f.eval(y);
            let mut rhs = swap_best(f, x, y, i);
            if id == AxiomId::MnatExc || id == AxiomId::P4 {
                rhs = rhs.max(f.eval(x.without(i)) + f.eval(y.with(i)));
            }
            !lhs.leq_with_eps(rhs, eps)
        }
        AxiomId::P1 => {
            if x.card() >= y.card() {
                return Err(mismatch("cardinality side condition does not hold"));
            }
            let lhs = f.eval(x) + f.eval(y);
            let mut rhs = ExtValue::NEG_INF;
            for j in y.diff(x).elements() {
                rhs = rhs.max(f.eval(x.with(j)) + f.eval(y.without(j)));
            }
            !lhs.leq_with_eps(rhs, eps)
        }
        AxiomId::MExcLoc | AxiomId::MExcW => {
            if id == AxiomId::MExcLoc && x.diff(y).card() != 2 {
                return Err(mismatch("|X \\ Y| = 2 does not hold"));
            }
            if id == AxiomId::MExcW && x == y {
                return Err(mismatch("X and Y must be distinct"));
            }
            let lhs = f.eval(x) + f.eval(y);
            let mut rhs = ExtValue::NEG_INF;
            for i in x.diff(y).elements() {
                rhs = rhs.max(swap_best(f, x, y, i));
            }
            !lhs.leq_with_eps(rhs, eps)
        }
        AxiomId::L1 => {
            let i = w.i.ok_or_else(|| mismatch("missing free element i"))?;
            let j = w.j.ok_or_else(|| mismatch("missing free element j"))?;
            if i == j || y.contains(i) || y.contains(j) || x != y.with(i).with(j) {
                return Err(mismatch("not a pairwise local tuple"));
            }
            let lhs = f.eval(x) + f.eval(y);
            let rhs = f.eval(y.with(i)) + f.eval(y.with(j));
            !lhs.leq_with_eps(rhs, eps)
        }
        AxiomId::L2 | AxiomId::L3 => {
            let z = w.z.ok_or_else(|| mismatch("missing base set"))?;
            if !z.is_subset_of(x) || !z.is_subset_of(y) {
                return Err(mismatch("base set must lie inside both sides"));
            }
            let a = x.diff(z);
            let b = y.diff(z);
            let want_b = if id == AxiomId::L2 { 1 } else { 2 };
            if a.card() != 2 || b.card() != want_b || !a.intersect(b).is_empty() {
                return Err(mismatch("free elements do not form a local tuple"));
            }
            let ab: Vec<u8> = a.elements().collect();
            let (p, q) = (ab[0], ab[1]);
            let lhs = f.eval(x) + f.eval(y);
            let rhs = if id == AxiomId::L2 {
                let s = b.elements().next().expect("singleton side");
                cross_max(f, z, p, q, s, None)
            } else {
                let rs: Vec<u8> = b.elements().collect();
                cross_max(f, z, p, q, rs[0], Some(rs[1]))
            };
            !lhs.leq_with_eps(rhs, eps)
        }
        AxiomId::MnatExcM | AxiomId::MnatExcMs | AxiomId::MExcM => {
            let i_set = w.i_set.ok_or_else(|| mismatch("missing moved set I"))?;
            if !i_set.is_subset_of(x.diff(y)) {
                return Err(mismatch("I must lie in X \\ Y"));
            }
            let bound = JBound::of(id);
            let lhs = f.eval(x) + f.eval(y);
            let xi = x.diff(i_set);
            let mut rhs = ExtValue::NEG_INF;
            for j in y.diff(x).subsets() {
                if bound.admits(j.card(), i_set.card()) {
                    rhs = rhs.max(f.eval(xi.union(j)) + f.eval(y.diff(j).union(i_set)));
                }
            }
            !lhs.leq_with_eps(rhs, eps)
        }
    };
    Ok(violated)
}
